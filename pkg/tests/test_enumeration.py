from __future__ import annotations

import itertools

import numpy as np
import pytest

from alpha_extremal.enumeration import (
    MAX_N_ENV,
    EnumerationQuery,
    cycle_counts,
    degree_sequences,
    enumerate_masks,
    enumerate_tricyclic,
    graph_to_mask,
    mask_to_graph,
    screen_radii,
)
from alpha_extremal.families import family
from alpha_extremal.graph import (
    Graph,
    GraphError,
    are_isomorphic,
    canonical_form,
    count_cycles,
    is_connected,
    pendant_count,
)
from alpha_extremal.spectra import alpha_spectral_radius


def brute_force(n: int, k: int | None) -> list[tuple]:
    """Every (n+2)-subset of pairs, filtered directly; lexicographic by construction."""
    pairs = list(itertools.combinations(range(n), 2))
    out = []
    for edges in itertools.combinations(pairs, n + 2):
        g = Graph.from_edges(n, edges)
        if is_connected(g) and (k is None or pendant_count(g) == k):
            out.append(edges)
    return out


def test_n6_any_k_matches_brute_force():
    stream = [g.edges for g in enumerate_tricyclic(EnumerationQuery(6, None))]
    expected = brute_force(6, None)
    assert len(list(itertools.combinations(range(15), 8))) == 6435
    assert stream == expected
    assert len(stream) == 6165


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_n6_fixed_k_matches_brute_force(k):
    assert [g.edges for g in enumerate_tricyclic(EnumerationQuery(6, k))] == brute_force(6, k)


def test_n7_k1_matches_brute_force():
    masks = enumerate_masks(EnumerationQuery(7, 1))
    assert [mask_to_graph(7, int(m)).edges for m in masks] == brute_force(7, 1)


def test_class7_stream_contains_t7():
    t7 = family("T7", 8, 1)
    key = canonical_form(t7)
    graphs = list(enumerate_tricyclic(EnumerationQuery(8, 1, cycle_class=7, degree_ordered=True)))
    assert graphs and any(canonical_form(g) == key for g in graphs)
    assert all(count_cycles(g) == 7 for g in graphs)


def test_infeasible_pendant_count_is_empty():
    assert len(enumerate_masks(EnumerationQuery(8, 6))) == 0


def test_query_validation(monkeypatch):
    with pytest.raises(GraphError):
        EnumerationQuery(10, 1)
    with pytest.raises(GraphError):
        EnumerationQuery(8, 1, cycle_class=5)
    with pytest.raises(GraphError):
        EnumerationQuery(8, -1)
    with pytest.raises(ValueError):
        EnumerationQuery(8, 1, alphas=(1.0,))
    monkeypatch.setenv(MAX_N_ENV, "10")
    assert EnumerationQuery(10, 1).n == 10


def test_mask_roundtrip():
    g = family("T6", 8, 1)
    assert mask_to_graph(8, graph_to_mask(g)) == g


@pytest.mark.slow
def test_class_partition_full_labeled_n8():
    masks = enumerate_masks(EnumerationQuery(8, 1))
    classes = cycle_counts(8, masks)
    assert set(np.unique(classes)) <= {3, 4, 6, 7}
    per_class = [len(enumerate_masks(EnumerationQuery(8, 1, cycle_class=c))) for c in (3, 4, 6, 7)]
    assert sum(per_class) == len(masks) == 4474680
    assert per_class == [int((classes == c).sum()) for c in (3, 4, 6, 7)]
    # a sample of the stream agrees with the pure-python predicates
    for m in masks[::50000]:
        g = mask_to_graph(8, int(m))
        assert is_connected(g) and pendant_count(g) == 1 and g.m == 10


def test_degree_ordered_stream_covers_every_class():
    full = enumerate_masks(EnumerationQuery(7, 1))
    reduced = enumerate_masks(EnumerationQuery(7, 1, degree_ordered=True))
    assert set(reduced.tolist()) <= set(full.tolist())
    forms_full = {canonical_form(mask_to_graph(7, int(m))) for m in full}
    forms_reduced = {canonical_form(mask_to_graph(7, int(m))) for m in reduced}
    assert forms_full == forms_reduced
    degs = degree_sequences(7, reduced)
    assert np.all(np.diff(degs, axis=1) <= 0)


@pytest.mark.parametrize("ordered", [False, True])
def test_stream_independent_of_jobs(ordered):
    q = EnumerationQuery(7, 1, degree_ordered=ordered)
    one = enumerate_masks(q, jobs=1)
    assert np.array_equal(one, enumerate_masks(q, jobs=2))
    assert np.array_equal(one, enumerate_masks(q, jobs=4))
    assert np.all(np.diff(one) != 0)


def test_stream_is_lexicographic():
    edges = [g.edges for g in enumerate_tricyclic(EnumerationQuery(7, 2))]
    assert edges == sorted(edges)


def test_screen_matches_solver():
    masks = enumerate_masks(EnumerationQuery(8, 1, degree_ordered=True))[::97]
    radii = screen_radii(8, masks, 0.6)
    for m, r in zip(masks, radii):
        assert abs(alpha_spectral_radius(mask_to_graph(8, int(m)), 0.6).radius - r) <= 1e-12


def test_cycle_counts_match_python():
    masks = enumerate_masks(EnumerationQuery(7, None))[::37]
    for m, c in zip(masks, cycle_counts(7, masks)):
        assert count_cycles(mask_to_graph(7, int(m))) == c


def test_t3_is_in_unfiltered_stream():
    t3 = family("T3", 8, 1)
    graphs = enumerate_tricyclic(EnumerationQuery(8, 1, cycle_class=3, degree_ordered=True))
    assert any(are_isomorphic(g, t3) for g in graphs)
