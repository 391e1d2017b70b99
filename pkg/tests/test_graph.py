from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from alpha_extremal.families import base_graph, family
from alpha_extremal.graph import (
    CycleClass,
    EdgeClass,
    EdgeListParseError,
    Graph,
    GraphError,
    are_isomorphic,
    attach_pendant_paths,
    canonical_form,
    canonical_labeling,
    classify_edge,
    count_cycles,
    cycle_class,
    find_isomorphism,
    from_edge_list,
    internal_paths,
    is_connected,
    is_tricyclic,
    pendant_count,
    pendant_paths,
    relocate_neighbors,
    subdivide_edge,
    to_edge_list,
)

from conftest import complete, cycle, path, star


def dfs_cycle_count(g: Graph) -> int:
    """Simple cycles counted by rooted DFS: each cycle once from its smallest vertex."""
    adj = [sorted(g.neighbors(v)) for v in range(g.n)]
    found = 0

    def extend(root, cur, seen, length):
        nonlocal found
        for w in adj[cur]:
            if w == root and length >= 3:
                found += 1
            elif w > root and w not in seen:
                seen.add(w)
                extend(root, w, seen, length + 1)
                seen.remove(w)

    for root in range(g.n):
        extend(root, root, {root}, 1)
    return found // 2   # each cycle is walked in both directions


def random_connected(rng: random.Random, n: int, m: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    while True:
        g = Graph.from_edges(n, rng.sample(pairs, m))
        if is_connected(g):
            return g


# edge-list format

def test_parse_path():
    g = from_edge_list("3 2\n0 1\n1 2\n")
    assert g.degrees == (1, 2, 1)


def test_parse_complete():
    text = "4 6\n" + "".join(f"{u} {v}\n" for u, v in itertools.combinations(range(4), 2))
    assert from_edge_list(text).degrees == (3, 3, 3, 3)


def test_parse_duplicate_edge():
    with pytest.raises(EdgeListParseError) as info:
        from_edge_list("3 2\n0 1\n0 1\n")
    assert "line" in str(info.value)


@pytest.mark.parametrize("text", [
    "", "3\n", "3 2\n0 1\n", "3 1\n0 3\n", "3 1\n1 1\n", "3 1\n2 1\n", "3 1\na b\n", "3 1\n0 1\n1 2\n",
])
def test_parse_errors(text):
    with pytest.raises(EdgeListParseError):
        from_edge_list(text)


def test_parse_comments_and_roundtrip():
    g = from_edge_list("# a comment\n4 3\n# mid\n2 3\n0 1\n1 2\n")
    assert g == path(4)
    text = to_edge_list(g, "round trip")
    assert text.startswith("# round trip\n4 3\n")
    assert from_edge_list(text) == g


def test_constructor_rejects_bad_edges():
    for edges in ([(0, 0)], [(0, 5)], [(0, 1), (1, 0)]):
        with pytest.raises(GraphError):
            Graph.from_edges(3, edges)


# predicates

def test_connectivity():
    assert is_connected(path(4))
    assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))
    assert is_connected(complete(4))


def test_pendant_count():
    assert pendant_count(path(4)) == 2
    assert pendant_count(cycle(5)) == 0
    assert pendant_count(star(4)) == 4


def test_is_tricyclic():
    assert is_tricyclic(complete(4))
    assert not is_tricyclic(cycle(5))
    assert is_tricyclic(attach_pendant_paths(complete(4), 0, [1]))


# cycles

def test_cycle_counts():
    assert count_cycles(complete(4)) == 7
    assert count_cycles(cycle(6)) == 1
    assert count_cycles(base_graph("G1")) == 3


def test_family_cycle_classes():
    assert cycle_class(family("T7", 8, 1)) is CycleClass.SEVEN
    assert cycle_class(family("T3", 8, 1)) is CycleClass.THREE
    assert cycle_class(family("T4", 8, 1)) == dfs_cycle_count(family("T4", 8, 1)) == 4


def test_cycle_count_matches_dfs_oracle():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(4, 9)
        g = random_connected(rng, n, min(n + 2, n * (n - 1) // 2))
        assert count_cycles(g) == dfs_cycle_count(g)
        if g.m == g.n + 2:
            assert count_cycles(g) in (3, 4, 6, 7)


def test_cycle_class_rejects_non_tricyclic():
    with pytest.raises(GraphError):
        cycle_class(cycle(5))


# edge classes and paths

def test_classify_edges():
    t3 = family("T3", 8, 1)
    assert classify_edge(t3, 0, 7) is EdgeClass.PENDANT_PATH
    assert classify_edge(base_graph("G3"), 0, 1) is EdgeClass.INTERNAL_PATH
    assert all(classify_edge(cycle(5), *e) is EdgeClass.OTHER for e in cycle(5).edges)


def test_triangle_edges_of_hub_are_internal():
    g1 = base_graph("G1")
    assert all(classify_edge(g1, *e) is EdgeClass.INTERNAL_PATH for e in g1.edges)
    loops = internal_paths(g1)
    assert len(loops) == 3 and all(p.closed and p.length == 3 for p in loops)


def test_pendant_edges_of_t3():
    g = family("T3", 11, 2)
    for u, v in g.edges:
        if 1 in (g.degrees[u], g.degrees[v]):
            assert classify_edge(g, u, v) is EdgeClass.PENDANT_PATH
    assert sorted(p.length for p in pendant_paths(g)) == [2, 2]
    assert {p.start for p in pendant_paths(g)} == {0}


# surgeries

def test_subdivide():
    assert are_isomorphic(subdivide_edge(cycle(3), 0, 1), cycle(4))
    assert are_isomorphic(subdivide_edge(path(3), 0, 1), path(4))
    g = family("T4", 9, 2)
    h = subdivide_edge(g, 0, 1)
    assert (h.n, h.m) == (g.n + 1, g.m + 1)
    assert h.degrees[:g.n] == g.degrees and h.degrees[g.n] == 2
    with pytest.raises(GraphError):
        subdivide_edge(path(3), 0, 2)


def test_relocate():
    g = relocate_neighbors(path(4), 1, 2, {3})
    assert g == Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    assert are_isomorphic(g, star(3))
    with pytest.raises(GraphError):
        relocate_neighbors(cycle(3), 0, 1, {2})   # 2 is a common neighbor
    k4 = attach_pendant_paths(complete(4), 0, [2])
    h = relocate_neighbors(k4, 1, 0, {4})
    assert (h.n, h.m) == (k4.n, k4.m)
    assert sum(h.degrees) == sum(k4.degrees)


def test_attach():
    paw = attach_pendant_paths(cycle(3), 0, [1])
    assert (paw.n, paw.m) == (4, 4)
    g = attach_pendant_paths(base_graph("G1"), 0, [2, 2])
    assert g.n == 11 and pendant_count(g) == 2
    assert are_isomorphic(g, family("T3", 11, 2))
    with pytest.raises(GraphError):
        attach_pendant_paths(cycle(3), 0, [])
    with pytest.raises(GraphError):
        attach_pendant_paths(cycle(3), 0, [0])


# isomorphism

def test_isomorphism_basics():
    c4 = cycle(4)
    relabeled = c4.relabel([2, 0, 3, 1])
    assert are_isomorphic(c4, relabeled)
    iso = find_isomorphism(c4, relabeled)
    assert all(relabeled.has_edge(iso[u], iso[v]) for u, v in c4.edges)
    assert not are_isomorphic(star(3), path(4))
    assert not are_isomorphic(family("T3", 8, 1), family("T7", 8, 1))


def test_isomorphism_same_invariants():
    # two cospectral-free non-isomorphic graphs with the same degree sequence
    a = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)])
    b = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    assert a.degrees == b.degrees
    assert not are_isomorphic(a, b)


def test_canonical_form_examples():
    assert canonical_form(cycle(4)) == canonical_form(cycle(4).relabel([1, 3, 0, 2]))
    assert canonical_form(path(3)) != canonical_form(cycle(3))
    paw = attach_pendant_paths(cycle(3), 0, [1])
    forms = {canonical_form(paw.relabel(p)) for p in itertools.permutations(range(4))}
    assert len(forms) == 1


def test_canonical_labeling_is_isomorphism():
    g = family("T4", 9, 2)
    key, perm = canonical_labeling(g)
    h = g.relabel(perm)
    assert are_isomorphic(g, h)
    assert canonical_labeling(h)[0] == key


def test_canonical_form_separates_classes_exhaustively():
    # every graph on 5 vertices: canonical forms agree exactly with isomorphism
    pairs = list(itertools.combinations(range(5), 2))
    graphs = [Graph.from_edges(5, [p for i, p in enumerate(pairs) if mask >> i & 1])
              for mask in range(1 << len(pairs))]
    classes = {}
    for g in graphs:
        classes.setdefault(canonical_form(g), g)
    assert len(classes) == 34   # unlabeled graphs on 5 vertices
    reps = list(classes.values())
    for a, b in itertools.combinations(reps, 2):
        assert not are_isomorphic(a, b)


@st.composite
def graphs_and_perms(draw):
    n = draw(st.integers(1, 9))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(list(range(n))))
    return Graph.from_edges(n, edges), perm


@settings(max_examples=200, deadline=None)
@given(graphs_and_perms())
def test_canonical_form_invariant_under_relabeling(data):
    g, perm = data
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    assert are_isomorphic(g, h) and are_isomorphic(h, g)


def test_canonical_form_many_permutations():
    rng = random.Random(3)
    samples = [family("T3", 9, 2), family("T6", 9, 2), random_connected(rng, 10, 14)]
    for g in samples:
        key = canonical_form(g)
        for _ in range(100):
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(g.relabel(perm)) == key


def test_isomorphism_transitivity_spot_check():
    rng = random.Random(11)
    pool = [random_connected(rng, 6, 8) for _ in range(40)]
    for a, b, c in itertools.islice(itertools.combinations(pool, 3), 2000):
        if are_isomorphic(a, b) and are_isomorphic(b, c):
            assert are_isomorphic(a, c)
    for a in pool:
        assert are_isomorphic(a, a)


def test_canonical_size_limit():
    with pytest.raises(GraphError):
        canonical_form(path(17))
