from __future__ import annotations

import pytest

from alpha_extremal.bounds import (
    CHAIN_TERMS,
    SANDWICH_TOL,
    alpha_grid,
    benchmark,
    bounds_report,
    inequality_chain,
    lower_bound_maxdeg,
    upper_bound_degree_mean,
    upper_bound_sq,
)
from alpha_extremal.families import family
from alpha_extremal.spectra import alpha_spectral_radius, signless_laplacian_radius

from conftest import complete, cycle, star

GRID = alpha_grid("0.5:0.95:0.05")


def test_lower_bound_examples():
    assert lower_bound_maxdeg(7, 0.5) == 4.0
    assert lower_bound_maxdeg(3, 0.9) == pytest.approx(2.7 + 0.01 / 0.9, abs=1e-15)
    assert lower_bound_maxdeg(3, 0.3) == pytest.approx(1.2, abs=1e-15)
    for d in range(1, 20):
        assert lower_bound_maxdeg(d, 0.5) == (d + 1) / 2
        assert lower_bound_maxdeg(d, 0.5 - 1e-12) == pytest.approx((d + 1) / 2, abs=1e-10)


def test_degree_mean_examples():
    for a in (0.0, 0.3, 0.5, 0.9):
        assert upper_bound_degree_mean(complete(4), a) == pytest.approx(3.0, abs=1e-15)
    assert upper_bound_degree_mean(star(3), 0.0) == 3.0
    assert upper_bound_degree_mean(cycle(5), 0.5) == 2.0


def test_sq_examples():
    for n in (3, 6, 9):
        assert upper_bound_sq(cycle(n), 0.75) == pytest.approx(2.0, abs=1e-10)
    assert upper_bound_sq(star(4), 0.5) == pytest.approx(2.5, abs=1e-10)
    assert upper_bound_sq(star(4), 0.5) == pytest.approx(alpha_spectral_radius(star(4), 0.5).radius, abs=1e-10)
    t4 = family("T4", 9, 2)
    assert upper_bound_sq(t4, 0.6) >= alpha_spectral_radius(t4, 0.6).radius
    with pytest.raises(ValueError):
        upper_bound_sq(t4, 0.4)


def test_bounds_report_fields():
    rep = bounds_report(complete(4), 0.6)
    assert rep.lower_maxdeg == pytest.approx(1.8 + 0.16 / 0.6, abs=1e-15)   # Delta(K4) = 3
    assert rep.radius == pytest.approx(3.0, abs=1e-12)
    assert rep.upper_degree_mean == pytest.approx(3.0) and rep.upper_sq == pytest.approx(3.0)
    assert rep.sandwich_holds
    assert bounds_report(complete(4), 0.3).upper_sq is None
    d = rep.to_dict()
    assert d["tolerance"] == SANDWICH_TOL and d["sandwich_holds"] is True


def test_chain_examples():
    recs = {r.name: r for r in inequality_chain(1, 0.5)}
    assert list(recs) == list(CHAIN_TERMS)
    assert recs["eq4"].lhs == 3.375 and recs["eq4"].rhs == 4.0 and recs["eq4"].holds
    assert recs["eq11"].lhs == 3.375 and recs["eq11"].holds
    with pytest.raises(ValueError):
        inequality_chain(1, 0.4)
    with pytest.raises(ValueError):
        inequality_chain(0, 0.6)


def test_alpha_grid():
    assert GRID == [0.5, 0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95]
    with pytest.raises(ValueError):
        alpha_grid("0.5:0.9")


def test_claim3_equality_at_one_half():
    # at alpha = 1/2 the signless Laplacian route meets the benchmark with equality
    for k in range(1, 51):
        rec = inequality_chain(k, 0.5)[-1]
        assert rec.name == "claim3" and rec.lhs == rec.rhs == (k + 7) / 2


def test_chain_strict_above_one_half():
    for k in range(1, 51):
        for a in GRID[1:]:
            assert all(r.holds for r in inequality_chain(k, a))


def test_one_half_strictness_through_the_radius():
    # at alpha = 1/2 strictness comes from rho(T3) > (k+7)/2 >= lambda(L_S(T4))/2
    for n in range(8, 15):
        for k in range(1, n - 6):
            rho3 = alpha_spectral_radius(family("T3", n, k), 0.5).radius
            assert rho3 > (k + 7) / 2 + 1e-12
            assert signless_laplacian_radius(family("T4", n, k)) / 2 <= (k + 7) / 2 + 1e-9


def test_benchmark_is_t3_lower_bound():
    for k in (1, 3, 6):
        for a in GRID:
            assert benchmark(k, a) == pytest.approx(lower_bound_maxdeg(k + 6, a), abs=1e-14)
