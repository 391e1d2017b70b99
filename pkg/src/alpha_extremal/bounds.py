"""Closed-form bounds on rho_alpha and the arithmetic comparisons behind the family ordering."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

from .graph import Graph, GraphError, is_connected
from .spectra import alpha_spectral_radius, check_alpha, signless_laplacian_radius

SANDWICH_TOL = 1e-9


def lower_bound_maxdeg(max_degree: int, alpha: float) -> float:
    """Lower bound on rho_alpha from the maximum degree alone.

    ``alpha * (Delta + 1)`` below one half, ``alpha*Delta + (1-alpha)**2/alpha``
    from one half on; the two agree at alpha = 1/2.
    """
    alpha = check_alpha(alpha, allow_one=False)
    if max_degree < 1:
        raise ValueError("maximum degree must be >= 1")
    if alpha < 0.5:
        return alpha * (max_degree + 1)
    return alpha * max_degree + (1.0 - alpha) ** 2 / alpha


def upper_bound_degree_mean(g: Graph, alpha: float) -> float:
    """max_v alpha*d(v) + (1-alpha)*q(v), q(v) the mean degree of v's neighbors."""
    alpha = check_alpha(alpha, allow_one=False)
    deg = g.degrees
    if any(d == 0 for d in deg):
        raise GraphError("degree-mean bound needs a graph without isolated vertices")
    best = float("-inf")
    for v in range(g.n):
        q = sum(deg[u] for u in g.neighbors(v)) / deg[v]
        best = max(best, alpha * deg[v] + (1.0 - alpha) * q)
    return best


def upper_bound_sq(g: Graph, alpha: float) -> float:
    """(2*alpha - 1)*Delta + (1 - alpha)*lambda(L_S(G)), valid for alpha >= 1/2."""
    alpha = check_alpha(alpha)
    if alpha < 0.5:
        raise ValueError("signless Laplacian bound requires alpha >= 1/2")
    if not is_connected(g):
        raise GraphError("signless Laplacian bound requires a connected graph")
    return (2 * alpha - 1) * g.max_degree + (1 - alpha) * signless_laplacian_radius(g)


@dataclass(frozen=True)
class BoundsReport:
    alpha: float
    n: int
    m: int
    max_degree: int
    lower_maxdeg: float
    upper_degree_mean: float
    upper_sq: float | None
    radius: float

    @property
    def sandwich_holds(self) -> bool:
        uppers = [self.upper_degree_mean] + ([self.upper_sq] if self.upper_sq is not None else [])
        return (self.lower_maxdeg <= self.radius + SANDWICH_TOL
                and all(self.radius <= u + SANDWICH_TOL for u in uppers))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sandwich_holds"] = self.sandwich_holds
        d["tolerance"] = SANDWICH_TOL
        return d


def bounds_report(g: Graph, alpha: float) -> BoundsReport:
    alpha = check_alpha(alpha, allow_one=False)
    return BoundsReport(
        alpha=alpha,
        n=g.n,
        m=g.m,
        max_degree=g.max_degree,
        lower_maxdeg=lower_bound_maxdeg(g.max_degree, alpha),
        upper_degree_mean=upper_bound_degree_mean(g, alpha),
        upper_sq=upper_bound_sq(g, alpha) if alpha >= 0.5 else None,
        radius=alpha_spectral_radius(g, alpha).radius,
    )


# --------------------------------------------------------------------------
# inequality chain

@dataclass(frozen=True)
class InequalityRecord:
    name: str
    k: int
    alpha: float
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs < self.rhs

    def to_dict(self) -> dict:
        return {**asdict(self), "holds": self.holds}


def benchmark(k: int, alpha: float) -> float:
    """alpha*(k+6) + (1-alpha)**2/alpha: the max-degree lower bound for T3."""
    return alpha * (k + 6) + (1 - alpha) ** 2 / alpha


# Left-hand sides compared against ``benchmark``.  The first four are the
# surviving degree-mean terms for T7, the next four those for T6, and the last
# is the signless Laplacian bound for T4 with lambda(L_S(T4)) <= k + 7.
CHAIN_TERMS: dict[str, Callable[[int, float], float]] = {
    "eq4": lambda k, a: a * (k + 3) + (1 - a) * (2 * k + 9) / (k + 3),
    "eq5": lambda k, a: 3 * a + (1 - a) * (k + 9) / 3,
    "eq7": lambda k, a: 2 * a + (1 - a) * (k + 5) / 2,
    "eq100": lambda k, a: a + (1 - a) * (k + 3),
    "eq9": lambda k, a: a * (k + 4) + (1 - a) * (2 * k + 10) / (k + 4),
    "eq10": lambda k, a: 2 * a + (1 - a) * (k + 8) / 2,
    "eq11": lambda k, a: 4 * a + (1 - a) * (k + 10) / 4,
    "eq101": lambda k, a: a + (1 - a) * (k + 4),
    "claim3": lambda k, a: (1 - a) * (k + 7) + (2 * a - 1) * (k + 5),
}


def inequality_chain(k: int, alpha: float) -> list[InequalityRecord]:
    if k < 1:
        raise ValueError("k must be >= 1")
    alpha = check_alpha(alpha, allow_one=False)
    if alpha < 0.5:
        raise ValueError("the inequality chain is stated for alpha in [1/2, 1)")
    rhs = benchmark(k, alpha)
    return [InequalityRecord(name, k, alpha, term(k, alpha), rhs)
            for name, term in CHAIN_TERMS.items()]


def alpha_grid(spec: str) -> list[float]:
    """Parse ``start:stop:step`` (inclusive stop) into a list of decimal-exact alphas."""
    from decimal import Decimal

    try:
        start, stop, step = (Decimal(p) for p in spec.split(":"))
    except Exception:
        raise ValueError(f"alpha grid must look like start:stop:step, got {spec!r}") from None
    if step <= 0 or stop < start:
        raise ValueError("alpha grid needs step > 0 and stop >= start")
    out = []
    x = start
    while x <= stop:
        out.append(float(x))
        x += step
    return out
