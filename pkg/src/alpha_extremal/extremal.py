"""Argmax search over enumerated tricyclic graphs and the verification harnesses.

Search pipeline: the mask stream is screened with batched LAPACK eigenvalues,
every graph within ``SCREEN_WINDOW`` of the screened maximum is re-solved with
the power-iteration solver on its canonical relabeling, and the survivors are
grouped by canonical form.  Solving on the canonical relabeling makes the
reported radius independent of which labeling the stream produced first.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .enumeration import EnumerationQuery, enumerate_masks, mask_to_graph, screen_radii
from .families import FamilyId, family
from .graph import (
    EdgeClass,
    Graph,
    GraphError,
    attach_pendant_paths,
    canonical_labeling,
    classify_edge,
    cycle_class,
    pendant_paths,
    subdivide_edge,
    relocate_neighbors,
    to_edge_list,
)
from .sampling import random_connected_graph, random_connected_proper_subgraph
from .spectra import alpha_spectral_radius, check_alpha, spectral_radius_any

TIE_WINDOW = 1e-9
STRICT_MARGIN = 1e-12
SCREEN_WINDOW = 1e-7   # far above LAPACK error, far below any real gap seen
LEMMA_ALPHAS = (0.0, 0.3, 0.5, 0.8)
MAX_LEMMA_RETRIES = 1000


class EmptyStreamError(GraphError):
    pass


@dataclass
class _Class:
    canonical: bytes
    graph: Graph
    radius: float
    count: int = 0


@dataclass
class ExtremalReport:
    n: int
    k: int | None
    alpha: float
    class_filter: int | None
    max_radius: float
    maximizer_count: int          # labeled graphs in the stream inside the tie window
    maximizer_classes: int        # isomorphism classes inside the tie window
    witness: str                  # edge list of the canonical maximizer
    witness_canonical: str
    unique_iso_to_target: bool | None
    target_radius: float | None
    runner_up_radius: float | None
    graphs_enumerated: int
    degree_ordered: bool
    needs_high_precision: bool
    wall_time_s: float
    family_radii: dict[str, float] = field(default_factory=dict)
    family_ordering_holds: bool | None = None
    witness_pendant_paths: list[tuple[int, int]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.unique_iso_to_target is not False
                and self.family_ordering_holds is not False
                and not self.needs_high_precision)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        d["tie_window"] = TIE_WINDOW
        d["strict_margin"] = STRICT_MARGIN
        return d


class _Ranker:
    """Lazy walk over the stream in decreasing screened radius, grouped by iso class."""

    def __init__(self, n: int, masks: np.ndarray, alpha: float):
        self.n = n
        self.alpha = alpha
        self.masks = masks
        self.screen = screen_radii(n, masks, alpha)
        # stable sort: equal screened radii stay in stream order
        self.order = np.argsort(-self.screen, kind="stable")
        self.pos = 0
        self.classes: dict[bytes, _Class] = {}

    def _take(self) -> _Class:
        mask = int(self.masks[self.order[self.pos]])
        self.pos += 1
        key, perm = canonical_labeling(mask_to_graph(self.n, mask))
        cls = self.classes.get(key)
        if cls is None:
            canon = mask_to_graph(self.n, mask).relabel(perm)
            cls = _Class(key, canon, alpha_spectral_radius(canon, self.alpha).radius)
            self.classes[key] = cls
        cls.count += 1
        return cls

    def extend_to(self, floor: float) -> None:
        """Resolve every graph whose screened radius is >= floor."""
        while self.pos < len(self.order) and self.screen[self.order[self.pos]] >= floor:
            self._take()

    def next_class_excluding(self, excluded: set[bytes]) -> _Class | None:
        """Resolve graphs until one outside ``excluded`` appears, then close its window."""
        while self.pos < len(self.order):
            level = self.screen[self.order[self.pos]]
            cls = self._take()
            if cls.canonical not in excluded:
                self.extend_to(level - SCREEN_WINDOW)
                return cls
        return None

    def ranked(self) -> list[_Class]:
        return sorted(self.classes.values(), key=lambda c: (-c.radius, c.canonical))


def _target_key(target: Graph | None) -> bytes | None:
    return None if target is None else canonical_labeling(target)[0]


def argmax_radius(query: EnumerationQuery, alpha: float, target: Graph | None = None,
                  jobs: int = 1) -> ExtremalReport:
    alpha = check_alpha(alpha, allow_one=False)
    t0 = time.perf_counter()
    masks = enumerate_masks(query, jobs)
    if len(masks) == 0:
        raise EmptyStreamError(f"no graph matches n={query.n}, k={query.k}, class={query.cycle_class}")
    ranker = _Ranker(query.n, masks, alpha)
    ranker.extend_to(float(ranker.screen.max()) - SCREEN_WINDOW)

    ranked = ranker.ranked()
    best = ranked[0]
    top = [c for c in ranked if c.radius >= best.radius - TIE_WINDOW]
    target_key = _target_key(target)

    unique = None
    target_radius = None
    if target_key is not None:
        unique = [c.canonical for c in top] == [target_key]
        target_radius = alpha_spectral_radius(target, alpha).radius

    # runner-up: best class other than the target (or the witness when no target)
    exclude = {target_key if target_key is not None else best.canonical}
    if all(c.canonical in exclude for c in ranked):
        ranker.next_class_excluding(exclude)
    runner = next((c for c in ranker.ranked() if c.canonical not in exclude), None)

    return ExtremalReport(
        n=query.n,
        k=query.k,
        alpha=alpha,
        class_filter=query.cycle_class,
        max_radius=best.radius,
        maximizer_count=sum(c.count for c in top),
        maximizer_classes=len(top),
        witness=to_edge_list(best.graph),
        witness_canonical=best.canonical.hex(),
        unique_iso_to_target=unique,
        target_radius=target_radius,
        runner_up_radius=None if runner is None else runner.radius,
        graphs_enumerated=len(masks),
        degree_ordered=query.degree_ordered,
        needs_high_precision=len(top) > 1,
        wall_time_s=time.perf_counter() - t0,
        witness_pendant_paths=[(p.start, p.length) for p in pendant_paths(best.graph)],
    )


def _check_theorem_params(n: int, k: int, alpha: float) -> float:
    alpha = check_alpha(alpha, allow_one=False)
    if not 1 <= k <= n - 7:
        raise GraphError(f"need 1 <= k <= n-7, got n={n}, k={k}")
    if alpha < 0.5:
        raise GraphError(f"need 1/2 <= alpha < 1, got {alpha!r}")
    return alpha


def family_radii(n: int, k: int, alpha: float) -> dict[str, float]:
    out = {}
    for fid in FamilyId:
        try:
            out[fid.value] = alpha_spectral_radius(family(fid, n, k), alpha).radius
        except GraphError:
            continue
    return out


def family_ordering_holds(radii: dict[str, float], margin: float = STRICT_MARGIN) -> bool:
    t3 = radii[FamilyId.T3.value]
    return all(t3 - r > margin for name, r in radii.items() if name != FamilyId.T3.value)


def verify_theorem(n: int, k: int, alpha: float, jobs: int = 1,
                   degree_ordered: bool = True) -> ExtremalReport:
    alpha = _check_theorem_params(n, k, alpha)
    query = EnumerationQuery(n, k, degree_ordered=degree_ordered)
    report = argmax_radius(query, alpha, target=family(FamilyId.T3, n, k), jobs=jobs)
    report.family_radii = family_radii(n, k, alpha)
    report.family_ordering_holds = family_ordering_holds(report.family_radii)
    return report


@dataclass
class CorollaryReport:
    n: int
    k: int
    alpha: float
    target_radius: float
    runner_up_radius: float | None
    min_gap: float | None
    violations: int
    counterexample: str | None
    graphs_enumerated: int
    wall_time_s: float

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        d["strict_margin"] = STRICT_MARGIN
        return d


def verify_corollary(n: int, k: int, alpha: float, jobs: int = 1,
                     degree_ordered: bool = True) -> CorollaryReport:
    """Every non-T3 graph in the stream must sit strictly below rho(T3) - margin."""
    alpha = _check_theorem_params(n, k, alpha)
    t0 = time.perf_counter()
    target = family(FamilyId.T3, n, k)
    target_key = _target_key(target)
    target_radius = alpha_spectral_radius(target, alpha).radius
    masks = enumerate_masks(EnumerationQuery(n, k, degree_ordered=degree_ordered), jobs)
    ranker = _Ranker(n, masks, alpha)
    # anything screened near or above the target has to be resolved exactly
    ranker.extend_to(target_radius - STRICT_MARGIN - SCREEN_WINDOW)
    ranker.next_class_excluding({target_key})
    others = [c for c in ranker.ranked() if c.canonical != target_key]
    bad = [c for c in others if not c.radius < target_radius - STRICT_MARGIN]
    runner = others[0].radius if others else None
    return CorollaryReport(
        n=n,
        k=k,
        alpha=alpha,
        target_radius=target_radius,
        runner_up_radius=runner,
        min_gap=None if runner is None else target_radius - runner,
        violations=sum(c.count for c in bad),
        counterexample=to_edge_list(bad[0].graph) if bad else None,
        graphs_enumerated=len(masks),
        wall_time_s=time.perf_counter() - t0,
    )


# --------------------------------------------------------------------------
# randomized surgery checks

@dataclass
class LemmaTrialReport:
    lemma: str
    trials: int
    comparisons: int
    failures: int
    seed: int
    alphas: tuple[float, ...]
    skipped: int = 0
    min_margin: float | None = None
    first_failure: dict | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        d["strict_margin"] = STRICT_MARGIN
        return d


def _lemma1(rng, g: Graph, alpha: float):
    h = random_connected_proper_subgraph(rng, g)
    return None if h is None else (g, h)   # rho(first) > rho(second)


def _lemma3(rng, g: Graph, alpha: float):
    x = alpha_spectral_radius(g, alpha).perron
    pairs = []
    for u in range(g.n):
        for v in range(g.n):
            if u == v:
                continue
            diff = x[u] - x[v]
            if not (diff >= 1e-9 or abs(diff) <= 1e-12):
                continue
            movable = sorted(set(g.neighbors(v)) - set(g.neighbors(u)) - {u})
            if movable:
                pairs.append((u, v, movable))
    if not pairs:
        return None
    u, v, movable = pairs[int(rng.integers(len(pairs)))]
    size = int(rng.integers(1, len(movable) + 1))
    moved = sorted(int(w) for w in rng.choice(movable, size=size, replace=False))
    return relocate_neighbors(g, u, v, moved), g


def _edges_of(g: Graph, kind: EdgeClass) -> list[tuple[int, int]]:
    return [e for e in g.edges if classify_edge(g, *e) is kind]


def _lemma4(rng, g: Graph, alpha: float):
    edges = _edges_of(g, EdgeClass.INTERNAL_PATH)
    if not edges:
        return None
    u, v = edges[int(rng.integers(len(edges)))]
    return g, subdivide_edge(g, u, v)


def _lemma5(rng, g: Graph, alpha: float):
    room = 10 - g.n
    if room < 2:
        return None
    total = int(rng.integers(2, room + 1))
    s = int(rng.integers(1, total // 2 + 1))
    r = total - s
    v = int(rng.integers(g.n))
    before = attach_pendant_paths(g, v, [r, s])
    after = attach_pendant_paths(g, v, [r + 1] + ([s - 1] if s > 1 else []))
    return before, after


def _lemma6(rng, g: Graph, alpha: float):
    edges = _edges_of(g, EdgeClass.PENDANT_PATH)
    if not edges:
        return None
    u, v = edges[int(rng.integers(len(edges)))]
    return subdivide_edge(g, u, v), g


# lemma id -> (instance builder, base order range)
_LEMMAS = {
    "L1": (_lemma1, (5, 10)),
    "L3": (_lemma3, (5, 10)),
    "L4": (_lemma4, (5, 10)),
    "L5": (_lemma5, (3, 8)),
    "L6": (_lemma6, (5, 10)),
}


def _smith_exception(bigger: Graph, smaller: Graph, alpha: float) -> bool:
    """Adjacency radius 2 on both sides: subdividing can keep rho_0 = 2 exactly."""
    return (alpha == 0.0
            and abs(spectral_radius_any(bigger, 0.0) - 2.0) <= 1e-9
            and abs(spectral_radius_any(smaller, 0.0) - 2.0) <= 1e-9)


def verify_lemma_properties(trials: int, seed: int,
                            alphas: tuple[float, ...] = LEMMA_ALPHAS,
                            lemmas: tuple[str, ...] = tuple(_LEMMAS)) -> list[LemmaTrialReport]:
    """Random instances of each surgery; asserts rho(first) - rho(second) > margin."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    alphas = tuple(check_alpha(a, allow_one=False) for a in alphas)
    reports = []
    for index, lemma in enumerate(lemmas):
        build, (lo, hi) = _LEMMAS[lemma]
        rng = np.random.default_rng([seed, index])
        rep = LemmaTrialReport(lemma, trials, 0, 0, seed, alphas)
        done = 0
        attempts = 0
        while done < trials:
            attempts += 1
            if attempts > trials * MAX_LEMMA_RETRIES:
                rep.skipped = trials - done
                break
            g = random_connected_graph(rng, lo, hi)
            pairs = [build(rng, g, a) for a in alphas]
            if any(p is None for p in pairs):
                continue
            done += 1
            for a, (bigger, smaller) in zip(alphas, pairs):
                if lemma == "L4" and _smith_exception(bigger, smaller, a):
                    rep.skipped += 1
                    continue
                margin = spectral_radius_any(bigger, a) - spectral_radius_any(smaller, a)
                rep.comparisons += 1
                rep.min_margin = margin if rep.min_margin is None else min(rep.min_margin, margin)
                if not margin > STRICT_MARGIN:
                    rep.failures += 1
                    if rep.first_failure is None:
                        rep.first_failure = {"alpha": a, "margin": margin,
                                             "larger": to_edge_list(bigger),
                                             "smaller": to_edge_list(smaller)}
        reports.append(rep)
    return reports


def class_of(g: Graph) -> int:
    return int(cycle_class(g))
