"""Exhaustive enumeration of labeled tricyclic graphs with a given pendant count.

Graphs travel as int64 edge masks: bit ``e`` is set when the ``e``-th pair of
the lexicographic pair order ``(0,1), (0,2), ..., (n-2,n-1)`` is an edge.

The search is a depth-first walk over edges in that order, taking each edge
before skipping it, so graphs come out in lexicographic order of their sorted
edge sets.  Vertex ``u``'s degree is final once the pair ``(u, n-1)`` has been
decided; the search prunes on finalized isolated vertices, on too many
finalized pendant vertices, and (in degree-ordered mode) on degrees that
would break ``d(0) >= d(1) >= ... >= d(n-1)``.

Degree-ordered mode yields only labelings with non-increasing degrees.  Every
isomorphism class has such a labeling, so maxima and the set of maximizing
classes are the same as over the full labeled stream, at a fraction of the
cost.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np
from numba import njit, types
from numba.typed import List as NumbaList

from .graph import Graph, GraphError
from .spectra import batch_top_eigenvalues, check_alpha

DEFAULT_MAX_N = 9
MASK_MAX_N = 11  # n*(n-1)/2 must fit in a signed 64-bit mask
MAX_N_ENV = "ALPHA_EXTREMAL_MAX_N"
SCREEN_CHUNK = 50_000


def exhaustive_max_n() -> int:
    raw = os.environ.get(MAX_N_ENV)
    if raw is None:
        return DEFAULT_MAX_N
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_N_ENV} must be an integer, got {raw!r}") from None
    return min(value, MASK_MAX_N)


def pair_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    us, vs = np.triu_indices(n, k=1)
    return us.astype(np.int64), vs.astype(np.int64)


def mask_to_graph(n: int, mask: int) -> Graph:
    us, vs = pair_index(n)
    mask = int(mask)
    return Graph(n, tuple((int(us[e]), int(vs[e])) for e in range(len(us)) if (mask >> e) & 1))


def graph_to_mask(g: Graph) -> int:
    us, vs = pair_index(g.n)
    index = {(int(u), int(v)): e for e, (u, v) in enumerate(zip(us, vs))}
    mask = 0
    for e in g.edges:
        mask |= 1 << index[e]
    return mask


# --------------------------------------------------------------------------
# numba kernels

@njit(cache=True)
def _leaf_ok(n, k, ordered, eu, ev, deg, chosen, upto):
    pend = 0
    for w in range(n):
        if deg[w] == 0:
            return False
        if deg[w] == 1:
            pend += 1
        if ordered and w > 0 and deg[w] > deg[w - 1]:
            return False
    if k >= 0 and pend != k:
        return False
    adj = np.zeros(n, np.int64)
    for e in range(upto):
        if chosen[e]:
            adj[eu[e]] |= np.int64(1) << ev[e]
            adj[ev[e]] |= np.int64(1) << eu[e]
    seen = np.int64(1)
    frontier = np.int64(1)
    while frontier != 0:
        nxt = np.int64(0)
        for v in range(n):
            if (frontier >> v) & 1:
                nxt |= adj[v]
        nxt &= ~seen
        seen |= nxt
        frontier = nxt
    return seen == (np.int64(1) << n) - 1


@njit(cache=True)
def _prune_ok(n, k, ordered, pos, eu, ev, deg):
    u = eu[pos]
    if ev[pos] != n - 1:
        return True
    # deciding (u, n-1) finalizes u, and also n-1 when u == n-2
    last = n - 1 if u == n - 2 else u
    pend = 0
    for w in range(last + 1):
        if deg[w] == 0:
            return False
        if deg[w] == 1:
            pend += 1
    if k >= 0 and pend > k:
        return False
    if ordered:
        if u > 0 and deg[u] > deg[u - 1]:
            return False
        for w in range(u + 1, n):
            if deg[w] > deg[u]:
                return False
    return True


@njit(cache=True)
def _search(pos, nsel, n, m, k, ordered, n_prefix, prefix, eu, ev, deg, chosen, out):
    npairs = eu.shape[0]
    if nsel == m:
        if _leaf_ok(n, k, ordered, eu, ev, deg, chosen, pos):
            mask = np.int64(0)
            for e in range(pos):
                if chosen[e]:
                    mask |= np.int64(1) << e
            out.append(mask)
        return
    if npairs - pos < m - nsel:
        return
    u = eu[pos]
    v = ev[pos]
    for take in (1, 0):
        if pos < n_prefix and ((prefix >> pos) & 1) != take:
            continue
        if take:
            chosen[pos] = 1
            deg[u] += 1
            deg[v] += 1
        if _prune_ok(n, k, ordered, pos, eu, ev, deg):
            _search(pos + 1, nsel + take, n, m, k, ordered, n_prefix, prefix,
                    eu, ev, deg, chosen, out)
        if take:
            chosen[pos] = 0
            deg[u] -= 1
            deg[v] -= 1


@njit(cache=True)
def _single_cycle(n, eu, ev, sub):
    deg = np.zeros(n, np.int64)
    first = -1
    count = 0
    for e in range(eu.shape[0]):
        if (sub >> e) & 1:
            deg[eu[e]] += 1
            deg[ev[e]] += 1
            count += 1
            if first < 0:
                first = e
    if count == 0:
        return False
    for w in range(n):
        if deg[w] != 0 and deg[w] != 2:
            return False
    # walk the edges reachable from the first one
    reached = np.int64(1) << first
    grew = True
    while grew:
        grew = False
        for e in range(eu.shape[0]):
            if (sub >> e) & 1 and not (reached >> e) & 1:
                for f in range(eu.shape[0]):
                    if (reached >> f) & 1 and (eu[e] == eu[f] or eu[e] == ev[f]
                                               or ev[e] == eu[f] or ev[e] == ev[f]):
                        reached |= np.int64(1) << e
                        grew = True
                        break
    return reached == sub


@njit(cache=True)
def _cycle_count(n, eu, ev, mask):
    npairs = eu.shape[0]
    depth = np.full(n, -1, np.int64)
    parent_edge = np.full(n, -1, np.int64)
    parent = np.full(n, -1, np.int64)
    queue = np.zeros(n, np.int64)
    depth[0] = 0
    head, tail = 0, 1
    while head < tail:
        v = queue[head]
        head += 1
        for e in range(npairs):
            if (mask >> e) & 1:
                if eu[e] == v:
                    w = ev[e]
                elif ev[e] == v:
                    w = eu[e]
                else:
                    continue
                if depth[w] < 0:
                    depth[w] = depth[v] + 1
                    parent[w] = v
                    parent_edge[w] = e
                    queue[tail] = w
                    tail += 1
    tree = np.int64(0)
    for w in range(n):
        if parent_edge[w] >= 0:
            tree |= np.int64(1) << parent_edge[w]
    basis = np.zeros(npairs, np.int64)
    c = 0
    for e in range(npairs):
        if (mask >> e) & 1 and not (tree >> e) & 1:
            cyc = np.int64(1) << e
            a, b = eu[e], ev[e]
            while a != b:
                if depth[a] < depth[b]:
                    a, b = b, a
                cyc |= np.int64(1) << parent_edge[a]
                a = parent[a]
            basis[c] = cyc
            c += 1
    total = 0
    for s in range(1, 1 << c):
        acc = np.int64(0)
        for i in range(c):
            if (s >> i) & 1:
                acc ^= basis[i]
        if _single_cycle(n, eu, ev, acc):
            total += 1
    return total


@njit(cache=True)
def _cycle_counts(n, eu, ev, masks):
    out = np.empty(masks.shape[0], np.int64)
    for i in range(masks.shape[0]):
        out[i] = _cycle_count(n, eu, ev, masks[i])
    return out


def cycle_counts(n: int, masks: np.ndarray) -> np.ndarray:
    """Cycle count of each connected graph in a mask array (same method as graph.count_cycles)."""
    eu, ev = pair_index(n)
    return _cycle_counts(n, eu, ev, np.asarray(masks, dtype=np.int64))


# --------------------------------------------------------------------------
# queries

@dataclass(frozen=True)
class EnumerationQuery:
    """Connected graphs on ``n`` vertices with ``n + 2`` edges.

    ``k=None`` drops the pendant-count constraint; ``cycle_class`` filters on
    the number of cycles.  ``degree_ordered`` restricts to labelings with
    non-increasing degrees (see module docstring).
    """

    n: int
    k: int | None
    cycle_class: int | None = None
    alphas: tuple[float, ...] = field(default=())
    degree_ordered: bool = False
    extra_edges: int = 2

    def __post_init__(self):
        if self.n < 2:
            raise GraphError("enumeration needs n >= 2")
        cap = exhaustive_max_n()
        if self.n > cap:
            raise GraphError(
                f"exhaustive enumeration is capped at n <= {cap} (set {MAX_N_ENV} to raise it, "
                f"at most {MASK_MAX_N})")
        if self.k is not None and self.k < 0:
            raise GraphError("k must be non-negative")
        if self.cycle_class is not None and self.cycle_class not in (3, 4, 6, 7):
            raise GraphError("cycle class must be one of 3, 4, 6, 7")
        object.__setattr__(self, "alphas", tuple(check_alpha(a, allow_one=False) for a in self.alphas))

    @property
    def m(self) -> int:
        return self.n + self.extra_edges


def _prefix_bits(jobs: int) -> int:
    return max(2, math.ceil(math.log2(max(jobs, 1))) + 2)


def _partition_masks(n: int, m: int, k: int, ordered: bool, n_prefix: int, prefix: int,
                     cycle_class: int) -> np.ndarray:
    eu, ev = pair_index(n)
    out = NumbaList.empty_list(types.int64)
    _search(0, 0, n, m, k, ordered, n_prefix, np.int64(prefix), eu, ev,
            np.zeros(n, np.int64), np.zeros(len(eu), np.int64), out)
    masks = np.asarray(out, dtype=np.int64) if len(out) else np.empty(0, np.int64)
    if cycle_class >= 0 and len(masks):
        masks = masks[_cycle_counts(n, eu, ev, masks) == cycle_class]
    return masks


def _partitions(query: EnumerationQuery, jobs: int) -> list[tuple]:
    npairs = query.n * (query.n - 1) // 2
    p = min(_prefix_bits(jobs), npairs)
    k = -1 if query.k is None else query.k
    cc = -1 if query.cycle_class is None else query.cycle_class
    prefixes = []
    # include-first order over the prefix keeps the concatenated stream lexicographic
    for code in range(1 << p):
        bits = 0
        for i in range(p):
            if not (code >> (p - 1 - i)) & 1:
                bits |= 1 << i
        prefixes.append((query.n, query.m, k, query.degree_ordered, p, bits, cc))
    return prefixes


def iter_mask_batches(query: EnumerationQuery, jobs: int = 1) -> Iterator[np.ndarray]:
    """Mask arrays per work partition, in deterministic stream order."""
    parts = _partitions(query, jobs)
    if jobs <= 1:
        for args in parts:
            yield _partition_masks(*args)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_partition_masks, *zip(*parts))


def enumerate_masks(query: EnumerationQuery, jobs: int = 1) -> np.ndarray:
    batches = list(iter_mask_batches(query, jobs))
    return np.concatenate(batches) if batches else np.empty(0, np.int64)


def enumerate_tricyclic(query: EnumerationQuery, jobs: int = 1) -> Iterator[Graph]:
    """Yield every matching labeled graph exactly once, lexicographically by edge set."""
    for batch in iter_mask_batches(query, jobs):
        for mask in batch:
            yield mask_to_graph(query.n, int(mask))


# --------------------------------------------------------------------------
# bulk spectra

def _incidence(n: int) -> np.ndarray:
    eu, ev = pair_index(n)
    inc = np.zeros((len(eu), n), dtype=np.int64)
    inc[np.arange(len(eu)), eu] = 1
    inc[np.arange(len(eu)), ev] = 1
    return inc


def _mask_bits(n: int, masks: np.ndarray) -> np.ndarray:
    npairs = n * (n - 1) // 2
    return (np.asarray(masks, dtype=np.int64)[:, None] >> np.arange(npairs)) & 1


def a_alpha_stack(n: int, masks: np.ndarray, alpha: float) -> np.ndarray:
    eu, ev = pair_index(n)
    bits = _mask_bits(n, masks)
    stack = np.zeros((len(bits), n, n))
    stack[:, eu, ev] = (1.0 - alpha) * bits
    stack[:, ev, eu] = (1.0 - alpha) * bits
    stack[:, np.arange(n), np.arange(n)] = alpha * (bits @ _incidence(n))
    return stack


def screen_radii(n: int, masks: np.ndarray, alpha: float, chunk: int = SCREEN_CHUNK) -> np.ndarray:
    """rho_alpha for every mask via batched LAPACK eigvalsh (screening only)."""
    alpha = check_alpha(alpha, allow_one=False)
    masks = np.asarray(masks, dtype=np.int64)
    out = np.empty(len(masks))
    for start in range(0, len(masks), chunk):
        block = masks[start:start + chunk]
        out[start:start + len(block)] = batch_top_eigenvalues(a_alpha_stack(n, block, alpha))
    return out


def degree_sequences(n: int, masks: Sequence[int]) -> np.ndarray:
    return _mask_bits(n, np.asarray(masks, dtype=np.int64)) @ _incidence(n)
