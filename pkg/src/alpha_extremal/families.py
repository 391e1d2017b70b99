"""Base graphs and the extremal tricyclic families T3, T4, T6, T7.

Every base graph puts its attachment vertex at label 0.  A family member of
order n with k pendant vertices is the base graph with k pendant paths of
nearly equal lengths hung from vertex 0, longest first.

  G1  three triangles sharing vertex 0                       (n=7, m=9)
  G2  diamond K4-e plus a triangle, both on a degree-3 vertex (n=6, m=8)
  G3  K_{1,1,3}: two adjacent hubs joined through three 2-paths (n=5, m=7)
  K4  complete graph on four vertices                         (n=4, m=6)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .graph import Graph, GraphError, attach_pendant_paths


class BaseId(str, enum.Enum):
    G1 = "G1"
    G2 = "G2"
    G3 = "G3"
    K4 = "K4"


class FamilyId(str, enum.Enum):
    T3 = "T3"
    T4 = "T4"
    T6 = "T6"
    T7 = "T7"


FAMILY_BASE = {
    FamilyId.T3: BaseId.G1,
    FamilyId.T4: BaseId.G2,
    FamilyId.T6: BaseId.G3,
    FamilyId.T7: BaseId.K4,
}

_BASE_EDGES = {
    BaseId.G1: (7, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4), (0, 5), (0, 6), (5, 6)]),
    # theta graph with branch vertices 0, 1 and paths 0-1, 0-2-1, 0-3-1; triangle 0-4-5
    BaseId.G2: (6, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (0, 5), (4, 5)]),
    # hubs 0, 1 joined directly and through 2, 3, 4
    BaseId.G3: (5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (0, 4), (1, 4)]),
    BaseId.K4: (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
}


def base_order(base: BaseId | str) -> int:
    return _BASE_EDGES[BaseId(base)][0]


def base_graph(base: BaseId | str) -> Graph:
    n, edges = _BASE_EDGES[BaseId(base)]
    return Graph.from_edges(n, edges)


def nearly_equal_lengths(total: int, k: int) -> list[int]:
    """Split ``total`` vertices into k path lengths differing by at most one, longest first."""
    if k < 1 or total < k:
        raise ValueError(f"cannot split {total} vertices into {k} nonempty paths")
    q, r = divmod(total, k)
    return [q + 1] * r + [q] * (k - r)


@dataclass(frozen=True)
class FamilySpec:
    family: FamilyId
    n: int
    k: int

    def __post_init__(self):
        object.__setattr__(self, "family", FamilyId(self.family))
        base_n = base_order(FAMILY_BASE[self.family])
        if self.k < 1:
            raise GraphError("k must be >= 1")
        if self.n < base_n + self.k:
            raise GraphError(
                f"{self.family.value} needs n >= {base_n + self.k} for k={self.k}, got n={self.n}")
        if self.family is FamilyId.T3 and self.k > self.n - 7:
            raise GraphError(f"T3 requires 1 <= k <= n-7, got n={self.n}, k={self.k}")


def construct_family(spec: FamilySpec) -> Graph:
    base = FAMILY_BASE[spec.family]
    extra = spec.n - base_order(base)
    return attach_pendant_paths(base_graph(base), 0, nearly_equal_lengths(extra, spec.k))


def family(family_id: FamilyId | str, n: int, k: int) -> Graph:
    return construct_family(FamilySpec(FamilyId(family_id), n, k))


_ATTACH_DEGREE = {FamilyId.T3: 6, FamilyId.T4: 5, FamilyId.T6: 4, FamilyId.T7: 3}


def family_max_degree(family_id: FamilyId | str, k: int) -> int:
    if k < 1:
        raise ValueError("k must be >= 1")
    return _ATTACH_DEGREE[FamilyId(family_id)] + k
