"""
Bipartite incidence graphs between families of geometric objects, rich
filtering, and the dyadic bucket decomposition.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, List, Mapping, Sequence, Tuple

from app.errors import DimensionMismatchError, InvalidArgumentError
from app.models.geometry import GeometricObject, ambient_dim, contains, object_dim

logger = logging.getLogger(__name__)


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class IncidenceGraph:
    """Edge (a, b) iff left[a] is contained in right[b]."""
    left: Tuple[GeometricObject, ...]
    right: Tuple[GeometricObject, ...]
    adjacency: Tuple[Tuple[int, ...], ...]
    right_degrees: Tuple[int, ...] = field(repr=False, default=())

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency)

    @cached_property
    def right_adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        cols: List[List[int]] = [[] for _ in self.right]
        for a, nbrs in enumerate(self.adjacency):
            for b in nbrs:
                cols[b].append(a)
        return tuple(tuple(c) for c in cols)

    def degree(self, side: Side, index: int) -> int:
        if side == Side.LEFT:
            return len(self.adjacency[index])
        return self.right_degrees[index]

    def degrees(self, side: Side) -> Tuple[int, ...]:
        if side == Side.LEFT:
            return tuple(len(a) for a in self.adjacency)
        return self.right_degrees

    def neighbors(self, side: Side, index: int) -> Tuple[int, ...]:
        if side == Side.LEFT:
            return self.adjacency[index]
        return self.right_adjacency[index]

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adjacency[a]

    def edges(self) -> List[Tuple[int, int]]:
        return [(a, b) for a, nbrs in enumerate(self.adjacency) for b in nbrs]

    def restrict(self, left_keep: Sequence[int], right_keep: Sequence[int]) -> "IncidenceGraph":
        """Induced subgraph; indices are renumbered in the given order."""
        right_pos = {b: j for j, b in enumerate(right_keep)}
        adjacency = tuple(
            tuple(sorted(right_pos[b] for b in self.adjacency[a] if b in right_pos))
            for a in left_keep
        )
        return _with_degrees(
            tuple(self.left[a] for a in left_keep),
            tuple(self.right[b] for b in right_keep),
            adjacency,
        )


def _with_degrees(left, right, adjacency) -> IncidenceGraph:
    degrees = [0] * len(right)
    for nbrs in adjacency:
        for b in nbrs:
            degrees[b] += 1
    return IncidenceGraph(tuple(left), tuple(right), tuple(adjacency), tuple(degrees))


def build_graph(left: Sequence[GeometricObject], right: Sequence[GeometricObject]) -> IncidenceGraph:
    """Incidence graph G(A, B) with an edge iff a ⊆ b, by exact predicates."""
    objects = list(left) + list(right)
    if objects:
        d = ambient_dim(objects[0])
        for obj in objects:
            if ambient_dim(obj) != d:
                raise DimensionMismatchError(f"object in R^{ambient_dim(obj)} mixed with objects in R^{d}")
    left_dims = {object_dim(a) for a in left}
    right_dims = {object_dim(b) for b in right}
    if left_dims and right_dims and max(left_dims) >= min(right_dims):
        raise DimensionMismatchError(
            f"left objects (dims {sorted(left_dims)}) must be lower-dimensional than right (dims {sorted(right_dims)})"
        )
    adjacency = tuple(
        tuple(j for j, b in enumerate(right) if contains(b, a))
        for a in left
    )
    graph = _with_degrees(left, right, adjacency)
    logger.debug(f"built incidence graph {len(left)}x{len(right)} with {graph.edge_count} edges")
    return graph


def filter_rich(graph: IncidenceGraph, side: Side, k) -> FrozenSet[int]:
    """Objects on one side whose degree is at least k."""
    if k < 0:
        raise InvalidArgumentError(f"richness threshold must be nonnegative, got {k}")
    return frozenset(i for i, deg in enumerate(graph.degrees(Side(side))) if deg >= k)


@dataclass(frozen=True)
class DyadicBucket:
    """Objects whose multiplicity lies in [2**level, 2**(level + 1))."""
    level: int
    members: Tuple[Hashable, ...]

    @property
    def low(self) -> int:
        return 1 << self.level

    @property
    def high(self) -> int:
        return 1 << (self.level + 1)

    def __len__(self) -> int:
        return len(self.members)


def dyadic_level(count: int) -> int:
    return count.bit_length() - 1


def dyadic_buckets(multiplicities: Mapping[Hashable, int]) -> List[DyadicBucket]:
    """Partition objects with count >= 1 by dyadic level, lowest level first."""
    levels: Dict[int, List[Hashable]] = {}
    for obj, count in multiplicities.items():
        if count < 0:
            raise InvalidArgumentError(f"negative multiplicity {count} for {obj!r}")
        if count == 0:
            continue
        levels.setdefault(dyadic_level(count), []).append(obj)
    return [DyadicBucket(level, tuple(levels[level])) for level in sorted(levels)]
