"""
Exact maximum biclique of a point/hyperplane incidence graph.

All hyperplanes of a K_{r,s} contain the affine hull of its r points, so the
maximum of r*s is attained by some flat F: the points on F against the
hyperplanes containing F. The oracle enumerates those flats.
"""
import logging
from dataclasses import dataclass
from math import comb
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from app.errors import InvalidArgumentError, OracleCapExceededError
from app.models.geometry import Configuration, Flat, flat_contained, incident, spanned_flats
from app.models.incidence_graph import IncidenceGraph, Side, build_graph

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 10 ** 7


@dataclass(frozen=True)
class Biclique:
    """r points each lying on each of s hyperplanes, by configuration index."""
    point_indices: Tuple[int, ...] = ()
    hyperplane_indices: Tuple[int, ...] = ()
    witness_flat: Optional[Flat] = None
    source: str = ""

    def __post_init__(self):
        object.__setattr__(self, "point_indices", tuple(sorted(set(self.point_indices))))
        object.__setattr__(self, "hyperplane_indices", tuple(sorted(set(self.hyperplane_indices))))

    @property
    def r(self) -> int:
        return len(self.point_indices)

    @property
    def s(self) -> int:
        return len(self.hyperplane_indices)

    @property
    def rs(self) -> int:
        return self.r * self.s

    def rank_key(self) -> Tuple:
        """Smaller is better: larger rs, then larger r, then lexicographic indices."""
        return (-self.rs, -self.r, self.point_indices, self.hyperplane_indices)


def best_of(bicliques: Iterable[Biclique]) -> Biclique:
    return min(bicliques, key=Biclique.rank_key, default=Biclique())


def incidence_graph(c: Configuration) -> IncidenceGraph:
    return build_graph(c.points, c.hyperplanes)


def flat_biclique(c: Configuration, flat: Flat, source: str = "flat") -> Biclique:
    """Points on the flat against hyperplanes containing it."""
    points = tuple(i for i, p in enumerate(c.points) if flat.contains_point(p))
    hyperplanes = tuple(j for j, h in enumerate(c.hyperplanes) if flat_contained(flat, h))
    return Biclique(points, hyperplanes, flat, source)


def degree_bicliques(graph: IncidenceGraph, source: str = "degree") -> List[Biclique]:
    """The best K_{1,s} and K_{r,1} of the graph (empty list when it has no edges)."""
    out = []
    if graph.edge_count == 0:
        return out
    left = graph.degrees(Side.LEFT)
    a = max(range(len(left)), key=lambda i: (left[i], -i))
    out.append(Biclique((a,), graph.neighbors(Side.LEFT, a), source=f"{source}:point"))
    right = graph.degrees(Side.RIGHT)
    b = max(range(len(right)), key=lambda j: (right[j], -j))
    out.append(Biclique(graph.neighbors(Side.RIGHT, b), (b,), source=f"{source}:hyperplane"))
    return out


def _subset_estimate(sizes: Sequence[int], d: int) -> int:
    return sum(comb(size, j) for size in sizes for j in range(1, d + 1))


def candidate_flats(c: Configuration, cap: int = DEFAULT_ORACLE_CAP) -> Set[Flat]:
    """
    Every proper flat spanned by points of c. The hull of any point subset
    is the hull of at most d of them, so this covers all hulls.
    """
    if not c.points:
        return set()
    estimate = _subset_estimate([c.m], c.dim)
    if estimate > cap:
        raise OracleCapExceededError(estimate, cap)
    return set(spanned_flats(c.points, c.dim - 1))


def max_biclique_oracle(c: Configuration, cap: int = DEFAULT_ORACLE_CAP) -> Biclique:
    """
    rs(P, Q): the largest complete bipartite subgraph of G(P, Q).

    Flats holding no hyperplane contribute nothing, so the hull lattice is
    enumerated inside each hyperplane only.
    """
    if not c.points or not c.hyperplanes:
        return Biclique(source="oracle")
    on_h = [[i for i, p in enumerate(c.points) if incident(p, h)] for h in c.hyperplanes]
    estimate = _subset_estimate([len(ix) for ix in on_h], c.dim)
    if estimate > cap:
        logger.warning(f"oracle refused: estimated {estimate} subsets exceed cap {cap}")
        raise OracleCapExceededError(estimate, cap)

    seen: Set[Flat] = set()
    candidates: List[Biclique] = degree_bicliques(incidence_graph(c), source="oracle")
    for indices in on_h:
        if not indices:
            continue
        local = [c.points[i] for i in indices]
        for flat, mask in spanned_flats(local, c.dim - 1).items():
            if flat in seen:
                continue
            seen.add(flat)
            points = tuple(indices[t] for t in range(len(indices)) if mask >> t & 1)
            hyperplanes = tuple(j for j, h in enumerate(c.hyperplanes) if flat_contained(flat, h))
            candidates.append(Biclique(points, hyperplanes, flat, "oracle"))
    best = best_of(candidates)
    logger.info(f"oracle: {len(seen)} candidate flats, rs={best.rs} (r={best.r}, s={best.s})")
    return best


def validate_biclique(c: Configuration, b: Biclique) -> bool:
    """True iff every listed pair is incident (and the witness flat, if any, fits)."""
    for i in b.point_indices:
        if not 0 <= i < c.m:
            raise InvalidArgumentError(f"point index {i} out of range for m={c.m}")
    for j in b.hyperplane_indices:
        if not 0 <= j < c.n:
            raise InvalidArgumentError(f"hyperplane index {j} out of range for n={c.n}")
    if b.rs != len(b.point_indices) * len(b.hyperplane_indices):
        return False
    for i in b.point_indices:
        for j in b.hyperplane_indices:
            if not incident(c.points[i], c.hyperplanes[j]):
                return False
    if b.witness_flat is not None and b.r and b.s:
        if not all(b.witness_flat.contains_point(c.points[i]) for i in b.point_indices):
            return False
        if not all(flat_contained(b.witness_flat, c.hyperplanes[j]) for j in b.hyperplane_indices):
            return False
    return True
