"""
Hypergraph data model.

Vertices are 1..n; each edge is stored as a bit mask (vertex v is bit v-1) and
the edge tuple is kept sorted by (size, mask value), so two hypergraphs with the
same edge set compare and hash equal.
"""
import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

from ..utils.bits import edge_key, mask_to_vertices, popcount, vertices_to_mask
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)

MAX_VERTICES = 63
DEFAULT_MIN_EDGE_SIZE = 2


@dataclass(frozen=True)
class Hypergraph:
    """Immutable hypergraph on vertices 1..n with a set of distinct edges"""
    n: int
    edges: Tuple[int, ...]

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int]) -> "Hypergraph":
        """Build from edge masks already known to be valid; deduplicates and sorts"""
        return cls(n, tuple(sorted(set(masks), key=edge_key)))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def edge_sets(self) -> Tuple[Tuple[int, ...], ...]:
        """Edges as sorted vertex tuples, in canonical edge order"""
        return tuple(mask_to_vertices(e) for e in self.edges)

    def edge_sizes(self) -> Tuple[int, ...]:
        return tuple(popcount(e) for e in self.edges)

    def min_edge_size(self) -> Optional[int]:
        return min(self.edge_sizes()) if self.edges else None

    def degrees(self) -> Tuple[int, ...]:
        """Degree of vertex v at index v-1"""
        return tuple(sum(1 for e in self.edges if e >> v & 1) for v in range(self.n))

    def is_sperner(self) -> bool:
        """No edge contains another"""
        for i, a in enumerate(self.edges):
            for b in self.edges[i + 1:]:
                if a & b == a or a & b == b:
                    return False
        return True

    def permuted(self, perm: Sequence[int]) -> "Hypergraph":
        """
        Relabel vertices: vertex v goes to perm[v-1].

        Args:
            perm: A permutation of 1..n given as a sequence of length n
        """
        if sorted(perm) != list(range(1, self.n + 1)):
            raise ValidationError(f"not a permutation of 1..{self.n}: {list(perm)}")
        images = []
        for e in self.edges:
            image = 0
            for v in mask_to_vertices(e):
                image |= 1 << (perm[v - 1] - 1)
            images.append(image)
        return Hypergraph.from_masks(self.n, images)

    def with_edge(self, mask: int) -> "Hypergraph":
        return Hypergraph.from_masks(self.n, self.edges + (mask,))

    def __str__(self) -> str:
        edges = ", ".join("{" + ",".join(map(str, e)) + "}" for e in self.edge_sets())
        return f"Hypergraph(n={self.n}, edges=[{edges}])"


def make_hypergraph(n: int, edges: Iterable[Iterable[int]],
                    allow_small_edges: bool = False,
                    min_edge_size: int = DEFAULT_MIN_EDGE_SIZE,
                    uniform: Optional[int] = None) -> Hypergraph:
    """
    Validate and normalize a hypergraph.

    Args:
        n: Vertex count (vertices are 1..n)
        edges: Vertex subsets; duplicates and repeated vertices are merged
        allow_small_edges: Permit edges below min_edge_size (still nonempty)
        min_edge_size: Smallest edge size accepted without the override flag
        uniform: If given, every edge must have exactly this many vertices

    Returns:
        Normalized Hypergraph
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"vertex count must be a positive integer, got {n!r}")
    if n > MAX_VERTICES:
        raise ValidationError(f"vertex count {n} exceeds the bit-mask limit {MAX_VERTICES}")

    masks = set()
    for edge in edges:
        vertices = set(edge)
        if not vertices:
            raise ValidationError("empty edge")
        for v in vertices:
            if not isinstance(v, int) or v < 1 or v > n:
                raise ValidationError(f"vertex {v} out of range 1..{n}")
        if len(vertices) < min_edge_size and not allow_small_edges:
            raise ValidationError(
                f"edge {sorted(vertices)} has size {len(vertices)} < minimum {min_edge_size} "
                f"(pass allow_small_edges to permit it)")
        if uniform is not None and len(vertices) != uniform:
            raise ValidationError(f"edge {sorted(vertices)} does not have exactly {uniform} vertices")
        masks.add(vertices_to_mask(vertices))

    return Hypergraph.from_masks(n, masks)


def is_r_uniform(h: Hypergraph, r: int) -> bool:
    """True iff every edge has exactly r vertices (vacuously true without edges)"""
    return all(popcount(e) == r for e in h.edges)


def is_independent(h: Hypergraph, vertices: Iterable[int]) -> bool:
    """True iff no edge of h is contained in the given vertex subset"""
    s = vertices_to_mask(vertices)
    if s & ~h.vertex_mask:
        raise ValidationError(f"vertex subset {sorted(vertices)} not within 1..{h.n}")
    return not any(e & s == e for e in h.edges)


def superset_extension(h: Hypergraph) -> Optional[Hypergraph]:
    """
    Add one edge f strictly containing an existing edge e.

    f is the smallest candidate in canonical edge order (size, then mask).
    Every coloring that breaks e also breaks f, and every independent set
    containing f contains e, so the chromatic and independence polynomials are
    unchanged while the edge count grows by one.

    Returns:
        The extended hypergraph, or None when no edge has a proper superset
        that is not already an edge
    """
    if not h.edges:
        return None
    present = set(h.edges)
    sizes = sorted({popcount(e) for e in h.edges})
    for size in range(sizes[0] + 1, h.n + 1):
        candidates = set()
        for e in h.edges:
            missing = size - popcount(e)
            if missing <= 0:
                continue
            free = [1 << b for b in range(h.n) if not e >> b & 1]
            candidates.update(_extend(e, free, missing))
        candidates -= present
        if candidates:
            f = min(candidates)
            logger.debug(f"Superset extension adds {mask_to_vertices(f)}")
            return h.with_edge(f)
    return None


def _extend(base: int, free_bits, missing: int):
    """All supersets of base adding exactly `missing` bits from free_bits"""
    if missing == 0:
        yield base
        return
    for i, bit in enumerate(free_bits):
        yield from _extend(base | bit, free_bits[i + 1:], missing - 1)
