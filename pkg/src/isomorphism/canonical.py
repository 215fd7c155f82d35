"""
Canonical forms for edge-preserving hypergraph isomorphism.

The canonical form is the lexicographically smallest edge-mask sequence, sorted
by (size, mask), over relabelings that respect the vertex partition by
(degree, multiset of incident edge sizes). Cells are ordered by that invariant,
so isomorphic hypergraphs search the same set of images.
"""
import hashlib
import logging
import math
from dataclasses import dataclass
from itertools import islice, permutations, product
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from ..core.hypergraph import Hypergraph
from ..utils.bits import popcount
from ..utils.config import get_settings
from ..utils.errors import BudgetExceededError

logger = logging.getLogger(__name__)

CHUNK = 20_000


@dataclass(frozen=True)
class CanonicalForm:
    """n plus the canonical edge masks; equal iff the hypergraphs are isomorphic"""
    n: int
    edges: Tuple[int, ...]

    @property
    def digest(self) -> bytes:
        """Stable 8-byte BLAKE2b digest of n and the edge masks (little-endian)"""
        h = hashlib.blake2b(digest_size=8)
        h.update(self.n.to_bytes(2, "little"))
        for mask in self.edges:
            h.update(mask.to_bytes(8, "little"))
        return h.digest()

    @property
    def digest64(self) -> int:
        return int.from_bytes(self.digest, "little")

    def to_hypergraph(self) -> Hypergraph:
        return Hypergraph(self.n, self.edges)


def vertex_cells(h: Hypergraph) -> List[List[int]]:
    """0-based vertices grouped by (degree, sorted incident edge sizes), cells in invariant order"""
    invariants: Dict[int, Tuple] = {}
    for v in range(h.n):
        sizes = sorted(popcount(e) for e in h.edges if e >> v & 1)
        invariants[v] = (len(sizes), tuple(sizes))
    cells: Dict[Tuple, List[int]] = {}
    for v in range(h.n):
        cells.setdefault(invariants[v], []).append(v)
    return [cells[key] for key in sorted(cells)]


def _labelings(cells: List[List[int]], n: int) -> Iterator[Tuple[int, ...]]:
    """
    Yield new-label arrays (new_label[old_vertex]). Cell c occupies the
    positions after all earlier cells; within a cell every order is tried.
    """
    offsets = []
    position = 0
    for cell in cells:
        offsets.append(position)
        position += len(cell)
    for orders in product(*(permutations(cell) for cell in cells)):
        labels = [0] * n
        for offset, order in zip(offsets, orders):
            for i, v in enumerate(order):
                labels[v] = offset + i
        yield tuple(labels)


def canonical_form(h: Hypergraph, max_n: Optional[int] = None,
                   max_labelings: Optional[int] = None) -> CanonicalForm:
    """
    Minimal edge-mask encoding over the cell-respecting relabelings.

    Args:
        h: Hypergraph
        max_n: Vertex limit (defaults to limits.canonical_max_n)
        max_labelings: Cap on candidate relabelings (defaults to limits.canonical_max_labelings)
    """
    limits = get_settings().limits
    max_n = limits.canonical_max_n if max_n is None else max_n
    max_labelings = limits.canonical_max_labelings if max_labelings is None else max_labelings
    if h.n > max_n:
        logger.error(f"Canonical form refused for n={h.n} (limit {max_n})")
        raise BudgetExceededError("canonical_max_n", h.n, max_n)
    if not h.edges:
        return CanonicalForm(h.n, ())

    cells = vertex_cells(h)
    candidates = math.prod(math.factorial(len(c)) for c in cells)
    if candidates > max_labelings:
        logger.error(f"Canonical search needs {candidates:,} relabelings (limit {max_labelings:,})")
        raise BudgetExceededError("canonical_max_labelings", candidates, max_labelings)

    n = h.n
    edge_bits = [np.array([v for v in range(n) if e >> v & 1], dtype=np.int64) for e in h.edges]
    sizes = np.array([popcount(e) for e in h.edges], dtype=np.int64)
    best: Optional[np.ndarray] = None

    labelings = _labelings(cells, n)
    while True:
        chunk = list(islice(labelings, CHUNK))
        if not chunk:
            break
        labels = np.array(chunk, dtype=np.int64)
        images = np.empty((len(chunk), len(edge_bits)), dtype=np.int64)
        for j, bits in enumerate(edge_bits):
            images[:, j] = np.bitwise_or.reduce(np.left_shift(1, labels[:, bits]), axis=1)
        # sort key (size, mask) packed into one integer
        keys = np.sort((sizes[None, :] << n) | images, axis=1)
        winner = keys[np.lexsort(keys.T[::-1])[0]]
        if best is None or tuple(winner) < tuple(best):
            best = winner

    mask_bits = (1 << n) - 1
    return CanonicalForm(n, tuple(int(k) & mask_bits for k in best))


def are_isomorphic(h1: Hypergraph, h2: Hypergraph) -> bool:
    """Edge-preserving isomorphism test through canonical forms"""
    if h1.n != h2.n or h1.num_edges != h2.num_edges:
        return False
    if sorted(h1.edge_sizes()) != sorted(h2.edge_sizes()):
        return False
    if sorted(h1.degrees()) != sorted(h2.degrees()):
        return False
    return canonical_form(h1) == canonical_form(h2)
