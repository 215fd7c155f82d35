"""
Generators for the named hypergraph families: empty, complete r-uniform,
linear hyperpaths and hypercycles, sunflowers and the cycle-plus-path B construction.
Vertex labels are deterministic so generated instances are reproducible.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import List, Optional

import numpy as np

from .hypergraph import Hypergraph, make_hypergraph
from .modes import CensusMode, ModeKind
from ..utils.errors import ValidationError

logger = logging.getLogger(__name__)


class FamilyKind(str, Enum):
    EMPTY = "empty"
    COMPLETE_R = "complete_r"
    HYPERPATH = "hyperpath"
    HYPERCYCLE = "hypercycle"
    SUNFLOWER = "sunflower"
    B_CONSTRUCTION = "b_construction"


@dataclass(frozen=True)
class FamilySpec:
    """
    Parameters of a family instance. Unused parameters stay None.

    sunflower:      n = r + (k-1)p, r >= 3, k >= 1, 1 <= p <= r-1 (n or k may be given)
    hyperpath:      m edges, n = m(r-1) + 1
    hypercycle:     m >= 3 edges, n = m(r-1)
    b_construction: cycle with p edges, path with p-1 edges, glued on cycle edge `cycle_edge`
    complete_r:     all r-subsets of {1..n}
    """
    kind: FamilyKind
    n: Optional[int] = None
    m: Optional[int] = None
    r: Optional[int] = None
    p: Optional[int] = None
    k: Optional[int] = None
    cycle_edge: int = 1

    def resolved(self) -> "FamilySpec":
        """Fill in derived parameters and check consistency"""
        kind = self.kind
        if kind == FamilyKind.EMPTY:
            _require(self.n is not None and self.n >= 1, "empty family needs n >= 1")
            return self
        if kind == FamilyKind.COMPLETE_R:
            _require(self.n is not None and self.r is not None, "complete_r needs n and r")
            _require(2 <= self.r <= self.n, f"complete_r needs 2 <= r <= n, got r={self.r}, n={self.n}")
            return self
        if kind in (FamilyKind.HYPERPATH, FamilyKind.HYPERCYCLE):
            _require(self.m is not None and self.r is not None, f"{kind.value} needs m and r")
            _require(self.r >= 2, f"{kind.value} needs r >= 2")
            if kind == FamilyKind.HYPERPATH:
                _require(self.m >= 1, "hyperpath needs m >= 1")
                n = self.m * (self.r - 1) + 1
            else:
                _require(self.m >= 3, "hypercycle needs m >= 3")
                n = self.m * (self.r - 1)
            _require(self.n is None or self.n == n,
                     f"{kind.value} with m={self.m}, r={self.r} has n={n}, not {self.n}")
            return FamilySpec(kind, n=n, m=self.m, r=self.r)
        if kind == FamilyKind.SUNFLOWER:
            _require(self.r is not None and self.p is not None, "sunflower needs r and p")
            _require(self.r >= 3, f"sunflower needs r >= 3, got {self.r}")
            _require(1 <= self.p <= self.r - 1, f"sunflower needs 1 <= p <= r-1, got p={self.p}")
            k = self.k
            if k is None:
                _require(self.n is not None, "sunflower needs n or k")
                _require((self.n - self.r) % self.p == 0 and self.n >= self.r,
                         f"n={self.n} is not r+(k-1)p for r={self.r}, p={self.p}")
                k = (self.n - self.r) // self.p + 1
            _require(k >= 1, "sunflower needs k >= 1")
            n = self.r + (k - 1) * self.p
            _require(self.n is None or self.n == n, f"n={self.n} differs from r+(k-1)p={n}")
            return FamilySpec(kind, n=n, r=self.r, p=self.p, k=k)
        if kind == FamilyKind.B_CONSTRUCTION:
            _require(self.p is not None and self.r is not None, "b_construction needs p and r")
            _require(self.p >= 3 and self.r >= 2, "b_construction needs p >= 3 and r >= 2")
            _require(1 <= self.cycle_edge <= self.p, f"cycle_edge must be in 1..{self.p}")
            n = b_construction_order(self.p, self.r)
            _require(self.n is None or self.n == n, f"b_construction with p={self.p}, r={self.r} has n={n}")
            return FamilySpec(kind, n=n, r=self.r, p=self.p, cycle_edge=self.cycle_edge)
        raise ValidationError(f"unknown family {kind}")

    @property
    def label(self) -> str:
        spec = self.resolved()
        if spec.kind == FamilyKind.SUNFLOWER:
            return f"SH({spec.n},{spec.p},{spec.r})"
        if spec.kind == FamilyKind.HYPERCYCLE:
            return f"C_{spec.m}^{spec.r}"
        if spec.kind == FamilyKind.HYPERPATH:
            return f"P_{spec.m}^{spec.r}"
        if spec.kind == FamilyKind.B_CONSTRUCTION:
            return f"B_{spec.p},{spec.p}^(r={spec.r},edge={spec.cycle_edge})"
        if spec.kind == FamilyKind.COMPLETE_R:
            return f"K_{spec.n}^{spec.r}"
        return f"E_{spec.n}"


def _require(condition: bool, message: str):
    if not condition:
        raise ValidationError(message)


def b_construction_order(p: int, r: int) -> int:
    """Vertices of the cycle C_p^r plus the path P_{p-1}^r minus the two glued extremities"""
    return p * (r - 1) + (p - 1) * (r - 1) + 1 - 2


def _linear_edges(m: int, r: int, cyclic: bool) -> List[List[int]]:
    """Consecutive edges share one vertex; labels run 1..n along the chain"""
    n = m * (r - 1) if cyclic else m * (r - 1) + 1
    edges = []
    for i in range(m):
        start = i * (r - 1)
        edges.append([(start + j) % n + 1 for j in range(r)])
    return edges


def generate_family(spec: FamilySpec) -> Hypergraph:
    """
    Build the hypergraph described by a family spec.

    Args:
        spec: Family parameters (validated and completed here)

    Returns:
        Hypergraph with deterministic vertex labels
    """
    spec = spec.resolved()
    kind = spec.kind

    if kind == FamilyKind.EMPTY:
        edges = []
    elif kind == FamilyKind.COMPLETE_R:
        edges = [list(c) for c in combinations(range(1, spec.n + 1), spec.r)]
    elif kind == FamilyKind.HYPERPATH:
        edges = _linear_edges(spec.m, spec.r, cyclic=False)
    elif kind == FamilyKind.HYPERCYCLE:
        edges = _linear_edges(spec.m, spec.r, cyclic=True)
    elif kind == FamilyKind.SUNFLOWER:
        # Kernel first, then petals in edge order
        kernel = list(range(1, spec.r - spec.p + 1))
        edges = []
        for j in range(spec.k):
            first = spec.r - spec.p + j * spec.p + 1
            edges.append(kernel + list(range(first, first + spec.p)))
    else:
        edges = _b_construction_edges(spec.p, spec.r, spec.cycle_edge)

    h = make_hypergraph(spec.n, edges)
    logger.debug(f"Generated {spec.label}: n={h.n}, {h.num_edges} edges")
    return h


def _b_construction_edges(p: int, r: int, cycle_edge: int) -> List[List[int]]:
    """
    Identify the extremities of P_{p-1}^r with the two degree-2 vertices of
    edge `cycle_edge` of C_p^r. Cycle vertices keep labels 1..p(r-1); the
    interior path vertices follow in path order.
    """
    cycle = _linear_edges(p, r, cyclic=True)
    glued = cycle[cycle_edge - 1]
    x, y = glued[0], glued[-1]

    cycle_n = p * (r - 1)
    path = _linear_edges(p - 1, r, cyclic=False)
    path_n = (p - 1) * (r - 1) + 1
    relabel = {1: x, path_n: y}
    next_label = cycle_n + 1
    for local in range(2, path_n):
        relabel[local] = next_label
        next_label += 1
    return cycle + [[relabel[v] for v in edge] for edge in path]


def random_hypergraph(n: int, rng: np.random.Generator, mode: CensusMode,
                      edge_probability: float = 0.3) -> Hypergraph:
    """
    Draw a random member of a hypergraph class.

    Each eligible edge is kept independently with the given probability; in
    Sperner mode the kept edges are scanned in random order and an edge is
    dropped when it is comparable with one already taken.
    """
    universe = mode.eligible_masks(n)
    keep = rng.random(len(universe)) < edge_probability
    chosen = [mask for mask, flag in zip(universe, keep) if flag]
    if mode.kind == ModeKind.SPERNER:
        antichain = []
        for idx in rng.permutation(len(chosen)):
            mask = chosen[idx]
            if all(mask & other not in (mask, other) for other in antichain):
                antichain.append(mask)
        chosen = antichain
    return Hypergraph.from_masks(n, chosen)
