"""
Hypergraph classes used for censuses and witness strata:
r-uniform, Sperner (antichain) and all hypergraphs with edges of size >= 2.
"""
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import List, Optional

from .hypergraph import DEFAULT_MIN_EDGE_SIZE, Hypergraph, is_r_uniform
from ..utils.bits import edge_key
from ..utils.errors import ValidationError


class ModeKind(str, Enum):
    UNIFORM = "uniform"
    SPERNER = "sperner"
    ALL = "all"


@dataclass(frozen=True)
class CensusMode:
    """A class of hypergraphs closed under vertex relabeling"""
    kind: ModeKind
    r: Optional[int] = None

    def __post_init__(self):
        if self.kind == ModeKind.UNIFORM and (self.r is None or self.r < 1):
            raise ValidationError("uniform mode needs an edge size r >= 1")
        if self.kind != ModeKind.UNIFORM and self.r is not None:
            raise ValidationError(f"{self.kind.value} mode takes no edge size")

    @classmethod
    def uniform(cls, r: int) -> "CensusMode":
        return cls(ModeKind.UNIFORM, r)

    @classmethod
    def sperner(cls) -> "CensusMode":
        return cls(ModeKind.SPERNER)

    @classmethod
    def all(cls) -> "CensusMode":
        return cls(ModeKind.ALL)

    @classmethod
    def parse(cls, text: str) -> "CensusMode":
        """Accepts 'uniform3', 'uniform(3)', 'r3', 'sperner', 'all'"""
        value = text.strip().lower().replace("(", "").replace(")", "")
        if value in ("sperner", "all"):
            return cls(ModeKind(value))
        for prefix in ("uniform", "r"):
            if value.startswith(prefix) and value[len(prefix):].isdigit():
                return cls.uniform(int(value[len(prefix):]))
        raise ValidationError(f"unknown census mode {text!r}")

    @property
    def label(self) -> str:
        return f"uniform{self.r}" if self.kind == ModeKind.UNIFORM else self.kind.value

    def eligible_masks(self, n: int) -> List[int]:
        """Edge universe for this class on n vertices, in canonical edge order"""
        if self.kind == ModeKind.UNIFORM:
            sizes = [self.r] if self.r <= n else []
        else:
            sizes = list(range(DEFAULT_MIN_EDGE_SIZE, n + 1))
        masks = []
        for size in sizes:
            for combo in combinations(range(n), size):
                masks.append(sum(1 << b for b in combo))
        return sorted(masks, key=edge_key)

    def contains(self, h: Hypergraph) -> bool:
        if self.kind == ModeKind.UNIFORM:
            return is_r_uniform(h, self.r)
        if h.min_edge_size() is not None and h.min_edge_size() < DEFAULT_MIN_EDGE_SIZE:
            return False
        if self.kind == ModeKind.SPERNER:
            return h.is_sperner()
        return True

    def __str__(self) -> str:
        return self.label
