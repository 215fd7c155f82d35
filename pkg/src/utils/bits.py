"""
Bit-mask helpers. Vertex v (1-based) is bit v-1 of a mask.
"""
from typing import Iterable, Iterator, List, Tuple

import numpy as np

_BYTE_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)


def vertices_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def mask_to_vertices(mask: int) -> Tuple[int, ...]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def set_bits(mask: int) -> List[int]:
    """0-based positions of the set bits, ascending"""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def edge_key(mask: int) -> Tuple[int, int]:
    """Canonical edge order: by size, then by mask value"""
    return popcount(mask), mask


def popcount_array(values: np.ndarray) -> np.ndarray:
    """Vectorized popcount of non-negative int64/uint64 values"""
    values = values.astype(np.uint64, copy=False)
    counts = np.zeros(values.shape, dtype=np.int64)
    for shift in range(0, 64, 8):
        counts += _BYTE_POPCOUNT[((values >> np.uint64(shift)) & np.uint64(0xFF)).astype(np.intp)]
    return counts


def iter_fixed_weight(width: int, weight: int) -> Iterator[int]:
    """All width-bit integers with exactly `weight` bits set, ascending (Gosper's hack)"""
    if weight < 0 or weight > width:
        return
    if weight == 0:
        yield 0
        return
    code = (1 << weight) - 1
    limit = 1 << width
    while code < limit:
        yield code
        low = code & -code
        ripple = code + low
        code = (((ripple ^ code) >> 2) // low) | ripple


def submask_array(mask: int) -> np.ndarray:
    """All submasks of mask as an int64 array (ascending in the order bits were added)"""
    subs = np.zeros(1, dtype=np.int64)
    for bit in set_bits(mask):
        subs = np.concatenate((subs, subs | np.int64(1 << bit)))
    return subs
