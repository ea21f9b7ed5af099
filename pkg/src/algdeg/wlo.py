"""
Weight-lexicographic order (WLO) of {0,1}^n and the per-layer masks.

The WLO sequence lists serial numbers by Hamming weight (layer 0 first) and,
inside a layer, in increasing order. Layer ``k`` is
``order[layer_start[k]:layer_start[k + 1]]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numba
import numpy as np

from .core import check_n, word_count

MAX_SEQUENCE_N = 26


def _check_sequence_n(n):
    check_n(n)
    if n > MAX_SEQUENCE_N:
        raise ValueError(f"WLO sequences are materialized only for n <= {MAX_SEQUENCE_N}")


def layer_starts(n: int) -> np.ndarray:
    starts = np.zeros(n + 2, dtype=np.int64)
    for k in range(n + 1):
        starts[k + 1] = starts[k] + comb(n, k)
    return starts


@dataclass(frozen=True, eq=False)
class WloSequence:
    n: int
    order: np.ndarray
    layer_start: np.ndarray

    def __post_init__(self):
        for name in ("order", "layer_start"):
            getattr(self, name).flags.writeable = False

    def layer(self, k: int) -> np.ndarray:
        return self.order[self.layer_start[k] : self.layer_start[k + 1]]

    def layer_of(self, position: int) -> int:
        """Layer number (weight) of the entry at ``position`` in ``order``."""
        return int(np.searchsorted(self.layer_start, position, side="right")) - 1

    def __eq__(self, other):
        if not isinstance(other, WloSequence):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.order, other.order)
            and np.array_equal(self.layer_start, other.layer_start)
        )

    __hash__ = None

    def __len__(self):
        return self.order.size


@numba.njit(cache=True)
def _bucket_fill(n, starts):
    order = np.empty(1 << n, dtype=np.uint32)
    fill = starts[:-1].copy()
    for i in range(1 << n):
        w = 0
        x = i
        while x:
            x &= x - 1
            w += 1
        order[fill[w]] = i
        fill[w] += 1
    return order


def wlo_bucket(n: int) -> WloSequence:
    """Bucket route: scan 0..2^n-1 once, dropping each index into the bucket
    of its weight. Buckets are laid out back to back in the output."""
    _check_sequence_n(n)
    starts = layer_starts(n)
    return WloSequence(n, _bucket_fill(n, starts), starts)


def wlo_recursive(n: int) -> WloSequence:
    """Recursive route.

    Layer ``k`` of ``l_n`` is layer ``k`` of ``l_{n-1}`` followed by layer
    ``k-1`` of ``l_{n-1}`` with the top bit ``2^{n-1}`` added.
    """
    _check_sequence_n(n)
    layers = [np.array([0], dtype=np.uint32)]
    for m in range(1, n + 1):
        top = np.uint32(1 << (m - 1))
        empty = np.empty(0, dtype=np.uint32)
        layers = [
            np.concatenate([layers[k] if k < m else empty, layers[k - 1] + top if k else empty])
            for k in range(m + 1)
        ]
    return WloSequence(n, np.concatenate(layers), layer_starts(n))


@dataclass(frozen=True, eq=False)
class MaskSet:
    """Characteristic vectors of the layers: ``masks[k]`` has bit ``i`` set
    iff ``popcount(i) == k``. Shape ``(n + 1, W(n))``."""

    n: int
    masks: np.ndarray

    def __post_init__(self):
        if self.masks.shape != (self.n + 1, word_count(self.n)):
            raise ValueError(f"mask array has shape {self.masks.shape}, expected "
                             f"{(self.n + 1, word_count(self.n))}")
        self.masks.flags.writeable = False

    def __getitem__(self, k):
        return self.masks[k]

    def __eq__(self, other):
        if not isinstance(other, MaskSet):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.masks, other.masks)

    __hash__ = None


def masks_from_wlo(seq: WloSequence) -> MaskSet:
    """Set bit ``i`` of mask ``k`` for every ``i`` listed in layer ``k``."""
    masks = np.zeros((seq.n + 1, word_count(seq.n)), dtype=np.uint64)
    for k in range(seq.n + 1):
        idx = seq.layer(k).astype(np.uint64)
        np.bitwise_or.at(masks[k], (idx >> np.uint64(6)).astype(np.intp),
                         np.uint64(1) << (idx & np.uint64(63)))
    return MaskSet(seq.n, masks)


def _small_masks(n: int) -> list[int]:
    # m_{n,k} = m_{n-1,k} in the low half, m_{n-1,k-1} in the high half
    masks = [1]
    for m in range(1, n + 1):
        half = 1 << (m - 1)
        masks = [
            (masks[k] if k < m else 0) | ((masks[k - 1] << half) if k else 0)
            for k in range(m + 1)
        ]
    return masks


_WORD_LAYERS = np.array(_small_masks(6), dtype=np.uint64)


def layer_mask(n: int, k: int) -> np.ndarray:
    """Mask of layer ``k`` alone, without building the other layers.

    For n >= 6, word ``j`` covers indices ``64 j + t`` whose weight is
    ``popcount(j) + popcount(t)``, so it equals the 6-variable mask of layer
    ``k - popcount(j)``.
    """
    check_n(n)
    if not 0 <= k <= n:
        raise ValueError(f"layer {k} out of range 0..{n}")
    if n < 6:
        return np.array([_small_masks(n)[k]], dtype=np.uint64)
    rest = k - np.bitwise_count(np.arange(word_count(n), dtype=np.uint64)).astype(np.int64)
    out = np.zeros(word_count(n), dtype=np.uint64)
    ok = (rest >= 0) & (rest <= 6)
    out[ok] = _WORD_LAYERS[rest[ok]]
    return out


def masks_direct(n: int) -> MaskSet:
    """All layer masks straight from their definition (no WLO sequence)."""
    _check_sequence_n(n)
    if n < 6:
        masks = np.array(_small_masks(n), dtype=np.uint64)[:, None]
    else:
        masks = np.stack([layer_mask(n, k) for k in range(n + 1)])
    return MaskSet(n, masks)
