"""
ANF (Moebius) transform, byte-wise and on packed 64-bit words.

Both transforms are the same butterfly: stage ``d`` XORs the entry at index
``j - 2^d`` into the entry at ``j`` for every ``j`` with bit ``d`` set. The
packed version runs stages 0..5 inside each word with shift-and-mask and the
remaining stages as whole-word XORs between words.
"""
from __future__ import annotations

import numba
import numpy as np

from .core import AnfVector, ByteTable, TruthTable


def _stage_masks() -> np.ndarray:
    # Mask d selects the in-word positions whose index has bit d set.
    masks = np.zeros(6, dtype=np.uint64)
    for d in range(6):
        m = 0
        for pos in range(64):
            if pos >> d & 1:
                m |= 1 << pos
        masks[d] = m
    return masks


STAGE_MASKS = _stage_masks()
STAGE_MASKS.flags.writeable = False


@numba.njit(cache=True)
def _anft_bytes_inplace(values, n):
    size = values.size
    for d in range(n):
        step = 1 << d
        for base in range(0, size, 2 * step):
            # separate views let LLVM vectorize the XOR of the two halves
            lo = values[base : base + step]
            hi = values[base + step : base + 2 * step]
            for t in range(step):
                hi[t] ^= lo[t]


@numba.njit(cache=True)
def _anft_words_inplace(words, n, stage_masks):
    inner = n if n < 6 else 6
    for d in range(inner):
        shift = np.uint64(1 << d)
        m = stage_masks[d]
        for j in range(words.size):
            w = words[j]
            words[j] = w ^ ((w << shift) & m)
    for d in range(6, n):
        stride = 1 << (d - 6)
        for base in range(0, words.size, 2 * stride):
            lo = words[base : base + stride]
            hi = words[base + stride : base + 2 * stride]
            for t in range(stride):
                hi[t] ^= lo[t]


@numba.njit(cache=True)
def _anft_bytes_rows(rows, n):
    for r in range(rows.shape[0]):
        _anft_bytes_inplace(rows[r], n)


@numba.njit(cache=True)
def _anft_words_rows(rows, n, stage_masks):
    for r in range(rows.shape[0]):
        _anft_words_inplace(rows[r], n, stage_masks)


def anft_bytewise(table: ByteTable) -> ByteTable:
    """Return the ANF coefficient vector ``A_f`` of a byte-wise truth table.

    The transform is an involution, so applying it to ``A_f`` gives back
    ``TT(f)``.
    """
    values = table.values.copy()
    _anft_bytes_inplace(values, table.n)
    return ByteTable(table.n, values)


def anft_bitwise(tt: TruthTable) -> AnfVector:
    """Packed-word ANF transform; bit-exact with :func:`anft_bytewise`."""
    words = tt.words.copy()
    _anft_words_inplace(words, tt.n, STAGE_MASKS)
    return AnfVector(tt.n, words)


def anft_bytewise_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Transform every row of a ``(k, 2^n)`` uint8 array; returns a new array."""
    out = np.array(rows, dtype=np.uint8, order="C")
    _anft_bytes_rows(out, n)
    return out


def anft_bitwise_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Transform every row of a ``(k, W(n))`` uint64 array; returns a new array."""
    out = np.array(rows, dtype=np.uint64, order="C")
    _anft_words_rows(out, n, STAGE_MASKS)
    return out


# ---------- brute-force oracle

ORACLE_MAX_N = 10


def subset_matrix(n: int) -> np.ndarray:
    """``S[g, b] = 1`` iff the bits of ``b`` are a subset of the bits of ``g``."""
    idx = np.arange(1 << n)
    return ((idx[None, :] & ~idx[:, None]) == 0).astype(np.float32)


def anf_oracle_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Direct ANF by the defining sum ``a_g = XOR of f(b) over b subset of g``.

    No butterfly sharing: every coefficient is summed from scratch, O(4^n)
    per function. Meant as a test oracle only.
    """
    if n > ORACLE_MAX_N:
        raise ValueError(f"brute-force ANF is limited to n <= {ORACLE_MAX_N}")
    rows = np.asarray(rows, dtype=np.float32)
    # float32 sums of at most 2^10 ones are exact
    sums = rows @ subset_matrix(n).T
    return (sums.astype(np.int64) & 1).astype(np.uint8)


def anf_oracle(table: ByteTable) -> ByteTable:
    return ByteTable(table.n, anf_oracle_rows(table.values[None, :], table.n)[0])
