"""
Truth-table representations of Boolean functions.

Two layouts are supported:

* ``TruthTable``: the 2^n function values packed into 64-bit words. Index ``i``
  lives in word ``i // 64`` at the bit of numeric weight ``2 ** (i % 64)``.
  For n < 6 a single word is used and its upper bits stay zero.
* ``ByteTable``: one value per byte, the layout the byte-wise algorithms use.

``AnfVector`` shares the packed layout; it holds ANF coefficients instead of
function values.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable

import numba
import numpy as np

MAX_N = 30
WORD_BITS = 64


def word_count(n: int) -> int:
    """Number of 64-bit words holding a table of 2^n bits."""
    check_n(n)
    return 1 << (n - 6) if n > 6 else 1


def check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_N:
        raise ValueError(f"variable count must be an integer in 1..{MAX_N}, got {n!r}")


def low_mask(n: int) -> int:
    """Mask of the used bits in word 0 (all ones for n >= 6)."""
    return (1 << (1 << n)) - 1 if n < 6 else 0xFFFFFFFFFFFFFFFF


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Bit-packed truth table ``TT(f)`` of a function of ``n`` variables."""

    n: int
    words: np.ndarray

    def __post_init__(self):
        check_n(self.n)
        words = np.ascontiguousarray(self.words, dtype=np.uint64)
        if words.ndim != 1 or words.size != word_count(self.n):
            raise ValueError(
                f"n={self.n} needs exactly {word_count(self.n)} words, got {words.size}"
            )
        if self.n < 6 and int(words[0]) & ~low_mask(self.n):
            raise ValueError(f"bits above index {(1 << self.n) - 1} must be zero for n={self.n}")
        if words is self.words:
            words = words.copy()
        object.__setattr__(self, "words", _frozen(words))

    @classmethod
    def from_words(cls, n: int, words: Iterable[int]):
        return cls(n, np.array([int(w) for w in words], dtype=np.uint64))

    @classmethod
    def zeros(cls, n: int):
        return cls(n, np.zeros(word_count(n), dtype=np.uint64))

    def __eq__(self, other):
        if not isinstance(other, TruthTable) or type(self) is not type(other):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.words, other.words)

    __hash__ = None

    def __repr__(self):
        shown = " ".join(f"{int(w):016x}" for w in self.words[:4])
        more = " ..." if self.words.size > 4 else ""
        return f"{type(self).__name__}(n={self.n}, words=[{shown}{more}])"


class AnfVector(TruthTable):
    """Packed ANF coefficient vector; bit ``i`` is the coefficient of the
    monomial whose variable set has serial number ``i``."""


@dataclass(frozen=True, eq=False)
class ByteTable:
    """One-value-per-byte table of length 2^n (truth table or ANF)."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        check_n(self.n)
        values = np.asarray(self.values)
        if values.ndim != 1 or values.size != 1 << self.n:
            raise ValueError(f"n={self.n} needs exactly {1 << self.n} values, got {values.size}")
        if values.size and (values.min() < 0 or values.max() > 1):
            raise ValueError("byte table values must be 0 or 1")
        values = np.array(values, dtype=np.uint8)
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def from_bits(cls, bits: Iterable[int]):
        values = np.array(list(bits), dtype=np.int64)
        n = int(values.size).bit_length() - 1
        if values.size == 0 or 1 << n != values.size:
            raise ValueError(f"table length must be a power of two, got {values.size}")
        return cls(n, values)

    def __eq__(self, other):
        if not isinstance(other, ByteTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self):
        head = "".join(map(str, self.values[:64].tolist()))
        more = "..." if self.values.size > 64 else ""
        return f"ByteTable(n={self.n}, values={head}{more})"


# ---------- conversions

def pack_rows(values: np.ndarray, n: int) -> np.ndarray:
    """Pack a ``(rows, 2^n)`` uint8 array of 0/1 into ``(rows, W(n))`` words."""
    values = np.asarray(values, dtype=np.uint8)
    rows = values.shape[0]
    if n < 6:
        padded = np.zeros((rows, WORD_BITS), dtype=np.uint8)
        padded[:, : 1 << n] = values
        values = padded
    packed = np.packbits(values, axis=1, bitorder="little")
    return np.ascontiguousarray(packed).view("<u8").astype(np.uint64, copy=False)


def unpack_rows(words: np.ndarray, n: int) -> np.ndarray:
    """Inverse of :func:`pack_rows`."""
    words = np.ascontiguousarray(words, dtype="<u8")
    bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
    return bits[:, : 1 << n]


def pack(table: ByteTable) -> TruthTable:
    return TruthTable(table.n, pack_rows(table.values[None, :], table.n)[0])


def unpack(tt: TruthTable) -> ByteTable:
    return ByteTable(tt.n, unpack_rows(tt.words[None, :], tt.n)[0])


# ---------- weight and parity

@numba.njit(cache=True)
def _weight_bytes(values):
    total = 0
    for i in range(values.size):
        total += values[i]
    return total


@numba.njit(cache=True)
def _parity_words(words):
    # XOR-fold every word into one accumulator, then fold the accumulator
    # onto its lowest bit by halving shifts.
    acc = words[0]
    for i in range(1, words.size):
        acc ^= words[i]
    shift = 32
    while shift > 0:
        acc ^= acc >> np.uint64(shift)
        shift >>= 1
    return np.int64(acc & np.uint64(1))


@numba.njit(cache=True)
def _parity_rows(rows, out):
    for r in range(rows.shape[0]):
        out[r] = _parity_words(rows[r])


def parity_rows(rows: np.ndarray) -> np.ndarray:
    """:func:`parity_check` applied to every row of a ``(k, W(n))`` word array."""
    rows = np.ascontiguousarray(rows, dtype=np.uint64)
    out = np.empty(rows.shape[0], dtype=np.uint8)
    _parity_rows(rows, out)
    return out


def weight_bytes(table: ByteTable) -> int:
    return int(_weight_bytes(table.values))


def weight_words(tt: TruthTable) -> int:
    return int(np.bitwise_count(tt.words).sum(dtype=np.int64))


def parity_check(tt: TruthTable) -> int:
    """Parity of the truth-table weight: 1 iff ``wt(TT(f))`` is odd."""
    return int(_parity_words(tt.words))


def parity_check_bytes(table: ByteTable) -> int:
    return weight_bytes(table) & 1


# ---------- text and binary formats

def from_bitstring(text: str, n: int | None = None) -> TruthTable:
    """Parse ``f_0 f_1 ... f_{2^n-1}`` written left to right as '0'/'1'."""
    text = "".join(text.split())
    if not text or set(text) - {"0", "1"}:
        raise ValueError("truth table string must contain only '0' and '1'")
    if n is None:
        n = len(text).bit_length() - 1
        if 1 << n != len(text):
            raise LengthMismatch(f"truth table length {len(text)} is not a power of two")
    check_n(n)
    if len(text) != 1 << n:
        raise LengthMismatch(f"n={n} needs {1 << n} characters, got {len(text)}")
    bits = np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0")
    return pack(ByteTable(n, bits))


def to_bitstring(tt: TruthTable) -> str:
    return "".join("1" if b else "0" for b in unpack(tt).values.tolist())


def from_hex_words(tokens: Iterable[str], n: int) -> TruthTable:
    """Parse a list of hexadecimal words, word 0 first."""
    words = []
    for tok in tokens:
        tok = tok.strip().lower().removeprefix("0x")
        if not tok:
            continue
        if len(tok) > 16:
            raise ValueError(f"hex word {tok!r} is wider than 64 bits")
        try:
            words.append(int(tok, 16))
        except ValueError:
            raise ValueError(f"malformed hex word {tok!r}") from None
    check_n(n)
    if len(words) != word_count(n):
        raise LengthMismatch(f"n={n} needs {word_count(n)} hex words, got {len(words)}")
    return TruthTable.from_words(n, words)


def read_binary(path: str | os.PathLike, n: int) -> TruthTable:
    """Read little-endian 64-bit words; file size must be ``8 * W(n)``."""
    data = open(path, "rb").read()
    expected = 8 * word_count(n)
    if len(data) != expected:
        raise LengthMismatch(f"n={n} needs a {expected}-byte file, got {len(data)} bytes")
    return TruthTable(n, np.frombuffer(data, dtype="<u8").astype(np.uint64))


def write_binary(tt: TruthTable, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(tt.words.astype("<u8").tobytes())


class LengthMismatch(ValueError):
    """Input decoded fine but does not hold exactly 2^n bits."""
