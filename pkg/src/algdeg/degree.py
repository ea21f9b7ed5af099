"""
Algebraic degree from the ANF coefficient vector, and the combined method.

The combined method short-circuits on odd truth-table weight (such a function
has degree n), otherwise transforms to the ANF and searches for the highest
layer containing a nonzero coefficient. Search algorithms:

    ES       scan every coefficient, keep the maximum weight seen
    WLO      byte-wise walk of the WLO sequence from its last entry down
    masks    packed ANF ANDed with layer masks, layer n first
    CB WLO   packed ANF, single-bit probes in reverse WLO order

Kernels return -1 for the zero function; the public functions turn that into
:data:`NEG_INF`.
"""
from __future__ import annotations

import enum
import functools
from typing import Union

import numba
import numpy as np

from .anft import STAGE_MASKS, _anft_bytes_inplace, _anft_words_inplace, anf_oracle_rows
from .core import AnfVector, ByteTable, TruthTable, _parity_words, _weight_bytes
from .wlo import MaskSet, WloSequence


@functools.total_ordering
class NegInfinity:
    """Degree of the constant-zero function. Compares below every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __reduce__(self):
        return (NegInfinity, ())

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        if isinstance(other, (int, np.integer)):
            return True
        if other is self:
            return False
        return NotImplemented

    def __hash__(self):
        return hash("NegInfinity")

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"


NEG_INF = NegInfinity()
Degree = Union[int, NegInfinity]


def to_degree(value: int) -> Degree:
    """Decode the -1 sentinel."""
    return NEG_INF if value < 0 else int(value)


def to_int(deg: Degree) -> int:
    """Encode a degree with -1 for the zero function."""
    return -1 if deg is NEG_INF else int(deg)


class Tail(str, enum.Enum):
    ES = "es"
    WLO = "wlo"
    CBWLO = "cbwlo"


class PipelineKind(enum.Enum):
    """The eight algorithm chains that are timed against each other."""

    BYTE_ANFT_ES = ("bytewise", False, Tail.ES)
    BYTE_ANFT_WLO = ("bytewise", False, Tail.WLO)
    BYTE_PC_ANFT_ES = ("bytewise", True, Tail.ES)
    BYTE_PC_ANFT_WLO = ("bytewise", True, Tail.WLO)
    BIT_ANFT_WLO = ("bitwise", False, Tail.WLO)
    BIT_ANFT_CBWLO = ("bitwise", False, Tail.CBWLO)
    BIT_PC_ANFT_WLO = ("bitwise", True, Tail.WLO)
    BIT_PC_ANFT_CBWLO = ("bitwise", True, Tail.CBWLO)

    def __init__(self, family, use_pc, tail):
        self.family = family
        self.use_pc = use_pc
        self.tail = tail

    @property
    def chain(self) -> str:
        tail = {Tail.ES: "ES", Tail.WLO: "WLO", Tail.CBWLO: "CB WLO"}[self.tail]
        return ("PC+" if self.use_pc else "") + "ANFT+" + tail

    @property
    def label(self) -> str:
        """Stable identifier, e.g. ``bitwise:PC+ANFT+CBWLO``."""
        return f"{self.family}:{self.chain.replace(' ', '')}"

    @classmethod
    def from_label(cls, label: str) -> "PipelineKind":
        for kind in cls:
            if kind.label.lower() == label.lower() or kind.name.lower() == label.lower():
                return kind
        raise ValueError(f"unknown pipeline {label!r}")


# ---------- kernels

@numba.njit(cache=True)
def _popcount(x):
    # serial numbers are below 2^30, so a 32-bit SWAR count suffices
    x = x - ((x >> 1) & 0x55555555)
    x = (x & 0x33333333) + ((x >> 2) & 0x33333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F
    return ((x * 0x01010101) & 0xFFFFFFFF) >> 24


@numba.njit(cache=True)
def _deg_es(values):
    best = -1
    for i in range(values.size):
        if values[i]:
            w = _popcount(i)
            if w > best:
                best = w
    return best


@numba.njit(cache=True)
def _deg_wlo_bytes(values, order, layer_start, n):
    k = n
    for p in range(values.size - 1, -1, -1):
        while p < layer_start[k]:
            k -= 1
        if values[order[p]]:
            return k
    return -1


@numba.njit(cache=True)
def _deg_wlo_bytes_counted(values, order, layer_start, n):
    k = n
    checks = 0
    for p in range(values.size - 1, -1, -1):
        while p < layer_start[k]:
            k -= 1
        checks += 1
        if values[order[p]]:
            return k, checks
    return -1, checks


@numba.njit(cache=True)
def _deg_masks(words, masks):
    for row in range(masks.shape[0] - 1, -1, -1):
        for col in range(words.size):
            if words[col] & masks[row, col]:
                return row
    return -1


@numba.njit(cache=True)
def _deg_cb(words, order, layer_start, n):
    k = n
    for p in range(order.size - 1, -1, -1):
        while p < layer_start[k]:
            k -= 1
        i = order[p]
        if (words[i >> 6] >> np.uint64(i & 63)) & np.uint64(1):
            return k
    return -1


@numba.njit(cache=True)
def _bitwise_rows(stream, n, use_pc, cb, masks, order, layer_start, stage_masks, out):
    width = 1 << (n - 6) if n > 6 else 1
    scratch = np.empty(width, dtype=np.uint64)
    for f in range(out.size):
        tt = stream[f * width : (f + 1) * width]
        if use_pc and _parity_words(tt):
            out[f] = n
            continue
        scratch[:] = tt
        _anft_words_inplace(scratch, n, stage_masks)
        if cb:
            out[f] = _deg_cb(scratch, order, layer_start, n)
        else:
            out[f] = _deg_masks(scratch, masks)


@numba.njit(cache=True)
def _bytewise_rows(rows, n, use_pc, wlo, order, layer_start, out):
    # rows are consumed: each is overwritten by its ANF
    for f in range(rows.shape[0]):
        v = rows[f]
        if use_pc and _weight_bytes(v) & 1:
            out[f] = n
            continue
        _anft_bytes_inplace(v, n)
        if wlo:
            out[f] = _deg_wlo_bytes(v, order, layer_start, n)
        else:
            out[f] = _deg_es(v)


_NO_ORDER = np.zeros(0, dtype=np.uint32)
_NO_STARTS = np.zeros(1, dtype=np.int64)


def _no_masks(n):
    return np.zeros((0, 1 << (n - 6) if n > 6 else 1), dtype=np.uint64)


def _check_same_n(*objs):
    ns = {o.n for o in objs if o is not None}
    if len(ns) > 1:
        raise ValueError(f"inconsistent variable counts {sorted(ns)}")


# ---------- single-function API

def deg_es(anf: ByteTable) -> Degree:
    return to_degree(_deg_es(anf.values))


def deg_wlo_bytewise(anf: ByteTable, seq: WloSequence) -> Degree:
    """Walk the WLO sequence backwards; the first set coefficient's layer is
    the degree."""
    _check_same_n(anf, seq)
    return to_degree(_deg_wlo_bytes(anf.values, seq.order, seq.layer_start, anf.n))


def deg_wlo_bytewise_counted(anf: ByteTable, seq: WloSequence) -> tuple[Degree, int]:
    """Same as :func:`deg_wlo_bytewise`, also returning the number of
    coefficients inspected. Diagnostic use only."""
    _check_same_n(anf, seq)
    deg, checks = _deg_wlo_bytes_counted(anf.values, seq.order, seq.layer_start, anf.n)
    return to_degree(deg), int(checks)


def deg_wlo_bitwise(anf: AnfVector, masks: MaskSet) -> Degree:
    _check_same_n(anf, masks)
    return to_degree(_deg_masks(anf.words, masks.masks))


def deg_cb_wlo(anf: AnfVector, seq: WloSequence) -> Degree:
    _check_same_n(anf, seq)
    return to_degree(_deg_cb(anf.words, seq.order, seq.layer_start, anf.n))


def _tail(tail) -> Tail:
    return tail if isinstance(tail, Tail) else Tail(str(tail).lower())


def method_bitwise(
    tt: TruthTable,
    masks: MaskSet | None = None,
    seq: WloSequence | None = None,
    tail: Tail | str = Tail.WLO,
    use_pc: bool = True,
) -> Degree:
    """Degree of a packed truth table: parity check, packed ANFT, then the
    mask search (``tail="wlo"``) or CB WLO (``tail="cbwlo"``)."""
    tail = _tail(tail)
    if tail is Tail.ES:
        raise ValueError("the ES search runs on byte-wise ANF only")
    needed = masks if tail is Tail.WLO else seq
    if needed is None:
        raise ValueError(f"tail {tail.value!r} needs {'masks' if tail is Tail.WLO else 'seq'}")
    _check_same_n(tt, needed)
    out = np.empty(1, dtype=np.int8)
    _bitwise_rows(
        tt.words,
        tt.n,
        use_pc,
        tail is Tail.CBWLO,
        masks.masks if tail is Tail.WLO else _no_masks(tt.n),
        seq.order if tail is Tail.CBWLO else _NO_ORDER,
        seq.layer_start if tail is Tail.CBWLO else _NO_STARTS,
        STAGE_MASKS,
        out,
    )
    return to_degree(int(out[0]))


def method_bytewise(
    table: ByteTable,
    seq: WloSequence | None = None,
    tail: Tail | str = Tail.WLO,
    use_pc: bool = True,
) -> Degree:
    """Byte-wise counterpart: weight parity, byte ANFT, then ES or WLO."""
    tail = _tail(tail)
    if tail is Tail.CBWLO:
        raise ValueError("CB WLO runs on packed ANF only")
    if tail is Tail.WLO:
        if seq is None:
            raise ValueError("tail 'wlo' needs seq")
        _check_same_n(table, seq)
    out = np.empty(1, dtype=np.int8)
    rows = table.values.copy()[None, :]
    _bytewise_rows(
        rows,
        table.n,
        use_pc,
        tail is Tail.WLO,
        seq.order if tail is Tail.WLO else _NO_ORDER,
        seq.layer_start if tail is Tail.WLO else _NO_STARTS,
        out,
    )
    return to_degree(int(out[0]))


ORACLE_MAX_N = 10


def deg_oracle_rows(rows: np.ndarray, n: int) -> np.ndarray:
    """Degrees (-1 for zero) of byte-wise truth tables via the brute-force ANF."""
    if n > ORACLE_MAX_N:
        raise ValueError(f"degree oracle is limited to n <= {ORACLE_MAX_N}")
    anf = anf_oracle_rows(rows, n)
    weights = np.bitwise_count(np.arange(1 << n, dtype=np.uint32)).astype(np.int8)
    return np.where(anf.astype(bool), weights[None, :], np.int8(-1)).max(axis=1)


def deg_oracle(table: ByteTable) -> Degree:
    return to_degree(int(deg_oracle_rows(table.values[None, :], table.n)[0]))


# ---------- batch API

def degrees_bitwise(
    stream: np.ndarray,
    n: int,
    kind: PipelineKind,
    masks: MaskSet | None = None,
    seq: WloSequence | None = None,
) -> np.ndarray:
    """Run a bitwise pipeline over consecutive groups of ``W(n)`` words.

    Returns int8 degrees with -1 for the zero function.
    """
    if kind.family != "bitwise":
        raise ValueError(f"{kind.label} is not a bitwise pipeline")
    stream = np.ascontiguousarray(stream, dtype=np.uint64).reshape(-1)
    width = 1 << (n - 6) if n > 6 else 1
    out = np.empty(stream.size // width, dtype=np.int8)
    cb = kind.tail is Tail.CBWLO
    _bitwise_rows(
        stream, n, kind.use_pc, cb,
        _no_masks(n) if cb else masks.masks,
        seq.order if cb else _NO_ORDER,
        seq.layer_start if cb else _NO_STARTS,
        STAGE_MASKS, out,
    )
    return out


def degrees_bytewise(
    rows: np.ndarray,
    n: int,
    kind: PipelineKind,
    seq: WloSequence | None = None,
    consume: bool = False,
) -> np.ndarray:
    """Run a byte-wise pipeline over a ``(k, 2^n)`` array of truth tables.

    With ``consume=True`` the rows are transformed in place (no copy).
    """
    if kind.family != "bytewise":
        raise ValueError(f"{kind.label} is not a byte-wise pipeline")
    if not consume:
        rows = np.array(rows, dtype=np.uint8, order="C")
    out = np.empty(rows.shape[0], dtype=np.int8)
    wlo = kind.tail is Tail.WLO
    _bytewise_rows(
        rows, n, kind.use_pc, wlo,
        seq.order if wlo else _NO_ORDER,
        seq.layer_start if wlo else _NO_STARTS,
        out,
    )
    return out


@numba.njit(cache=True)
def _search_rows(rows, n, which, masks, order, layer_start, out):
    for f in range(rows.shape[0]):
        if which == 0:
            out[f] = _deg_es(rows[f])
        elif which == 1:
            out[f] = _deg_wlo_bytes(rows[f], order, layer_start, n)
        elif which == 2:
            out[f] = _deg_masks(rows[f], masks)
        else:
            out[f] = _deg_cb(rows[f], order, layer_start, n)


def search_rows(anf_rows: np.ndarray, n: int, algorithm: str,
                masks: MaskSet | None = None, seq: WloSequence | None = None) -> np.ndarray:
    """Apply one search algorithm to many ANF vectors at once.

    ``algorithm`` is ``"es"`` or ``"wlo"`` (byte rows of length 2^n), or
    ``"masks"`` or ``"cbwlo"`` (packed rows of ``W(n)`` words).
    """
    which = ("es", "wlo", "masks", "cbwlo").index(algorithm)
    dtype = np.uint8 if which < 2 else np.uint64
    anf_rows = np.ascontiguousarray(anf_rows, dtype=dtype)
    out = np.empty(anf_rows.shape[0], dtype=np.int8)
    _search_rows(
        anf_rows, n, which,
        masks.masks if which == 2 else _no_masks(n),
        seq.order if which in (1, 3) else _NO_ORDER,
        seq.layer_start if which in (1, 3) else _NO_STARTS,
        out,
    )
    return out


@numba.njit(cache=True)
def _wlo_checks_rows(rows, n, order, layer_start, degs, checks):
    for f in range(rows.shape[0]):
        degs[f], checks[f] = _deg_wlo_bytes_counted(rows[f], order, layer_start, n)


def wlo_check_counts(anf_rows: np.ndarray, n: int, seq: WloSequence) -> tuple[np.ndarray, np.ndarray]:
    """Degrees and coefficient-check counts of the byte-wise WLO search, per row."""
    anf_rows = np.ascontiguousarray(anf_rows, dtype=np.uint8)
    degs = np.empty(anf_rows.shape[0], dtype=np.int8)
    checks = np.empty(anf_rows.shape[0], dtype=np.int64)
    _wlo_checks_rows(anf_rows, n, seq.order, seq.layer_start, degs, checks)
    return degs, checks
