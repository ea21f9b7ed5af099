"""
Timing harness comparing the eight degree pipelines on random functions.

The workload is one stream of pseudo-random 64-bit words (SplitMix64, see
:func:`generate`), fully materialized before any timing. For ``n`` variables
consecutive groups of ``W(n) = 2^(n-6)`` words form the successive truth
tables. Only the per-function algorithm chain is timed. Mask and sequence
generation happen beforehand, and so does the conversion to one byte per
value for the byte-wise pipelines. That conversion is done chunk by chunk,
because the byte form of a large workload does not fit in memory.

Every row carries a checksum of all computed degrees (FNV-1a over the
degree bytes, -1 stored as 0xff, in function order). Equal checksums across
pipelines mean they computed identical degree lists.
"""
from __future__ import annotations

import csv
import io
import logging
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

import numba
import numpy as np

from .anft import STAGE_MASKS
from .core import unpack_rows, word_count
from .degree import PipelineKind, Tail, _bitwise_rows, _bytewise_rows, _no_masks
from .wlo import MaskSet, WloSequence, masks_direct, wlo_bucket

log = logging.getLogger(__name__)

DEFAULT_WORDS = 10**7
DEFAULT_NVARS = (6, 8, 10, 12, 14, 16)
PROTOCOL_WORDS = 10**9
PROTOCOL_NVARS = (6, 7, 8, 10, 11, 12, 14, 15, 16)
DEFAULT_RUNS = 5

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_FNV_OFFSET = np.uint64(0xCBF29CE484222325)
_FNV_PRIME = np.uint64(0x100000001B3)


@numba.njit(cache=True)
def _splitmix_fill(state, out):
    for i in range(out.size):
        state += _GAMMA
        z = state
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        out[i] = z ^ (z >> np.uint64(31))
    return state


def generate(seed: int, word_count: int) -> np.ndarray:
    """SplitMix64 stream.

    ``state`` starts at ``seed``; each word is produced by
    ``state += 0x9E3779B97F4A7C15`` followed by the output mix
    ``z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
    z *= 0x94D049BB133111EB; z ^= z >> 31`` (all mod 2^64).
    """
    if word_count < 1:
        raise ValueError("word_count must be at least 1")
    out = np.empty(int(word_count), dtype=np.uint64)
    _splitmix_fill(np.uint64(seed & 0xFFFFFFFFFFFFFFFF), out)
    return out


@numba.njit(cache=True)
def _fnv1a(degrees):
    h = _FNV_OFFSET
    for i in range(degrees.size):
        h = (h ^ np.uint64(degrees[i] & 0xFF)) * _FNV_PRIME
    return h


def checksum(degrees: np.ndarray) -> int:
    return int(_fnv1a(np.ascontiguousarray(degrees, dtype=np.int8).view(np.uint8)))


@dataclass(frozen=True, eq=False)
class Workload:
    seed: int
    n: int
    words: np.ndarray

    def __post_init__(self):
        if self.n < 6:
            raise ValueError("benchmarks need n >= 6 (one full word per function)")
        if self.words.size % word_count(self.n):
            raise ValueError(f"word count {self.words.size} is not a multiple of {word_count(self.n)}")

    @property
    def word_count(self) -> int:
        return int(self.words.size)

    @property
    def function_count(self) -> int:
        return self.word_count // word_count(self.n)


def make_workload(seed: int, n: int, words: int | None = None,
                  stream: np.ndarray | None = None) -> Workload:
    """Cut a workload for ``n`` variables from a word stream.

    The stream is truncated to whole functions, as in ``10^9 // 2^(n-6)``.
    """
    if stream is None:
        stream = generate(seed, DEFAULT_WORDS if words is None else words)
    usable = stream.size - stream.size % word_count(n)
    if usable == 0:
        raise ValueError(f"{stream.size} words are fewer than one function of {n} variables")
    return Workload(seed, n, stream[:usable])


@dataclass(frozen=True)
class BenchRow:
    pipeline: PipelineKind
    n: int
    function_count: int
    elapsed: float
    checksum: int


def trimmed_mean(times: Sequence[float]) -> float:
    """Drop the fastest and slowest run when there are at least three."""
    times = sorted(times)
    if len(times) >= 3:
        times = times[1:-1]
    return sum(times) / len(times)


def _byte_chunk_rows(n, chunk_bytes):
    return max(1, chunk_bytes >> n)


def _time_once(kind, workload, masks, seq, chunk_bytes):
    n = workload.n
    out = np.empty(workload.function_count, dtype=np.int8)
    if kind.family == "bitwise":
        cb = kind.tail is Tail.CBWLO
        args = (
            kind.use_pc, cb,
            _no_masks(n) if cb else masks.masks,
            seq.order, seq.layer_start, STAGE_MASKS,
        )
        # first call may compile; keep it out of the timed region
        _bitwise_rows(workload.words[: word_count(n)], n, *args, out[:1])
        t0 = time.perf_counter_ns()
        _bitwise_rows(workload.words, n, *args, out)
        return (time.perf_counter_ns() - t0) * 1e-9, out

    wlo = kind.tail is Tail.WLO
    width = word_count(n)
    step = _byte_chunk_rows(n, chunk_bytes)
    elapsed = 0
    warm = True
    for start in range(0, workload.function_count, step):
        stop = min(start + step, workload.function_count)
        rows = unpack_rows(workload.words[start * width : stop * width].reshape(-1, width), n)
        rows = np.ascontiguousarray(rows)
        if warm:
            _bytewise_rows(rows[:1].copy(), n, kind.use_pc, wlo, seq.order, seq.layer_start, out[:1])
            warm = False
        t0 = time.perf_counter_ns()
        _bytewise_rows(rows, n, kind.use_pc, wlo, seq.order, seq.layer_start, out[start:stop])
        elapsed += time.perf_counter_ns() - t0
    return elapsed * 1e-9, out


def run_pipeline(
    kind: PipelineKind,
    workload: Workload,
    masks: MaskSet | None = None,
    seq: WloSequence | None = None,
    runs: int = 1,
    chunk_bytes: int = 1 << 24,
) -> BenchRow:
    """Time one pipeline over a workload ``runs`` times.

    Elapsed is the trimmed mean of the runs (see :func:`trimmed_mean`). All
    runs must produce the same degrees.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    n = workload.n
    masks = masks_direct(n) if masks is None else masks
    seq = wlo_bucket(n) if seq is None else seq
    times = []
    sums = set()
    for _ in range(runs):
        elapsed, degrees = _time_once(kind, workload, masks, seq, chunk_bytes)
        times.append(elapsed)
        sums.add(checksum(degrees))
    if len(sums) != 1:
        raise RuntimeError(f"{kind.label} n={n}: degrees differ between runs")
    row = BenchRow(kind, n, workload.function_count, trimmed_mean(times), sums.pop())
    log.info("%s n=%d: %.3f s over %d functions", kind.label, n, row.elapsed, row.function_count)
    return row


@numba.njit(cache=True)
def _noop_rows(stream, width, out):
    for f in range(out.size):
        out[f] = np.int8(stream[f * width] & np.uint64(1))


def loop_overhead(workload: Workload) -> float:
    """Time a pass that only touches the first word of every function."""
    width = word_count(workload.n)
    out = np.empty(workload.function_count, dtype=np.int8)
    _noop_rows(workload.words[:width], width, out[:1])
    t0 = time.perf_counter_ns()
    _noop_rows(workload.words, width, out)
    return (time.perf_counter_ns() - t0) * 1e-9


def run_bench(
    seed: int = 0,
    words: int = DEFAULT_WORDS,
    nvars: Iterable[int] = DEFAULT_NVARS,
    pipelines: Iterable[PipelineKind] = tuple(PipelineKind),
    runs: int = DEFAULT_RUNS,
) -> list[BenchRow]:
    stream = generate(seed, words)
    pipelines = list(pipelines)
    rows = []
    for n in sorted(set(nvars)):
        workload = make_workload(seed, n, stream=stream)
        masks, seq = masks_direct(n), wlo_bucket(n)
        for kind in pipelines:
            rows.append(run_pipeline(kind, workload, masks, seq, runs=runs))
    return rows


def checksum_mismatches(rows: Iterable[BenchRow]) -> list[int]:
    """Values of ``n`` whose pipelines disagree on the degree checksum."""
    by_n: dict[int, set[int]] = {}
    for row in rows:
        by_n.setdefault(row.n, set()).add(row.checksum)
    return sorted(n for n, sums in by_n.items() if len(sums) > 1)


HEADER = ("pipeline", "n", "functions", "seconds", "checksum")


def report(rows: Iterable[BenchRow]) -> str:
    rows = list(rows)
    if not rows:
        raise ValueError("report needs at least one row")
    rank = {kind: i for i, kind in enumerate(PipelineKind)}
    rows.sort(key=lambda r: (rank[r.pipeline], r.n))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for r in rows:
        writer.writerow([r.pipeline.label, r.n, r.function_count, f"{r.elapsed:.3f}", f"{r.checksum:016x}"])
    return buf.getvalue()
