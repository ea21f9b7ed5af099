"""
Self-checks run by ``algdeg verify``.

``quick`` runs randomized cross-checks; ``exhaustive`` additionally walks every
function of up to four variables and compares the degree counts with the
closed formula. The first disagreement found in each check is reported with
the smallest failing input (lowest n, then lowest truth-table index).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .anft import anft_bitwise_rows, anft_bytewise_rows
from .bench import generate
from .core import pack_rows, unpack_rows, word_count
from .degree import (
    ORACLE_MAX_N,
    PipelineKind,
    degrees_bitwise,
    degrees_bytewise,
    deg_oracle_rows,
    search_rows,
)
from .distribution import all_truth_tables, count_formula, enumerate_distribution
from .wlo import MaskSet, masks_direct, masks_from_wlo, wlo_bucket, wlo_recursive

REFERENCE_WLO = {
    1: [0, 1],
    2: [0, 1, 2, 3],
    3: [0, 1, 2, 4, 3, 5, 6, 7],
    4: [0, 1, 2, 4, 8, 3, 5, 6, 9, 10, 12, 7, 11, 13, 14, 15],
}


@dataclass
class Failure:
    check: str
    n: int
    detail: str

    def __str__(self):
        return f"FAIL {self.check} n={self.n}: {self.detail}"


def all_degrees(rows: np.ndarray, n: int, masks: MaskSet, seq=None) -> dict[str, np.ndarray]:
    """Degree of every row (byte-wise truth tables) by every algorithm."""
    seq = wlo_bucket(n) if seq is None else seq
    words = pack_rows(rows, n)
    anf_bytes = anft_bytewise_rows(rows, n)
    anf_words = anft_bitwise_rows(words, n)
    out = {
        "es": search_rows(anf_bytes, n, "es"),
        "wlo_bytewise": search_rows(anf_bytes, n, "wlo", seq=seq),
        "wlo_bitwise": search_rows(anf_words, n, "masks", masks=masks),
        "cb_wlo": search_rows(anf_words, n, "cbwlo", seq=seq),
    }
    if n <= ORACLE_MAX_N:
        out["oracle"] = deg_oracle_rows(rows, n)
    for kind in PipelineKind:
        if kind.family == "bitwise":
            out[kind.label] = degrees_bitwise(words, n, kind, masks=masks, seq=seq)
        else:
            out[kind.label] = degrees_bytewise(rows, n, kind, seq=seq)
    return out


def first_disagreement(results: dict[str, np.ndarray]) -> int | None:
    ref = next(iter(results.values()))
    bad = np.zeros(ref.shape, dtype=bool)
    for v in results.values():
        bad |= v != ref
    hits = np.flatnonzero(bad)
    return int(hits[0]) if hits.size else None


def _bits(row) -> str:
    return "".join(map(str, np.asarray(row).tolist()))


def check_agreement(rows, n, masks, label, seq=None) -> Failure | None:
    results = all_degrees(rows, n, masks, seq)
    i = first_disagreement(results)
    if i is None:
        return None
    got = ", ".join(f"{k}={int(v[i])}" for k, v in results.items())
    return Failure(label, n, f"truth table {_bits(rows[i])} -> {got}")


def check_parity_degree(rows, n, degrees, label) -> Failure | None:
    odd = rows.sum(axis=1) & 1
    bad = np.flatnonzero((degrees == n) != (odd == 1))
    if bad.size:
        return Failure(label, n, f"truth table {_bits(rows[bad[0]])}: weight parity "
                                 f"{int(odd[bad[0]])} but degree {int(degrees[bad[0]])}")
    return None


def _random_rows(seed, n, count):
    words = generate(seed, count * word_count(n)).reshape(count, -1)
    if n < 6:
        words &= np.uint64((1 << (1 << n)) - 1)
    return np.ascontiguousarray(unpack_rows(words, n))


def run(level: str = "quick", masks_for: Callable[[int], MaskSet] = masks_direct,
        seed: int = 2020, echo: Callable[[str], None] = print) -> list[Failure]:
    if level not in ("quick", "exhaustive"):
        raise ValueError(f"unknown verification level {level!r}")
    failures: list[Failure] = []

    def record(f: Failure | None, ok_msg: str):
        if f is None:
            echo(f"ok   {ok_msg}")
        else:
            failures.append(f)
            echo(str(f))

    for n, expected in REFERENCE_WLO.items():
        for route in (wlo_bucket, wlo_recursive):
            got = route(n).order.tolist()
            record(None if got == expected else
                   Failure("wlo-table", n, f"{route.__name__} gave {got}"),
                   f"{route.__name__}({n}) matches the reference table")
    bad = [n for n in range(1, 13) if wlo_bucket(n) != wlo_recursive(n)]
    record(Failure("wlo-routes", bad[0], "bucket and recursive sequences differ") if bad else None,
           "bucket and recursive sequences agree for n<=12")
    mask_failure = None
    for n in range(1, 17):
        masks, ref = masks_for(n), masks_from_wlo(wlo_bucket(n))
        if masks != ref:
            k, w = np.argwhere(masks.masks != ref.masks)[0]
            mask_failure = Failure("masks", n, f"layer {k} word {w} differs from the WLO layer")
            break
    record(mask_failure, "layer masks match the WLO layers for n<=16")

    bad = [n for n in range(1, 17)
           if 1 + sum(count_formula(n, k) for k in range(n + 1)) != 1 << (1 << n)
           or count_formula(n, n) != 1 << ((1 << n) - 1)]
    record(Failure("degree-counts", bad[0], "formula does not sum to 2^(2^n)") if bad else None,
           "degree-count formula is complete for n<=16")

    if level == "exhaustive":
        for n in range(1, 5):
            rows = all_truth_tables(n)
            masks = masks_for(n)
            f = check_agreement(rows, n, masks, "exhaustive-agreement")
            record(f, f"exhaustive n={n}: {rows.shape[0]} functions checked, all algorithms agree")
            degs = deg_oracle_rows(rows, n)
            record(check_parity_degree(rows, n, degs, "odd-weight-max-degree"),
                   f"exhaustive n={n}: degree n iff odd weight")
            anf = anft_bytewise_rows(rows, n)
            back = anft_bytewise_rows(anf, n)
            bad = np.flatnonzero((back != rows).any(axis=1))
            record(Failure("anft-involution", n, f"truth table {_bits(rows[bad[0]])}") if bad.size else None,
                   f"exhaustive n={n}: ANF transform is an involution")
            dist = enumerate_distribution(n)
            bad_k = [k for k in range(n + 1) if dist[k] != count_formula(n, k)]
            record(Failure("degree-counts", n, f"enumeration differs from formula at k={bad_k[0]}")
                   if bad_k else None, f"exhaustive n={n}: degree counts match the formula")
    else:
        for n in (1, 2, 3, 4, 6, 8, 10, 12):
            count = 2000 if n <= 10 else 300
            rows = _random_rows(seed + n, n, count)
            masks = masks_for(n)
            record(check_agreement(rows, n, masks, "random-agreement"),
                   f"random n={n}: {count} functions, all algorithms agree")
            degs = search_rows(anft_bytewise_rows(rows, n), n, "es")
            record(check_parity_degree(rows, n, degs, "odd-weight-max-degree"),
                   f"random n={n}: degree n iff odd weight")
    return failures

