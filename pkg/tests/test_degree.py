import pickle

import numpy as np
import pytest

from algdeg.anft import anft_bitwise, anft_bitwise_rows, anft_bytewise, anft_bytewise_rows
from algdeg.core import AnfVector, ByteTable, TruthTable, pack, pack_rows, unpack, unpack_rows
from algdeg.degree import (
    NEG_INF,
    NegInfinity,
    PipelineKind,
    Tail,
    deg_cb_wlo,
    deg_es,
    deg_oracle,
    deg_oracle_rows,
    deg_wlo_bitwise,
    deg_wlo_bytewise,
    deg_wlo_bytewise_counted,
    degrees_bitwise,
    degrees_bytewise,
    method_bitwise,
    method_bytewise,
    search_rows,
    to_degree,
    to_int,
    wlo_check_counts,
)
from algdeg.wlo import masks_direct, wlo_bucket
from conftest import random_words
from oracles import degree_by_definition


def anf_bytes(n, ones):
    v = np.zeros(1 << n, dtype=np.uint8)
    v[list(ones)] = 1
    return ByteTable(n, v)


def test_neg_infinity():
    assert NegInfinity() is NEG_INF
    assert pickle.loads(pickle.dumps(NEG_INF)) is NEG_INF
    assert NEG_INF < 0 and NEG_INF < -5 and not NEG_INF > 0
    assert max([NEG_INF, 0, 3]) == 3
    assert NEG_INF != -1
    assert to_degree(-1) is NEG_INF and to_int(NEG_INF) == -1
    assert str(NEG_INF) == "-inf"


def test_es_examples():
    assert deg_es(anf_bytes(3, [])) is NEG_INF
    assert deg_es(anf_bytes(3, [0])) == 0
    assert deg_es(anf_bytes(3, [1, 6])) == 2


def test_wlo_bytewise_examples():
    seq = wlo_bucket(4)
    assert deg_wlo_bytewise(anf_bytes(4, []), seq) is NEG_INF
    assert deg_wlo_bytewise_counted(anf_bytes(4, [15]), seq) == (4, 1)
    assert deg_wlo_bytewise(anf_bytes(4, [3, 5]), seq) == 2 == deg_es(anf_bytes(4, [3, 5]))
    assert deg_wlo_bytewise_counted(anf_bytes(4, []), seq) == (NEG_INF, 16)


def test_wlo_bitwise_examples():
    masks = masks_direct(3)
    assert deg_wlo_bitwise(AnfVector.from_words(3, [0]), masks) is NEG_INF
    assert deg_wlo_bitwise(AnfVector.from_words(3, [0x01]), masks) == 0
    assert deg_wlo_bitwise(AnfVector.from_words(3, [0x80]), masks) == 3


def test_cb_wlo_examples():
    seq = wlo_bucket(4)
    assert deg_cb_wlo(AnfVector.zeros(4), seq) is NEG_INF
    assert deg_cb_wlo(AnfVector.from_words(4, [1 << 15]), seq) == 4


def test_cb_wlo_matches_masks_n10(rng):
    n = 10
    seq, masks = wlo_bucket(n), masks_direct(n)
    for words in random_words(rng, 300, n):
        anf = AnfVector(n, words)
        assert deg_cb_wlo(anf, seq) == deg_wlo_bitwise(anf, masks)


def test_inconsistent_n_rejected():
    with pytest.raises(ValueError):
        deg_wlo_bitwise(AnfVector.zeros(3), masks_direct(4))
    with pytest.raises(ValueError):
        deg_wlo_bytewise(anf_bytes(3, []), wlo_bucket(4))


def test_method_bitwise_examples():
    n = 6
    masks, seq = masks_direct(n), wlo_bucket(n)
    for tail in ("wlo", "cbwlo"):
        assert method_bitwise(TruthTable.from_words(n, [1]), masks, seq, tail) == 6
        assert method_bitwise(TruthTable.from_words(n, [2**64 - 1]), masks, seq, tail) == 0
        assert method_bitwise(TruthTable.zeros(n), masks, seq, tail) is NEG_INF
    with pytest.raises(ValueError):
        method_bitwise(TruthTable.zeros(n), masks, seq, "es")
    with pytest.raises(ValueError):
        method_bitwise(TruthTable.zeros(n), None, seq, "wlo")


def test_method_bytewise_examples():
    seq = wlo_bucket(4)
    for tail in (Tail.ES, Tail.WLO):
        assert method_bytewise(anf_bytes(4, [7]), seq, tail) == 4
        assert method_bytewise(ByteTable(4, np.ones(16)), seq, tail) == 0
    with pytest.raises(ValueError):
        method_bytewise(anf_bytes(4, []), seq, "cbwlo")


def test_oracle_examples():
    assert deg_oracle(ByteTable(1, [0, 1])) == 1
    assert deg_oracle(ByteTable(3, np.zeros(8))) is NEG_INF
    assert deg_oracle(ByteTable(2, [0, 0, 0, 1])) == 2
    with pytest.raises(ValueError):
        deg_oracle(ByteTable(11, np.zeros(1 << 11)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_single_function_api_exhaustive(n):
    """Every public single-function entry point against the slow definition."""
    masks, seq = masks_direct(n), wlo_bucket(n)
    for r in range(1 << (1 << n)):
        table = [(r >> j) & 1 for j in range(1 << n)]
        expected = degree_by_definition(table, n)
        expected = NEG_INF if expected is None else expected
        b = ByteTable(n, table)
        tt = pack(b)
        anf_b, anf_w = anft_bytewise(b), anft_bitwise(tt)
        got = [
            deg_es(anf_b), deg_wlo_bytewise(anf_b, seq), deg_wlo_bitwise(anf_w, masks),
            deg_cb_wlo(anf_w, seq), deg_oracle(b),
            method_bitwise(tt, masks, seq, "wlo"), method_bitwise(tt, masks, seq, "cbwlo"),
            method_bitwise(tt, masks, seq, "wlo", use_pc=False),
            method_bytewise(b, seq, "es"), method_bytewise(b, seq, "wlo"),
            method_bytewise(b, seq, "wlo", use_pc=False),
        ]
        assert all(g == expected for g in got), (table, got)


@pytest.mark.parametrize("n", [6, 10, 16])
def test_algorithms_agree_random(rng, n):
    count = {6: 10_000, 10: 10_000, 16: 500}[n]
    masks, seq = masks_direct(n), wlo_bucket(n)
    words = random_words(rng, count, n)
    rows = unpack_rows(words, n)
    anf_b = anft_bytewise_rows(rows, n)
    anf_w = anft_bitwise_rows(words, n)
    ref = search_rows(anf_b, n, "es")
    assert np.array_equal(search_rows(anf_b, n, "wlo", seq=seq), ref)
    assert np.array_equal(search_rows(anf_w, n, "masks", masks=masks), ref)
    assert np.array_equal(search_rows(anf_w, n, "cbwlo", seq=seq), ref)
    if n <= 10:
        assert np.array_equal(deg_oracle_rows(rows, n), ref)
    for kind in PipelineKind:
        if kind.family == "bitwise":
            got = degrees_bitwise(words, n, kind, masks=masks, seq=seq)
        else:
            got = degrees_bytewise(rows, n, kind, seq=seq)
        assert np.array_equal(got, ref), kind.label


def test_pc_short_circuit_sound(rng):
    n = 8
    words = random_words(rng, 3000, n)
    masks, seq = masks_direct(n), wlo_bucket(n)
    with_pc = degrees_bitwise(words, n, PipelineKind.BIT_PC_ANFT_WLO, masks=masks, seq=seq)
    without = degrees_bitwise(words, n, PipelineKind.BIT_ANFT_WLO, masks=masks, seq=seq)
    assert np.array_equal(with_pc, without)
    odd = np.bitwise_count(words).sum(axis=1) & 1
    assert np.array_equal(with_pc == n, odd == 1)


def test_bytewise_rows_not_consumed_by_default():
    rows = np.ones((2, 16), dtype=np.uint8)
    degrees_bytewise(rows, 4, PipelineKind.BYTE_ANFT_WLO, seq=wlo_bucket(4))
    assert rows.all()


@pytest.mark.parametrize("n", [5, 8, 12])
def test_early_exit_bound(rng, n):
    """Degree n or n-1 with even weight needs at most n + 2 coefficient checks."""
    seq = wlo_bucket(n)
    rows = unpack_rows(random_words(rng, 3000, n), n)
    degs, checks = wlo_check_counts(anft_bytewise_rows(rows, n), n, seq)
    even = rows.sum(axis=1) % 2 == 0
    high = even & (degs >= n - 1)
    assert high.any()
    assert checks[high].max() <= n + 2
    assert (checks[~even] == 1).all()


def test_pipeline_labels():
    assert len(PipelineKind) == 8
    assert [k.chain for k in PipelineKind][:4] == [
        "ANFT+ES", "ANFT+WLO", "PC+ANFT+ES", "PC+ANFT+WLO"]
    assert PipelineKind.from_label("bitwise:PC+ANFT+CBWLO") is PipelineKind.BIT_PC_ANFT_CBWLO
    assert PipelineKind.from_label("byte_pc_anft_wlo") is PipelineKind.BYTE_PC_ANFT_WLO
    with pytest.raises(ValueError):
        PipelineKind.from_label("bitwise:ES")
