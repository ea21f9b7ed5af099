import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from algdeg.core import (
    ByteTable,
    LengthMismatch,
    TruthTable,
    from_bitstring,
    from_hex_words,
    pack,
    pack_rows,
    parity_check,
    parity_check_bytes,
    parity_rows,
    read_binary,
    to_bitstring,
    unpack,
    unpack_rows,
    weight_bytes,
    weight_words,
    word_count,
    write_binary,
)
from conftest import random_words
from oracles import popcount


def bytes_of(n, ones):
    v = np.zeros(1 << n, dtype=np.uint8)
    v[list(ones)] = 1
    return ByteTable(n, v)


@pytest.mark.parametrize("n, expected", [(1, 1), (5, 1), (6, 1), (7, 2), (16, 1024), (30, 1 << 24)])
def test_word_count(n, expected):
    assert word_count(n) == expected


@pytest.mark.parametrize("n", [0, 31, -1])
def test_n_out_of_range(n):
    with pytest.raises(ValueError):
        word_count(n)


def test_pack_examples():
    assert pack(ByteTable(2, [1, 1, 1, 1])).words.tolist() == [0xF]
    assert pack(ByteTable(6, np.zeros(64))).words.tolist() == [0]
    assert pack(bytes_of(7, [64])).words.tolist() == [0, 1]


def test_unpack_examples():
    assert unpack(TruthTable.from_words(2, [0xF])).values.tolist() == [1, 1, 1, 1]
    assert unpack(TruthTable.from_words(6, [0])).values.tolist() == [0] * 64
    assert unpack(TruthTable.from_words(7, [0, 1])) == bytes_of(7, [64])


def test_pack_rejects_bad_bytes():
    with pytest.raises(ValueError):
        ByteTable(2, [0, 2, 1, 1])
    with pytest.raises(ValueError):
        ByteTable(2, [0, 1, 1])


def test_truth_table_invariants():
    with pytest.raises(ValueError):
        TruthTable.from_words(7, [0])
    with pytest.raises(ValueError):
        TruthTable.from_words(3, [0x100])  # bit 8 is outside an 8-entry table
    tt = TruthTable.from_words(3, [0xFF])
    with pytest.raises(ValueError):
        tt.words[0] = 0


def test_truth_table_copies_input():
    words = np.array([5], dtype=np.uint64)
    tt = TruthTable(6, words)
    words[0] = 7
    assert tt.words[0] == 5


@given(st.integers(1, 9), st.data())
@settings(max_examples=200, deadline=None)
def test_round_trip(n, data):
    bits = data.draw(st.lists(st.integers(0, 1), min_size=1 << n, max_size=1 << n))
    table = ByteTable(n, bits)
    assert unpack(pack(table)) == table
    tt = pack(table)
    assert pack(unpack(tt)) == tt


def test_bit_index_mapping(rng):
    n = 9
    bits = rng.integers(0, 2, 1 << n)
    words = pack(ByteTable(n, bits)).words
    for i in range(1 << n):
        assert (int(words[i // 64]) >> (i % 64)) & 1 == bits[i]


def test_weight_examples():
    assert weight_bytes(ByteTable(6, np.zeros(64))) == 0
    assert weight_bytes(ByteTable(6, np.ones(64))) == 64
    assert weight_bytes(bytes_of(4, [1, 2, 4])) == 3
    assert weight_words(TruthTable.from_words(6, [0xFFFFFFFFFFFFFFFF])) == 64
    assert weight_words(TruthTable.from_words(7, [0, 1])) == 1


def test_weight_words_matches_bytes(rng):
    for words in random_words(rng, 200, 7):
        tt = TruthTable(7, words)
        assert weight_words(tt) == weight_bytes(unpack(tt)) == sum(popcount(int(w)) for w in words)


def test_parity_examples():
    assert parity_check(TruthTable.zeros(8)) == 0
    assert parity_check(TruthTable.from_words(6, [1])) == 1
    assert parity_check(TruthTable.from_words(7, [0xFFFFFFFFFFFFFFFF, 1])) == 1
    assert parity_check_bytes(ByteTable(4, np.zeros(16))) == 0
    assert parity_check_bytes(bytes_of(4, [9])) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_parity_exhaustive(n):
    for r in range(1 << (1 << n)):
        tt = TruthTable.from_words(n, [r])
        assert parity_check(tt) == popcount(r) & 1 == parity_check_bytes(unpack(tt))


@pytest.mark.parametrize("n", [5, 6, 10, 16])
def test_parity_random(rng, n):
    words = random_words(rng, 2000, n)
    expected = np.bitwise_count(words).sum(axis=1) & 1
    assert np.array_equal(parity_rows(words), expected)
    bytes_rows = unpack_rows(words[:50], n)
    for w, b in zip(words[:50], bytes_rows):
        assert parity_check(TruthTable(n, w)) == parity_check_bytes(ByteTable(n, b))


def test_pack_rows_unpack_rows_inverse(rng):
    for n in (2, 6, 8):
        words = random_words(rng, 30, n)
        assert np.array_equal(pack_rows(unpack_rows(words, n), n), words)


def test_bitstring_left_to_right():
    tt = from_bitstring("0001")
    assert tt.n == 2 and tt.words.tolist() == [0b1000]
    assert to_bitstring(tt) == "0001"
    with pytest.raises(LengthMismatch):
        from_bitstring("000", 2)
    with pytest.raises(LengthMismatch):
        from_bitstring("000")
    with pytest.raises(ValueError):
        from_bitstring("0021")


def test_hex_words():
    tt = from_hex_words(["0x1", "FFFFFFFFFFFFFFFF"], 7)
    assert tt.words.tolist() == [1, 0xFFFFFFFFFFFFFFFF]
    with pytest.raises(LengthMismatch):
        from_hex_words(["1"], 7)
    with pytest.raises(ValueError):
        from_hex_words(["xyz"], 6)
    with pytest.raises(ValueError):
        from_hex_words(["1" * 17], 6)


def test_binary_file_format(tmp_path, rng):
    n = 8
    tt = TruthTable(n, random_words(rng, 1, n)[0])
    path = tmp_path / "f.bin"
    write_binary(tt, path)
    raw = path.read_bytes()
    assert len(raw) == 8 * word_count(n)
    assert int.from_bytes(raw[8:16], "little") == int(tt.words[1])
    assert read_binary(path, n) == tt
    with pytest.raises(LengthMismatch):
        read_binary(path, 9)
