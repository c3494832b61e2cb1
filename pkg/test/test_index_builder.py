"""
test_index_builder.py

  • Length sets: worked values and the covering property in exact rationals.
  • Boundary ranks and both fingerprint maps on "abaab".
  • Maps equal a brute-force grouping of sorted boundary strings.
  • Size bounds, empty text, parameter errors, collision retry.
"""
import random
from fractions import Fraction

import pytest

from alcs import index_builder
from alcs.errors import FingerprintCollisionError, ParameterError
from alcs.index_builder import (
    EMPTY_RANGE,
    build_index,
    build_left_map,
    build_right_map,
    length_set,
    rank_boundaries,
)
from alcs.kr_fingerprint import KrParams, draw_params, fp_of
from alcs.lz_parse import lz77_parse


# ---- length set -------------------------------------------------------------


def test_length_set_worked_values():
    assert length_set(0.5, 10).lengths == (1, 2, 4, 8)
    assert length_set(0.25, 8).lengths == (1, 2, 3, 4, 5, 6, 8)
    for eps in (0.1, 0.5, 0.9):
        assert length_set(eps, 1).lengths == (1,)


def test_length_set_covers_every_length():
    for eps in (0.5, 0.3, 0.25, 0.1, 0.05):
        lengths = length_set(eps, 600).lengths
        keep = 1 - Fraction(repr(eps))
        assert list(lengths) == sorted(set(lengths))
        for length in range(1, 601):
            best = max(a for a in lengths if a <= length)
            assert best > keep * length, (eps, length, best)


def test_length_set_rejects_bad_input():
    for eps in (0.0, 1.0, 1.5, -0.2):
        with pytest.raises(ParameterError, match=r"epsilon must be in \(0,1\)"):
            length_set(eps, 10)
    with pytest.raises(ParameterError):
        length_set(0.5, 0)


def exact_length_set(eps, max_len):
    ratio = 1 / (1 - Fraction(repr(eps)))
    out, e = [], 0
    while True:
        power = ratio ** e
        value = -((-power.numerator) // power.denominator)
        if value > max_len:
            return tuple(out)
        if not out or out[-1] != value:
            out.append(value)
        e += 1


def test_length_set_matches_exact_rationals():
    for eps in (0.5, 0.3, 0.25, 0.2, 0.1, 0.05):
        assert length_set(eps, 5000).lengths == exact_length_set(eps, 5000), eps


def test_length_set_tiny_epsilon():
    # consecutive powers differ by less than one, so every length is present
    assert length_set(1e-5, 40).lengths == tuple(range(1, 41))
    assert length_set(1e-4, 200).lengths == tuple(range(1, 201))
    lengths = length_set(0.001, 2000).lengths
    assert lengths[:50] == tuple(range(1, 51))
    assert lengths[-1] <= 2000


# ---- worked example ---------------------------------------------------------


def test_abaab_ranks():
    text = b"abaab"
    ranks = rank_boundaries(text, lz77_parse(text))
    assert ranks.x_rank == (1, 3, 2, 4)
    assert ranks.y_rank == (4, 2, 3, 1)


def test_rank_boundaries_rejects_foreign_parse():
    with pytest.raises(ParameterError, match="parse covers 5 bytes, text has 6"):
        rank_boundaries(b"abaaba", lz77_parse(b"abaab"))


def test_abaab_left_map():
    text = b"abaab"
    kr = draw_params(1)
    parse = lz77_parse(text)
    fmap = build_left_map(text, parse, rank_boundaries(text, parse), length_set(0.5, 5), kr)
    expected = {
        b"a": (1, 2), b"b": (3, 4), b"ab": (3, 4), b"aa": (2, 2), b"abaa": (2, 2), b"baab": (4, 4),
    }
    assert len(fmap) == len(expected)
    for s, rng in expected.items():
        assert fmap.lookup(len(s), fp_of(s, kr)) == rng
    assert fmap.lookup(2, fp_of(b"bb", kr)) == EMPTY_RANGE


def test_abaab_right_map():
    text = b"abaab"
    kr = draw_params(1)
    parse = lz77_parse(text)
    fmap = build_right_map(text, parse, rank_boundaries(text, parse), length_set(0.5, 5), kr)
    expected = {
        b"": (1, 4), b"a": (2, 2), b"b": (3, 4), b"aa": (2, 2), b"ba": (4, 4), b"baab": (4, 4),
    }
    assert len(fmap) == len(expected)
    for s, rng in expected.items():
        assert fmap.lookup(len(s), fp_of(s, kr)) == rng


def test_abaab_index(abaab_index):
    idx = abaab_index
    assert idx.n == 5
    assert idx.z == 4
    assert idx.lengths.lengths == (1, 2, 4)
    points = {(x, idx.grid.access(x)) for x in range(1, idx.z + 1)}
    assert points == {(1, 4), (3, 2), (2, 3), (4, 1)}
    assert idx.build_seed == 1
    assert idx.entry_count == 12


# ---- against brute force ----------------------------------------------------


def _brute_maps(text: bytes, eps: float, kr: KrParams):
    n = len(text)
    ends = lz77_parse(text).ends
    lengths = length_set(eps, n).lengths
    by_x = sorted(ends, key=lambda e: text[:e][::-1])
    by_y = sorted(ends, key=lambda e: text[e:])

    def group(sorted_ends, piece):
        out = {}
        for d in lengths:
            for rank, e in enumerate(sorted_ends, start=1):
                s = piece(e, d)
                if s is None:
                    continue
                key = (d, fp_of(s, kr))
                lo, hi = out.get(key, (rank, rank))
                out[key] = (min(lo, rank), max(hi, rank))
        return out

    left = group(by_x, lambda e, d: text[e - d:e] if e >= d else None)
    right = group(by_y, lambda e, d: text[e:e + d] if e + d <= n else None)
    right[(0, 0)] = (1, len(ends))
    return left, right


def test_maps_match_brute_force():
    rng = random.Random(29)
    for trial in range(60):
        alphabet = b"ab" if trial % 3 else b"ACGT"
        text = bytes(rng.choice(alphabet) for _ in range(rng.randint(1, 256)))
        eps = rng.choice([0.5, 0.25, 0.1])
        idx = build_index(text, eps, seed=trial)
        left, right = _brute_maps(text, eps, idx.kr)
        assert idx.map_left.entries == left
        assert idx.map_right.entries == right


def test_ranges_nest_as_strings_extend():
    rng = random.Random(31)
    text = bytes(rng.choice(b"ab") for _ in range(200))
    idx = build_index(text, 0.25, seed=3)
    ends = lz77_parse(text).ends
    lengths = idx.lengths.lengths
    for e in ends:
        prev = None
        for d in lengths:
            if d > e:
                break
            cur = idx.map_left.lookup(d, fp_of(text[e - d:e], idx.kr))
            assert cur != EMPTY_RANGE
            if prev is not None:
                assert prev[0] <= cur[0] <= cur[1] <= prev[1]
            prev = cur


def test_entry_counts_bounded():
    rng = random.Random(37)
    for _ in range(20):
        text = bytes(rng.choice(b"abc") for _ in range(rng.randint(1, 400)))
        idx = build_index(text, 0.1, seed=5)
        assert len(idx.map_left) <= idx.z * len(idx.lengths)
        assert len(idx.map_right) <= idx.z * len(idx.lengths) + 1


# ---- options and edge cases -------------------------------------------------


def test_empty_text():
    idx = build_index(b"", 0.5, seed=0)
    assert idx.z == 0
    assert idx.n == 0
    assert len(idx.lengths) == 0
    assert idx.entry_count == 0


def test_max_pattern_len_caps_lengths():
    text = b"abcabcabcabcabcabc"
    idx = build_index(text, 0.5, seed=2, max_pattern_len=4)
    assert idx.lengths.lengths == (1, 2, 4)
    assert all(length <= 4 for length, _ in idx.map_left.entries)
    with pytest.raises(ParameterError):
        build_index(text, 0.5, max_pattern_len=0)


def test_bad_epsilon():
    with pytest.raises(ParameterError, match=r"epsilon must be in \(0,1\)"):
        build_index(b"abc", 1.5)


def test_same_seed_same_index():
    text = b"the quick brown fox jumps over the lazy dog " * 4
    assert build_index(text, 0.25, seed=9) == build_index(text, 0.25, seed=9)


# ---- collisions -------------------------------------------------------------


def test_tiny_modulus_collides():
    # three distinct one-character suffixes into two residues
    text = b"abc"
    parse = lz77_parse(text)
    ranks = rank_boundaries(text, parse)
    with pytest.raises(FingerprintCollisionError):
        build_left_map(text, parse, ranks, length_set(0.5, 3), KrParams(base=1, modulus=2))


def test_build_redraws_after_collision(monkeypatch):
    calls = []

    def flaky(seed=None, attempt=0):
        calls.append(attempt)
        if attempt == 0:
            return KrParams(base=1, seed=seed, modulus=2)
        return draw_params(seed, attempt)

    monkeypatch.setattr(index_builder, "draw_params", flaky)
    idx = build_index(b"abcabc", 0.5, seed=4)
    assert calls == [0, 1]
    assert idx.kr == draw_params(4, 1)


def test_build_gives_up_after_attempts(monkeypatch):
    monkeypatch.setattr(
        index_builder, "draw_params", lambda seed=None, attempt=0: KrParams(base=1, seed=seed, modulus=2)
    )
    with pytest.raises(FingerprintCollisionError):
        build_index(b"abc", 0.5, seed=4, max_attempts=3)
