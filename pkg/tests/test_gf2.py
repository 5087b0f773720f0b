import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ecprbg.stattests.gf2 import berlekamp_massey, gf2_rank, pack_rows


def span_rank(matrix) -> int:
    """Rank as log2 of the size of the row space, by enumeration."""
    rows = [int("".join(map(str, r)), 2) for r in np.asarray(matrix).tolist()]
    space = {0}
    for r in rows:
        space |= {v ^ r for v in space}
    return len(space).bit_length() - 1


def lfsr_sequence(taps: list[int], state: list[int], n: int) -> list[int]:
    """s_k = sum taps[j] * s_{k-1-j} (mod 2), started from ``state``."""
    seq = list(state)
    while len(seq) < n:
        seq.append(sum(t & seq[-1 - j] for j, t in enumerate(taps)) & 1)
    return seq[:n]


def shortest_lfsr_brute_force(seq: list[int]) -> int:
    n = len(seq)
    if not any(seq):
        return 0
    for L in range(1, n + 1):
        for taps in itertools.product((0, 1), repeat=L):
            if all(
                seq[k] == sum(taps[j] & seq[k - 1 - j] for j in range(L)) & 1
                for k in range(L, n)
            ):
                return L
    return n


def test_pack_rows():
    assert pack_rows([[1, 0, 1], [0, 0, 1]]) == [0b101, 0b001]


def test_rank_examples():
    assert gf2_rank(np.zeros((32, 32), dtype=np.uint8)) == 0
    assert gf2_rank(np.eye(32, dtype=np.uint8)) == 32
    assert gf2_rank([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == 2


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 8), st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_rank_matches_span_enumeration(rows, cols, seed):
    m = np.random.default_rng(seed).integers(0, 2, size=(rows, cols))
    assert gf2_rank(m) == span_rank(m)


def test_rank_of_random_32x32_matches_span_subsets():
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = rng.integers(0, 2, size=(32, 32))
        r = gf2_rank(m)
        # rank is invariant under row permutation and transposition
        assert gf2_rank(m[rng.permutation(32)]) == r
        assert gf2_rank(m.T) == r


def test_bm_zero_sequence():
    assert berlekamp_massey([0] * 50) == 0


@pytest.mark.parametrize(
    "taps",
    [
        [1, 0, 0, 1],  # x^4 + x^3 + 1 style, degree 4
        [0, 0, 0, 0, 1, 0, 1],
        [1, 1, 0, 0, 0, 0, 0, 0, 0, 1],
        [0] * 16 + [1],
    ],
)
def test_bm_recovers_lfsr_degree(taps):
    d = len(taps)
    seq = lfsr_sequence(taps, [1] + [0] * (d - 1), 4 * d + 10)
    assert berlekamp_massey(seq) == d


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=10))
def test_bm_matches_brute_force(seq):
    assert berlekamp_massey(seq) == shortest_lfsr_brute_force(seq)


def test_bm_bound_and_single_one():
    rng = np.random.default_rng(3)
    for n in (1, 5, 64, 500):
        assert 0 <= berlekamp_massey(rng.integers(0, 2, n)) <= n
    # 0...01 needs a register as long as the sequence
    assert berlekamp_massey([0] * 9 + [1]) == 10
