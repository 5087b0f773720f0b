"""Binary linear algebra helpers: matrix rank over GF(2) and Berlekamp-Massey.

Rows and polynomials are packed into Python ints so that row operations and
discrepancy sums are single XOR / AND instructions on arbitrary-width words.
"""

from __future__ import annotations

import numpy as np


def pack_rows(matrix) -> list[int]:
    """Pack each row of a 0/1 matrix into an int, first column as the MSB."""
    m = np.asarray(matrix, dtype=np.uint8)
    if m.ndim != 2:
        raise ValueError("expected a 2-D matrix")
    width = m.shape[1]
    packed = np.packbits(m, axis=1)
    pad = -width % 8
    return [int.from_bytes(row.tobytes(), "big") >> pad for row in packed]


def rank_packed(rows: list[int]) -> int:
    """Rank of a GF(2) matrix given as packed row integers."""
    rows = list(rows)
    rank = 0
    while rows:
        pivot = rows.pop()
        if pivot == 0:
            continue
        rank += 1
        top = 1 << (pivot.bit_length() - 1)
        rows = [r ^ pivot if r & top else r for r in rows]
    return rank


def gf2_rank(matrix) -> int:
    """Rank over GF(2) of a 0/1 matrix (any shape)."""
    return rank_packed(pack_rows(matrix))


def berlekamp_massey(bits) -> int:
    """Linear complexity of a binary sequence.

    Returns the length L of the shortest LFSR that generates ``bits``.

    The connection polynomial C(x) is held as an int with bit j = c_j. The
    register ``window`` holds the sequence reversed, bit j = s_{n-j}, so the
    discrepancy s_n + sum c_j s_{n-j} is the parity of ``C & window``.
    """
    seq = [int(b) for b in np.asarray(bits, dtype=np.uint8).tolist()]
    C, B = 1, 1
    L, m = 0, -1
    window = 0
    for n, s in enumerate(seq):
        window = (window << 1) | s
        if (C & window).bit_count() & 1:
            T = C
            C ^= B << (n - m)
            if 2 * L <= n:
                L = n + 1 - L
                m = n
                B = T
    return L
