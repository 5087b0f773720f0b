"""SP 800-22 style randomness tests.

Every test takes a bit sequence (a :class:`~ecprbg.prbg.BitStream`, a 0/1
array, or a '0'/'1' string) and returns a :class:`TestResult`. A stream shorter
than the test's minimum raises :class:`StreamTooShortError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..prbg import BitStream
from .gf2 import berlekamp_massey, rank_packed
from .special import erfc, igamc, normal_cdf

ALPHA = 0.01


class StreamTooShortError(ValueError):
    def __init__(self, test: str, minimum: int, actual: int) -> None:
        super().__init__(f"{test} needs at least {minimum} bits, got {actual}")
        self.test = test
        self.minimum = minimum
        self.actual = actual


@dataclass
class TestResult:
    """Outcome of one randomness test.

    ``p_value`` is None only for skipped tests. Tests that compute several
    p-values (serial) report the smallest and keep all of them in
    ``sub_p_values``.
    """

    __test__ = False  # not a pytest class

    name: str
    p_value: float | None
    parameters: dict = field(default_factory=dict)
    statistic: float | None = None
    sub_p_values: tuple[float, ...] = ()
    skipped: str | None = None

    def __post_init__(self) -> None:
        if self.p_value is not None:
            # clamp float noise such as 1.0000000000000002
            self.p_value = min(1.0, max(0.0, float(self.p_value)))

    @property
    def passed(self) -> bool:
        return self.p_value is not None and self.p_value >= ALPHA

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "parameters": dict(self.parameters),
            "p_value": None if self.p_value is None else round(self.p_value, 6),
            "sub_p_values": [round(p, 6) for p in self.sub_p_values],
            "statistic": self.statistic,
            "passed": self.passed,
            "skipped": self.skipped,
        }


def as_bits(stream) -> np.ndarray:
    if isinstance(stream, BitStream):
        return stream.bits
    if isinstance(stream, str):
        return BitStream.from_string(stream).bits
    return BitStream(stream).bits


def _require(name: str, bits: np.ndarray, minimum: int) -> int:
    n = int(bits.size)
    if n < minimum:
        raise StreamTooShortError(name, minimum, n)
    return n


def _pattern_counts(bits: np.ndarray, m: int) -> np.ndarray:
    """Counts of every overlapping m-bit pattern, wrapping around the end."""
    n = bits.size
    ext = np.concatenate([bits, bits[: m - 1]]).astype(np.int64)
    vals = np.zeros(n, dtype=np.int64)
    for k in range(m):
        vals = (vals << 1) | ext[k : k + n]
    return np.bincount(vals, minlength=1 << m)


# -- frequency family ---------------------------------------------------------


def frequency_test(stream) -> TestResult:
    bits = as_bits(stream)
    n = _require("frequency", bits, 1)
    s_n = 2 * int(bits.sum()) - n
    s_obs = abs(s_n) / math.sqrt(n)
    return TestResult("frequency", erfc(s_obs / math.sqrt(2)), {}, statistic=s_obs)


def block_frequency_test(stream, m: int = 100) -> TestResult:
    bits = as_bits(stream)
    _require("block_frequency", bits, m)
    n_blocks = bits.size // m
    ones = bits[: n_blocks * m].reshape(n_blocks, m).sum(axis=1, dtype=np.int64)
    chi2 = 4.0 * m * float(np.sum((ones / m - 0.5) ** 2))
    p = igamc(n_blocks / 2.0, chi2 / 2.0)
    return TestResult("block_frequency", p, {"m": m, "blocks": n_blocks}, statistic=chi2)


def runs_test(stream) -> TestResult:
    """Total number of runs, gated on the stream being roughly balanced.

    When the proportion of ones is off by 2/sqrt(n) or more, the runs
    statistic is meaningless; the test then reports p = 0 with
    ``parameters["frequency_gate"] = False``.
    """
    bits = as_bits(stream)
    n = _require("runs", bits, 2)
    pi = float(bits.sum()) / n
    tau = 2.0 / math.sqrt(n)
    if abs(pi - 0.5) >= tau:
        return TestResult("runs", 0.0, {"frequency_gate": False})
    v_obs = 1 + int(np.count_nonzero(bits[1:] != bits[:-1]))
    num = abs(v_obs - 2.0 * n * pi * (1 - pi))
    den = 2.0 * math.sqrt(2.0 * n) * pi * (1 - pi)
    return TestResult("runs", erfc(num / den), {"frequency_gate": True}, statistic=v_obs)


# (minimum n, block length M, lowest category, highest category)
_LONGEST_RUN_LAYOUTS = (
    (750_000, 10_000, 10, 16),
    (6_272, 128, 4, 9),
    (128, 8, 1, 4),
)


@lru_cache(maxsize=None)
def longest_run_probabilities(block: int, low: int, high: int) -> tuple[float, ...]:
    """Exact category probabilities for the longest run of ones in ``block`` fair bits.

    Categories are ``<= low``, ``low + 1``, ..., ``high - 1``, ``>= high``.
    Computed by dynamic programming over the length of the trailing run.
    """

    def at_most(r: int) -> float:
        state = [1.0] + [0.0] * r  # state[j]: trailing run j, no run above r so far
        for _ in range(block):
            total = sum(state)
            state = [0.5 * total] + [0.5 * v for v in state[:-1]]
        return sum(state)

    cdf = [at_most(k) for k in range(low, high)]
    return tuple([cdf[0]] + [b - a for a, b in zip(cdf, cdf[1:])] + [1.0 - cdf[-1]])


def longest_runs_per_block(bits: np.ndarray, block: int) -> np.ndarray:
    """Length of the longest run of ones in each full block."""
    n_blocks = bits.size // block
    grid = np.zeros((n_blocks, block + 2), dtype=np.int8)
    grid[:, 1:-1] = bits[: n_blocks * block].reshape(n_blocks, block)
    edges = np.diff(grid.reshape(-1))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    longest = np.zeros(n_blocks, dtype=np.int64)
    np.maximum.at(longest, starts // (block + 2), ends - starts)
    return longest


def longest_run_test(stream) -> TestResult:
    bits = as_bits(stream)
    n = _require("longest_run", bits, 128)
    for min_n, block, low, high in _LONGEST_RUN_LAYOUTS:
        if n >= min_n:
            break
    probs = longest_run_probabilities(block, low, high)
    longest = longest_runs_per_block(bits, block)
    n_blocks = longest.size
    counts = np.bincount(np.clip(longest, low, high) - low, minlength=high - low + 1)
    expected = n_blocks * np.asarray(probs)
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    p = igamc((len(probs) - 1) / 2.0, chi2 / 2.0)
    params = {"M": block, "blocks": n_blocks, "counts": counts.tolist()}
    return TestResult("longest_run", p, params, statistic=chi2)


def _cusum_p_value(z: int, n: int) -> float:
    sq = math.sqrt(n)
    # int() truncates toward zero, matching the reference summation bounds
    total = 1.0
    for k in range(int((-n / z + 1) / 4), int((n / z - 1) / 4) + 1):
        total -= normal_cdf((4 * k + 1) * z / sq) - normal_cdf((4 * k - 1) * z / sq)
    for k in range(int((-n / z - 3) / 4), int((n / z - 1) / 4) + 1):
        total += normal_cdf((4 * k + 3) * z / sq) - normal_cdf((4 * k + 1) * z / sq)
    return total


def cumulative_sums_test(stream, direction: str = "forward") -> TestResult:
    if direction not in ("forward", "reverse"):
        raise ValueError("direction must be 'forward' or 'reverse'")
    bits = as_bits(stream)
    n = _require("cumulative_sums", bits, 1)
    x = 2 * bits.astype(np.int64) - 1
    if direction == "reverse":
        x = x[::-1]
    z = int(np.abs(np.cumsum(x)).max())
    return TestResult(
        f"cumulative_sums_{direction}",
        _cusum_p_value(z, n),
        {"direction": direction},
        statistic=z,
    )


# -- spectral -----------------------------------------------------------------


def dft_spectral_test(stream) -> TestResult:
    """Peak-height test on the discrete Fourier transform of the +/-1 sequence.

    Uses the corrected threshold sqrt(ln(1/0.05) n) and expects 95% of the
    first n/2 moduli to fall below it.
    """
    bits = as_bits(stream)
    n = _require("dft_spectral", bits, 2)
    x = 2.0 * bits - 1.0
    moduli = np.abs(np.fft.fft(x)[: n // 2])
    threshold = math.sqrt(math.log(1 / 0.05) * n)
    n0 = 0.95 * n / 2.0
    n1 = int(np.count_nonzero(moduli < threshold))
    d = (n1 - n0) / math.sqrt(n * 0.95 * 0.05 / 4.0)
    return TestResult("dft_spectral", erfc(abs(d) / math.sqrt(2)), {"N1": n1}, statistic=d)


# -- binary matrix rank -------------------------------------------------------


def rank_probabilities(rows: int, cols: int, ranks) -> list[float]:
    """P(rank = r) for a uniformly random rows x cols matrix over GF(2)."""
    out = []
    for r in ranks:
        prod = 1.0
        for i in range(r):
            prod *= (1 - 2.0 ** (i - rows)) * (1 - 2.0 ** (i - cols)) / (1 - 2.0 ** (i - r))
        out.append(2.0 ** (r * (rows + cols - r) - rows * cols) * prod)
    return out


def rank_test(stream, rows: int = 32, cols: int = 32) -> TestResult:
    bits = as_bits(stream)
    size = rows * cols
    _require("rank", bits, 38 * size)
    n_mats = bits.size // size
    mats = bits[: n_mats * size].reshape(n_mats, rows, cols)
    packed = np.packbits(mats, axis=2)
    pad = -cols % 8
    full = min(rows, cols)
    ranks = np.empty(n_mats, dtype=np.int64)
    for i in range(n_mats):
        row_ints = [int.from_bytes(r.tobytes(), "big") >> pad for r in packed[i]]
        ranks[i] = rank_packed(row_ints)
    f_full = int(np.count_nonzero(ranks == full))
    f_minus = int(np.count_nonzero(ranks == full - 1))
    f_rest = n_mats - f_full - f_minus
    p_full, p_minus = rank_probabilities(rows, cols, [full, full - 1])
    p_rest = 1.0 - p_full - p_minus
    chi2 = (
        (f_full - p_full * n_mats) ** 2 / (p_full * n_mats)
        + (f_minus - p_minus * n_mats) ** 2 / (p_minus * n_mats)
        + (f_rest - p_rest * n_mats) ** 2 / (p_rest * n_mats)
    )
    params = {"rows": rows, "cols": cols, "matrices": n_mats, "counts": [f_full, f_minus, f_rest]}
    return TestResult("rank", math.exp(-chi2 / 2.0), params, statistic=chi2)


# -- pattern-count tests ------------------------------------------------------


def _psi2(bits: np.ndarray, m: int) -> float:
    if m <= 0:
        return 0.0
    n = bits.size
    counts = _pattern_counts(bits, m)
    sum_sq = int(np.dot(counts, counts))
    return (2**m) * sum_sq / n - n


def serial_test(stream, m: int = 16) -> TestResult:
    """Uniformity of overlapping m-bit patterns.

    Two p-values come out of the first and second differences of the psi^2
    statistics; the result's ``p_value`` is the smaller of the two.
    """
    if m < 1:
        raise ValueError("pattern length must be at least 1")
    bits = as_bits(stream)
    _require("serial", bits, m)
    psi_m, psi_m1, psi_m2 = (_psi2(bits, k) for k in (m, m - 1, m - 2))
    del1 = psi_m - psi_m1
    del2 = psi_m - 2 * psi_m1 + psi_m2
    p1 = igamc(2.0 ** (m - 2), del1 / 2.0)
    p2 = igamc(2.0 ** (m - 3), del2 / 2.0)
    return TestResult("serial", min(p1, p2), {"m": m}, statistic=del1, sub_p_values=(p1, p2))


def _phi(bits: np.ndarray, m: int) -> float:
    counts = _pattern_counts(bits, m)
    freq = counts[counts > 0] / bits.size
    return float(np.sum(freq * np.log(freq)))


def approximate_entropy_test(stream, m: int = 10) -> TestResult:
    if m < 1:
        raise ValueError("block length must be at least 1")
    bits = as_bits(stream)
    n = _require("approximate_entropy", bits, m + 1)
    apen = _phi(bits, m) - _phi(bits, m + 1)
    chi2 = 2.0 * n * (math.log(2) - apen)
    p = igamc(2.0 ** (m - 1), chi2 / 2.0)
    return TestResult("approximate_entropy", p, {"m": m, "ApEn": apen}, statistic=chi2)


def template_matches(block: np.ndarray, template: np.ndarray) -> int:
    """Non-overlapping occurrences of ``template`` in ``block`` (scan restarts past a hit)."""
    m = template.size
    if block.size < m:
        return 0
    windows = np.lib.stride_tricks.sliding_window_view(block, m)
    hits = np.flatnonzero((windows == template).all(axis=1))
    count, next_free = 0, 0
    for pos in hits.tolist():
        if pos >= next_free:
            count += 1
            next_free = pos + m
    return count


def nonoverlapping_template_test(stream, template="000000001", n_blocks: int = 8) -> TestResult:
    tmpl = as_bits(template)
    m = tmpl.size
    if m < 1:
        raise ValueError("template must be non-empty")
    bits = as_bits(stream)
    _require("nonoverlapping_template", bits, n_blocks * m)
    M = bits.size // n_blocks
    blocks = bits[: n_blocks * M].reshape(n_blocks, M)
    W = np.array([template_matches(b, tmpl) for b in blocks], dtype=np.float64)
    mu = (M - m + 1) / 2.0**m
    var = M * (1 / 2.0**m - (2 * m - 1) / 2.0 ** (2 * m))
    chi2 = float(np.sum((W - mu) ** 2) / var)
    params = {
        "template": "".join(map(str, tmpl.tolist())),
        "m": m,
        "blocks": n_blocks,
        "W": W.astype(int).tolist(),
    }
    return TestResult(
        "nonoverlapping_template", igamc(n_blocks / 2.0, chi2 / 2.0), params, statistic=chi2
    )


# -- linear complexity --------------------------------------------------------

# asymptotic category probabilities 1/96, 1/32, 1/8, 1/2, 1/4, 1/16, 1/48
_LC_PROBS = (1 / 96, 1 / 32, 1 / 8, 1 / 2, 1 / 4, 1 / 16, 1 / 48)
LC_MIN_BLOCKS = 200


def linear_complexity_test(stream, M: int = 500) -> TestResult:
    bits = as_bits(stream)
    _require("linear_complexity", bits, LC_MIN_BLOCKS * M)
    n_blocks = bits.size // M
    blocks = bits[: n_blocks * M].reshape(n_blocks, M)
    L = np.array([berlekamp_massey(b) for b in blocks], dtype=np.float64)
    sign = -1.0 if M % 2 else 1.0
    mu = M / 2.0 + (9 + (-sign)) / 36.0 - (M / 3.0 + 2 / 9.0) / 2.0**M
    T = sign * (L - mu) + 2 / 9.0
    edges = np.array([-2.5, -1.5, -0.5, 0.5, 1.5, 2.5])
    # category i holds edges[i-1] < T <= edges[i]
    counts = np.bincount(np.searchsorted(edges, T, side="left"), minlength=7)
    expected = n_blocks * np.asarray(_LC_PROBS)
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    params = {"M": M, "blocks": n_blocks, "counts": counts.tolist()}
    return TestResult("linear_complexity", igamc(3.0, chi2 / 2.0), params, statistic=chi2)
