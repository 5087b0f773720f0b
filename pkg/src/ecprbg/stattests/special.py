"""Regularized incomplete gamma functions and normal tail helpers.

The incomplete gamma pair follows the classic Cephes split: a power series
for P(a, x) when x < a + 1 and a Legendre continued fraction for Q(a, x)
otherwise. Relative accuracy is close to machine epsilon over the ranges the
test battery uses (a up to 2**15, x up to ~1e7).
"""

from __future__ import annotations

import math

_MACHEP = 1.11022302462515654042e-16
_MAXLOG = 7.09782712893383996843e2
_BIG = 4.503599627370496e15
_BIGINV = 2.22044604925031308085e-16


def _stirling_tail(a: float) -> float:
    # lgamma(a) - ((a - 0.5) log a - a + 0.5 log 2pi), accurate for a > 200
    inv = 1.0 / a
    inv2 = inv * inv
    return inv * (1 / 12 - inv2 * (1 / 360 - inv2 * (1 / 1260 - inv2 / 1680)))


def _prefactor(a: float, x: float) -> float:
    # x**a * exp(-x) / Gamma(a), in log space
    if a > 200:
        # x = a(1 + t); avoids cancelling the two large terms a*log(x) and lgamma(a)
        t = (x - a) / a
        ax = (
            0.5 * math.log(a / (2 * math.pi))
            - _stirling_tail(a)
            + a * (math.log1p(t) - t)
        )
        if ax < -_MAXLOG:
            return 0.0
        return math.exp(ax)
    ax = a * math.log(x) - x - math.lgamma(a)
    if ax < -_MAXLOG:
        return 0.0
    return math.exp(ax)


def igam(a: float, x: float) -> float:
    """Regularized lower incomplete gamma P(a, x)."""
    if a <= 0 or x < 0:
        raise ValueError(f"igam requires a > 0 and x >= 0, got a={a}, x={x}")
    if x == 0:
        return 0.0
    if x > 1.0 and x > a:
        return 1.0 - igamc(a, x)
    ax = _prefactor(a, x)
    if ax == 0.0:
        return 0.0
    r, c, total = a, 1.0, 1.0
    while True:
        r += 1.0
        c *= x / r
        total += c
        if c / total <= _MACHEP:
            break
    return total * ax / a


def igamc(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x)."""
    if a <= 0 or x < 0:
        raise ValueError(f"igamc requires a > 0 and x >= 0, got a={a}, x={x}")
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < 1.0 or x < a:
        return 1.0 - igam(a, x)
    ax = _prefactor(a, x)
    if ax == 0.0:
        return 0.0

    y = 1.0 - a
    z = x + y + 1.0
    c = 0.0
    pkm2, qkm2 = 1.0, x
    pkm1, qkm1 = x + 1.0, z * x
    ans = pkm1 / qkm1
    while True:
        c += 1.0
        y += 1.0
        z += 2.0
        yc = y * c
        pk = pkm1 * z - pkm2 * yc
        qk = qkm1 * z - qkm2 * yc
        if qk != 0:
            r = pk / qk
            t = abs((ans - r) / r)
            ans = r
        else:
            t = 1.0
        pkm2, pkm1 = pkm1, pk
        qkm2, qkm1 = qkm1, qk
        if abs(pk) > _BIG:
            pkm2 *= _BIGINV
            pkm1 *= _BIGINV
            qkm2 *= _BIGINV
            qkm1 *= _BIGINV
        if t <= _MACHEP:
            break
    return ans * ax


def erfc(x: float) -> float:
    return math.erfc(x)


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def chi2_sf(statistic: float, dof: float) -> float:
    """Upper tail of the chi-square distribution."""
    return igamc(dof / 2.0, statistic / 2.0)
