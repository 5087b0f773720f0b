import math

import numpy as np
import pytest
from scipy import special as sp

from ecprbg.stattests.special import chi2_sf, igam, igamc, normal_cdf


@pytest.mark.parametrize("x", [0.0, 1e-3, 0.5, 1.0, 3.7, 20.0, 200.0])
def test_exponential_case(x):
    assert igamc(1.0, x) == pytest.approx(math.exp(-x), rel=1e-13, abs=1e-300)


@pytest.mark.parametrize("x", [1e-4, 0.25, 1.0, 4.0, 16.0])
def test_half_integer_case(x):
    assert igamc(0.5, x) == pytest.approx(math.erfc(math.sqrt(x)), rel=1e-12)


def test_block_frequency_kernel_value():
    assert igamc(1.5, 0.5) == pytest.approx(0.801252, abs=5e-7)


@pytest.mark.parametrize("a", [0.25, 0.5, 1.5, 3.0, 4.0, 64.0, 512.0, 2**14, 2**15])
def test_against_scipy(a):
    xs = np.concatenate([np.linspace(0.01, 3 * a + 10, 40), [a, a + 1, a - 0.5 if a > 1 else 0.2]])
    for x in xs:
        expected = sp.gammaincc(a, x)
        got = igamc(a, float(x))
        if expected > 1e-12:
            assert got == pytest.approx(expected, rel=1e-10)
        else:
            assert abs(got - expected) < 1e-12
        assert igam(a, float(x)) + got == pytest.approx(1.0, abs=1e-12)


def test_edges():
    assert igamc(3.0, 0.0) == 1.0
    assert igam(3.0, 0.0) == 0.0
    assert igamc(3.0, math.inf) == 0.0
    assert igamc(2.0, 1e6) == 0.0
    with pytest.raises(ValueError):
        igamc(0.0, 1.0)
    with pytest.raises(ValueError):
        igamc(1.0, -1.0)


def test_chi2_and_normal_helpers():
    assert chi2_sf(255.0, 255) == pytest.approx(sp.chdtrc(255, 255.0), rel=1e-10)
    assert normal_cdf(0.0) == 0.5
    assert normal_cdf(1.959963984540054) == pytest.approx(0.975, rel=1e-12)
