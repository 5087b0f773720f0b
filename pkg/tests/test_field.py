import pytest
from hypothesis import given, strategies as st

from ecprbg.field import (
    FieldMismatchError,
    NonInvertibleError,
    PrimeField,
    add,
    inv,
    is_prime,
    is_quadratic_residue,
    mul,
    neg,
    power,
    sub,
)

F29 = PrimeField(29)
BIG = PrimeField(2**61 - 1)


@pytest.mark.parametrize(
    "op, u, v, expected",
    [
        (add, 23, 11, 5),
        (add, 0, 17, 17),
        (add, 28, 1, 0),
        (mul, 12, 8, 9),
        (sub, 3, 6, 26),
    ],
)
def test_binary_examples(op, u, v, expected):
    assert op(F29(u), F29(v)).value == expected


def test_neg_zero():
    assert neg(F29(0)).value == 0


@pytest.mark.parametrize("u, expected", [(11, 8), (22, 4), (1, 1)])
def test_inverse_examples(u, expected):
    assert inv(F29(u)).value == expected


def test_inverse_matches_brute_force_for_every_element():
    for u in range(1, 29):
        brute = next(k for k in range(1, 29) if u * k % 29 == 1)
        assert inv(F29(u)).value == brute


def test_inverse_of_zero_raises():
    with pytest.raises(NonInvertibleError):
        inv(F29(0))
    with pytest.raises(ZeroDivisionError):
        F29(3) / F29(0)


@pytest.mark.parametrize("u, e, expected", [(2, 28, 1), (5, 1, 5), (3, 3, 27), (7, 0, 1)])
def test_power_examples(u, e, expected):
    assert power(F29(u), e).value == expected


def test_quadratic_residues_match_square_table():
    squares = {y * y % 29 for y in range(29)}
    for u in range(29):
        assert is_quadratic_residue(F29(u)) == (u in squares)
    assert is_quadratic_residue(F29(5))
    assert is_quadratic_residue(F29(0))
    assert not is_quadratic_residue(F29(2))


def test_mismatched_fields_rejected():
    with pytest.raises(FieldMismatchError):
        F29(1) + PrimeField(31)(1)
    with pytest.raises(FieldMismatchError):
        F29(1) * PrimeField(31)(1)


@pytest.mark.parametrize("p", [1, 2, 3, 4, 9, 15, 561, 2**61 + 1, 2**62 + 135])
def test_bad_moduli_rejected(p):
    with pytest.raises(ValueError):
        PrimeField(p)


def test_miller_rabin_against_trial_division():
    def slow(n):
        return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))

    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if slow(n)]
    # strong pseudoprimes to several small bases
    assert not is_prime(3215031751)
    assert not is_prime(3825123056546413051)
    assert is_prime(2**61 - 1)


def test_non_canonical_element_rejected():
    from ecprbg.field import FieldElement

    with pytest.raises(ValueError):
        FieldElement(29, F29)


elements = st.integers(min_value=0, max_value=2**61 - 2)


@given(elements, elements, elements)
def test_ring_axioms_large_prime(a, b, c):
    u, v, w = BIG(a), BIG(b), BIG(c)
    assert (u + v) + w == u + (v + w)
    assert u * (v + w) == u * v + u * w
    assert u + (-u) == BIG.zero
    for r in (u + v, u - v, u * v, -u):
        assert 0 <= r.value < BIG.p


@given(st.integers(min_value=1, max_value=2**61 - 2))
def test_inverse_and_fermat_large_prime(a):
    u = BIG(a)
    assert u * u.inv() == BIG.one
    assert u ** (BIG.p - 1) == BIG.one
