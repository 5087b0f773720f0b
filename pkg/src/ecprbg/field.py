"""Arithmetic in a prime field F_p with p below 2**62."""

from __future__ import annotations

from dataclasses import dataclass

MAX_MODULUS_BITS = 62

# Deterministic Miller-Rabin witnesses, valid for every n < 3.3e24 (so all n < 2**64).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FieldMismatchError(ValueError):
    """Operands belong to different prime fields."""


class NonInvertibleError(ZeroDivisionError):
    """Inversion of the zero element was requested."""


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin test, exact for n < 2**64."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _egcd_inverse(value: int, p: int) -> int:
    # extended Euclid: track s with s*value = r (mod p)
    r0, r1 = p, value
    s0, s1 = 0, 1
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise NonInvertibleError(f"{value} has no inverse modulo {p}")
    return s0 % p


@dataclass(frozen=True)
class PrimeField:
    """The field of residues modulo a prime ``3 < p < 2**62``.

    Calling the field reduces an integer into it::

        >>> F = PrimeField(29)
        >>> F(34)
        FieldElement(5, p=29)
    """

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError("modulus must be an int")
        if self.p <= 3:
            raise ValueError(f"modulus must exceed 3, got {self.p}")
        if self.p.bit_length() > MAX_MODULUS_BITS:
            raise ValueError(f"modulus must be below 2**{MAX_MODULUS_BITS}")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def __call__(self, value: int) -> FieldElement:
        return FieldElement(value % self.p, self)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def elements(self):
        for v in range(self.p):
            yield FieldElement(v, self)


@dataclass(frozen=True)
class FieldElement:
    """Canonical residue ``0 <= value < p``.

    Construct through :class:`PrimeField` (``F(7)``); the constructor does not
    reduce, it only checks canonicality.
    """

    value: int
    field: PrimeField

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not a canonical residue mod {self.field.p}")

    def __repr__(self) -> str:
        return f"FieldElement({self.value}, p={self.field.p})"

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field.p != self.field.p:
                raise FieldMismatchError(
                    f"operands live in F_{self.field.p} and F_{other.field.p}"
                )
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return other % self.field.p
        return NotImplemented

    def _new(self, value: int) -> FieldElement:
        return FieldElement(value % self.field.p, self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field.p == other.field.p and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.field.p))

    def __add__(self, other) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self._new(self.value + v)

    __radd__ = __add__

    def __sub__(self, other) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self._new(self.value - v)

    def __rsub__(self, other) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self._new(v - self.value)

    def __mul__(self, other) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self._new(self.value * v)

    __rmul__ = __mul__

    def __neg__(self) -> FieldElement:
        return self._new(-self.value)

    def inv(self) -> FieldElement:
        """Multiplicative inverse by the extended Euclidean algorithm."""
        if self.value == 0:
            raise NonInvertibleError(f"zero has no inverse in F_{self.field.p}")
        return FieldElement(_egcd_inverse(self.value, self.field.p), self.field)

    def __truediv__(self, other) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self * self._new(v).inv()

    def __rtruediv__(self, other) -> FieldElement:
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return self.inv() * v

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            raise ValueError("negative exponents are not supported; use inv()")
        result, base = 1, self.value
        while e:
            if e & 1:
                result = result * base % self.field.p
            base = base * base % self.field.p
            e >>= 1
        return self._new(result)

    def is_square(self) -> bool:
        """Euler's criterion; zero counts as a square."""
        return (self ** ((self.field.p - 1) // 2)).value in (0, 1)


# Functional spellings of the operators.
def add(u: FieldElement, v: FieldElement) -> FieldElement:
    return u + v


def sub(u: FieldElement, v: FieldElement) -> FieldElement:
    return u - v


def mul(u: FieldElement, v: FieldElement) -> FieldElement:
    return u * v


def neg(u: FieldElement) -> FieldElement:
    return -u


def inv(u: FieldElement) -> FieldElement:
    return u.inv()


def power(u: FieldElement, e: int) -> FieldElement:
    return u ** e


def is_quadratic_residue(u: FieldElement) -> bool:
    return u.is_square()
