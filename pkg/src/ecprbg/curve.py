"""Short Weierstrass curves y^2 = x^3 + ax + b over a prime field.

Points are kept in affine coordinates; the group law uses the chord and
tangent formulas directly, which is plenty fast for desk-scale primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .field import FieldElement, PrimeField

ENUMERATION_LIMIT = 1 << 20
ORDER_CHECK_LIMIT = 1 << 24


class PointNotOnCurveError(ValueError):
    pass


class SingularCurveError(ValueError):
    pass


@dataclass(frozen=True)
class Point:
    """An affine point, or the point at infinity when ``x`` and ``y`` are None."""

    x: FieldElement | None = None
    y: FieldElement | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def xy(self) -> tuple[int, int] | None:
        """Plain integer coordinates, None for the point at infinity."""
        if self.is_infinity:
            return None
        return (self.x.value, self.y.value)

    def __repr__(self) -> str:
        if self.is_infinity:
            return "Point(O)"
        return f"Point({self.x.value}, {self.y.value})"


INFINITY = Point()


@dataclass(frozen=True)
class Curve:
    """E: y^2 = x^3 + ax + b over F_p, rejected at construction if singular.

    Args:
        p: prime modulus, 3 < p < 2**62.
        a: linear coefficient (any int, reduced mod p).
        b: constant coefficient (any int, reduced mod p).
    """

    p: int
    a: int
    b: int

    def __post_init__(self) -> None:
        field = PrimeField(self.p)
        object.__setattr__(self, "a", self.a % self.p)
        object.__setattr__(self, "b", self.b % self.p)
        if self.discriminant() == 0:
            raise SingularCurveError(
                f"4a^3 + 27b^2 = 0 mod {self.p} for a={self.a}, b={self.b}"
            )
        object.__setattr__(self, "_field", field)

    @property
    def field(self) -> PrimeField:
        return self._field

    def discriminant(self) -> int:
        """4a^3 + 27b^2 mod p (the curve is smooth iff this is nonzero)."""
        return (4 * self.a ** 3 + 27 * self.b ** 2) % self.p

    def point(self, x: int, y: int) -> Point:
        """Build an affine point and check it satisfies the curve equation."""
        pt = Point(self.field(x), self.field(y))
        if not self.is_on_curve(pt):
            raise PointNotOnCurveError(f"({x}, {y}) is not on {self}")
        return pt

    def rhs(self, x: int) -> int:
        return (x * x * x + self.a * x + self.b) % self.p

    def is_on_curve(self, pt: Point) -> bool:
        if pt.is_infinity:
            return True
        if pt.x.field.p != self.p or pt.y.field.p != self.p:
            return False
        return pt.y.value * pt.y.value % self.p == self.rhs(pt.x.value)

    def _check(self, *points: Point) -> None:
        for pt in points:
            if not self.is_on_curve(pt):
                raise PointNotOnCurveError(f"{pt!r} is not on {self}")

    # -- group law -------------------------------------------------------

    def negate(self, pt: Point) -> Point:
        self._check(pt)
        if pt.is_infinity:
            return pt
        return Point(pt.x, -pt.y)

    def add(self, P: Point, Q: Point) -> Point:
        self._check(P, Q)
        return self._add(P, Q)

    def double(self, P: Point) -> Point:
        self._check(P)
        return self._double(P)

    def _add(self, P: Point, Q: Point) -> Point:
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y == Q.y:
                return self._double(P)
            # same x, different y: Q = -P
            return INFINITY
        slope = (Q.y - P.y) / (Q.x - P.x)
        x3 = slope * slope - P.x - Q.x
        y3 = slope * (P.x - x3) - P.y
        return Point(x3, y3)

    def _double(self, P: Point) -> Point:
        if P.is_infinity or P.y.value == 0:
            return INFINITY
        slope = (3 * P.x * P.x + self.a) / (2 * P.y)
        x3 = slope * slope - 2 * P.x
        y3 = slope * (P.x - x3) - P.y
        return Point(x3, y3)

    def scalar_mul(self, k: int, P: Point) -> Point:
        """[k]P by left-to-right double-and-add."""
        if k < 0:
            raise ValueError("scalar must be non-negative")
        self._check(P)
        result = INFINITY
        for bit in bin(k)[2:] if k else "":
            result = self._double(result)
            if bit == "1":
                result = self._add(result, P)
        return result

    # -- small-curve utilities -------------------------------------------

    def enumerate_points(self) -> list[Point]:
        """Every point of E(F_p), O first then affine points sorted by (x, y).

        Only for p <= 2**20; uses a table mapping each square to its roots.
        """
        if self.p > ENUMERATION_LIMIT:
            raise ValueError(
                f"point enumeration is limited to p <= 2**20 (got p={self.p})"
            )
        roots: dict[int, list[int]] = {}
        for y in range(self.p):
            roots.setdefault(y * y % self.p, []).append(y)
        F = self.field
        points = [INFINITY]
        for x in range(self.p):
            for y in sorted(roots.get(self.rhs(x), ())):
                points.append(Point(F(x), F(y)))
        return points

    def order(self) -> int:
        """#E(F_p) by enumeration (desk-scale curves only)."""
        return len(self.enumerate_points())

    def point_order(self, P: Point) -> int:
        """Smallest k > 0 with [k]P = O, found by repeated addition."""
        self._check(P)
        k, acc = 1, P
        while not acc.is_infinity:
            acc = self._add(acc, P)
            k += 1
        return k


@dataclass(frozen=True)
class GeneratorSpec:
    """A base point ``G`` of prime-or-composite order ``order`` on ``curve``.

    The order is verified at construction by brute force: [order]G must be O
    and no smaller positive multiple may be.
    """

    curve: Curve
    G: Point
    order: int

    def __post_init__(self) -> None:
        if self.G.is_infinity:
            raise ValueError("base point must be affine")
        if not self.curve.is_on_curve(self.G):
            raise PointNotOnCurveError(f"base point {self.G!r} is not on the curve")
        if self.order < 2:
            raise ValueError("base point order must be at least 2")
        if self.order > ORDER_CHECK_LIMIT:
            raise ValueError("base point order too large to verify by repeated addition")
        actual = self.curve.point_order(self.G)
        if actual != self.order:
            raise ValueError(
                f"base point {self.G!r} has order {actual}, not {self.order}"
            )

    @classmethod
    def from_ints(cls, p: int, a: int, b: int, gx: int, gy: int, order: int) -> GeneratorSpec:
        curve = Curve(p, a, b)
        return cls(curve, curve.point(gx, gy), order)

    @cached_property
    def coordinate_bytes(self) -> int:
        """Fixed width used when serialising an x-coordinate."""
        return (self.curve.p.bit_length() + 7) // 8


# E: y^2 = x^3 + 4x + 1 over F_503, #E = 516, G = (283, 315) of order 129.
DEFAULT_P, DEFAULT_A, DEFAULT_B = 503, 4, 1
DEFAULT_G = (283, 315)
DEFAULT_ORDER = 129


@lru_cache(maxsize=None)
def default_spec() -> GeneratorSpec:
    return GeneratorSpec.from_ints(DEFAULT_P, DEFAULT_A, DEFAULT_B, *DEFAULT_G, DEFAULT_ORDER)
