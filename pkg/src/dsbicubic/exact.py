"""Exact rational scalars and univariate polynomials in Bernstein form.

Scalars are :class:`fractions.Fraction` throughout; they are already
canonical (positive denominator, reduced) and never round.  A
:class:`BernsteinPoly` of degree ``n`` stores the ``n + 1`` coefficients of
``B_k^n(t) = C(n, k) (1 - t)^(n - k) t^k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

ExactScalar = Fraction

__all__ = [
    "ExactScalar",
    "as_exact",
    "BernsteinPoly",
    "VecPoly3",
    "bernstein_eval",
    "bernstein_mul",
    "bernstein_derivative",
    "degree_elevate",
    "vecpoly_det3",
    "vecpoly_cross",
    "normalize_primitive",
    "primitive_vector",
]


def as_exact(x) -> Fraction:
    """Convert ints, Fractions and decimal/fraction strings to a Fraction.

    Floats are rejected: a binary float rarely means what the user typed.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


@dataclass(frozen=True)
class BernsteinPoly:
    """Polynomial ``sum_k coeffs[k] * B_k^n(t)`` with ``n = len(coeffs) - 1``."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable):
        c = tuple(as_exact(x) for x in coeffs)
        if not c:
            raise ValueError("a Bernstein polynomial needs at least one coefficient")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, degree: int = 0) -> BernsteinPoly:
        return cls([0] * (degree + 1))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, t) -> Fraction:
        return bernstein_eval(self, t)

    def __add__(self, other: BernsteinPoly) -> BernsteinPoly:
        a, b = _match(self, other)
        return BernsteinPoly(x + y for x, y in zip(a.coeffs, b.coeffs))

    def __neg__(self) -> BernsteinPoly:
        return BernsteinPoly(-x for x in self.coeffs)

    def __sub__(self, other: BernsteinPoly) -> BernsteinPoly:
        return self + (-other)

    def __mul__(self, other) -> BernsteinPoly:
        if isinstance(other, BernsteinPoly):
            return bernstein_mul(self, other)
        s = as_exact(other)
        return BernsteinPoly(s * x for x in self.coeffs)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"BernsteinPoly([{', '.join(str(c) for c in self.coeffs)}])"


def _match(a: BernsteinPoly, b: BernsteinPoly) -> tuple[BernsteinPoly, BernsteinPoly]:
    n = max(a.degree, b.degree)
    return degree_elevate(a, n), degree_elevate(b, n)


def bernstein_eval(p: BernsteinPoly, t) -> Fraction:
    """Evaluate ``p`` at ``t`` by de Casteljau's algorithm.

    Parameters outside ``[0, 1]`` are accepted and extrapolate.
    """
    t = as_exact(t)
    s = 1 - t
    b = list(p.coeffs)
    for r in range(1, len(b)):
        for k in range(len(b) - r):
            b[k] = s * b[k] + t * b[k + 1]
    return b[0]


def bernstein_mul(a: BernsteinPoly, b: BernsteinPoly) -> BernsteinPoly:
    """Exact product; the result has degree ``deg(a) + deg(b)``."""
    m, n = a.degree, b.degree
    out = []
    for k in range(m + n + 1):
        acc = Fraction(0)
        for i in range(max(0, k - n), min(m, k) + 1):
            acc += comb(m, i) * comb(n, k - i) * a.coeffs[i] * b.coeffs[k - i]
        out.append(acc / comb(m + n, k))
    return BernsteinPoly(out)


def bernstein_derivative(p: BernsteinPoly) -> BernsteinPoly:
    """Derivative in Bernstein form, ``n * (c[k+1] - c[k])``.

    A constant (degree 0) differentiates to the zero polynomial of degree 0
    rather than raising.
    """
    n = p.degree
    if n == 0:
        return BernsteinPoly.zero(0)
    c = p.coeffs
    return BernsteinPoly(n * (c[k + 1] - c[k]) for k in range(n))


def degree_elevate(p: BernsteinPoly, degree: int) -> BernsteinPoly:
    """Re-express ``p`` in the Bernstein basis of a higher ``degree``."""
    if degree < p.degree:
        raise ValueError(f"cannot lower degree {p.degree} to {degree}")
    c = list(p.coeffs)
    while len(c) - 1 < degree:
        n = len(c) - 1
        c = [c[0]] + [
            Fraction(k, n + 1) * c[k - 1] + Fraction(n + 1 - k, n + 1) * c[k]
            for k in range(1, n + 1)
        ] + [c[n]]
    return BernsteinPoly(c)


@dataclass(frozen=True)
class VecPoly3:
    """A curve in 3-space: three Bernstein polynomials of a common degree."""

    x: BernsteinPoly
    y: BernsteinPoly
    z: BernsteinPoly

    def __post_init__(self):
        n = max(self.x.degree, self.y.degree, self.z.degree)
        for name in "xyz":
            object.__setattr__(self, name, degree_elevate(getattr(self, name), n))

    @classmethod
    def from_points(cls, points: Sequence[Sequence]) -> VecPoly3:
        """Build from a list of 3-vector control points."""
        if not points:
            raise ValueError("need at least one control point")
        return cls(*(BernsteinPoly(p[i] for p in points) for i in range(3)))

    @property
    def degree(self) -> int:
        return self.x.degree

    @property
    def components(self) -> tuple[BernsteinPoly, BernsteinPoly, BernsteinPoly]:
        return (self.x, self.y, self.z)

    def control_points(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        return list(zip(self.x.coeffs, self.y.coeffs, self.z.coeffs))

    def __call__(self, t) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(bernstein_eval(c, t) for c in self.components)

    def __add__(self, other: VecPoly3) -> VecPoly3:
        return VecPoly3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: VecPoly3) -> VecPoly3:
        return VecPoly3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, s) -> VecPoly3:
        if isinstance(s, BernsteinPoly):
            return VecPoly3(s * self.x, s * self.y, s * self.z)
        return VecPoly3(self.x * s, self.y * s, self.z * s)

    __rmul__ = __mul__

    def derivative(self) -> VecPoly3:
        return VecPoly3(*(bernstein_derivative(c) for c in self.components))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)


def vecpoly_cross(a: VecPoly3, b: VecPoly3) -> VecPoly3:
    return VecPoly3(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )


def vecpoly_det3(a: VecPoly3, b: VecPoly3, c: VecPoly3) -> BernsteinPoly:
    """Determinant ``|a, b, c|`` of three vector polynomials, i.e. ``a . (b x c)``.

    The degree of the result is ``deg(a) + deg(b) + deg(c)`` whether or not
    the leading coefficients vanish.
    """
    bc = vecpoly_cross(b, c)
    return a.x * bc.x + a.y * bc.y + a.z * bc.z


def primitive_vector(values: Sequence) -> tuple[Fraction, list[int]]:
    """Scale rationals to coprime integers, first nonzero entry positive.

    Returns ``(scale, ints)`` with ``scale * ints[k] == values[k]``.  An
    all-zero input gives ``scale == 0``.
    """
    vals = [as_exact(v) for v in values]
    nonzero = [v for v in vals if v]
    if not nonzero:
        return Fraction(0), [0] * len(vals)
    den = lcm(*(v.denominator for v in nonzero))
    nums = [int(v * den) for v in vals]
    g = gcd(*nums)
    sign = 1 if nonzero[0] > 0 else -1
    ints = [sign * n // g for n in nums]
    return Fraction(sign * g, den), ints


def normalize_primitive(p: BernsteinPoly) -> tuple[Fraction, list[int]]:
    """Primitive integer form of the coefficients of ``p``."""
    return primitive_vector(p.coeffs)
