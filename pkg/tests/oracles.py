"""Reference computations that share no code with the package."""

from fractions import Fraction
from math import comb


def bernstein_to_monomial(coeffs):
    """Monomial coefficients a_j of sum_k c_k C(n,k) t^k (1-t)^(n-k)."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * (n + 1)
    for k, c in enumerate(coeffs):
        # (1-t)^(n-k) = sum_i C(n-k, i) (-t)^i
        for i in range(n - k + 1):
            out[k + i] += Fraction(c) * comb(n, k) * comb(n - k, i) * (-1) ** i
    return out


def mono_eval(a, t):
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * t + c
    return acc


def mono_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def mono_deriv(a):
    return [k * a[k] for k in range(1, len(a))] or [Fraction(0)]


def det3(r0, r1, r2):
    (a, b, c), (d, e, f), (g, h, i) = r0, r1, r2
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def central_difference(f, t, h):
    return (f(t + h) - f(t - h)) / (2 * h)


def tetra_rotations():
    """The 12 rotations mapping the tetrahedron fixture onto itself."""
    out = []
    for signs in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)):
        for shift in range(3):
            out.append(tuple(
                tuple(signs[r] if c == (r + shift) % 3 else 0 for c in range(3)) for r in range(3)
            ))
    return out
