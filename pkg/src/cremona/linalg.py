"""3x3 rational matrices as immutable row tuples of Fractions."""

from __future__ import annotations

from fractions import Fraction

from .errors import SingularMatrixError

Mat3 = tuple  # tuple[tuple[Fraction, Fraction, Fraction], ...]


def mat(rows) -> Mat3:
    out = tuple(tuple(Fraction(v) for v in row) for row in rows)
    if len(out) != 3 or any(len(r) != 3 for r in out):
        raise ValueError("a 3x3 matrix needs 3 rows of 3 entries")
    return out


def mat_identity() -> Mat3:
    return mat(((1, 0, 0), (0, 1, 0), (0, 0, 1)))


def is_identity(m: Mat3) -> bool:
    return m == mat_identity()


def mat_det(m: Mat3) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = m
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def mat_mul(m: Mat3, n: Mat3) -> Mat3:
    return tuple(
        tuple(sum(m[i][k] * n[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_apply(m: Mat3, v) -> tuple[Fraction, Fraction, Fraction]:
    return tuple(sum(m[i][k] * Fraction(v[k]) for k in range(3)) for i in range(3))


def mat_inv(m: Mat3) -> Mat3:
    d = mat_det(m)
    if d == 0:
        raise SingularMatrixError("matrix is singular")
    (a, b, c), (e, f, g), (h, i, j) = m
    adj = (
        (f * j - g * i, c * i - b * j, b * g - c * f),
        (g * h - e * j, a * j - c * h, c * e - a * g),
        (e * i - f * h, b * h - a * i, a * f - b * e),
    )
    return tuple(tuple(v / d for v in row) for row in adj)


def mat_scale_canonical(m: Mat3) -> Mat3:
    """Scale so entries are coprime integers and the first nonzero entry
    (row-major) is positive; fixes the projective scalar ambiguity."""
    import math

    den = 1
    for row in m:
        for v in row:
            den = den * v.denominator // math.gcd(den, v.denominator)
    num = 0
    for row in m:
        for v in row:
            num = math.gcd(num, abs(v.numerator * (den // v.denominator)))
    if num == 0:
        raise ValueError("zero matrix")
    scale = Fraction(den, num)
    first = next(v for row in m for v in row if v != 0)
    if first < 0:
        scale = -scale
    return tuple(tuple(v * scale for v in row) for row in m)
