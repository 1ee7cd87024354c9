"""Bivariate polynomials in affine coordinates X, Y.

Plain dense-free dict arithmetic over Fraction, enough to carry
polynomial automorphisms of the affine plane: composition, leading
forms, and the text grammar shared with the projective side.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .exactpoly import parse_terms, render_terms

Pair = tuple[int, int]

VAR_NAMES = ("X", "Y")


def _as_fraction(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class BPoly:
    """Polynomial in Q[X, Y]."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[dict] = None):
        clean: dict[Pair, Fraction] = {}
        for key, c in (terms or {}).items():
            c = _as_fraction(c)
            if c == 0:
                continue
            i, j = key
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in {key}")
            clean[(i, j)] = c
        self._terms = clean

    @classmethod
    def zero(cls) -> BPoly:
        return cls()

    @classmethod
    def constant(cls, c) -> BPoly:
        return cls({(0, 0): _as_fraction(c)})

    @classmethod
    def monomial(cls, i: int, j: int, coeff=1) -> BPoly:
        return cls({(i, j): _as_fraction(coeff)})

    @classmethod
    def x(cls) -> BPoly:
        return cls({(1, 0): Fraction(1)})

    @classmethod
    def y(cls) -> BPoly:
        return cls({(0, 1): Fraction(1)})

    @property
    def terms(self) -> dict[Pair, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def coefficient(self, i: int, j: int) -> Fraction:
        return self._terms.get((i, j), Fraction(0))

    def leading_form(self) -> BPoly:
        d = self.degree
        return BPoly({k: c for k, c in self._terms.items() if k[0] + k[1] == d})

    def __eq__(self, other) -> bool:
        if not isinstance(other, BPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: BPoly) -> BPoly:
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return BPoly(out)

    def __neg__(self) -> BPoly:
        return BPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: BPoly) -> BPoly:
        return self + (-other)

    def __mul__(self, other: BPoly) -> BPoly:
        out: dict[Pair, Fraction] = {}
        for (a, b), c in self._terms.items():
            for (i, j), e in other._terms.items():
                k = (a + i, b + j)
                out[k] = out.get(k, Fraction(0)) + c * e
        return BPoly(out)

    def __pow__(self, e: int) -> BPoly:
        if e < 0:
            raise ValueError("negative power")
        out = BPoly.constant(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c) -> BPoly:
        c = _as_fraction(c)
        return BPoly({k: v * c for k, v in self._terms.items()})

    def compose(self, u: BPoly, v: BPoly) -> BPoly:
        """self(u, v), with cached powers of the substituted values."""
        pu: dict[int, BPoly] = {0: BPoly.constant(1)}
        pv: dict[int, BPoly] = {0: BPoly.constant(1)}

        def power(cache, base, e):
            if e not in cache:
                cache[e] = power(cache, base, e - 1) * base
            return cache[e]

        total = BPoly.zero()
        for (i, j), c in self._terms.items():
            total = total + (power(pu, u, i) * power(pv, v, j)).scale(c)
        return total

    def eval(self, a, b) -> Fraction:
        a, b = _as_fraction(a), _as_fraction(b)
        return sum((c * a**i * b**j for (i, j), c in self._terms.items()),
                   Fraction(0))

    def __repr__(self) -> str:
        return f"BPoly({render_bpoly(self)!r})"


def proportionality(a: BPoly, b: BPoly) -> Optional[Fraction]:
    """The scalar c with a = c*b, or None if the two are not proportional
    (b zero counts as not proportional unless a is zero too)."""
    if b.is_zero():
        return Fraction(0) if a.is_zero() else None
    key = next(iter(b._terms))
    c = a.coefficient(*key) / b._terms[key]
    return c if a == b.scale(c) else None


def parse_bpoly(text: str, offset: int = 0) -> BPoly:
    return BPoly(parse_terms(text, VAR_NAMES, offset))


def render_bpoly(p: BPoly) -> str:
    return render_terms(p._terms, VAR_NAMES)
