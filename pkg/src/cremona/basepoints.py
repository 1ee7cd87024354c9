"""Proper base points of a rational map, over the rationals.

A base point is a common zero of the three defining forms.  Only points
with rational coordinates are extracted; whatever multiplicity mass sits
at conjugate algebraic points or infinitely near ones shows up in the
report's two deficiency numbers instead of being guessed at.

The search is exact: two random linear combinations of the components
are formed (any common zero of the components is a common zero of every
combination, so no genericity is needed for completeness), the chart
y = 1 is eliminated by a primitive remainder sequence whose discarded
contents are kept as divisor candidates, and every candidate point is
confirmed by direct evaluation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ResultantCollapseError
from .exactpoly import (
    HPoly,
    UPoly,
    hpoly_substitute,
    prs_eliminate,
    u_deg,
    u_gcd,
    u_mul,
    u_rational_roots,
    u_strip,
    vanishing_order,
)
from .homaloidal import CharVector
from .maps import RationalMap


class ProjPoint:
    """Point of the projective plane with rational coordinates, scaled so
    the last nonzero coordinate is 1."""

    __slots__ = ("_coords",)

    def __init__(self, coords: Sequence):
        cs = tuple(Fraction(c) for c in coords)
        if len(cs) != 3:
            raise ValueError("a projective point needs three coordinates")
        pivot = None
        for c in reversed(cs):
            if c != 0:
                pivot = c
                break
        if pivot is None:
            raise ValueError("(0 : 0 : 0) is not a projective point")
        self._coords = tuple(c / pivot for c in cs)

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction]:
        return self._coords

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self._coords == other._coords

    def __hash__(self) -> int:
        return hash(self._coords)

    def __lt__(self, other) -> bool:
        return self._coords < other._coords

    def __repr__(self) -> str:
        return "(" + " : ".join(str(c) for c in self._coords) + ")"

    def to_json(self) -> list[str]:
        return [str(c) for c in self._coords]


@dataclass(frozen=True)
class BasePointReport:
    degree: int
    points: tuple[tuple[ProjPoint, int], ...]
    deficiency_sq: int
    deficiency_lin: int

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "points": [{"p": p.to_json(), "m": m} for p, m in self.points],
            "deficiency_sq": self.deficiency_sq,
            "deficiency_lin": self.deficiency_lin,
        }


# ---------------------------------------------------------------------------
# multiplicity by sampling the linear system


def _chart_rows(p: ProjPoint) -> tuple[HPoly, HPoly, HPoly]:
    """Row forms of an invertible matrix whose first column is p, so the
    induced substitution moves (1:0:0) onto p."""
    cs = p.coords
    k = max(i for i in range(3) if cs[i] != 0)
    others = [i for i in range(3) if i != k]
    cols = [list(cs), [0, 0, 0], [0, 0, 0]]
    cols[1][others[0]] = 1
    cols[2][others[1]] = 1
    rows = []
    for i in range(3):
        rows.append(HPoly({
            (1, 0, 0): Fraction(cols[0][i]),
            (0, 1, 0): Fraction(cols[1][i]),
            (0, 0, 1): Fraction(cols[2][i]),
        }))
    return tuple(rows)


def multiplicity_at(f: RationalMap, p: ProjPoint, seed: int = 0) -> int:
    """Vanishing order of the generic member of the map's linear system
    at p: the minimum order over random combinations of the components,
    accepted once a further batch of samples fails to lower it."""
    rows = _chart_rows(p)
    moved = [hpoly_substitute(c, *rows) for c in f.components]
    rng = random.Random(1000003 * seed + 101)
    best = None
    while True:
        before = best
        for _ in range(5):
            comb = HPoly.zero(f.degree)
            while comb.is_zero():
                weights = [rng.randint(-99, 99) for _ in range(3)]
                comb = HPoly.zero(f.degree)
                for w, g in zip(weights, moved):
                    if w:
                        comb = comb + g.scale(w)
            order = vanishing_order(comb, "x")
            if best is None or order < best:
                best = order
        if before is not None and best == before:
            return best


# ---------------------------------------------------------------------------
# locating the rational common zeros


def _to_main_z(p: HPoly) -> list:
    """The chart y = 1: main-z coefficient list over Q[x]."""
    out: list[UPoly] = []
    for (a, _b, c), coeff in p.terms.items():
        while len(out) <= c:
            out.append([])
        col = out[c]
        while len(col) <= a:
            col.append(Fraction(0))
        col[a] += coeff
    while out and not u_strip(out[-1]):
        out.pop()
    return [u_strip(col) for col in out]


def _on_vertical_line(p: HPoly, x0: Fraction) -> UPoly:
    """phi(x0, 1, t) as a polynomial in t."""
    out: list[Fraction] = []
    for (a, _b, c), coeff in p.terms.items():
        while len(out) <= c:
            out.append(Fraction(0))
        out[c] += coeff * x0**a
    return u_strip(out)


def _on_far_line(p: HPoly) -> UPoly:
    """phi(1, 0, t) as a polynomial in t."""
    out: list[Fraction] = []
    for (_a, b, c), coeff in p.terms.items():
        if b:
            continue
        while len(out) <= c:
            out.append(Fraction(0))
        out[c] += coeff
    return u_strip(out)


def _common_rational_roots(us: list[UPoly]) -> list[Fraction]:
    g: UPoly = []
    for u in us:
        g = u_gcd(g, u)
        if g and u_deg(g) == 0:
            return []
    if not g:
        raise RuntimeError("components share a line, canonical form violated")
    return u_rational_roots(g)


def _eliminant_divisors(comps, rng) -> Optional[list[UPoly]]:
    """Divisor list carrying the x-coordinates of common zeros of one
    random pair of component combinations; None when the pair shares a
    curve and the elimination says nothing."""
    weights = [[rng.randint(-49, 49) for _ in range(3)] for _ in range(2)]
    combos = []
    for ws in weights:
        acc = HPoly.zero(comps[0].degree)
        for w, g in zip(ws, comps):
            if w:
                acc = acc + g.scale(w)
        combos.append(acc)
    if any(c.is_zero() for c in combos):
        return None
    ok, divisors = prs_eliminate(_to_main_z(combos[0]), _to_main_z(combos[1]))
    if not ok:
        return None
    return divisors


def _candidate_first_coords(comps, seed: int) -> set[Fraction]:
    rng = random.Random(1000003 * seed + 23)
    for _ in range(12):
        one = _eliminant_divisors(comps, rng)
        two = _eliminant_divisors(comps, rng)
        if one is None or two is None:
            continue
        # a true common zero divides both eliminants, so the gcd of the
        # two divisor products keeps every candidate while stripping the
        # pair-specific factors whose roots would flood the search
        prods = []
        for divisors in (one, two):
            acc: UPoly = [Fraction(1)]
            for div in divisors:
                acc = u_mul(acc, div)
            prods.append(acc)
        g = u_gcd(prods[0], prods[1])
        if not g or u_deg(g) == 0:
            return set()
        return set(u_rational_roots(g))
    raise ResultantCollapseError(
        "every elimination attempt shared a curve between the combinations")


def rational_proper_base_points(f: RationalMap, seed: int = 0) -> BasePointReport:
    """All rational common zeros of the components, with multiplicities
    and the two deficiency numbers."""
    d = f.degree
    if d < 2:
        raise ValueError("base-point extraction needs degree >= 2")
    comps = f.components
    found: set[ProjPoint] = set()
    for x0 in _candidate_first_coords(comps, seed):
        for z0 in _common_rational_roots([_on_vertical_line(c, x0) for c in comps]):
            found.add(ProjPoint((x0, 1, z0)))
    for t0 in _common_rational_roots([_on_far_line(c) for c in comps]):
        found.add(ProjPoint((1, 0, t0)))
    if all(c.coefficient((0, 0, d)) == 0 for c in comps):
        found.add(ProjPoint((0, 0, 1)))

    confirmed = [p for p in found
                 if all(c.eval(*p.coords) == 0 for c in comps)]
    weighted = [(p, multiplicity_at(f, p, seed)) for p in sorted(confirmed)]
    weighted.sort(key=lambda pm: (-pm[1], pm[0]))
    sum_sq = sum(m * m for _, m in weighted)
    sum_lin = sum(m for _, m in weighted)
    return BasePointReport(
        degree=d,
        points=tuple(weighted),
        deficiency_sq=d * d - 1 - sum_sq,
        deficiency_lin=3 * (d - 1) - sum_lin,
    )


def char_vector_partial(f: RationalMap, seed: int = 0) -> CharVector:
    """Characteristic vector over the proper rational points alone,
    complete precisely when they carry the whole homaloidal mass."""
    if f.degree == 1:
        return CharVector(1, (), complete=True)
    report = rational_proper_base_points(f, seed)
    complete = report.deficiency_sq == 0 and report.deficiency_lin == 0
    return CharVector(
        f.degree,
        [(m, None) for _, m in report.points],
        complete=complete,
    )
