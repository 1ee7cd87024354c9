"""Decomposition engines.

Three routes from a map to a word in linear letters and the standard
involution:

* greedy descent on an actual rational map, composing away rational
  base points with conjugated quadratic involutions until the degree
  reaches 1;
* Jung peeling of a polynomial automorphism into affine and elementary
  factors, each elementary factor then rewritten through a monomial
  conjugation;
* Euclidean reduction of a unit-determinant exponent matrix into swap,
  negation and shear generators, with a fixed hand-derived two-sigma
  word for the shear.

Every emitted word is checked against its target by verify_word before
it leaves this module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable

from . import linalg
from .basepoints import ProjPoint, rational_proper_base_points
from .bipoly import BPoly, parse_bpoly, proportionality, render_bpoly
from .errors import (
    CollinearCentersError,
    DeterminantNotUnitError,
    IrrationalBaseLocusError,
    NonterminationGuardError,
    NotAutomorphismError,
    ParseError,
)
from .exactpoly import HPoly
from .maps import (
    LinearLetter,
    RationalMap,
    SIGMA,
    Word,
    compose,
    identity_map,
    linear_letter,
    linear_map,
    make_map,
    matrix_of,
    merge_linears,
    sigma,
    word_eval,
)

_X = BPoly.x()
_Y = BPoly.y()


# ---------------------------------------------------------------------------
# polynomial automorphisms and Jung peeling


class FactorKind(Enum):
    AFFINE = "AFFINE"
    ELEMENTARY = "ELEMENTARY"


@dataclass(frozen=True)
class JungFactor:
    kind: FactorKind
    p: BPoly
    q: BPoly

    def __repr__(self) -> str:
        return f"JungFactor({self.kind.value}, ({render_bpoly(self.p)}, {render_bpoly(self.q)}))"


def _pair_compose(outer: tuple[BPoly, BPoly],
                  inner: tuple[BPoly, BPoly]) -> tuple[BPoly, BPoly]:
    u, v = inner
    return outer[0].compose(u, v), outer[1].compose(u, v)


def _affine_parts(p: BPoly, q: BPoly):
    for comp in (p, q):
        if comp.degree > 1:
            raise ValueError("affine factor of degree > 1")
    row = lambda f: (f.coefficient(1, 0), f.coefficient(0, 1), f.coefficient(0, 0))
    return row(p), row(q)


def _elementary_parts(p: BPoly, q: BPoly):
    """(alpha, {k: c_k}, beta, gamma) for (alpha*X + P(Y), beta*Y + gamma)."""
    beta, gamma = q.coefficient(0, 1), q.coefficient(0, 0)
    if q != _Y.scale(beta) + BPoly.constant(gamma) or beta == 0:
        raise ValueError("second component is not an invertible function of Y")
    alpha = p.coefficient(1, 0)
    if alpha == 0:
        raise ValueError("first component does not involve X linearly")
    shift: dict[int, Fraction] = {}
    for (i, j), c in p.terms.items():
        if (i, j) == (1, 0):
            continue
        if i != 0:
            raise ValueError("first component is not alpha*X + P(Y)")
        shift[j] = c
    return alpha, shift, beta, gamma


def _invert_factor(f: JungFactor) -> JungFactor:
    if f.kind is FactorKind.AFFINE:
        (a, b, c), (d, e, g) = _affine_parts(f.p, f.q)
        det = a * e - b * d
        if det == 0:
            raise NotAutomorphismError("affine factor has zero determinant")
        p = _X.scale(e / det) - _Y.scale(b / det) + BPoly.constant((b * g - c * e) / det)
        q = _X.scale(-d / det) + _Y.scale(a / det) + BPoly.constant((c * d - a * g) / det)
        return JungFactor(FactorKind.AFFINE, p, q)
    alpha, shift, beta, gamma = _elementary_parts(f.p, f.q)
    v = _Y.scale(Fraction(1, beta)) - BPoly.constant(gamma / beta)
    pshift = BPoly({(0, j): c for j, c in shift.items()})
    p = _X.scale(Fraction(1, alpha)) - pshift.compose(_X, v).scale(Fraction(1, alpha))
    return JungFactor(FactorKind.ELEMENTARY, p, v)


def _peel(p: BPoly, q: BPoly) -> list[JungFactor]:
    """Outermost-first factor list; raises when the pair cannot be an
    automorphism (leading-form divisibility fails or the affine residual
    is singular)."""
    factors: list[JungFactor] = []
    if p.is_zero() or q.is_zero():
        raise NotAutomorphismError("a component is zero")
    guard = 2 * (p.degree + q.degree) + 4
    for _ in range(guard):
        dp, dq = p.degree, q.degree
        if dp < 1 and dq < 1:
            raise NotAutomorphismError("both components became constant")
        if dp <= 1 and dq <= 1:
            if (p, q) != (_X, _Y):
                (a, b, _), (d, e, _) = _affine_parts(p, q)
                if a * e - b * d == 0:
                    raise NotAutomorphismError("affine residual is singular")
                factors.append(JungFactor(FactorKind.AFFINE, p, q))
            return factors
        if dq > dp:
            factors.append(JungFactor(FactorKind.AFFINE, _Y, _X))
            p, q = q, p
            continue
        if dq < 1:
            raise NotAutomorphismError("second component degenerated to a constant")
        if dp % dq:
            raise NotAutomorphismError(
                f"leading degree {dp} is not a multiple of {dq}")
        k = dp // dq
        c = proportionality(p.leading_form(), q.leading_form() ** k)
        if c is None:
            raise NotAutomorphismError(
                "leading form is not a scalar multiple of the expected power")
        kind = FactorKind.AFFINE if k == 1 else FactorKind.ELEMENTARY
        factors.append(JungFactor(kind, _X + (_Y ** k).scale(c), _Y))
        p = p - (q ** k).scale(c)
    raise NotAutomorphismError("peeling failed to terminate")


def _merge_factors(raw: Iterable[JungFactor]) -> list[JungFactor]:
    merged: list[JungFactor] = []
    for f in raw:
        if merged and merged[-1].kind is f.kind:
            outer = merged[-1]
            np, nq = _pair_compose((outer.p, outer.q), (f.p, f.q))
            merged[-1] = JungFactor(f.kind, np, nq)
        else:
            merged.append(f)
    return [f for f in merged if (f.p, f.q) != (_X, _Y)]


class PolyAuto:
    """Polynomial automorphism of the affine plane, held together with
    its Jung factors and a verified inverse pair."""

    __slots__ = ("_p", "_q", "_factors", "_inverse")

    def __init__(self, p: BPoly, q: BPoly, factors, inverse,
                 _checked: bool = False):
        if not _checked:
            raise ValueError("use PolyAuto.from_pair")
        self._p, self._q = p, q
        self._factors = factors
        self._inverse = inverse

    @classmethod
    def from_pair(cls, p: BPoly, q: BPoly) -> PolyAuto:
        factors = tuple(_merge_factors(_peel(p, q)))
        check = (_X, _Y)
        for f in factors:
            check = _pair_compose(check, (f.p, f.q))
        if check != (p, q):
            raise NotAutomorphismError("factor recomposition mismatch")
        inv = (_X, _Y)
        for f in reversed(factors):
            g = _invert_factor(f)
            inv = _pair_compose(inv, (g.p, g.q))
        if (_pair_compose((p, q), inv) != (_X, _Y)
                or _pair_compose(inv, (p, q)) != (_X, _Y)):
            raise NotAutomorphismError("inverse verification failed")
        return cls(p, q, factors, inv, _checked=True)

    @classmethod
    def identity(cls) -> PolyAuto:
        return cls.from_pair(_X, _Y)

    @property
    def p(self) -> BPoly:
        return self._p

    @property
    def q(self) -> BPoly:
        return self._q

    @property
    def degree(self) -> int:
        return max(self._p.degree, self._q.degree)

    @property
    def factors(self) -> tuple[JungFactor, ...]:
        return self._factors

    @property
    def inverse(self) -> tuple[BPoly, BPoly]:
        return self._inverse

    def compose_with(self, other: PolyAuto) -> PolyAuto:
        np, nq = _pair_compose((self._p, self._q), (other._p, other._q))
        return PolyAuto.from_pair(np, nq)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyAuto):
            return NotImplemented
        return (self._p, self._q) == (other._p, other._q)

    def __hash__(self) -> int:
        return hash((self._p, self._q))

    def __repr__(self) -> str:
        return f"PolyAuto({render_polyauto(self)!r})"


def jung_factorize(F: PolyAuto) -> list[JungFactor]:
    return list(F.factors)


def parse_polyauto(text: str) -> PolyAuto:
    i = 0
    while i < len(text) and text[i].isspace():
        i += 1
    if i >= len(text) or text[i] != "(":
        raise ParseError("expected '('", i)
    j = len(text) - 1
    while j > i and text[j].isspace():
        j -= 1
    if text[j] != ")":
        raise ParseError("expected ')'", j)
    body = text[i + 1:j]
    if body.count(",") != 1:
        raise ParseError("expected exactly one ',' between components", i + 1)
    k = body.index(",")
    p = parse_bpoly(body[:k], offset=i + 1)
    q = parse_bpoly(body[k + 1:], offset=i + 2 + k)
    return PolyAuto.from_pair(p, q)


def render_polyauto(F: PolyAuto) -> str:
    return f"({render_bpoly(F.p)}, {render_bpoly(F.q)})"


def _homog(p: BPoly, total: int) -> HPoly:
    return HPoly({(i, j, total - i - j): c for (i, j), c in p.terms.items()},
                 total)


def homogenize(F: PolyAuto) -> RationalMap:
    """The projective map (z^D p(x/z, y/z) : z^D q(x/z, y/z) : z^D)."""
    total = F.degree
    return make_map(
        _homog(F.p, total), _homog(F.q, total), HPoly.monomial(0, 0, total))


# ---------------------------------------------------------------------------
# monomial maps and the generator words


@dataclass(frozen=True)
class MonomialMap:
    """(X^a Y^b, X^c Y^d) with unit-determinant exponent matrix
    ((a, b), (c, d)); negative exponents are allowed."""

    matrix: tuple[tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        (a, b), (c, d) = self.matrix
        for v in (a, b, c, d):
            if not isinstance(v, int):
                raise ValueError("exponents must be integers")
        if abs(a * d - b * c) != 1:
            raise DeterminantNotUnitError(
                f"exponent matrix determinant {a * d - b * c}")

    def inverse(self) -> MonomialMap:
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        return MonomialMap(((d // det, -b // det), (-c // det, a // det)))


def monomial_projective(m: MonomialMap) -> RationalMap:
    """Clear denominators of (x/z, y/z) exponent form into a map."""
    (a, b), (c, d) = m.matrix
    exps = [(a, b, -a - b), (c, d, -c - d), (0, 0, 0)]
    shift = [min(e[i] for e in exps) for i in range(3)]
    comps = [
        HPoly.monomial(e[0] - shift[0], e[1] - shift[1], e[2] - shift[2])
        for e in exps
    ]
    return make_map(*comps)


_SWAP = LinearLetter(linalg.mat([[0, 1, 0], [1, 0, 0], [0, 0, 1]]))

# two-sigma word for the shear (XY, Y), i.e. (xy : yz : z^2); derived by
# solving L . sigma . A . sigma . M against it with undetermined linear
# maps, then frozen here and re-verified in the test suite
W_SHEAR = Word((
    LinearLetter(linalg.mat([[1, 0, 0], [0, 0, 1], [0, -1, 1]])),
    SIGMA,
    LinearLetter(linalg.mat([[1, 0, 0], [0, 1, 1], [0, 0, 1]])),
    SIGMA,
    LinearLetter(linalg.mat([[1, 0, 0], [0, 1, -1], [0, 0, 1]])),
))

_W_SHEAR_INV = W_SHEAR.inverse()


def _t_power_word(e: int) -> list:
    if e >= 0:
        return list(W_SHEAR.letters) * e
    return list(_W_SHEAR_INV.letters) * (-e)


def _reflection_word() -> list:
    # diag(1,-1) = S T^-1 S T S T^-1 over the exponent generators
    out = [_SWAP]
    out += _W_SHEAR_INV.letters
    out.append(_SWAP)
    out += W_SHEAR.letters
    out.append(_SWAP)
    out += _W_SHEAR_INV.letters
    return out


def monomial_to_word(m: MonomialMap) -> Word:
    """Euclidean left-factorization of the exponent matrix into swaps,
    shears and the negation (which is the involution itself)."""
    rows = [list(m.matrix[0]), list(m.matrix[1])]
    letters: list = []
    while rows[1][0] != 0:
        if abs(rows[0][0]) < abs(rows[1][0]):
            letters.append(_SWAP)
            rows[0], rows[1] = rows[1], rows[0]
            continue
        q = rows[0][0] // rows[1][0]
        letters += _t_power_word(q)
        rows[0] = [rows[0][0] - q * rows[1][0], rows[0][1] - q * rows[1][1]]
    e, f = rows[0]
    g = rows[1][1]
    if e == 1 and g == 1:
        letters += _t_power_word(f)
    elif e == -1 and g == -1:
        letters.append(SIGMA)
        letters += _t_power_word(-f)
    elif e == 1 and g == -1:
        letters += _reflection_word()
        letters += _t_power_word(f)
    else:
        letters.append(SIGMA)
        letters += _reflection_word()
        letters += _t_power_word(-f)
    return merge_linears(Word(tuple(letters)))


# ---------------------------------------------------------------------------
# elementary factors to words


def _shear_letter(c: Fraction) -> LinearLetter:
    return LinearLetter(linalg.mat([[1, c, 0], [0, 1, 0], [0, 0, 1]]))


def elementary_to_word(e: JungFactor) -> Word:
    """(alpha X + P(Y), beta Y + gamma) as a word: the linear part is one
    letter, and each monomial c Y^k of P with k >= 2 goes through the
    conjugation (X + cY^k, Y) = g^-1 (X + cY, Y) g with g = (X Y^(1-k), Y)."""
    alpha, shift, beta, gamma = _elementary_parts(e.p, e.q)
    letters: list = []
    scale_rows = linalg.mat([[alpha, 0, 0], [0, beta, gamma], [0, 0, 1]])
    if not linalg.is_identity(scale_rows):
        letters.append(LinearLetter(scale_rows))
    for k in sorted(shift, reverse=True):
        c = shift[k]
        if k == 0:
            letters.append(LinearLetter(linalg.mat([[1, 0, c], [0, 1, 0], [0, 0, 1]])))
        elif k == 1:
            letters.append(_shear_letter(c))
        else:
            down = MonomialMap(((1, 1 - k), (0, 1)))
            letters += monomial_to_word(down.inverse()).letters
            letters.append(_shear_letter(c))
            letters += monomial_to_word(down).letters
    return merge_linears(Word(tuple(letters)))


def _affine_letter(f: JungFactor) -> LinearLetter:
    (a, b, c), (d, e, g) = _affine_parts(f.p, f.q)
    return linear_letter([[a, b, c], [d, e, g], [0, 0, 1]])


def decompose_polyaut(F: PolyAuto) -> Word:
    """Concatenate the factor words and check the result against the
    homogenized automorphism."""
    letters: list = []
    for f in F.factors:
        if f.kind is FactorKind.AFFINE:
            letters.append(_affine_letter(f))
        else:
            letters += elementary_to_word(f).letters
    w = merge_linears(Word(tuple(letters)))
    if not verify_word(w, homogenize(F)).verified:
        raise NotAutomorphismError("emitted word failed verification")
    return w


# ---------------------------------------------------------------------------
# word verification


@dataclass(frozen=True)
class WordCheck:
    verified: bool
    sigma_count: int
    lower_bound: int
    lower_ok: bool

    def __bool__(self) -> bool:
        return self.verified

    def to_json(self) -> dict:
        return {
            "verified": self.verified,
            "sigma_count": self.sigma_count,
            "lower_bound": self.lower_bound,
            "lower_ok": self.lower_ok,
        }


def verify_word(w: Word, f: RationalMap) -> WordCheck:
    """Exact evaluation of the word against the target's canonical form,
    with the floor-log2 lower bound on the sigma count alongside."""
    ok = word_eval(w) == f
    lower = f.degree.bit_length() - 1
    return WordCheck(ok, w.sigma_count, lower, w.sigma_count >= lower)


# ---------------------------------------------------------------------------
# quadratic maps with chosen base points, and the greedy descent


def _triangle_matrix(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> linalg.Mat3:
    rows = [[pt.coords[i] for pt in (p, q, r)] for i in range(3)]
    return linalg.mat(rows)


def quadratic_with_base_points(
        p: ProjPoint, q: ProjPoint, r: ProjPoint) -> tuple[RationalMap, RationalMap]:
    """The conjugate of the standard involution with base points exactly
    {p, q, r}; an involution, so it is returned with itself as inverse."""
    Q, _ = _quadratic_with_word(p, q, r)
    report = rational_proper_base_points(Q)
    expected = sorted([p, q, r])
    got = sorted(pt for pt, _m in report.points)
    if (got != expected or any(m != 1 for _pt, m in report.points)
            or report.deficiency_sq or report.deficiency_lin):
        raise RuntimeError("conjugated involution has unexpected base points")
    return Q, Q


def _quadratic_with_word(p: ProjPoint, q: ProjPoint,
                         r: ProjPoint) -> tuple[RationalMap, Word]:
    M = _triangle_matrix(p, q, r)
    if linalg.mat_det(M) == 0:
        raise CollinearCentersError(f"centers {p}, {q}, {r} are collinear")
    Minv = linalg.mat_inv(M)
    Q = compose(compose(linear_map(M), sigma()), linear_map(Minv))
    w = Word((LinearLetter(M), SIGMA, LinearLetter(Minv)))
    return Q, w


def _fresh_candidates():
    k = 0
    while True:
        yield ProjPoint((1, 2**k, 3**k))
        k += 1


def _admissible_triples(points, degree: int):
    """Non-collinear triples of proper points with multiplicity sum at
    least degree + 1, largest sums first, then report order."""
    n = len(points)
    if n < 3:
        return
    triples = sorted(
        itertools.combinations(range(n), 3),
        key=lambda t: (-sum(points[i][1] for i in t), t))
    for t in triples:
        chosen = [points[i] for i in t]
        if sum(m for _, m in chosen) < degree + 1:
            return
        M = _triangle_matrix(*(pt for pt, _ in chosen))
        if linalg.mat_det(M) != 0:
            yield chosen


def decompose_greedy(f: RationalMap, seed: int = 0) -> Word:
    """Compose with conjugated involutions until the degree reaches 1:
    at each step use the best heavy non-collinear triple of rational base
    points when one exists (degree strictly drops), otherwise the top one
    or two points padded with generic fresh centers (degree may rise).
    The accumulated word is verified before being returned."""
    initial_degree = f.degree
    guard = 64 * max(initial_degree, 1)
    cur = f
    seen = {cur}
    quad_words: list[Word] = []
    steps = 0
    best_degree = cur.degree
    stale = 0
    while cur.degree > 1:
        if steps >= guard:
            raise NonterminationGuardError(
                f"no termination after {guard} compositions")
        # deeply nested infinitely near towers can make the walk oscillate
        # between two degrees without repeating a map; cut that off early
        if stale > 8:
            raise NonterminationGuardError(
                f"degree stuck above {best_degree} for {stale} compositions")
        steps += 1
        d = cur.degree
        report = rational_proper_base_points(cur, seed)
        points = list(report.points)
        if not points:
            raise IrrationalBaseLocusError(
                f"degree {d} map has no rational proper base points")

        nxt = None
        word_q = None
        for triple in _admissible_triples(points, d):
            Q, w = _quadratic_with_word(*(pt for pt, _ in triple))
            cand = compose(cur, Q)
            # revisiting an earlier composite would loop; skip that triple
            if cand.degree < d and cand not in seen:
                nxt, word_q = cand, w
                break
        if nxt is None:
            anchors = points[:2] if len(points) >= 2 else points[:1]
            need = 3 - len(anchors)
            anchor_pts = [pt for pt, _ in anchors]
            predicted = 2 * d - sum(m for _, m in anchors)
            chosen_fresh: list[ProjPoint] = []
            tries = 0
            for g in _fresh_candidates():
                if tries >= 40:
                    break
                tries += 1
                if all(c.eval(*g.coords) == 0 for c in cur.components):
                    continue
                trial = chosen_fresh + [g]
                if len(trial) < need:
                    centers = anchor_pts + trial
                    if len(centers) == 3 and linalg.mat_det(
                            _triangle_matrix(*centers)) == 0:
                        continue
                    chosen_fresh = trial
                    continue
                centers = anchor_pts + trial
                if linalg.mat_det(_triangle_matrix(*centers)) == 0:
                    continue
                Q, w = _quadratic_with_word(*centers)
                cand = compose(cur, Q)
                if cand.degree != predicted or cand in seen:
                    continue
                nxt, word_q = cand, w
                break
        if nxt is None:
            raise NonterminationGuardError(
                f"no admissible quadratic step at degree {d}")
        cur = nxt
        quad_words.append(word_q)
        seen.add(cur)
        if cur.degree < best_degree:
            best_degree = cur.degree
            stale = 0
        else:
            stale += 1

    letters: list = []
    if cur != identity_map():
        letters.append(LinearLetter(matrix_of(cur)))
    for w in reversed(quad_words):
        letters += w.letters
    out = merge_linears(Word(tuple(letters)))
    if not verify_word(out, f).verified:
        raise NonterminationGuardError("emitted word failed verification")
    return out
