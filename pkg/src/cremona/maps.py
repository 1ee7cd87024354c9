"""Rational self-maps of the projective plane, and words in linear maps
and the standard quadratic involution.

A map is a coprime triple of equal-degree homogeneous forms, reduced and
jointly normalized at construction, so syntactic equality of components
is equality of maps.  Composition "f then-applied-to g" follows the usual
convention: compose(f, g) substitutes g into f, i.e. acts as f after g.

A Word is a sequence of letters, each either the involution letter SIGMA
or an invertible linear letter; word_eval composes them with the leftmost
letter outermost (applied last).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import linalg
from .errors import (
    DegenerateTripleError,
    DegreeMismatchError,
    NotBirationalError,
    NotQuadraticError,
    ParseError,
    SingularMatrixError,
)
from .exactpoly import (
    HPoly,
    hpoly_divexact,
    hpoly_gcd,
    hpoly_mul,
    hpoly_squarefree_part,
    hpoly_substitute,
    parse_hpoly,
    render_hpoly,
)


class RationalMap:
    """Canonical reduced triple of equal-degree forms."""

    __slots__ = ("_components", "_degree")

    def __init__(self, components: tuple[HPoly, HPoly, HPoly], degree: int,
                 _canonical: bool = False):
        if not _canonical:
            raise ValueError("use make_map to build RationalMap instances")
        self._components = components
        self._degree = degree

    @property
    def components(self) -> tuple[HPoly, HPoly, HPoly]:
        return self._components

    @property
    def degree(self) -> int:
        return self._degree

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self._components == other._components

    def __hash__(self) -> int:
        return hash(self._components)

    def __repr__(self) -> str:
        return f"RationalMap({render_map(self)!r})"

    def __str__(self) -> str:
        return render_map(self)


def make_map(p0: HPoly, p1: HPoly, p2: HPoly) -> RationalMap:
    """Reduce and canonically normalize a component triple."""
    comps = [p0, p1, p2]
    degs = {p.degree for p in comps if not p.is_zero()}
    if not degs:
        raise DegenerateTripleError("all three components are zero")
    if len(degs) > 1:
        raise DegreeMismatchError(f"component degrees {sorted(degs)}")
    g = None
    for p in comps:
        if p.is_zero():
            continue
        g = p if g is None else hpoly_gcd(g, p)
    if g.degree > 0:
        comps = [p if p.is_zero() else hpoly_divexact(p, g) for p in comps]
    deg = next(p.degree for p in comps if not p.is_zero())
    if deg == 0:
        raise DegenerateTripleError("components reduce to constants")
    comps = [HPoly(p.terms, deg) for p in comps]
    comps = _joint_normalize(comps)
    return RationalMap(tuple(comps), deg, _canonical=True)


def _joint_normalize(comps: list[HPoly]) -> list[HPoly]:
    import math

    den = 1
    for p in comps:
        for c in p.terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for p in comps:
        for c in p.terms.values():
            num = math.gcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num)
    first = None
    for p in comps:
        if not p.is_zero():
            first = p.terms[max(p.terms)]
            break
        # components scanned in order; within one, lex-first term leads
    if first is None:
        raise DegenerateTripleError("all three components are zero")
    if first < 0:
        scale = -scale
    return [p.scale(scale) if not p.is_zero() else p for p in comps]


def render_map(f: RationalMap) -> str:
    return "(" + " : ".join(render_hpoly(p) for p in f.components) + ")"


def parse_map(text: str) -> RationalMap:
    """'(e0 : e1 : e2)' with the shared polynomial term grammar."""
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
    if body.count(":") != 2:
        raise ParseError("expected three ':'-separated components", i + 1)
    parts = body.split(":")
    comps = []
    pos = i + 1
    for part in parts:
        comps.append(parse_hpoly(part, pos))
        pos += len(part) + 1
    return make_map(*comps)


def compose(f: RationalMap, g: RationalMap) -> RationalMap:
    """f after g: substitute the components of g into those of f."""
    comps = [hpoly_substitute(p, *g.components) for p in f.components]
    return make_map(*comps)


# ---------------------------------------------------------------------------
# generators


def identity_map() -> RationalMap:
    x, y, z = (HPoly.variable(v) for v in "xyz")
    return make_map(x, y, z)


def sigma() -> RationalMap:
    """The standard quadratic involution (yz : xz : xy)."""
    return make_map(
        HPoly.monomial(0, 1, 1), HPoly.monomial(1, 0, 1), HPoly.monomial(1, 1, 0)
    )


def rho() -> RationalMap:
    """(xy : z^2 : yz), the quadratic map with two proper base points."""
    return make_map(
        HPoly.monomial(1, 1, 0), HPoly.monomial(0, 0, 2), HPoly.monomial(0, 1, 1)
    )


def tau() -> RationalMap:
    """(x^2 : xy : y^2 - xz), the quadratic map with one proper base point."""
    return make_map(
        HPoly.monomial(2, 0, 0),
        HPoly.monomial(1, 1, 0),
        HPoly({(0, 2, 0): 1, (1, 0, 1): -1}),
    )


def f_d(d: int) -> RationalMap:
    """(x z^(d-1) + y^d : y z^(d-1) : z^d), degree d, for d >= 2."""
    if d < 2:
        raise ValueError("f_d needs d >= 2")
    return make_map(
        HPoly({(1, 0, d - 1): 1, (0, d, 0): 1}),
        HPoly.monomial(0, 1, d - 1),
        HPoly.monomial(0, 0, d),
    )


def linear_map(matrix) -> RationalMap:
    m = linalg.mat(matrix)
    if linalg.mat_det(m) == 0:
        raise SingularMatrixError("linear map needs an invertible matrix")
    comps = []
    for row in m:
        comps.append(HPoly({(1, 0, 0): row[0], (0, 1, 0): row[1], (0, 0, 1): row[2]}))
    return make_map(*comps)


def matrix_of(f: RationalMap) -> linalg.Mat3:
    """Exponent matrix of a degree-1 map (rows are the component forms)."""
    if f.degree != 1:
        raise ValueError("matrix_of needs a degree-1 map")
    rows = []
    for p in f.components:
        t = p.terms
        rows.append(
            (
                t.get((1, 0, 0), Fraction(0)),
                t.get((0, 1, 0), Fraction(0)),
                t.get((0, 0, 1), Fraction(0)),
            )
        )
    return linalg.mat(rows)


# ---------------------------------------------------------------------------
# jacobian and the quadratic orbit classification


def jacobian(f: RationalMap) -> HPoly:
    """Determinant of the matrix of partial derivatives, degree 3(d-1)."""
    rows = [[p.partial(v) for v in "xyz"] for p in f.components]
    (a, b, c), (d, e, g), (h, i, j) = rows
    det = (
        hpoly_mul(a, hpoly_mul(e, j) - hpoly_mul(g, i))
        - hpoly_mul(b, hpoly_mul(d, j) - hpoly_mul(g, h))
        + hpoly_mul(c, hpoly_mul(d, i) - hpoly_mul(e, h))
    )
    if det.is_zero():
        return HPoly.zero(3 * (f.degree - 1))
    return det


class QuadraticOrbit(Enum):
    SIGMA_ORBIT = "SIGMA_ORBIT"
    RHO_ORBIT = "RHO_ORBIT"
    TAU_ORBIT = "TAU_ORBIT"


def classify_quadratic(f: RationalMap) -> QuadraticOrbit:
    """Sort a birational quadratic map into the orbit of sigma, rho or tau
    by the number of distinct contracted lines (the degree of the
    squarefree part of the jacobian: 3, 2 or 1)."""
    if f.degree != 2:
        raise NotQuadraticError(f"degree {f.degree} map")
    det = jacobian(f)
    if det.is_zero():
        raise NotBirationalError("vanishing jacobian")
    s = hpoly_squarefree_part(det)
    table = {3: QuadraticOrbit.SIGMA_ORBIT, 2: QuadraticOrbit.RHO_ORBIT,
             1: QuadraticOrbit.TAU_ORBIT}
    return table[s.degree]


def verify_inverse(f: RationalMap, g: RationalMap) -> bool:
    ident = identity_map()
    try:
        return compose(f, g) == ident and compose(g, f) == ident
    except DegenerateTripleError:
        return False


# ---------------------------------------------------------------------------
# words


@dataclass(frozen=True)
class SigmaLetter:
    def __repr__(self) -> str:
        return "SIGMA"


SIGMA = SigmaLetter()


@dataclass(frozen=True)
class LinearLetter:
    matrix: linalg.Mat3

    def __repr__(self) -> str:
        return f"LinearLetter({self.matrix!r})"


Letter = SigmaLetter | LinearLetter


def linear_letter(matrix) -> LinearLetter:
    m = linalg.mat(matrix)
    if linalg.mat_det(m) == 0:
        raise SingularMatrixError("linear letter needs an invertible matrix")
    return LinearLetter(m)


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...]

    @property
    def sigma_count(self) -> int:
        return sum(1 for l in self.letters if isinstance(l, SigmaLetter))

    def __len__(self) -> int:
        return len(self.letters)

    def concat(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def inverse(self) -> Word:
        """Reverse the letters and invert the linear ones; sigma is its
        own inverse, so this evaluates to the inverse map."""
        out = []
        for l in reversed(self.letters):
            if isinstance(l, SigmaLetter):
                out.append(l)
            else:
                out.append(LinearLetter(linalg.mat_inv(l.matrix)))
        return Word(tuple(out))


def word(*letters) -> Word:
    return Word(tuple(letters))


def merge_linears(w: Word) -> Word:
    """Collapse adjacent linear letters into their product."""
    out: list[Letter] = []
    for l in w.letters:
        if (
            out
            and isinstance(l, LinearLetter)
            and isinstance(out[-1], LinearLetter)
        ):
            out[-1] = LinearLetter(linalg.mat_mul(out[-1].matrix, l.matrix))
        else:
            out.append(l)
    return Word(tuple(out))


def word_eval(w: Word) -> RationalMap:
    acc = identity_map()
    for letter in w.letters:
        step = sigma() if isinstance(letter, SigmaLetter) else linear_map(letter.matrix)
        acc = compose(acc, step)
    return acc


def word_to_json(w: Word) -> list:
    out = []
    for l in w.letters:
        if isinstance(l, SigmaLetter):
            out.append({"op": "sigma"})
        else:
            out.append(
                {"op": "linear", "m": [[str(v) for v in row] for row in l.matrix]}
            )
    return out


def word_from_json(data) -> Word:
    if not isinstance(data, list):
        raise ValueError("a word is a JSON array of letters")
    letters: list[Letter] = []
    for entry in data:
        op = entry.get("op")
        if op == "sigma":
            letters.append(SIGMA)
        elif op == "linear":
            rows = [[Fraction(v) for v in row] for row in entry["m"]]
            letters.append(linear_letter(rows))
        else:
            raise ValueError(f"unknown word letter {op!r}")
    return Word(tuple(letters))
