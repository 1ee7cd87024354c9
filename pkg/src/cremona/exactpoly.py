"""Exact sparse homogeneous polynomials in x, y, z over the rationals.

A polynomial is stored as a dict mapping exponent triples (a, b, c) to
nonzero Fraction coefficients; for a nonzero polynomial every triple sums
to the same total degree.  The zero polynomial keeps an explicit degree
tag next to an empty term map so arithmetic can still check degrees.

The GCD works by stripping the monomial content of both inputs, setting
z = 1 (faithful once no variable divides either polynomial), running a
primitive-part pseudo-remainder sequence over Q[y][x], and homogenizing
the result back to its total degree.  The same PRS engine doubles as the
elimination step used for base-point extraction: the last main-variable-
free element of the sequence, together with every content divisor removed
along the way, vanishes on the projection of every common zero.

All functions are pure; HPoly instances are immutable and hashable.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import DegreeMismatchError, ParseError

Triple = tuple[int, int, int]
VAR_NAMES = ("x", "y", "z")


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c).__name__}")


class HPoly:
    """Homogeneous trivariate polynomial with Fraction coefficients."""

    __slots__ = ("_terms", "_deg")

    def __init__(self, terms: dict[Triple, Fraction] | None = None, degree: int = 0):
        clean: dict[Triple, Fraction] = {}
        for key, c in (terms or {}).items():
            c = _as_fraction(c)
            if c == 0:
                continue
            a, b, cc = key
            if a < 0 or b < 0 or cc < 0:
                raise ValueError(f"negative exponent in {key}")
            clean[(a, b, cc)] = c
        if clean:
            degs = {sum(k) for k in clean}
            if len(degs) != 1:
                raise DegreeMismatchError(f"mixed total degrees {sorted(degs)}")
            self._deg = degs.pop()
        else:
            if degree < 0:
                raise ValueError("zero polynomial needs a degree tag >= 0")
            self._deg = degree
        self._terms = clean

    @classmethod
    def zero(cls, degree: int = 0) -> HPoly:
        return cls({}, degree)

    @classmethod
    def constant(cls, c) -> HPoly:
        return cls({(0, 0, 0): _as_fraction(c)})

    @classmethod
    def monomial(cls, a: int, b: int, c: int, coeff=1) -> HPoly:
        return cls({(a, b, c): _as_fraction(coeff)})

    @classmethod
    def variable(cls, name: str) -> HPoly:
        i = VAR_NAMES.index(name)
        key = [0, 0, 0]
        key[i] = 1
        return cls({tuple(key): Fraction(1)})

    @property
    def degree(self) -> int:
        return self._deg

    @property
    def terms(self) -> dict[Triple, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, key: Triple) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def leading_key(self) -> Triple:
        # lex order on exponent triples with x > y > z
        return max(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __neg__(self) -> HPoly:
        return HPoly({k: -c for k, c in self._terms.items()}, self._deg)

    def __add__(self, other: HPoly) -> HPoly:
        return hpoly_add(self, other)

    def __sub__(self, other: HPoly) -> HPoly:
        return hpoly_add(self, -other)

    def __mul__(self, other) -> HPoly:
        if isinstance(other, HPoly):
            return hpoly_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other) -> HPoly:
        return self.scale(other)

    def __pow__(self, n: int) -> HPoly:
        if n < 0:
            raise ValueError("negative power")
        result = HPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = hpoly_mul(result, base)
            base = hpoly_mul(base, base) if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> HPoly:
        c = _as_fraction(c)
        if c == 0:
            return HPoly.zero(self._deg)
        return HPoly({k: v * c for k, v in self._terms.items()}, self._deg)

    def partial(self, var: str) -> HPoly:
        """Partial derivative; degree drops by one (tagged even when zero)."""
        i = VAR_NAMES.index(var)
        out: dict[Triple, Fraction] = {}
        for k, c in self._terms.items():
            e = k[i]
            if e == 0:
                continue
            nk = list(k)
            nk[i] = e - 1
            out[tuple(nk)] = c * e
        return HPoly(out, max(self._deg - 1, 0))

    def eval(self, a, b, c) -> Fraction:
        a, b, c = _as_fraction(a), _as_fraction(b), _as_fraction(c)
        total = Fraction(0)
        for (i, j, k), coeff in self._terms.items():
            total += coeff * a**i * b**j * c**k
        return total

    def __repr__(self) -> str:
        return f"HPoly({render_hpoly(self)!r})"

    def __str__(self) -> str:
        return render_hpoly(self)


def hpoly_add(p: HPoly, q: HPoly) -> HPoly:
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    if p.degree != q.degree:
        raise DegreeMismatchError(f"degree {p.degree} + degree {q.degree}")
    out = p.terms
    for k, c in q._terms.items():
        s = out.get(k, Fraction(0)) + c
        if s == 0:
            out.pop(k, None)
        else:
            out[k] = s
    return HPoly(out, p.degree)


def hpoly_mul(p: HPoly, q: HPoly) -> HPoly:
    if p.is_zero() or q.is_zero():
        return HPoly.zero(p.degree + q.degree)
    out: dict[Triple, Fraction] = {}
    for (a1, b1, c1), x in p._terms.items():
        for (a2, b2, c2), y in q._terms.items():
            k = (a1 + a2, b1 + b2, c1 + c2)
            s = out.get(k, Fraction(0)) + x * y
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
    return HPoly(out, p.degree + q.degree)


def hpoly_divexact(p: HPoly, q: HPoly) -> HPoly:
    """Exact quotient p / q; raises ValueError if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return HPoly.zero(max(p.degree - q.degree, 0))
    rem = p.terms
    lq = max(q._terms)
    cq = q._terms[lq]
    quo: dict[Triple, Fraction] = {}
    while rem:
        lr = max(rem)
        mono = (lr[0] - lq[0], lr[1] - lq[1], lr[2] - lq[2])
        if min(mono) < 0:
            raise ValueError("not an exact division")
        c = rem[lr] / cq
        quo[mono] = c
        for k, v in q._terms.items():
            nk = (k[0] + mono[0], k[1] + mono[1], k[2] + mono[2])
            s = rem.get(nk, Fraction(0)) - c * v
            if s == 0:
                rem.pop(nk, None)
            else:
                rem[nk] = s
    return HPoly(quo, p.degree - q.degree)


def hpoly_substitute(p: HPoly, f0: HPoly, f1: HPoly, f2: HPoly) -> HPoly:
    """p(f0, f1, f2); the three substituted forms must share one degree."""
    if not (f0.degree == f1.degree == f2.degree):
        raise DegreeMismatchError("substituted forms must have equal degrees")
    d = f0.degree
    if p.is_zero():
        return HPoly.zero(p.degree * d)
    pw: list[dict[int, HPoly]] = [{0: HPoly.constant(1)} for _ in range(3)]

    def power(i: int, e: int) -> HPoly:
        cache = pw[i]
        if e not in cache:
            base = (f0, f1, f2)[i]
            best = max(k for k in cache if k <= e)
            acc = cache[best]
            for _ in range(e - best):
                acc = hpoly_mul(acc, base)
                best += 1
                cache[best] = acc
        return cache[e]

    total = HPoly.zero(p.degree * d)
    for (a, b, c), coeff in p._terms.items():
        t = HPoly.constant(coeff)
        for i, e in enumerate((a, b, c)):
            if e:
                t = hpoly_mul(t, power(i, e))
        total = hpoly_add(total, t)
    return total


def vanishing_order(p: HPoly, chart: str) -> int:
    """Order of vanishing at the chart origin: minimum, over the support,
    of the total exponent of the two variables other than ``chart``."""
    if p.is_zero():
        raise ValueError("zero polynomial has no vanishing order")
    i = VAR_NAMES.index(chart)
    return min(sum(k) - k[i] for k in p._terms)


# ---------------------------------------------------------------------------
# normalization


def _int_scale(terms: dict[Triple, Fraction]) -> dict[Triple, Fraction]:
    """Scale to integer coefficients with content 1 (sign untouched)."""
    den = 1
    for c in terms.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    num = 0
    for c in terms.values():
        num = math.gcd(num, abs(c.numerator * (den // c.denominator)))
    scale = Fraction(den, num)
    return {k: c * scale for k, c in terms.items()}


def hpoly_normalize(p: HPoly) -> HPoly:
    """Primitive integer coefficients, lexicographically-first one positive."""
    if p.is_zero():
        return p
    terms = _int_scale(p._terms)
    if terms[max(terms)] < 0:
        terms = {k: -c for k, c in terms.items()}
    return HPoly(terms, p.degree)


# ---------------------------------------------------------------------------
# univariate helpers: UPoly is a little-endian list[Fraction], [] is zero


UPoly = list


def u_strip(a: UPoly) -> UPoly:
    while a and a[-1] == 0:
        a.pop()
    return a


def u_deg(a: UPoly) -> int:
    return len(a) - 1


def u_add(a: UPoly, b: UPoly) -> UPoly:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    return u_strip(out)


def u_neg(a: UPoly) -> UPoly:
    return [-c for c in a]

def u_sub(a: UPoly, b: UPoly) -> UPoly:
    return u_add(a, u_neg(b))


def u_mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return u_strip(out)


def u_scale(a: UPoly, c: Fraction) -> UPoly:
    if c == 0:
        return []
    return [x * c for x in a]


def u_divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while a and len(a) >= len(b):
        c = a[-1] / lb
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] -= c * y
        u_strip(a)
    return u_strip(q), a


def u_divexact(a: UPoly, b: UPoly) -> UPoly:
    q, r = u_divmod(a, b)
    if r:
        raise ValueError("not an exact univariate division")
    return q


def u_monic(a: UPoly) -> UPoly:
    if not a:
        return []
    lc = a[-1]
    return [c / lc for c in a]


def _u_primitive_int(a: UPoly) -> list[int]:
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in a]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints]


def u_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd through a primitive integer remainder sequence; plain
    fraction Euclid blows its coefficients up on the eliminant products
    this gets fed."""
    if not a:
        return u_monic(list(b))
    if not b:
        return u_monic(list(a))
    A, B = _u_primitive_int(a), _u_primitive_int(b)
    if len(A) < len(B):
        A, B = B, A
    while B:
        # pseudo-remainder of A by B, kept over the integers
        R = list(A)
        lb = B[-1]
        while R and len(R) >= len(B):
            lr = R.pop()
            R = [v * lb for v in R]
            s = len(R) - len(B) + 1
            for i in range(len(B) - 1):
                R[s + i] -= lr * B[i]
            while R and R[-1] == 0:
                R.pop()
        A, B = B, (_u_primitive_int([Fraction(v) for v in R]) if R else [])
    return u_monic([Fraction(v) for v in A])


def u_deriv(a: UPoly) -> UPoly:
    return u_strip([a[i] * i for i in range(1, len(a))])


def u_eval(a: UPoly, x: Fraction) -> Fraction:
    total = Fraction(0)
    for c in reversed(a):
        total = total * x + c
    return total


# ---------------------------------------------------------------------------
# integer factorization for rational root extraction


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ValueError(f"failed to factor {n}")


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factor_int needs a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    p = 17
    while p * p <= n and p < 100000:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factor_int(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


def u_rational_roots(a: UPoly) -> list[Fraction]:
    """All rational roots of a nonzero univariate polynomial, without
    multiplicity, via the rational root theorem on the primitive part."""
    if not a:
        raise ValueError("zero polynomial")
    roots = []
    k = 0
    while a[k] == 0:
        k += 1
    if k:
        roots.append(Fraction(0))
        a = a[k:]
    if len(a) == 1:
        return roots
    # squarefree reduction keeps the divisor enumeration small
    g = u_gcd(a, u_deriv(a))
    if u_deg(g) > 0:
        a = u_divexact(a, g)
    den = 1
    for c in a:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [c.numerator * (den // c.denominator) for c in a]
    g0 = 0
    for v in ints:
        g0 = math.gcd(g0, v)
    ints = [v // g0 for v in ints]
    a0, an = abs(ints[0]), abs(ints[-1])
    # p^i q^(n-i) clears the denominator, so u(p/q) = 0 iff the integer
    # Horner value is 0; a single-prime residue filters almost every
    # candidate before any bignum work
    M = (1 << 61) - 1
    res = [v % M for v in ints]
    n = len(ints) - 1

    def int_value(coeffs, p, q):
        r = coeffs[n]
        qe = 1
        for i in range(n - 1, -1, -1):
            qe = qe * q
            r = r * p + coeffs[i] * qe
        return r

    def int_value_mod(p, q):
        pm, qm = p % M, q % M
        r = res[n]
        qe = 1
        for i in range(n - 1, -1, -1):
            qe = qe * qm % M
            r = (r * pm + res[i] * qe) % M
        return r

    divs_p, divs_q = _divisors(a0), _divisors(an)
    for p in divs_p:
        for q in divs_q:
            if math.gcd(p, q) != 1:
                continue
            for s in (p, -p):
                if int_value_mod(s, q) == 0 and int_value(ints, s, q) == 0:
                    roots.append(Fraction(s, q))
    return roots


# ---------------------------------------------------------------------------
# polynomials in one main variable with UPoly coefficients
# (BSeq below is a little-endian list of UPoly, [] is zero)


def b_strip(A: list) -> list:
    while A and not A[-1]:
        A.pop()
    return A


def b_deg(A: list) -> int:
    return len(A) - 1


def b_prem(A: list, B: list) -> list:
    """Pseudo-remainder of A by B (deg A >= deg B >= 0, B nonzero).

    Every step multiplies the running remainder by lc(B), so the result
    stays a polynomial combination of A and B.
    """
    lb = B[-1]
    R = [list(c) for c in A]
    while R and len(R) - 1 >= len(B) - 1:
        s = len(R) - len(B)
        lr = R[-1]
        R = [u_mul(c, lb) for c in R[:-1]]
        while len(R) < s + len(B) - 1:
            R.append([])
        for i in range(len(B) - 1):
            R[s + i] = u_sub(R[s + i], u_mul(lr, B[i]))
        b_strip(R)
    return R


def b_content(A: list) -> UPoly:
    c: UPoly = []
    for coeff in A:
        c = u_gcd(c, coeff)
        if u_deg(c) == 0:
            break
    return c if c else []


def b_primitive(A: list) -> tuple[list, UPoly]:
    """Divide out the coefficient-poly content, then rescale to primitive
    integer coefficients.  Returns (primitive part, removed content)."""
    if not A:
        return A, []
    c = b_content(A)
    if u_deg(c) > 0:
        A = [u_divexact(x, c) for x in A]
    den = 1
    for col in A:
        for v in col:
            den = den * v.denominator // math.gcd(den, v.denominator)
    num = 0
    for col in A:
        for v in col:
            num = math.gcd(num, abs(v.numerator * (den // v.denominator)))
    scale = Fraction(den, num)
    return [u_scale(col, scale) for col in A], c


def prs_gcd(A: list, B: list) -> list:
    """Primitive-PRS gcd of two nonzero primitive main-variable polynomials."""
    if b_deg(A) < b_deg(B):
        A, B = B, A
    while True:
        R = b_prem(A, B)
        if not R:
            return B
        R, _ = b_primitive(R)
        A, B = B, R


def prs_eliminate(A: list, B: list) -> tuple[bool, list[UPoly]]:
    """Eliminate the main variable from two nonzero polynomials.

    Returns (ok, divisors): every coefficient-ring root of a common zero's
    projection is a root of one of the divisors (the contents removed from
    the remainder sequence, the inputs' own contents, and the final
    main-variable-free element).  ok is False when the pair shares a factor
    of positive main degree, in which case elimination says nothing.
    """
    divisors: list[UPoly] = []
    A, cA = b_primitive(A)
    B, cB = b_primitive(B)
    for c in (cA, cB):
        if u_deg(c) > 0:
            divisors.append(c)
    if b_deg(A) == 0:
        return True, divisors
    if b_deg(B) == 0:
        return True, divisors
    if b_deg(A) < b_deg(B):
        A, B = B, A
    while True:
        R = b_prem(A, B)
        if not R:
            return (b_deg(B) == 0), divisors
        R, c = b_primitive(R)
        if u_deg(c) > 0:
            divisors.append(c)
        if b_deg(R) == 0:
            return True, divisors
        A, B = B, R


# ---------------------------------------------------------------------------
# gcd of homogeneous polynomials


def _monomial_mins(p: HPoly) -> Triple:
    ks = list(p._terms)
    return (min(k[0] for k in ks), min(k[1] for k in ks), min(k[2] for k in ks))


def _shift(p: HPoly, s: Triple, sign: int) -> HPoly:
    return HPoly(
        {(k[0] + sign * s[0], k[1] + sign * s[1], k[2] + sign * s[2]): c
         for k, c in p._terms.items()}
    )


def _to_xy(p: HPoly) -> list:
    """Dehomogenize at z = 1 into a main-x polynomial with Q[y] coefficients."""
    out: list[UPoly] = []
    for (a, b, _c), coeff in p._terms.items():
        while len(out) <= a:
            out.append([])
        col = out[a]
        while len(col) <= b:
            col.append(Fraction(0))
        col[b] += coeff
    return b_strip([u_strip(c) for c in out])


def _from_xy(A: list) -> HPoly:
    terms: dict[Triple, Fraction] = {}
    total = 0
    for a, col in enumerate(A):
        for b, coeff in enumerate(col):
            if coeff != 0:
                total = max(total, a + b)
    for a, col in enumerate(A):
        for b, coeff in enumerate(col):
            if coeff != 0:
                terms[(a, b, total - a - b)] = coeff
    return HPoly(terms)


def hpoly_gcd(p: HPoly, q: HPoly) -> HPoly:
    """Normalized gcd; gcd(p, 0) = normalized p, gcd(0, 0) is an error."""
    if p.is_zero() and q.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if p.is_zero():
        return hpoly_normalize(q)
    if q.is_zero():
        return hpoly_normalize(p)
    sp, sq = _monomial_mins(p), _monomial_mins(q)
    shared = (min(sp[0], sq[0]), min(sp[1], sq[1]), min(sp[2], sq[2]))
    p1 = _shift(p, sp, -1)
    q1 = _shift(q, sq, -1)
    A, B = _to_xy(p1), _to_xy(q1)
    pA, cA = b_primitive(A)
    pB, cB = b_primitive(B)
    cg = u_gcd(cA, cB)
    if b_deg(pA) == 0 or b_deg(pB) == 0:
        g: list = [cg]
    else:
        core = prs_gcd(pA, pB)
        g = [u_mul(c, cg) for c in core]
    result = _from_xy(g)
    result = _shift(result, shared, 1)
    return hpoly_normalize(result)


def hpoly_squarefree_part(p: HPoly) -> HPoly:
    """Product of the distinct irreducible factors of p, normalized."""
    if p.is_zero():
        raise ValueError("squarefree part of zero")
    if p.degree == 0:
        return HPoly.constant(1)
    g = p
    for v in VAR_NAMES:
        d = p.partial(v)
        if not d.is_zero():
            g = hpoly_gcd(g, d)
    if g.degree == 0:
        return hpoly_normalize(p)
    return hpoly_normalize(hpoly_divexact(hpoly_normalize(p), g))


# ---------------------------------------------------------------------------
# text grammar (shared with the CLI): sums of '*'-separated factors over
# named variables, integer or a/b coefficients, '^' powers, no parentheses


class _Lexer:
    def __init__(self, text: str, offset: int = 0):
        self.text = text
        self.pos = 0
        self.offset = offset

    def error(self, message: str):
        raise ParseError(message, self.offset + self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.peek()
        self.pos += 1
        return ch

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected an integer")
        return int(self.text[start:self.pos])


def parse_terms(text: str, variables: tuple[str, ...], offset: int = 0):
    """Parse the shared polynomial grammar into {exponent tuple: Fraction}."""
    lx = _Lexer(text, offset)
    terms: dict[tuple[int, ...], Fraction] = {}
    nv = len(variables)
    lower = tuple(v.lower() for v in variables)

    def add_term(exps, coeff):
        key = tuple(exps)
        s = terms.get(key, Fraction(0)) + coeff
        if s == 0:
            terms.pop(key, None)
        else:
            terms[key] = s

    def factor() -> tuple[list[int], Fraction]:
        exps = [0] * nv
        ch = lx.peek()
        if ch.isdigit():
            num = lx.integer()
            coeff = Fraction(num)
            if lx.peek() == "/":
                lx.take()
                den = lx.integer()
                if den == 0:
                    lx.error("zero denominator")
                coeff = Fraction(num, den)
        elif ch.lower() in lower:
            lx.take()
            coeff = Fraction(1)
            exps[lower.index(ch.lower())] = 1
        else:
            lx.error("expected a coefficient or a variable")
        if lx.peek() == "^":
            lx.take()
            e = lx.integer()
            coeff = coeff**e
            exps = [v * e for v in exps]
        return exps, coeff

    def term():
        sign = 1
        # peek() yields "" at end of input, and "" is in every string
        while lx.peek() in ("+", "-"):
            if lx.take() == "-":
                sign = -sign
        exps, coeff = factor()
        while lx.peek() == "*":
            lx.take()
            e2, c2 = factor()
            exps = [a + b for a, b in zip(exps, e2)]
            coeff *= c2
        add_term(exps, sign * coeff)

    term()
    while True:
        ch = lx.peek()
        if ch == "":
            break
        if ch not in "+-":
            lx.error(f"unexpected character {ch!r}")
        term()
    return terms


def parse_hpoly(text: str, offset: int = 0) -> HPoly:
    """Parse a homogeneous polynomial in x, y, z."""
    terms = parse_terms(text, VAR_NAMES, offset)
    if not terms:
        return HPoly.zero(0)
    degs = {sum(k) for k in terms}
    if len(degs) != 1:
        raise DegreeMismatchError(
            f"non-homogeneous expression (term degrees {sorted(degs)})"
        )
    return HPoly(terms)


def _render_coeff(c: Fraction) -> str:
    return str(c)


def render_terms(terms: dict, variables: tuple[str, ...]) -> str:
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms, reverse=True):
        c = terms[key]
        body = [
            v if e == 1 else f"{v}^{e}"
            for v, e in zip(variables, key)
            if e
        ]
        mag = abs(c)
        if not body:
            frag = _render_coeff(mag)
        elif mag == 1:
            frag = "*".join(body)
        else:
            frag = "*".join([_render_coeff(mag)] + body)
        if not parts:
            parts.append(frag if c > 0 else f"-{frag}")
        else:
            parts.append(f"+ {frag}" if c > 0 else f"- {frag}")
    return " ".join(parts)


def render_hpoly(p: HPoly) -> str:
    return render_terms(p._terms, VAR_NAMES)
