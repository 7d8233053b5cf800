"""Exact univariate polynomial machinery.

Polynomials carry ``Fraction`` coefficients in dense ascending order.  The
root-counting cascade (gcd, Yun square-free decomposition, Sturm chains)
runs internally on primitive integer coefficient lists: remainders are taken
by pseudo-division scaled by a *positive* factor and stripped of integer
content at every step, so signs stay meaningful for Sturm's theorem while
coefficient growth stays polynomial.

Interval endpoints are ``Fraction`` values or the two infinities; the float
infinities are used only as order sentinels and never enter arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, inf

from .errors import PreconditionError, ZeroPolynomialError

NEG_INF = -inf
POS_INF = inf


def is_finite_endpoint(x) -> bool:
    return not isinstance(x, float)


def sign_variation(values) -> int:
    """Number of sign changes in a sequence after deleting all zeros.

    Empty and all-zero sequences give 0.
    """
    signs = [1 if v > 0 else -1 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


# ---------------------------------------------------------------------------
# Integer coefficient lists (ascending order, no trailing zeros)


def _strip(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _deg(c: list[int]) -> int:
    return len(c) - 1


def _content_strip(c: list[int]) -> list[int]:
    g = 0
    for v in c:
        g = gcd(g, abs(v))
        if g == 1:
            return c
    if g > 1:
        return [v // g for v in c]
    return c


def _neg(c: list[int]) -> list[int]:
    return [-v for v in c]


def _deriv(c: list[int]) -> list[int]:
    return [i * v for i, v in enumerate(c)][1:]


def _mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _prem_pos(f: list[int], g: list[int]) -> list[int]:
    """Pseudo-remainder of f by g, scaled so it is a positive multiple of f mod g."""
    r = list(f)
    dg = _deg(g)
    lc = g[-1]
    steps = 0
    while _deg(r) >= dg:
        dr = _deg(r)
        top = r[-1]
        r = [lc * v for v in r]
        shift = dr - dg
        for j, gv in enumerate(g):
            r[j + shift] -= top * gv
        _strip(r)
        steps += 1
    if lc < 0 and steps % 2 == 1:
        r = _neg(r)
    return r


def _prem_full_abs(f: list[int], g: list[int]) -> list[int]:
    """|lc(g)|^(deg f - deg g + 1) times |f mod g| up to a positive factor.

    Matches the scaling assumed by the subresultant divisor formulas while
    staying a positive multiple of the true remainder.
    """
    delta = _deg(f) - _deg(g)
    r = list(f)
    dg = _deg(g)
    lc = g[-1]
    steps = 0
    while _deg(r) >= dg:
        dr = _deg(r)
        top = r[-1]
        r = [lc * v for v in r]
        shift = dr - dg
        for j, gv in enumerate(g):
            r[j + shift] -= top * gv
        _strip(r)
        steps += 1
    missing = delta + 1 - steps
    if missing > 0:
        scale = abs(lc) ** missing
        r = [scale * v for v in r]
    if lc < 0 and steps % 2 == 1:
        r = _neg(r)
    return r


def _exact_div_scalar(c: list[int], s: int) -> list[int]:
    out = []
    for v in c:
        q, rem = divmod(v, s)
        if rem:
            raise ArithmeticError("inexact scalar division in subresultant cascade")
        out.append(q)
    return out


def _subresultant_tail(u: list[int], v: list[int], negate: bool):
    """Generate the remainder cascade after (u, v) with subresultant divisors.

    Each yielded element is a positive multiple of +-(previous mod current)
    (negated when ``negate``, as Sturm chains require), with coefficient
    growth controlled by Collins' predicted exact divisors instead of
    content gcds.
    """
    g = 1
    h = 1
    while v and _deg(v) >= 0:
        delta = _deg(u) - _deg(v)
        r = _prem_full_abs(u, v)
        if not r:
            return
        r = _exact_div_scalar(r, abs(g) * abs(h) ** delta)
        if negate:
            r = _neg(r)
        yield r
        u, v = v, r
        g = abs(u[-1])
        h = abs(h ** (1 - delta) * g**delta) if delta <= 1 else _pow_div(g, h, delta)
        if _deg(v) <= 0:
            return


def _pow_div(g: int, h: int, delta: int) -> int:
    q, rem = divmod(g**delta, h ** (delta - 1))
    if rem:
        raise ArithmeticError("inexact power division in subresultant cascade")
    return abs(q)


def _gcd_int(f: list[int], g: list[int]) -> list[int]:
    """Primitive gcd with positive leading coefficient (subresultant PRS)."""
    f = _content_strip(list(f))
    g = _content_strip(list(g))
    if not f:
        f, g = g, f
    if not g:
        if not f:
            return []
        return f if f[-1] > 0 else _neg(f)
    if _deg(f) < _deg(g):
        f, g = g, f
    last = g
    for r in _subresultant_tail(f, g, negate=False):
        last = r
    last = _content_strip(list(last))
    if last[-1] < 0:
        last = _neg(last)
    return last


def _div_exact(f: list[int], g: list[int]) -> list[int]:
    """Exact quotient f / g in Z[y]; raises if the division is not exact."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    if not f:
        return []
    r = list(f)
    q = [0] * (len(f) - len(g) + 1)
    dg = _deg(g)
    lc = g[-1]
    while _deg(r) >= dg:
        c, rem = divmod(r[-1], lc)
        if rem:
            raise ArithmeticError("inexact integer polynomial division")
        shift = _deg(r) - dg
        q[shift] = c
        for j, gv in enumerate(g):
            r[j + shift] -= c * gv
        _strip(r)
    if r:
        raise ArithmeticError("inexact polynomial division (nonzero remainder)")
    return q


def _zip_pad(a: list[int], b: list[int]):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def _eval_sign(c: list[int], x: Fraction) -> int:
    """Sign of the polynomial at a rational point, computed in integers.

    Evaluates q^deg * f(p/q) by Horner with compensating powers of q.
    """
    p, q = x.numerator, x.denominator
    acc = 0
    qpow = 1
    for v in reversed(c):
        acc = acc * p + v * qpow
        qpow *= q
    return (acc > 0) - (acc < 0)


def _sign_at(c: list[int], x) -> int:
    if x == POS_INF:
        return (c[-1] > 0) - (c[-1] < 0)
    if x == NEG_INF:
        s = (c[-1] > 0) - (c[-1] < 0)
        return s if _deg(c) % 2 == 0 else -s
    return _eval_sign(c, x)


def _sturm_chain_int(f: list[int]) -> list[list[int]]:
    chain = [_content_strip(list(f))]
    d = _content_strip(_deriv(f))
    if d:
        chain.append(d)
        if _deg(d) > 0:
            chain.extend(_subresultant_tail(chain[0], chain[1], negate=True))
    return chain


def _sturm_count(f: list[int], a, b) -> int:
    """Distinct roots of square-free f in (a, b], endpoints not roots of f."""
    chain = _sturm_chain_int(f)
    va = sign_variation([_sign_at(c, a) for c in chain])
    vb = sign_variation([_sign_at(c, b) for c in chain])
    return va - vb


# Deterministic primes for the one-sided square-freeness test: a zero-degree
# gcd of f and f' modulo any prime not dividing lc(f) certifies gcd(f, f') = 1
# over the rationals, letting the counting path skip the exact decomposition.
_SQFREE_PRIMES = (1000003, 2000003, 5000011, 9000011, 15485863)


def _polymod_p(a: list[int], b: list[int], p: int) -> list[int]:
    inv = pow(b[-1], -1, p)
    r = list(a)
    db = len(b) - 1
    while len(r) - 1 >= db:
        if r[-1] % p == 0:
            r.pop()
            continue
        c = (r[-1] * inv) % p
        shift = len(r) - 1 - db
        for j, bv in enumerate(b):
            r[j + shift] = (r[j + shift] - c * bv) % p
        while r and r[-1] % p == 0:
            r.pop()
    return r


def _squarefree_certain(f: list[int]) -> bool:
    """True only when f is provably square-free (gcd with f' is constant mod p)."""
    d = _deg(f)
    if d <= 1:
        return True
    for p in _SQFREE_PRIMES:
        if f[-1] % p == 0:
            continue
        a = [v % p for v in f]
        b = [(i * v) % p for i, v in enumerate(f)][1:]
        while b and b[-1] % p == 0:
            b.pop()
        while b:
            a, b = b, _polymod_p(a, b, p)
        return len(a) == 1
    return False


def _yun_int(f: list[int]) -> list[tuple[list[int], int]]:
    """Yun square-free decomposition of a primitive integer polynomial.

    Returns pairs (factor, multiplicity) with square-free, pairwise coprime
    primitive factors; the product of factor^multiplicity is f up to a
    rational constant.
    """
    f = _content_strip(list(f))
    if f[-1] < 0:
        f = _neg(f)
    if _deg(f) == 0:
        return []
    fp = _deriv(f)
    g = _gcd_int(f, fp)
    if _deg(g) == 0:
        return [(f, 1)]
    c = _div_exact(f, g)
    d = _strip([x - y for x, y in _zip_pad(_div_exact(fp, g), _deriv(c))])
    out = []
    i = 1
    while _deg(c) > 0:
        a = _gcd_int(c, d)  # gcd with the zero polynomial is c itself
        if _deg(a) > 0:
            out.append((a, i))
        c = _div_exact(c, a)
        d = _strip([x - y for x, y in _zip_pad(_div_exact(d, a) if d else [], _deriv(c))])
        i += 1
    return out


# ---------------------------------------------------------------------------
# Public polynomial type


class Poly:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficients are stored in ascending order with no trailing zeros; the
    zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "Poly(0)"
        terms = " + ".join(f"{c}*y^{i}" for i, c in enumerate(self.coeffs) if c)
        return f"Poly({terms})"

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero or other.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly([c * x for x in self.coeffs])

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        """Exact rational quotient and remainder."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, len(self.coeffs) - len(other.coeffs) + 1)
        r = list(self.coeffs)
        d = other.degree
        lc = other.coeffs[-1]
        while len(r) - 1 >= d and r:
            c = r[-1] / lc
            shift = len(r) - 1 - d
            q[shift] = c
            for j, g in enumerate(other.coeffs):
                r[j + shift] -= c * g
            while r and r[-1] == 0:
                r.pop()
        return Poly(q), Poly(r)

    def primitive_integer(self) -> list[int]:
        """The unique positive-rational multiple with coprime integer coefficients."""
        if self.is_zero:
            return []
        denom_lcm = 1
        for c in self.coeffs:
            denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
        ints = [int(c * denom_lcm) for c in self.coeffs]
        return _content_strip(ints)


def poly_from_ints(c: list[int]) -> Poly:
    return Poly(c)


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Primitive integer gcd with positive leading coefficient."""
    if p.is_zero:
        return poly_from_ints(q.primitive_integer()) if not q.is_zero else Poly()
    if q.is_zero:
        return poly_from_ints(p.primitive_integer())
    return poly_from_ints(_gcd_int(p.primitive_integer(), q.primitive_integer()))


def sturm_chain(p: Poly) -> list[Poly]:
    if p.is_zero:
        raise ZeroPolynomialError("Sturm chain of the zero polynomial")
    return [poly_from_ints(c) for c in _sturm_chain_int(p.primitive_integer())]


def squarefree_decomposition(p: Poly) -> list[tuple[Poly, int]]:
    """Square-free decomposition p ~ prod q_i^{m_i} (Yun's algorithm)."""
    if p.is_zero:
        raise ZeroPolynomialError("square-free decomposition of the zero polynomial")
    return [(poly_from_ints(c), m) for c, m in _yun_int(p.primitive_integer())]


def _check_interval(a, b):
    for e in (a, b):
        if isinstance(e, float) and e not in (NEG_INF, POS_INF):
            raise PreconditionError(f"endpoint must be exact or infinite, got {e!r}")
    if not a < b:
        raise PreconditionError(f"empty or reversed interval ({a}, {b})")


def count_roots_in_interval(p: Poly, a, b) -> tuple[int, int]:
    """Count roots of p strictly inside the open interval (a, b).

    Returns (distinct, with_multiplicity).  Endpoints may be ``Fraction``
    values or the infinities; roots exactly at finite endpoints are excluded
    by dividing out the corresponding linear factors before Sturm counting.
    """
    if p.is_zero:
        raise ZeroPolynomialError("root counting for the identically zero polynomial")
    _check_interval(a, b)
    f = p.primitive_integer()
    for endpoint in (a, b):
        if is_finite_endpoint(endpoint):
            # (q*y - p) is primitive for p/q in lowest terms
            lin = [-endpoint.numerator, endpoint.denominator]
            while f and _deg(f) >= 1 and _eval_sign(f, endpoint) == 0:
                f = _div_exact(f, lin)
                f = _content_strip(f)
    if _deg(f) < 1:
        return (0, 0)
    if _squarefree_certain(f):
        c = _sturm_count(f, a, b)
        return (c, c)
    distinct = 0
    with_mult = 0
    for q, m in _yun_int(f):
        c = _sturm_count(q, a, b)
        distinct += c
        with_mult += m * c
    return (distinct, with_mult)
