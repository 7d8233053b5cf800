"""Exact positive-solution counting through the univariate reduction.

A positive solution of the system corresponds, after normalizing the kernel
basis at two class representatives, to a point y of the open interval where
all the linear forms p_l(y) are positive and the product of p_l(y) raised to
the primitive relation coefficients equals 1.  That locus is the root set of
an integer polynomial h inside the interval, so Sturm counting on h decides
the number of positive solutions exactly, multiplicities included.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

from .circuit import ExponentConfig, circuit_profile
from .errors import DimensionError, DomainError, PreconditionError
from .gale import CoefficientMatrix, GaleSystem, gale_dual, ordering
from .linalg import det_after_dropping
from .poly import (
    NEG_INF,
    POS_INF,
    Poly,
    count_roots_in_interval,
    is_finite_endpoint,
)


@dataclass(frozen=True)
class UnivariateModel:
    """Normalized Gale data for root counting.

    p[l] = (c0, c1) encodes the linear form c0 + c1*y; the rows at the two
    chosen representatives are exactly (1, 0) and (0, 1).  delta is the open
    interval where all forms are positive (endpoints exact or infinite), and
    h is the cleared difference of the positive and negative power products.
    """

    p: tuple[tuple[Fraction, Fraction], ...]
    lambda_primitive: tuple[int, ...]
    delta: tuple
    h: Poly
    pair: tuple[int, int]
    reps: tuple[int, int]


@dataclass(frozen=True)
class CountResult:
    """Exact number of positive solutions.

    kind is "finite", "infinite", or "no_positive_solutions" (with reason
    "halfspace_fails" or "delta_empty").  The multiplicity_note records
    whether the with-multiplicity figure rests on the circuit-case bijection
    directly or is extended to a pyramidal support.
    """

    kind: str
    distinct: int | None = None
    with_multiplicity: int | None = None
    reason: str | None = None
    multiplicity_note: str | None = None

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"


def minor_kernel_vector(C: CoefficientMatrix, a: int) -> tuple[Fraction, ...]:
    """Kernel vector of C from signed maximal minors anchored at column a.

    Coordinate l is +-det(C(a, l)) with the sign alternating in l and
    flipping across l = a; coordinate a itself is zero.
    """
    m = C.n + 2
    out = []
    for l in range(m):
        if l == a:
            out.append(Fraction(0))
            continue
        d = det_after_dropping(C.mat, a, l)
        sign = 1 if l % 2 == 0 else -1
        if a > l:
            sign = -sign
        out.append(sign * d)
    return tuple(out)


def _normalized_rows(g: GaleSystem, a: int, b: int) -> tuple[tuple[Fraction, Fraction], ...]:
    """Rows of the unique kernel basis whose rows at a and b are (1,0), (0,1)."""
    ra, rb = g.P[a], g.P[b]
    det = ra[0] * rb[1] - ra[1] * rb[0]
    if det == 0:
        raise ArithmeticError("representatives produced a singular normalization")
    s = (rb[1] / det, -rb[0] / det)
    t = (-ra[1] / det, ra[0] / det)
    return tuple(
        (p[0] * s[0] + p[1] * s[1], p[0] * t[0] + p[1] * t[1]) for p in g.P
    )


def _delta_interval(p_rows):
    """The open interval where every linear form c0 + c1*y is positive."""
    lo, hi = NEG_INF, POS_INF
    for c0, c1 in p_rows:
        if c1 == 0:
            if c0 <= 0:
                return None
        elif c1 > 0:
            bound = -c0 / c1
            if not is_finite_endpoint(lo) or bound > lo:
                lo = bound
        else:
            bound = -c0 / c1
            if not is_finite_endpoint(hi) or bound < hi:
                hi = bound
    if not lo < hi:
        return None
    return (lo, hi)


def _lin_pow(c0: int, c1: int, e: int) -> list[int]:
    """(c0 + c1*y)^e with integer coefficients, by the binomial theorem."""
    return [comb(e, k) * c0 ** (e - k) * c1**k for k in range(e + 1)]


def _int_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _difference_of_products(p_rows, lam_primitive) -> Poly:
    """The cleared integer polynomial whose roots in delta solve g(y) = 1.

    Each linear form is scaled to primitive integer coefficients; the two
    power products are then cross-scaled so their difference is a positive
    rational multiple of prod_+ p^lam - prod_- p^(-lam).
    """
    plus = [1]
    minus = [1]
    scale_plus = Fraction(1)
    scale_minus = Fraction(1)
    for (c0, c1), e in zip(p_rows, lam_primitive):
        if e == 0:
            continue
        den = c0.denominator * c1.denominator // gcd(c0.denominator, c1.denominator)
        i0, i1 = int(c0 * den), int(c1 * den)
        g = gcd(abs(i0), abs(i1))
        i0, i1 = i0 // g, i1 // g
        factor = Fraction(den, g)  # primitive form = factor * original, factor > 0
        if e > 0:
            plus = _int_mul(plus, _lin_pow(i0, i1, e))
            scale_plus *= factor**e
        else:
            minus = _int_mul(minus, _lin_pow(i0, i1, -e))
            scale_minus *= factor ** (-e)
    ratio = scale_plus / scale_minus
    u, v = ratio.numerator, ratio.denominator
    coeffs = [v * x for x in plus]
    for j, y in enumerate(minus):
        if j >= len(coeffs):
            coeffs.extend([0] * (j - len(coeffs) + 1))
        coeffs[j] -= u * y
    return Poly(coeffs)


def reduce_to_univariate(
    config: ExponentConfig,
    C: CoefficientMatrix,
    g: GaleSystem,
    pair: tuple[int, int] | None = None,
) -> UnivariateModel:
    """Build the univariate model at a pair of class representatives.

    The default pair is (0, k-1) in class order; any pair of distinct class
    indices yields the same counts.
    """
    if not g.halfspace_ok:
        raise PreconditionError("univariate reduction requires the halfplane condition")
    if not g.is_ordered:
        raise PreconditionError("univariate reduction requires an ordered Gale system")
    if g.k < 2:
        raise PreconditionError("need at least two ray classes")
    if pair is None:
        pair = (0, g.k - 1)
    i, j = pair
    if i == j or not (0 <= i < g.k and 0 <= j < g.k):
        raise PreconditionError(f"invalid representative pair {pair}")
    profile = circuit_profile(config)
    if len(profile.lam) != len(g.P):
        raise DimensionError("configuration size does not match Gale system")
    a, b = g.reps[i], g.reps[j]
    rows = _normalized_rows(g, a, b)
    return UnivariateModel(
        p=rows,
        lambda_primitive=profile.lam_primitive,
        delta=_delta_interval(rows),
        h=_difference_of_products(rows, profile.lam_primitive),
        pair=(i, j),
        reps=(a, b),
    )


def _interior_point(delta):
    lo, hi = delta
    lo_fin, hi_fin = is_finite_endpoint(lo), is_finite_endpoint(hi)
    if lo_fin and hi_fin:
        return (lo + hi) / 2
    if lo_fin:
        return lo + 1
    if hi_fin:
        return hi - 1
    return Fraction(0)


def evaluate_g(model: UnivariateModel, y) -> Fraction:
    """Exact value of the product of p_l(y) to the primitive relation powers."""
    y = Fraction(y)
    values = [c0 + c1 * y for c0, c1 in model.p]
    if any(v <= 0 for v in values):
        raise DomainError(f"point {y} lies outside the positivity interval")
    result = Fraction(1)
    for v, e in zip(values, model.lambda_primitive):
        if e:
            result *= v**e
    return result


def count_from_model(model: UnivariateModel, *, is_circuit: bool = True) -> CountResult:
    """Count solutions of g = 1 inside delta for an existing model."""
    note = "circuit bijection" if is_circuit else "pyramid support: per circuit-case theorem"
    if model.delta is None:
        return CountResult(kind="no_positive_solutions", distinct=0, with_multiplicity=0,
                           reason="delta_empty")
    lo, hi = model.delta
    if model.h.is_zero:
        sample = _interior_point(model.delta)
        if evaluate_g(model, sample) == 1:
            return CountResult(kind="infinite")
        return CountResult(kind="finite", distinct=0, with_multiplicity=0,
                           multiplicity_note=note)
    distinct, with_mult = count_roots_in_interval(model.h, lo, hi)
    return CountResult(kind="finite", distinct=distinct, with_multiplicity=with_mult,
                       multiplicity_note=note)


def count_positive_solutions(config: ExponentConfig, C: CoefficientMatrix) -> CountResult:
    """Exact number of solutions with all coordinates positive.

    Returns no-positive-solutions when the necessary halfplane condition
    fails, "infinite" when the product function is identically 1 on a
    nonempty interval, and exact (distinct, with multiplicity) counts
    otherwise.
    """
    if C.n != config.n:
        raise DimensionError("coefficient matrix dimension does not match configuration")
    profile = circuit_profile(config)
    g = gale_dual(C)
    if not g.halfspace_ok:
        return CountResult(kind="no_positive_solutions", distinct=0, with_multiplicity=0,
                           reason="halfspace_fails")
    g = ordering(g)
    model = reduce_to_univariate(config, C, g)
    return count_from_model(model, is_circuit=profile.is_circuit)
