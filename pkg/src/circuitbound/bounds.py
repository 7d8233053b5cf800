"""Assembled upper bounds and predicates for the positive-solution count.

Bounds collected per instance: the sign-variation bound, the normalized
volume cap, their minimum, k-1 (number of ray classes less one), and the
signature bound 2*sigma (or 2*sigma - 1 when the signature is balanced).
The parity predicate applies when both extreme class sums are nonzero, and
finiteness is decided by the sign sequence being nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .circuit import CircuitProfile, ExponentConfig, circuit_profile
from .errors import DimensionError, PreconditionError
from .gale import CoefficientMatrix, GaleSystem, SignSequence
from .linalg import Matrix, bareiss_determinant, det_after_dropping


@dataclass(frozen=True)
class ParityPrediction:
    applies: bool
    expected: str | None = None  # "even" or "odd"
    reason: str | None = None  # why it does not apply


@dataclass(frozen=True)
class BoundReport:
    sgnvar_bound: int
    vol_bound: int
    combined: int
    k_minus_1: int
    signature_bound: int
    parity: ParityPrediction
    finiteness: str  # "finite" | "possibly_infinite"
    uniform: bool
    cayley_free: bool
    halfspace_ok: bool


def assemble_report(profile: CircuitProfile, g: GaleSystem, s: SignSequence) -> BoundReport:
    """Evaluate every bound for one instance.

    Requires an ordered Gale system; the profile and sign sequence must come
    from the same instance.
    """
    if not g.is_ordered:
        raise PreconditionError("assemble_report requires an ordered Gale system")
    if len(profile.lam) != len(g.P) or len(s.bar_lambda) != g.k:
        raise DimensionError("profile / Gale system / sign sequence sizes disagree")
    uniform = g.k == len(g.P)
    if s.bar_lambda[0] != 0 and s.bar_lambda[-1] != 0:
        parity = ParityPrediction(
            applies=True, expected="even" if s.sgnvar % 2 == 0 else "odd"
        )
    else:
        end = 0 if s.bar_lambda[0] == 0 else len(s.bar_lambda) - 1
        parity = ParityPrediction(
            applies=False, reason=f"extreme class sum bar_lambda[{end}] is zero"
        )
    signature_bound = 2 * profile.sigma - (1 if profile.a_plus == profile.a_minus else 0)
    return BoundReport(
        sgnvar_bound=s.sgnvar,
        vol_bound=profile.vol_za,
        combined=min(s.sgnvar, profile.vol_za),
        k_minus_1=g.k - 1,
        signature_bound=signature_bound,
        parity=parity,
        finiteness="finite" if any(s.bar_lambda) else "possibly_infinite",
        uniform=uniform,
        cayley_free=not profile.has_cayley,
        halfspace_ok=True,
    )


def finiteness_check(g: GaleSystem, s: SignSequence, d) -> bool:
    """Literal finiteness criterion for one kernel vector d.

    True iff some class representative r has d[rep_r] * bar_lambda[r] != 0.
    d must be a nonzero vector with C @ d = 0.
    """
    if not g.is_ordered:
        raise PreconditionError("finiteness_check requires an ordered Gale system")
    d = [Fraction(x) for x in d]
    if len(d) != len(g.P):
        raise DimensionError("kernel vector has wrong length")
    if all(x == 0 for x in d):
        raise PreconditionError("kernel vector must be nonzero")
    product = g.C.mat @ Matrix([[x] for x in d])
    if not product.is_zero():
        raise PreconditionError("vector is not in the kernel of C")
    return any(d[rep] * s.bar_lambda[r] != 0 for r, rep in enumerate(g.reps))


def mfrcsd_condition(config: ExponentConfig, C: CoefficientMatrix) -> bool:
    """Sign condition guaranteeing at most one positive solution.

    After translating the first exponent vector to the origin, checks
    det(A(j)) * det(C(0, j)) >= 0 for j = 1..n+1 with at least one strict
    inequality.
    """
    if C.n != config.n:
        raise DimensionError("coefficient matrix dimension does not match configuration")
    cfg = config
    if any(x != 0 for x in config.points[0]):
        cfg = config.translated([-x for x in config.points[0]])
    rows = [[int(x) for x in row] for row in cfg.lifted.data]
    m = cfg.n + 2
    strict = False
    for j in range(1, m):
        minor = [[row[t] for t in range(m) if t != j] for row in rows]
        da = bareiss_determinant(minor)
        dc = det_after_dropping(C.mat, 0, j)
        prod = da * dc
        if prod < 0:
            return False
        if prod != 0:
            strict = True
    return strict
