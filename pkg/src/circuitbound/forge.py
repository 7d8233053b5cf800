"""Construction of named instances, prescribed-data instances, and fuzz inputs.

The optimal family lives here: the n-variable system whose support is the
circuit 0, e_1+e_2, ..., e_{n-1}+e_n, e_n, 2e_1 and whose count meets the
sign-variation bound for small positive eps, together with its sign-flipped
variants realizing every intermediate count.  Instances can also be built
from a prescribed affine relation or prescribed Gale vectors, and sampled
deterministically from a seed for fuzzing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .circuit import ExponentConfig, circuit_profile, exponent_config, lambda_of
from .errors import DimensionError, GenerationError, PreconditionError
from .gale import CoefficientMatrix, coefficient_matrix, gale_dual
from .linalg import Matrix, int_matrix
from .oracle import CountResult, count_positive_solutions

DEFAULT_EXP_BOUND = 4
DEFAULT_COEFF_BOUND = 20
DEFAULT_DEN_BOUND = 4


@dataclass(frozen=True)
class Instance:
    config: ExponentConfig
    C: CoefficientMatrix
    label: str
    provenance: str


def _family_points(n: int) -> list[tuple[int, ...]]:
    zero = tuple([0] * n)
    points = [zero]
    for i in range(1, n):
        p = [0] * n
        p[i - 1] = 1
        p[i] = 1
        points.append(tuple(p))
    e_n = [0] * n
    e_n[n - 1] = 1
    points.append(tuple(e_n))
    first = [0] * n
    first[0] = 2
    points.append(tuple(first))
    return points


def family_prs(n: int, eps) -> Instance:
    """The optimal family: x_i x_{i+1} = 1 + eps^(2i-3) x_1^2 and variants.

    Equation 1 reads x_1 x_2 = eps + x_1^2 and equation n reads
    x_n = 1 + eps^(2n-3) x_1^2.  For small eps > 0 (1/4 suffices) the system
    attains the maximal count n+1.
    """
    return family_prs_modified(n, n, eps)


def family_prs_modified(n: int, r: int, eps, variant: str = "parity") -> Instance:
    """Sign-flipped family attaining count r+1.

    With variant "parity" (the default) the x_1^2 term of equation i is
    negated for every i >= r+1 with i - r odd, which realizes both the count
    r+1 and the matching sign-variation bound r+1 for small eps.  Variant
    "single" negates only equation r+1 (count r+1, but a larger bound).
    r = n returns the unmodified family.
    """
    eps = Fraction(eps)
    if n < 2:
        raise DimensionError("the family needs n >= 2")
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if not 0 <= r <= n:
        raise PreconditionError(f"r must lie in 0..{n}")
    if variant not in ("parity", "single"):
        raise PreconditionError(f"unknown variant {variant!r}")

    def flip(i: int) -> bool:
        if r == n:
            return False
        if variant == "single":
            return i == r + 1
        return i >= r + 1 and (i - r) % 2 == 1

    rows = []
    for i in range(1, n + 1):
        row = [Fraction(0)] * (n + 2)
        if i == 1:
            row[0] = -eps
            t = Fraction(1)
        else:
            row[0] = Fraction(-1)
            t = eps ** (2 * i - 3)
        row[i] = Fraction(1)
        row[n + 1] = t if flip(i) else -t
        rows.append(row)
    tag = f"prs(n={n}, eps={eps})" if r == n else f"prs_modified(n={n}, r={r}, eps={eps}, {variant})"
    return Instance(
        config=exponent_config(_family_points(n)),
        C=coefficient_matrix(rows),
        label=tag,
        provenance="built-in family",
    )


def stabilized_modified_count(
    n: int, r: int, eps_start=Fraction(1, 4), max_halvings: int = 16
) -> tuple[Instance, Fraction, CountResult]:
    """Shrink eps until the count agrees for two consecutive halvings.

    Smallness of eps is only guaranteed abstractly for the modified
    families, so the count is accepted once stable across eps and eps/2;
    returns the instance at the first eps of the stable pair.
    """
    eps = Fraction(eps_start)
    prev: tuple[Instance, CountResult] | None = None
    for _ in range(max_halvings):
        inst = family_prs_modified(n, r, eps)
        res = count_positive_solutions(inst.config, inst.C)
        if prev is not None:
            prev_inst, prev_res = prev
            if (prev_res.kind, prev_res.with_multiplicity) == (res.kind, res.with_multiplicity):
                return prev_inst, eps * 2, prev_res
        prev = (inst, res)
        eps /= 2
    raise GenerationError(f"count did not stabilize after {max_halvings} halvings of eps")


def config_from_lambda(lam) -> ExponentConfig:
    """Realize an affine relation as a concrete exponent configuration.

    Requires the coordinate sum to vanish and some entry to equal +-1 (which
    forces the relation to be primitive).  The points are 0 and the standard
    basis vectors, with the +-1-indexed point solved from the relation; the
    computed relation of the result equals the input up to global sign.
    """
    lam = tuple(int(v) for v in lam)
    if len(lam) < 3:
        raise DimensionError("affine relation needs at least 3 entries")
    if sum(lam) != 0:
        raise PreconditionError("affine relation coordinates must sum to zero")
    if not any(v != 0 for v in lam):
        raise PreconditionError("affine relation must be nonzero")
    n = len(lam) - 2
    pivot = max((j for j, v in enumerate(lam) if abs(v) == 1), default=None)
    if pivot is None:
        raise PreconditionError(
            "unsupported relation: some coordinate must equal +-1 to realize "
            "the configuration on the standard lattice"
        )
    others = [j for j in range(n + 2) if j != pivot]
    points: dict[int, tuple[int, ...]] = {others[0]: tuple([0] * n)}
    for t, j in enumerate(others[1:], start=1):
        e = [0] * n
        e[t - 1] = 1
        points[j] = tuple(e)
    solved = [0] * n
    for j in others:
        for t in range(n):
            solved[t] -= lam[j] * points[j][t]
    points[pivot] = tuple(v // lam[pivot] for v in solved)
    config = exponent_config([points[j] for j in range(n + 2)])
    got = lambda_of(config)
    assert got == lam or got == tuple(-v for v in lam)
    return config


def coefficients_from_gale(P) -> CoefficientMatrix:
    """A coefficient matrix whose Gale vectors are the prescribed planar rows.

    P must be n+2 rational pairs of rank 2; the result is a basis of the
    left orthogonal complement, so C @ P = 0 exactly.
    """
    rows = [tuple(Fraction(x) for x in p) for p in P]
    if any(len(p) != 2 for p in rows):
        raise DimensionError("Gale vectors must be planar")
    B = Matrix(rows)
    if B.rank() != 2:
        raise PreconditionError("prescribed Gale vectors must have rank 2")
    kernel = B.transpose().right_kernel()
    return coefficient_matrix([kernel.column(j) for j in range(kernel.ncols)])


def random_instance(
    n: int,
    seed: int,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
    exp_bound: int = DEFAULT_EXP_BOUND,
    require_halfspace: bool = False,
    den_bound: int = DEFAULT_DEN_BOUND,
    vol_cap: int | None = None,
    budget: int = 2000,
) -> Instance:
    """Deterministic random instance satisfying the rank conditions.

    Exponents are drawn from [-exp_bound, exp_bound]^n until the lifted
    matrix has full rank (and the normalized volume is at most vol_cap, when
    given; exact root counting cost grows quickly with the volume).
    Coefficients are rationals with numerator in [-coeff_bound, coeff_bound]
    and denominator in [1, den_bound], redrawn until C has rank n (and,
    optionally, until the halfplane condition holds).
    """
    if coeff_bound <= 0 or exp_bound <= 0 or den_bound <= 0:
        raise PreconditionError("bounds must be positive")
    rng = random.Random(seed)
    config = None
    for _ in range(budget):
        pts = [tuple(rng.randint(-exp_bound, exp_bound) for _ in range(n)) for _ in range(n + 2)]
        if len(set(pts)) != n + 2:
            continue
        lifted = int_matrix([[1] * (n + 2)] + [[p[i] for p in pts] for i in range(n)])
        if lifted.rank() != n + 1:
            continue
        candidate = exponent_config(pts)
        if vol_cap is not None and circuit_profile(candidate).vol_za > vol_cap:
            continue
        config = candidate
        break
    if config is None:
        raise GenerationError(f"no full-rank exponent configuration after {budget} draws (n={n})")
    for attempt in range(budget):
        rows = [
            [
                Fraction(rng.randint(-coeff_bound, coeff_bound), rng.randint(1, den_bound))
                for _ in range(n + 2)
            ]
            for _ in range(n)
        ]
        mat = Matrix(rows)
        if mat.rank() != n:
            continue
        C = coefficient_matrix(rows)
        if require_halfspace and not gale_dual(C).halfspace_ok:
            continue
        return Instance(
            config=config,
            C=C,
            label=f"random(n={n}, seed={seed})",
            provenance=f"seed={seed} attempt={attempt}",
        )
    raise GenerationError(
        f"no admissible coefficient matrix after {budget} draws "
        f"(n={n}, require_halfspace={require_halfspace})"
    )
