"""Gale-dual side of the coefficient matrix.

The kernel of the n x (n+2) coefficient matrix is a plane; its basis rows
give n+2 Gale vectors in R^2.  A positive kernel vector exists iff those
vectors fit in an open halfplane, in which case sorting them by angle yields
the column ordering, the ray classes, and the sign sequence whose variation
bounds the number of positive solutions.

All angular comparisons are exact 2D integer sign tests (cross and dot
products of primitive direction vectors); no transcendental functions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cmp_to_key
from math import gcd

from .errors import DimensionError, PreconditionError
from .linalg import Matrix, det_after_dropping
from .poly import sign_variation


@dataclass(frozen=True)
class CoefficientMatrix:
    """Exact-rational n x (n+2) coefficient matrix of full rank n."""

    n: int
    mat: Matrix


def coefficient_matrix(rows) -> CoefficientMatrix:
    mat = Matrix(rows)
    n = mat.nrows
    if mat.ncols != n + 2:
        raise DimensionError(f"expected an n x (n+2) matrix, got {n}x{mat.ncols}")
    if mat.rank() != n:
        raise PreconditionError("coefficient matrix must have full rank n")
    return CoefficientMatrix(n=n, mat=mat)


@dataclass(frozen=True)
class GaleSystem:
    """Gale dual data of a coefficient matrix.

    B has the kernel of C as column span; P holds its rows.  The ordering
    fields (alpha, classes, reps, k) are populated by ``ordering`` and are
    None until then.  When ``halfspace_ok``, the first column of B has been
    oriented so that {y : P[l][0] + P[l][1]*y > 0 for all l} is nonempty,
    and ``witness`` is an exact interior vector of the dual cone.
    """

    C: CoefficientMatrix
    B: Matrix
    P: tuple[tuple[Fraction, Fraction], ...]
    halfspace_ok: bool
    witness: tuple[Fraction, Fraction] | None = None
    alpha: tuple[int, ...] | None = None
    classes: tuple[tuple[int, ...], ...] | None = None
    reps: tuple[int, ...] | None = None
    k: int | None = None

    @property
    def is_ordered(self) -> bool:
        return self.alpha is not None


@dataclass(frozen=True)
class SignSequence:
    """Class-wise sums of the affine relation, in angular order."""

    bar_lambda: tuple[int, ...]
    sgnvar: int


def _primitive_direction(v: tuple[Fraction, Fraction]) -> tuple[int, int]:
    x, y = v
    if x == 0 and y == 0:
        return (0, 0)
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    a, b = int(x * den), int(y * den)
    g = gcd(abs(a), abs(b))
    return (a // g, b // g)


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _full_circle_cmp(u, v) -> int:
    """Exact comparison of planar directions by angle in [0, 2pi)."""

    def half(w):  # 0 for angle in [0, pi), 1 for [pi, 2pi)
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    hu, hv = half(u), half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    c = _cross(u, v)
    return 0 if c == 0 else (-1 if c > 0 else 1)


def _open_halfplane_witness(dirs) -> tuple[int, int] | None:
    """Exact interior vector of the dual cone, or None if no open halfplane.

    Distinct primitive directions are sorted around the circle; an open
    halfplane containing all of them exists iff some cyclic gap between
    consecutive directions exceeds pi, i.e. has negative cross product.
    """
    if any(d == (0, 0) for d in dirs):
        return None
    uniq = sorted(set(dirs), key=cmp_to_key(_full_circle_cmp))
    m = len(uniq)
    if m == 1:
        return uniq[0]
    for i in range(m):
        a = uniq[i]
        b = uniq[(i + 1) % m]
        if _cross(a, b) < 0:
            # every direction lies on the ccw arc from b to a (length < pi),
            # so the cone they span is cone(b, a); an interior dual vector is
            # rot_ccw90(b) + rot_cw90(a).
            return (a[1] - b[1], b[0] - a[0])
    return None


def gale_dual(C: CoefficientMatrix) -> GaleSystem:
    """Kernel basis, Gale vectors, and the halfplane feasibility test.

    When feasible, the first coordinate is oriented so that the open
    interval {y : (1, y) lies in the dual cone} is nonempty.
    """
    B = C.mat.right_kernel()
    if B.ncols != 2:
        raise PreconditionError("kernel of the coefficient matrix is not a plane")
    P = tuple((row[0], row[1]) for row in B.data)
    dirs = [_primitive_direction(v) for v in P]
    mu = _open_halfplane_witness(dirs)
    if mu is None:
        return GaleSystem(C=C, B=B, P=P, halfspace_ok=False)
    mu = (Fraction(mu[0]), Fraction(mu[1]))
    if mu[0] == 0:
        # perturb inside the open cone until the first coordinate is nonzero
        slack = [
            Fraction(_dot(p, mu)) / (-p[0]) for p in P if p[0] < 0
        ]
        t = min(slack) / 2 if slack else Fraction(1)
        mu = (t, mu[1])
    if mu[0] < 0:
        B = Matrix([[-row[0], row[1]] for row in B.data])
        P = tuple((-v0, v1) for v0, v1 in P)
        mu = (-mu[0], mu[1])
    assert all(v0 * mu[0] + v1 * mu[1] > 0 for v0, v1 in P)
    return GaleSystem(C=C, B=B, P=P, halfspace_ok=True, witness=mu)


def ordering(g: GaleSystem) -> GaleSystem:
    """Populate the angular ordering, ray classes, and representatives.

    Indices are sorted by exact angular position inside the witness
    halfplane; equal rays become one class (ascending original index), the
    class representative is its smallest index, and the orientation is the
    canonical one with det(P[rep_first], P[rep_last]) > 0.
    """
    if not g.halfspace_ok:
        raise PreconditionError("ordering requires the open-halfplane condition")
    dirs = [_primitive_direction(v) for v in g.P]

    def cmp(i: int, j: int) -> int:
        c = _cross(dirs[i], dirs[j])
        return 0 if c == 0 else (-1 if c > 0 else 1)

    alpha = sorted(range(len(g.P)), key=cmp_to_key(cmp))
    classes: list[list[int]] = []
    for idx in alpha:
        # inside an open halfplane, parallel means same primitive direction
        if classes and dirs[classes[-1][0]] == dirs[idx]:
            classes[-1].append(idx)
        else:
            classes.append([idx])
    reps = tuple(min(cl) for cl in classes)
    return replace(
        g,
        alpha=tuple(alpha),
        classes=tuple(tuple(cl) for cl in classes),
        reps=reps,
        k=len(classes),
    )


def s_alpha(g: GaleSystem, profile) -> SignSequence:
    """Sign sequence: per-class sums of the affine relation, in class order."""
    if not g.is_ordered:
        raise PreconditionError("s_alpha requires an ordered Gale system")
    lam = profile.lam
    if len(lam) != len(g.P):
        raise DimensionError("affine relation length does not match Gale system")
    bar = tuple(sum(lam[l] for l in cl) for cl in g.classes)
    return SignSequence(bar_lambda=bar, sgnvar=sign_variation(bar))


def verify_ordering_certificate(C: CoefficientMatrix, alpha) -> bool:
    """Check an ordering via signed maximal minors of C alone (no Gale dual).

    alpha is an ordering iff all the quantities
    (-1)^(alpha_i + alpha_j) * det(C(alpha_i, alpha_j)) * sign(alpha_j - alpha_i)
    over i < j share a sign (allowing zeros).
    """
    alpha = tuple(alpha)
    m = C.n + 2
    if sorted(alpha) != list(range(m)):
        raise DimensionError("alpha is not a permutation of the column indices")
    seen_pos = seen_neg = False
    for i in range(m):
        for j in range(i + 1, m):
            a, b = alpha[i], alpha[j]
            d = det_after_dropping(C.mat, a, b)
            if d == 0:
                continue
            v = d if (a + b) % 2 == 0 else -d
            if a > b:
                v = -v
            if v > 0:
                seen_pos = True
            else:
                seen_neg = True
            if seen_pos and seen_neg:
                return False
    return True
