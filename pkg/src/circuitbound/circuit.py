"""Structure of the exponent configuration.

An instance's support is a set of n+2 integer points in Z^n whose lifted
matrix (a row of ones over the point coordinates) has full rank n+1.  The
kernel of that matrix is one-dimensional; its canonical generator, read off
signed maximal minors, drives everything else: index, signature, normalized
volumes, and the circuit / pyramid / Cayley trichotomy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionError, PreconditionError
from .gale import CoefficientMatrix, coefficient_matrix
from .linalg import Matrix, bareiss_determinant, int_matrix

CAYLEY_ENUM_LIMIT = 20  # subset enumeration guard; 2^(n+1) subsets


@dataclass(frozen=True)
class ExponentConfig:
    """n+2 integer exponent vectors together with their lifted matrix."""

    n: int
    points: tuple[tuple[int, ...], ...]
    lifted: Matrix

    def translated(self, shift) -> "ExponentConfig":
        shift = tuple(shift)
        if len(shift) != self.n:
            raise DimensionError("translation vector has wrong length")
        return exponent_config([tuple(w + s for w, s in zip(p, shift)) for p in self.points])


def exponent_config(points) -> ExponentConfig:
    """Validate and build an ExponentConfig from n+2 points in Z^n."""
    pts = tuple(tuple(p) for p in points)
    if not pts:
        raise DimensionError("empty point configuration")
    n = len(pts[0])
    if len(pts) != n + 2:
        raise DimensionError(f"expected {n + 2} points in dimension {n}, got {len(pts)}")
    for p in pts:
        if len(p) != n:
            raise DimensionError("points of mixed dimension")
        for x in p:
            if not isinstance(x, int):
                raise TypeError(f"integer exponent expected, got {x!r}")
    if len(set(pts)) != len(pts):
        raise PreconditionError("exponent vectors must be distinct")
    lifted = int_matrix([[1] * (n + 2)] + [[p[i] for p in pts] for i in range(n)])
    if lifted.rank() != n + 1:
        raise PreconditionError(
            "configuration is degenerate: lifted exponent matrix must have rank n+1"
        )
    return ExponentConfig(n=n, points=pts, lifted=lifted)


@dataclass(frozen=True)
class CircuitProfile:
    """Combinatorial invariants derived from the affine relation."""

    lam: tuple[int, ...]
    lam_primitive: tuple[int, ...]
    index: int
    a_plus: int
    a_minus: int
    sigma: int
    vol_z: int
    vol_za: int
    is_circuit: bool
    zero_support: tuple[int, ...]
    has_cayley: bool

    @property
    def signature(self) -> tuple[int, int]:
        return (self.a_plus, self.a_minus)


def _lifted_int_rows(config: ExponentConfig) -> list[list[int]]:
    return [[int(x) for x in row] for row in config.lifted.data]


def lambda_of(config: ExponentConfig) -> tuple[int, ...]:
    """The kernel generator with entries (-1)^(l+1) det(A(l)).

    A(l) is the lifted matrix with column l removed.  The result is an
    integer vector with A @ lam = 0 and coordinate sum zero.
    """
    rows = _lifted_int_rows(config)
    m = config.n + 2
    lam = []
    for drop in range(m):
        minor = [[row[j] for j in range(m) if j != drop] for row in rows]
        d = bareiss_determinant(minor)
        lam.append(-d if drop % 2 == 0 else d)
    return tuple(lam)


def subset_sum_zero_exists(lam) -> bool:
    """True iff some proper nonempty index subset of lam sums to zero.

    Since the total sum is zero, a qualifying subset exists iff one avoiding
    index 0 exists, so only 2^(len-1)-1 subsets need checking.
    """
    rest = list(lam[1:])
    m = len(rest)
    if m > CAYLEY_ENUM_LIMIT + 1:
        raise PreconditionError(f"Cayley enumeration guarded to {CAYLEY_ENUM_LIMIT + 1} points")
    for mask in range(1, 1 << m):
        total = 0
        mm = mask
        i = 0
        while mm:
            if mm & 1:
                total += rest[i]
            mm >>= 1
            i += 1
        if total == 0:
            return True
    return False


def circuit_profile(config: ExponentConfig) -> CircuitProfile:
    lam = lambda_of(config)
    index = 0
    for v in lam:
        index = gcd(index, abs(v))
    if index == 0:
        raise PreconditionError("affine relation vanished; configuration degenerate")
    lam_primitive = tuple(v // index for v in lam)
    a_plus = sum(1 for v in lam if v > 0)
    a_minus = sum(1 for v in lam if v < 0)
    zero_support = tuple(j for j, v in enumerate(lam) if v == 0)
    vol_z = sum(v for v in lam if v > 0)
    return CircuitProfile(
        lam=lam,
        lam_primitive=lam_primitive,
        index=index,
        a_plus=a_plus,
        a_minus=a_minus,
        sigma=min(a_plus, a_minus),
        vol_z=vol_z,
        vol_za=vol_z // index,
        is_circuit=not zero_support,
        zero_support=zero_support,
        has_cayley=subset_sum_zero_exists(lam),
    )


# ---------------------------------------------------------------------------
# Pyramid reduction


@dataclass(frozen=True)
class PyramidReduction:
    """Outcome of the pyramid reduction.

    kind is one of "not_pyramid", "reduced", "degenerate".  For "reduced",
    the reduced instance (config, C, m) is populated and satisfies: the
    positive-solution count of the original is at most that of the reduction.
    """

    kind: str
    config: ExponentConfig | None = None
    C: CoefficientMatrix | None = None
    m: int | None = None


def _hnf_column_basis(vectors: list[tuple[int, ...]], dim: int) -> list[list[int]]:
    """Basis of the lattice generated by integer vectors (column-style HNF)."""
    cols = [list(v) for v in vectors]
    basis: list[list[int]] = []
    for row in range(dim):
        nonzero = [c for c in cols if c[row] != 0]
        rest = [c for c in cols if c[row] == 0]
        while len(nonzero) > 1:
            nonzero.sort(key=lambda c: abs(c[row]))
            small = nonzero[0]
            for k in range(1, len(nonzero)):
                q = nonzero[k][row] // small[row]
                nonzero[k] = [x - q * y for x, y in zip(nonzero[k], small)]
            keep = [small] + [c for c in nonzero[1:] if c[row] != 0]
            rest.extend(c for c in nonzero[1:] if c[row] == 0 and any(c))
            nonzero = keep
        if nonzero:
            pivot = nonzero[0]
            if pivot[row] < 0:
                pivot = [-x for x in pivot]
            basis.append(pivot)
            reduced = []
            for c in rest:
                reduced.append(c)
            cols = reduced
        else:
            cols = rest
    return basis


def _coordinates_in_basis(vec: tuple[int, ...], basis: list[list[int]]) -> tuple[int, ...]:
    """Integer coordinates of vec in a triangular lattice basis."""
    v = list(vec)
    coords = [0] * len(basis)
    for idx, b in enumerate(basis):
        row = next(i for i, x in enumerate(b) if x != 0)
        q, r = divmod(v[row], b[row])
        if r:
            raise ArithmeticError("vector not in lattice span")
        coords[idx] = q
        v = [x - q * y for x, y in zip(v, b)]
    if any(v):
        raise ArithmeticError("vector not in lattice span")
    return tuple(coords)


def reduce_pyramid(config: ExponentConfig, C: CoefficientMatrix) -> PyramidReduction:
    """Reduce a pyramidal configuration to its underlying circuit.

    Let Z be the zero support of the affine relation and m = n - |Z|.  When
    the columns of C indexed by Z are independent, row operations turn them
    into unit vectors supported on the last |Z| rows; the top-left block on
    the remaining columns is an m x (m+2) system supported on the circuit,
    re-embedded in Z^m via a lattice basis of the circuit's affine span.
    When those columns are dependent the original system has either no
    positive solutions or infinitely many, and "degenerate" is returned.
    """
    profile = circuit_profile(config)
    if C.n != config.n:
        raise DimensionError("coefficient matrix dimension does not match configuration")
    if profile.is_circuit:
        return PyramidReduction(kind="not_pyramid")
    zero = list(profile.zero_support)
    keep = [j for j in range(config.n + 2) if j not in profile.zero_support]
    m = config.n - len(zero)
    sub = Matrix([[C.mat[i, j] for j in zero] for i in range(C.n)])
    if sub.rank() < len(zero):
        return PyramidReduction(kind="degenerate")
    # Row-reduce so the Z-columns become unit vectors in the trailing rows.
    red, pivots = Matrix(
        [list(sub.row(i)) + list(C.mat.row(i)) for i in range(C.n)]
    ).rref()
    # Rows without a pivot in the Z-block carry the reduced system.
    zwidth = len(zero)
    top_rows = [i for i in range(C.n) if not any(red[i, j] != 0 for j in range(zwidth))]
    if len(top_rows) != m:
        raise ArithmeticError("pyramid normal form has unexpected shape")
    reduced_rows = [[red[i, zwidth + j] for j in keep] for i in top_rows]

    base = config.points[keep[0]]
    diffs = [tuple(x - b for x, b in zip(config.points[j], base)) for j in keep[1:]]
    basis = _hnf_column_basis(diffs, config.n)
    if len(basis) != m:
        raise ArithmeticError("circuit affine span has unexpected dimension")
    new_points = [tuple([0] * m)] + [_coordinates_in_basis(d, basis) for d in diffs]
    return PyramidReduction(
        kind="reduced",
        config=exponent_config(new_points),
        C=coefficient_matrix(reduced_rows),
        m=m,
    )
