import random
from fractions import Fraction as F

import pytest

from circuitbound.circuit import (
    circuit_profile,
    exponent_config,
    lambda_of,
    reduce_pyramid,
)
from circuitbound.errors import PreconditionError
from circuitbound.gale import coefficient_matrix, gale_dual
from circuitbound.linalg import Matrix, bareiss_determinant
from circuitbound.oracle import count_positive_solutions

from oracles import brute_subset_sum_zero, cofactor_det


def lambda_by_cofactor(config):
    rows = [[int(x) for x in row] for row in config.lifted.data]
    m = config.n + 2
    out = []
    for drop in range(m):
        minor = [[row[j] for j in range(m) if j != drop] for row in rows]
        d = cofactor_det(minor)
        out.append(-d if drop % 2 == 0 else d)
    return tuple(out)


def random_config(rng, n, bound=3):
    while True:
        pts = [tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(n + 2)]
        try:
            return exponent_config(pts)
        except PreconditionError:
            continue


class TestLambda:
    def test_segment(self):
        cfg = exponent_config([(0,), (1,), (2,)])
        assert lambda_of(cfg) == (-1, 2, -1)
        assert lambda_by_cofactor(cfg) == (-1, 2, -1)

    def test_unit_square(self):
        cfg = exponent_config([(0, 0), (1, 0), (0, 1), (1, 1)])
        lam = lambda_of(cfg)
        assert lam == (1, -1, -1, 1)
        assert lambda_by_cofactor(cfg) == lam
        assert circuit_profile(cfg).vol_z == 2

    def test_family_relation_n3(self):
        cfg = exponent_config([(0, 0, 0), (1, 1, 0), (0, 1, 1), (0, 0, 1), (2, 0, 0)])
        lam = lambda_of(cfg)
        expected = (-1, 2, -2, 2, -1)
        assert lam == expected or lam == tuple(-v for v in expected)

    def test_orthogonality_and_kernel_span(self):
        rng = random.Random(31)
        for _ in range(40):
            cfg = random_config(rng, rng.randint(1, 4))
            lam = tuple(lambda_of(cfg))
            assert sum(lam) == 0
            prod = cfg.lifted @ Matrix([[v] for v in lam])
            assert prod.is_zero()
            kern = cfg.lifted.right_kernel()
            assert kern.ncols == 1
            col = kern.column(0)
            # proportional to lambda
            nz = next(i for i, v in enumerate(lam) if v != 0)
            ratio = col[nz] / lam[nz]
            assert all(col[i] == ratio * lam[i] for i in range(len(lam)))


class TestProfile:
    def test_nonsharp_circuit(self):
        # relation (1, -1, 3, -3, 1, -1): vol_ZA = 5, signature {3, 3}
        from circuitbound.forge import config_from_lambda

        cfg = config_from_lambda([1, -1, 3, -3, 1, -1])
        p = circuit_profile(cfg)
        assert p.vol_za == 5
        assert set(p.signature) == {3}
        assert p.sigma == 3
        assert p.is_circuit

    def test_simplex_plus_interior_point(self):
        for n in (2, 3, 4, 5):
            scaled = [tuple(0 for _ in range(n))]
            for i in range(n):
                e = [0] * n
                e[i] = n + 1
                scaled.append(tuple(e))
            scaled.append(tuple(1 for _ in range(n)))
            p = circuit_profile(exponent_config(scaled))
            assert sorted(p.signature) == [1, n + 1]
            assert p.sigma == 1

    def test_unit_square_profile(self):
        p = circuit_profile(exponent_config([(0, 0), (1, 0), (0, 1), (1, 1)]))
        assert p.index == 1
        assert p.vol_z == 2 and p.vol_za == 2
        assert p.has_cayley  # lambda_0 + lambda_3 = 0
        assert p.is_circuit

    def test_volume_identities_and_primitivity(self):
        from math import gcd

        rng = random.Random(8)
        for _ in range(50):
            cfg = random_config(rng, rng.randint(1, 4))
            p = circuit_profile(cfg)
            assert p.vol_z == sum(v for v in p.lam if v > 0) == -sum(v for v in p.lam if v < 0)
            assert all(v % p.index == 0 for v in p.lam)
            g = 0
            for v in p.lam_primitive:
                g = gcd(g, abs(v))
            assert g == 1
            assert p.vol_za * p.index == p.vol_z
            assert p.a_plus + p.a_minus + len(p.zero_support) == cfg.n + 2
            assert p.sigma == min(p.a_plus, p.a_minus)

    def test_cayley_matches_brute_force(self):
        rng = random.Random(13)
        for _ in range(60):
            cfg = random_config(rng, rng.randint(1, 4))
            p = circuit_profile(cfg)
            assert p.has_cayley == brute_subset_sum_zero(p.lam)

    def test_degenerate_configuration_rejected(self):
        with pytest.raises(PreconditionError):
            exponent_config([(0, 0), (1, 0), (2, 0), (3, 0)])


class TestInvariance:
    def test_translation(self):
        rng = random.Random(19)
        for _ in range(20):
            n = rng.randint(1, 3)
            cfg = random_config(rng, n)
            shift = [rng.randint(-5, 5) for _ in range(n)]
            moved = cfg.translated(shift)
            assert lambda_of(moved) == lambda_of(cfg)
            pa, pb = circuit_profile(cfg), circuit_profile(moved)
            assert (pa.signature, pa.vol_za, pa.index) == (pb.signature, pb.vol_za, pb.index)

    def test_unimodular_change(self):
        rng = random.Random(29)
        for _ in range(20):
            n = rng.randint(2, 3)
            cfg = random_config(rng, n)
            # random unimodular: product of elementary integer operations
            u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            for _ in range(4):
                i, j = rng.sample(range(n), 2)
                c = rng.randint(-2, 2)
                for t in range(n):
                    u[i][t] += c * u[j][t]
            assert abs(bareiss_determinant(u)) == 1
            pts = [tuple(sum(u[i][t] * p[t] for t in range(n)) for i in range(n)) for p in cfg.points]
            moved = exponent_config(pts)
            assert lambda_of(moved) in (lambda_of(cfg), tuple(-v for v in lambda_of(cfg)))

    def test_relabeling_permutes_lambda(self):
        rng = random.Random(37)
        for _ in range(20):
            n = rng.randint(1, 3)
            cfg = random_config(rng, n)
            perm = list(range(n + 2))
            rng.shuffle(perm)
            moved = exponent_config([cfg.points[p] for p in perm])
            lam, lam2 = lambda_of(cfg), lambda_of(moved)
            permuted = tuple(lam[p] for p in perm)
            assert lam2 == permuted or lam2 == tuple(-v for v in permuted)


def pyramid_over_square():
    # square system {x1 x2 = 1, x1 + x2 = 3} plus x3 = 5 - x1 - x2 (positive there)
    cfg = exponent_config([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (0, 0, 1)])
    C = coefficient_matrix(
        [
            [-1, 0, 0, 1, 0],
            [-3, 1, 1, 0, 0],
            [-5, 1, 1, 0, 1],
        ]
    )
    return cfg, C


class TestPyramidReduction:
    def test_circuit_is_not_pyramid(self):
        cfg = exponent_config([(0, 0), (1, 0), (0, 1), (1, 1)])
        C = coefficient_matrix([[-1, 0, 0, 1], [-3, 1, 1, 0]])
        assert reduce_pyramid(cfg, C).kind == "not_pyramid"

    def test_pyramid_over_square_reduces(self):
        cfg, C = pyramid_over_square()
        red = reduce_pyramid(cfg, C)
        assert red.kind == "reduced"
        assert red.m == 2
        assert red.config.points == ((0, 0), (1, 0), (0, 1), (1, 1))
        # reduced system is row-equivalent to {x1 x2 = 1, x1 + x2 = 3}
        expected = Matrix([[-1, 0, 0, 1], [-3, 1, 1, 0]])
        assert red.C.mat.rref()[0] == expected.rref()[0]
        # the original has x3 forced to a positive value, so counts agree here
        assert count_positive_solutions(cfg, C).with_multiplicity == 2
        assert count_positive_solutions(red.config, red.C).with_multiplicity == 2

    def test_degenerate_when_apex_column_unusable(self):
        cfg, _ = pyramid_over_square()
        C = coefficient_matrix(
            [
                [-1, 0, 0, 1, 0],
                [-3, 1, 1, 0, 0],
                [0, 1, 0, 0, 0],
            ]
        )
        assert reduce_pyramid(cfg, C).kind == "degenerate"

    def test_reduction_never_undercounts(self):
        # count(original) <= count(reduced) on random pyramids
        rng = random.Random(41)
        done = 0
        while done < 15:
            m = rng.randint(1, 2)
            base = random_config(rng, m, bound=2)
            n = m + 1
            pts = [p + (0,) for p in base.points]
            apex = tuple(rng.randint(-2, 2) for _ in range(m)) + (rng.choice([1, -1, 2]),)
            try:
                cfg = exponent_config(pts + [apex])
            except PreconditionError:
                continue
            prof = circuit_profile(cfg)
            if prof.is_circuit:
                continue
            rows = [
                [F(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(n + 2)]
                for _ in range(n)
            ]
            try:
                C = coefficient_matrix(rows)
            except PreconditionError:
                continue
            red = reduce_pyramid(cfg, C)
            if red.kind != "reduced":
                continue
            orig = count_positive_solutions(cfg, C)
            small = count_positive_solutions(red.config, red.C)
            if orig.kind == "finite" and small.kind == "finite":
                assert orig.with_multiplicity <= small.with_multiplicity
                done += 1
