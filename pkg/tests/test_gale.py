import random
from fractions import Fraction as F

import pytest

from circuitbound.circuit import circuit_profile, exponent_config
from circuitbound.errors import DimensionError, PreconditionError
from circuitbound.forge import family_prs
from conftest import make_instance
from circuitbound.gale import (
    coefficient_matrix,
    gale_dual,
    ordering,
    s_alpha,
    verify_ordering_certificate,
)
from circuitbound.linalg import Matrix, det_after_dropping

from oracles import positive_combination_zero_exists


def noparity_gale_rows():
    return [(1, 0), (1, 0), (3, F(21, 8)), (1, 1), (0, 1)]


def make_gale(rows):
    from circuitbound.forge import coefficients_from_gale

    return coefficients_from_gale(rows)


class TestGaleDual:
    def test_kernel_and_rank(self):
        C = coefficient_matrix([[1, -3, 2]])
        g = gale_dual(C)
        assert (C.mat @ g.B).is_zero()
        assert g.B.rank() == 2

    def test_trinomial_matches_paper_gale_up_to_basis_change(self):
        rng = random.Random(4)
        for _ in range(25):
            c = [rng.choice([-1, 1]) * rng.randint(1, 9) for _ in range(3)]
            C = coefficient_matrix([c])
            g = gale_dual(C)
            reference = [(c[1], c[2]), (-c[0], 0), (0, -c[0])]
            # one common invertible transform maps the reference rows to ours
            m = Matrix([[F(x) for x in reference[1]], [F(x) for x in reference[2]]])
            rhs = Matrix([list(g.P[1]), list(g.P[2])])
            det = m.det()
            assert det != 0
            inv = Matrix(
                [
                    [m[1, 1] / det, -m[0, 1] / det],
                    [-m[1, 0] / det, m[0, 0] / det],
                ]
            )
            t = inv @ rhs
            mapped0 = (
                reference[0][0] * t[0, 0] + reference[0][1] * t[1, 0],
                reference[0][0] * t[0, 1] + reference[0][1] * t[1, 1],
            )
            assert mapped0 == g.P[0]
            assert t.det() != 0

    def test_all_positive_row_has_no_halfplane(self):
        assert not gale_dual(coefficient_matrix([[1, 1, 1]])).halfspace_ok

    def test_family_gale_rows_satisfy_kernel_identity(self):
        eps = F(1, 4)
        for n in (2, 3, 4):
            inst = family_prs(n, eps)
            rows = [(F(1), F(0)), (eps, F(1))]
            rows += [(F(1), eps ** (2 * i - 3)) for i in range(2, n + 1)]
            rows.append((F(0), F(1)))
            B = Matrix(rows)
            assert (inst.C.mat @ B).is_zero()

    def test_halfspace_flag_matches_gordan_certificate(self):
        rng = random.Random(51)
        for trial in range(120):
            n = rng.randint(1, 3)
            inst = make_instance(n, seed=1000 + trial, require_halfspace=False)
            g = gale_dual(inst.C)
            assert g.halfspace_ok == (not positive_combination_zero_exists(g.P))
            if g.halfspace_ok:
                mu = g.witness
                assert all(p[0] * mu[0] + p[1] * mu[1] > 0 for p in g.P)
                assert mu[0] > 0  # orientation: (1, y) cuts the open cone

    def test_rank_deficient_rejected(self):
        with pytest.raises(PreconditionError):
            coefficient_matrix([[1, 2, 1, 0], [2, 4, 2, 0]])


class TestOrdering:
    def test_family_ordering_and_uniformity(self):
        eps = F(1, 4)
        for n in (2, 3, 4, 5):
            inst = family_prs(n, eps)
            g = ordering(gale_dual(inst.C))
            expected = tuple([0] + list(range(n, 0, -1)) + [n + 1])
            assert g.alpha == expected
            assert g.k == n + 2  # uniform
            assert g.reps == expected

    def test_noparity_classes(self):
        C = make_gale(noparity_gale_rows())
        g = ordering(gale_dual(C))
        assert g.k == 4
        assert g.reps == (0, 2, 3, 4)
        assert g.classes[0] == (0, 1)

    def test_zero_column_gives_two_classes(self):
        C = coefficient_matrix([[0, 1, -1]])
        g = ordering(gale_dual(C))
        assert g.k == 2
        sizes = sorted(len(c) for c in g.classes)
        assert sizes == [1, 2]

    def test_canonical_direction(self):
        rng = random.Random(61)
        for trial in range(40):
            inst = make_instance(rng.randint(1, 3), seed=3000 + trial)
            g = ordering(gale_dual(inst.C))
            for i in range(g.k):
                for j in range(i + 1, g.k):
                    pi, pj = g.P[g.reps[i]], g.P[g.reps[j]]
                    assert pi[0] * pj[1] - pi[1] * pj[0] > 0

    def test_ordering_requires_halfspace(self):
        with pytest.raises(PreconditionError):
            ordering(gale_dual(coefficient_matrix([[1, 1, 1]])))

    def test_class_membership_matches_vanishing_minors(self):
        rng = random.Random(71)
        for trial in range(40):
            n = rng.randint(1, 3)
            inst = make_instance(n, seed=5000 + trial)
            g = ordering(gale_dual(inst.C))
            for j, cls in enumerate(g.classes):
                rep = g.reps[j]
                for l in range(n + 2):
                    in_class = l in cls
                    if l == rep:
                        assert in_class
                        continue
                    vanishes = det_after_dropping(inst.C.mat, rep, l) == 0
                    assert in_class == vanishes

    def test_uniform_iff_k_max(self):
        rng = random.Random(81)
        for trial in range(40):
            n = rng.randint(1, 3)
            inst = make_instance(n, seed=7000 + trial)
            g = ordering(gale_dual(inst.C))
            uniform = all(
                det_after_dropping(inst.C.mat, i, j) != 0
                for i in range(n + 2)
                for j in range(i + 1, n + 2)
            )
            assert (g.k == n + 2) == uniform


class TestSignSequence:
    def test_family_n2_matches_ordering_reorder(self):
        # alpha = (0, 2, 1, 3) applied to the relation gives the alternating
        # sequence with variation n + 1 = 3
        inst = family_prs(2, F(1, 4))
        g = ordering(gale_dual(inst.C))
        prof = circuit_profile(inst.config)
        s = s_alpha(g, prof)
        assert s.bar_lambda in ((1, -2, 2, -1), (-1, 2, -2, 1))
        assert s.sgnvar == 3

    def test_noparity_sequence(self):
        C = make_gale(noparity_gale_rows())
        cfg = exponent_config([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 2)])
        g = ordering(gale_dual(C))
        s = s_alpha(g, circuit_profile(cfg))
        assert s.bar_lambda in ((0, 1, -2, 1), (0, -1, 2, -1))
        assert s.sgnvar == 2

    def test_trinomial_equals_classical_descartes(self):
        from circuitbound.poly import sign_variation

        rng = random.Random(91)
        for _ in range(60):
            c = [rng.choice([-1, 1]) * rng.randint(1, 9) for _ in range(3)]
            w = sorted(rng.sample(range(-6, 7), 3))
            cfg = exponent_config([(w[0],), (w[1],), (w[2],)])
            C = coefficient_matrix([c])
            g = gale_dual(C)
            classical = sign_variation(c)
            if not g.halfspace_ok:
                assert classical == 0
                continue
            s = s_alpha(ordering(g), circuit_profile(cfg))
            assert s.sgnvar == classical

    def test_sum_is_zero(self):
        rng = random.Random(101)
        for trial in range(40):
            inst = make_instance(rng.randint(1, 3), seed=9000 + trial)
            g = ordering(gale_dual(inst.C))
            s = s_alpha(g, circuit_profile(inst.config))
            assert sum(s.bar_lambda) == 0

    def test_length_mismatch_raises(self):
        inst = family_prs(2, F(1, 4))
        g = ordering(gale_dual(inst.C))
        bad = circuit_profile(exponent_config([(0,), (1,), (2,)]))
        with pytest.raises(DimensionError):
            s_alpha(g, bad)


class TestBasisChangeInvariance:
    def test_classes_and_sgnvar_stable(self):
        rng = random.Random(111)
        done = 0
        while done < 25:
            n = rng.randint(1, 3)
            inst = make_instance(n, seed=11000 + done * 7 + n)
            g = ordering(gale_dual(inst.C))
            prof = circuit_profile(inst.config)
            s = s_alpha(g, prof)
            m = [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)]
            if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
                continue
            newb = g.B @ Matrix(m)
            from dataclasses import replace

            g2 = replace(
                gale_dual(inst.C),
                B=newb,
                P=tuple((row[0], row[1]) for row in newb.data),
            )
            # the halfplane property is basis independent; reorder from scratch
            g2 = ordering(g2)
            s2 = s_alpha(g2, prof)
            assert g2.k == g.k
            assert sorted(map(sorted, g2.classes)) == sorted(map(sorted, g.classes))
            assert s2.bar_lambda in (s.bar_lambda, tuple(reversed(s.bar_lambda)))
            assert s2.sgnvar == s.sgnvar
            done += 1


class TestDetM3:
    def test_single_delta_links_minors_and_gale_dets(self):
        rng = random.Random(121)
        for trial in range(40):
            n = rng.randint(1, 3)
            inst = make_instance(n, seed=13000 + trial, require_halfspace=False)
            g = gale_dual(inst.C)
            delta = None
            for j1 in range(n + 2):
                for j2 in range(j1 + 1, n + 2):
                    minor = det_after_dropping(inst.C.mat, j1, j2)
                    pd = g.P[j1][0] * g.P[j2][1] - g.P[j1][1] * g.P[j2][0]
                    signed = pd if (j1 + j2) % 2 == 0 else -pd
                    if minor == 0:
                        assert signed == 0
                        continue
                    ratio = signed / minor
                    if delta is None:
                        delta = ratio
                    else:
                        assert ratio == delta
            assert delta is not None and delta != 0


class TestLemFirst:
    def test_consequences_of_halfplane_condition(self):
        rng = random.Random(131)
        for trial in range(40):
            n = rng.randint(1, 3)
            inst = make_instance(n, seed=15000 + trial)
            C = inst.C
            # (i) no column deletion drops the rank
            for i in range(n + 2):
                assert C.mat.drop_columns(i).rank() == n
            # (ii) every j1 has a partner j2 with nonzero maximal minor
            for j1 in range(n + 2):
                assert any(
                    det_after_dropping(C.mat, j1, j2) != 0
                    for j2 in range(n + 2)
                    if j2 != j1
                )
            # (iii) two-out-of-three property
            for j1 in range(n + 2):
                for j2 in range(n + 2):
                    if j1 == j2 or det_after_dropping(C.mat, j1, j2) == 0:
                        continue
                    for i in range(n + 2):
                        if i in (j1, j2):
                            continue
                        assert (
                            det_after_dropping(C.mat, j1, i) != 0
                            or det_after_dropping(C.mat, j2, i) != 0
                        )


class TestCertificate:
    def test_own_ordering_passes(self):
        rng = random.Random(141)
        for trial in range(30):
            inst = make_instance(rng.randint(1, 3), seed=17000 + trial)
            g = ordering(gale_dual(inst.C))
            assert verify_ordering_certificate(inst.C, g.alpha)

    def test_identity_fails_for_family_n2(self):
        inst = family_prs(2, F(1, 4))
        assert not verify_ordering_certificate(inst.C, (0, 1, 2, 3))
        g = ordering(gale_dual(inst.C))
        assert verify_ordering_certificate(inst.C, g.alpha)

    def test_trinomial_sorted_ordering(self):
        C = coefficient_matrix([[1, -3, 2]])
        g = ordering(gale_dual(C))
        assert verify_ordering_certificate(C, g.alpha)

    def test_non_permutation_rejected(self):
        C = coefficient_matrix([[1, -3, 2]])
        with pytest.raises(DimensionError):
            verify_ordering_certificate(C, (0, 0, 2))
