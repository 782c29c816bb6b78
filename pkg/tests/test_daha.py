import itertools
import random
from fractions import Fraction

import pytest

from tyang.daha import (
    DahaModule,
    DahaParams,
    char_module,
    daha_from_json,
    daha_to_json,
    induce_pair,
    principal_series,
    restrict_to_type_a,
    sf_presentation,
    verify_daha,
    center_check,
)


def F(a, b=1):
    return Fraction(a, b)


class TestCharModules:
    def test_one_letter_value(self):
        p = DahaParams(1, 1, 2)
        c = char_module(p, 1, 1)
        assert c.y[0][0][0] == F(1)  # theta2/2
        assert verify_daha(c) is None

    def test_two_letter_values(self):
        p = DahaParams(2, 1, 2)
        assert [m[0][0] for m in char_module(p, 1, 1).y] == [F(2), F(1)]
        assert [m[0][0] for m in char_module(p, -1, 1).y] == [F(0), F(1)]

    def test_all_sign_pairs_verify(self):
        for l in (1, 2, 3):
            p = DahaParams(l, F(1, 2), F(3))
            for ss, sz in itertools.product([1, -1], repeat=2):
                assert verify_daha(char_module(p, ss, sz)) is None

    def test_parameter_sweep(self):
        rng = random.Random(4)
        for _ in range(10):
            th1 = F(rng.randint(1, 7), rng.randint(1, 3))
            th2 = F(rng.randint(1, 7), rng.randint(1, 3))
            p = DahaParams(2, th1, th2)
            for ss, sz in itertools.product([1, -1], repeat=2):
                c = char_module(p, ss, sz)
                assert verify_daha(c) is None
                assert c.y[1][0][0] == sz * th2 / 2
                assert c.y[0][0][0] == sz * th2 / 2 + ss * th1


class TestPrincipalSeries:
    def test_one_letter_matrix(self):
        p = DahaParams(1, 1, 2)
        M = principal_series(p, [F(3)])
        assert M.dim == 2
        assert M.y[0] == [[F(3), F(2)], [F(0), F(-3)]]
        assert verify_daha(M) is None

    def test_two_letter_dim_and_relations(self):
        p = DahaParams(2, 1, 2)
        M = principal_series(p, [F(3), F(1)])
        assert M.dim == 8
        assert verify_daha(M) is None

    def test_three_letter(self):
        p = DahaParams(3, 1, 2)
        M = principal_series(p, [F(3), F(1), F(-2)])
        assert M.dim == 48
        assert verify_daha(M) is None

    def test_corrupted_module_detected(self):
        p = DahaParams(2, 1, 2)
        M = principal_series(p, [F(3), F(1)])
        bad = [[x + (1 if r == c else 0) for c, x in enumerate(row)] for r, row in enumerate(M.y[1])]
        broken = DahaModule(p, M.dim, M.sigma, M.varsigma_l, [M.y[0], bad])
        assert verify_daha(broken) is not None


class TestTypeARestriction:
    def test_bc_restricts_to_a(self):
        p = DahaParams(2, 1, 2)
        M = principal_series(p, [F(3), F(1)])
        assert verify_daha(restrict_to_type_a(M)) is None


class TestSfPresentation:
    def test_one_letter_character_vanishes(self):
        p = DahaParams(1, 1, 2)
        c = char_module(p, 1, 1)
        ys, fail = sf_presentation(c)
        assert fail is None
        assert ys[0] == [[F(0)]]

    def test_principal_series_relations(self):
        p = DahaParams(2, 1, 2)
        M = principal_series(p, [F(3), F(1)])
        ys, fail = sf_presentation(M)
        assert fail is None

    def test_last_flip_anticommutes_everywhere(self):
        from tyang.superlinalg import mat_mul

        for build in (
            lambda: char_module(DahaParams(2, 1, 2), -1, 1),
            lambda: principal_series(DahaParams(2, 1, 2), [F(3), F(1)]),
        ):
            M = build()
            ys, fail = sf_presentation(M)
            assert fail is None
            z = M.varsigma_l
            lhs = mat_mul(z, ys[-1])
            rhs = mat_mul(ys[-1], z)
            assert all(
                a + b == 0 for r1, r2 in zip(lhs, rhs) for a, b in zip(r1, r2)
            )


class TestCenter:
    def test_sum_of_squares_is_central(self):
        p = DahaParams(2, 1, 2)
        M = principal_series(p, [F(3), F(1)])
        assert center_check(M, {(2, 0): 1, (0, 2): 1}) is None

    def test_linear_is_not_central(self):
        p = DahaParams(2, 1, 2)
        M = principal_series(p, [F(3), F(1)])
        assert center_check(M, {(1, 0): 1}) == "sigma_1"

    def test_constant_is_central(self):
        p = DahaParams(2, 1, 2)
        M = principal_series(p, [F(3), F(1)])
        assert center_check(M, {(0, 0): 1}) is None

    def test_three_letter_power_sum(self):
        p = DahaParams(3, 1, 2)
        M = principal_series(p, [F(3), F(1), F(-2)])
        assert center_check(M, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1}) is None


class TestInduction:
    def test_induced_pair_is_a_module(self):
        m1 = DahaModule(DahaParams(1, 1, kind="A"), 1, [], None, [[[F(5)]]])
        m2 = char_module(DahaParams(1, 1, 2), 1, 1)
        ind = induce_pair(m1, m2, DahaParams(2, 1, 2))
        assert ind.dim == 4
        assert verify_daha(ind) is None

    def test_induced_with_negative_flip(self):
        m1 = DahaModule(DahaParams(1, 1, kind="A"), 1, [], None, [[[F(-1, 2)]]])
        m2 = char_module(DahaParams(1, 1, 2), 1, -1)
        ind = induce_pair(m1, m2, DahaParams(2, 1, 2))
        assert verify_daha(ind) is None


class TestSerialization:
    def test_roundtrip(self):
        p = DahaParams(2, 1, 2)
        M = principal_series(p, [F(3), F(1)])
        back = daha_from_json(daha_to_json(M))
        assert back.sigma == M.sigma
        assert back.varsigma_l == M.varsigma_l
        assert back.y == M.y
