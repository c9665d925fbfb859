from fractions import Fraction

import pytest

from polarcyl import InvalidClassError, make_surface
from polarcyl.singular import (anticanonical_on_S, canonical_on_S, discrepancy,
                               intersect_on_S, lift, pullback, pushforward,
                               qlinear_equal_S, singular_class, singular_labels)

from conftest import oracle_pairing, rand_int_class, seeded


class TestPushforward:
    def test_contracted_section_vanishes(self, m2):
        assert pushforward(m2, m2.Q).is_zero

    def test_tangent_curve_m2(self, m2):
        gamma = m2.class_for_label("Gamma")
        assert pushforward(m2, gamma).coords == tuple(
            Fraction(c) for c in [4, -1, -1, -1, -1, -1, -1])

    def test_b_class_m3(self, m3):
        b = m3.class_for_label("B")
        assert pushforward(m3, b).coords == tuple(
            Fraction(c) for c in [3, 0, 0, 0, 0, -1, -1, -1])

    def test_linear(self, m2):
        rng = seeded(3)
        a, b = rand_int_class(m2, rng), rand_int_class(m2, rng)
        assert pushforward(m2, a + b) == pushforward(m2, a) + pushforward(m2, b)

    def test_wrong_tag(self, m2):
        with pytest.raises(InvalidClassError):
            pushforward(m2, pushforward(m2, m2.F))


class TestPullback:
    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_fiber_gains_fractional_section(self, m):
        model = make_surface(m)
        fq = pushforward(model, model.F)
        assert pullback(model, fq) == model.F + Fraction(1, m) * model.Q

    def test_components_off_the_singular_point_lift_exactly(self, m3):
        e = pushforward(m3, m3.E(2))
        assert pullback(m3, e) == m3.E(2)

    def test_anticanonical_m2_roundtrip(self, m2):
        # discrepancy vanishes for m = 2, so -K pulls back to itself
        mk = -m2.canonical
        assert pullback(m2, pushforward(m2, mk)) == mk

    @pytest.mark.parametrize("m", [2, 3, 4, 7, 12])
    def test_pullback_orthogonal_to_section(self, m):
        model = make_surface(m)
        rng = seeded(m)
        for i in range(model.rank - 1):
            basis = singular_class(model, [1 if j == i else 0 for j in range(model.rank - 1)])
            assert model.intersect(pullback(model, basis), model.Q) == 0
        for _ in range(100):
            coords = [rng.randint(-9, 9) for _ in range(model.rank - 1)]
            cls = singular_class(model, coords)
            assert model.intersect(pullback(model, cls), model.Q) == 0

    def test_retraction_on_basis(self, m3):
        for i in range(m3.rank - 1):
            basis = singular_class(m3, [1 if j == i else 0 for j in range(m3.rank - 1)])
            assert pushforward(m3, pullback(m3, basis)) == basis


class TestIntersectOnS:
    def test_through_p_square_m2(self, m2):
        ep = pushforward(m2, m2.class_for_label("E1'"))
        assert intersect_on_S(m2, ep, ep) == Fraction(-1, 2)

    def test_through_p_canonical_degree_m4(self):
        model = make_surface(4)
        ep = pushforward(model, model.class_for_label("E1'"))
        assert intersect_on_S(model, ep, canonical_on_S(model)) == Fraction(-1, 2)

    def test_fiber_square_m2(self, m2):
        # oracle: (F + Q/2)^2 expanded from the defining relations
        expected = oracle_pairing(
            2, [Fraction(1, 2), 1, 0, 0, 0, 0, 0, 0], [Fraction(1, 2), 1, 0, 0, 0, 0, 0, 0])
        assert expected == Fraction(1, 2)
        fq = pushforward(m2, m2.F)
        assert intersect_on_S(m2, fq, fq) == expected

    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_away_from_p_keeps_minus_one(self, m):
        model = make_surface(m)
        e = pushforward(model, model.E(1))
        assert intersect_on_S(model, e, e) == -1

    @pytest.mark.parametrize("m", range(2, 13))
    def test_fractional_table(self, m):
        model = make_surface(m)
        k_s = canonical_on_S(model)
        for i in (1, m + 4):
            through = pushforward(model, model.class_for_label(f"E{i}'"))
            away = pushforward(model, model.E(i))
            assert intersect_on_S(model, through, through) == Fraction(-(m - 1), m)
            assert intersect_on_S(model, through, k_s) == Fraction(-2, m)
            assert intersect_on_S(model, away, away) == -1
            assert intersect_on_S(model, away, k_s) == -1

    def test_projection_formula_seeded(self, m3):
        rng = seeded(14)
        q = m3.Q
        for _ in range(300):
            a, b = rand_int_class(m3, rng), rand_int_class(m3, rng)
            lhs = intersect_on_S(m3, pushforward(m3, a), pushforward(m3, b))
            correction = m3.intersect(a, q) * m3.intersect(b, q) / m3.m
            assert lhs == m3.intersect(a, b) + correction


class TestDiscrepancy:
    def test_known_values(self):
        assert discrepancy(make_surface(2)) == 0
        assert discrepancy(make_surface(3)) == Fraction(1, 3)
        assert discrepancy(make_surface(4)) == Fraction(1, 2)

    @pytest.mark.parametrize("m", range(2, 13))
    def test_solves_orthogonality(self, m):
        model = make_surface(m)
        c = discrepancy(model)
        assert c == Fraction(m - 2, m)
        assert model.intersect(model.canonical + c * model.Q, model.Q) == 0


class TestQLinearEquivalence:
    def test_b_is_sum_of_through_p_components(self, m3):
        b = pushforward(m3, m3.class_for_label("B"))
        total = singular_class(m3, [0] * (m3.rank - 1))
        for j in range(5, m3.m + 5):
            total = total + pushforward(m3, m3.class_for_label(f"E{j}'"))
        assert qlinear_equal_S(b, total)

    def test_through_p_component_is_fiber_minus_partner(self, m2):
        for j in range(1, 7):
            ep = pushforward(m2, m2.class_for_label(f"E{j}'"))
            fq = pushforward(m2, m2.F)
            ej = pushforward(m2, m2.E(j))
            assert qlinear_equal_S(ep, fq - ej)

    def test_distinct_basis_directions(self, m2):
        e1 = pushforward(m2, m2.E(1))
        e2 = pushforward(m2, m2.E(2))
        assert not qlinear_equal_S(e1, e2)

    def test_rejects_resolution_classes(self, m2):
        with pytest.raises(InvalidClassError):
            qlinear_equal_S(m2.F, m2.F)


def test_singular_labels(m2):
    assert singular_labels(m2) == ("F", "E1", "E2", "E3", "E4", "E5", "E6")


def test_lift_has_zero_section_coordinate(m2):
    cls = singular_class(m2, [3, -1, 0, 0, 2, 0, 0])
    assert lift(m2, cls).coords[0] == 0


def test_anticanonical(m2):
    assert anticanonical_on_S(m2) == -canonical_on_S(m2)
