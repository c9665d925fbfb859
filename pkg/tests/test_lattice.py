from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polarcyl import InvalidClassError, InvalidParameterError, make_surface
from polarcyl.lattice import DivisorClass, parse_label

from conftest import (canonical_coords, oracle_chi, oracle_genus,
                      oracle_pairing, rand_int_class, rand_rational_class,
                      seeded)


class TestMakeSurface:
    def test_rank_and_canonical_square_m2(self):
        model = make_surface(2)
        assert model.rank == 8
        k = canonical_coords(2)
        expected = oracle_pairing(2, k, k)
        assert expected == 2
        assert model.intersect(model.canonical, model.canonical) == expected

    def test_canonical_class_m3(self):
        # forced by the fibration: -2Q - 5F + E1 + ... + E7, checked via adjunction
        model = make_surface(3)
        assert model.canonical.coords == tuple(Fraction(c) for c in [-2, -5, 1, 1, 1, 1, 1, 1, 1])
        assert model.arithmetic_genus(model.F) == 0
        assert model.arithmetic_genus(model.Q) == 0

    def test_small_m_rejected(self):
        with pytest.raises(InvalidParameterError):
            make_surface(1)
        with pytest.raises(InvalidParameterError):
            make_surface(0)

    def test_gram_shape(self):
        model = make_surface(4)
        g = model.gram
        assert g[0][0] == -4 and g[1][1] == 0 and g[0][1] == g[1][0] == 1
        assert all(g[k][k] == -1 for k in range(2, model.rank))
        assert all(g[i][j] == g[j][i] for i in range(model.rank) for j in range(model.rank))

    @pytest.mark.parametrize("m", range(2, 13))
    def test_signature_one_positive_eigenvalue(self, m):
        # Lagrange diagonalization over Q, independent of the library
        model = make_surface(m)
        mat = [[Fraction(x) for x in row] for row in model.gram]
        n = model.rank
        signs = []
        for k in range(n):
            if mat[k][k] == 0:
                swap = next(i for i in range(k + 1, n) if mat[k][i] != 0)
                for row in mat:
                    row[swap] += row[k]
                for j in range(n):
                    mat[swap][j] += mat[k][j]
            pivot = mat[k][k]
            signs.append(1 if pivot > 0 else -1)
            for i in range(k + 1, n):
                factor = mat[i][k] / pivot
                for j in range(n):
                    mat[i][j] -= factor * mat[k][j]
                mat[k][i] = Fraction(0)
        assert signs.count(1) == 1 and signs.count(-1) == m + 5

    def test_fiber_pair_count(self):
        model = make_surface(5)
        pairs = [(e.params[0]) for e in model.catalog if e.name == "Ei"]
        assert pairs == list(range(1, 10))


class TestIntersect:
    def test_exceptional_square_is_minus_m(self, m2):
        assert m2.intersect(m2.Q, m2.Q) == -2
        assert make_surface(7).intersect(make_surface(7).Q, make_surface(7).Q) == -7

    @pytest.mark.parametrize("m", [2, 3, 5, 9])
    def test_tangent_curve_meets_section_twice(self, m):
        model = make_surface(m)
        gamma = model.class_for_label("Gamma")
        assert model.intersect(gamma, model.Q) == 2

    def test_fiber_components_meet_once(self, m2):
        e1 = m2.E(1)
        e1p = m2.class_for_label("E1'")
        expected = oracle_pairing(2, [0, 1, -1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, 0, 0])
        assert expected == 1
        assert m2.intersect(e1p, e1) == expected

    def test_fiber_squares_to_zero(self, m2):
        assert m2.intersect(m2.F, m2.F) == 0

    def test_lattice_tag_mismatch(self, m2):
        from polarcyl.singular import pushforward
        with pytest.raises(InvalidClassError):
            m2.intersect(m2.F, pushforward(m2, m2.F))

    def test_length_mismatch(self, m2, m3):
        with pytest.raises(InvalidClassError):
            m2.intersect(m2.F, m3.F)

    def test_float_coordinates_rejected(self, m2):
        with pytest.raises(InvalidClassError):
            m2.class_from([0.5] + [0] * 7)

    @settings(max_examples=60, deadline=None)
    @given(st.integers(-30, 30), st.integers(-30, 30),
           st.fractions(max_denominator=40), st.fractions(max_denominator=40))
    def test_bilinearity_hypothesis(self, x, y, s, t):
        model = make_surface(3)
        rng = seeded(x * 1009 + y)
        a, b, c = (rand_rational_class(model, rng) for _ in range(3))
        left = model.intersect(s * a + t * b, c)
        assert left == s * model.intersect(a, c) + t * model.intersect(b, c)
        assert model.intersect(a, b) == model.intersect(b, a)


class TestRiemannRoch:
    def test_structure_sheaf(self, m2):
        assert m2.euler_characteristic(m2.zero()) == 1

    def test_tangent_zero_curve_has_chi_two(self):
        # chi = 2 means the expected dimension of the linear system is >= 1
        for m in (2, 3, 6):
            model = make_surface(m)
            gamma = model.class_for_label("Gamma")
            k = canonical_coords(m)
            expected = oracle_chi(m, list(gamma.coords), k)
            assert expected == 2
            assert model.euler_characteristic(gamma) == 2
            assert model.intersect(gamma, gamma - model.canonical) / 2 == 1

    def test_exceptional_chi(self, m2):
        e = [0, 0, 1, 0, 0, 0, 0, 0]
        assert oracle_chi(2, e, canonical_coords(2)) == 1
        assert m2.euler_characteristic(m2.E(1)) == 1

    def test_serre_symmetry_seeded(self):
        model = make_surface(4)
        rng = seeded(20)
        for _ in range(300):
            d = rand_int_class(model, rng)
            assert model.euler_characteristic(d) == \
                model.euler_characteristic(model.canonical - d)


class TestArithmeticGenus:
    def test_exceptional(self, m2):
        assert m2.arithmetic_genus(m2.E(1)) == 0

    @pytest.mark.parametrize("m", [2, 3, 4, 8])
    def test_section_and_tangent_curve(self, m):
        model = make_surface(m)
        k = canonical_coords(m)
        q = [1] + [0] * (m + 5)
        assert oracle_genus(m, q, k) == 0
        assert model.arithmetic_genus(model.Q) == 0
        gamma = model.class_for_label("Gamma")
        assert oracle_genus(m, list(gamma.coords), k) == 0
        assert model.arithmetic_genus(gamma) == 0

    @pytest.mark.parametrize("m", range(2, 13))
    def test_adjunction_grid(self, m):
        model = make_surface(m)
        assert model.arithmetic_genus(model.F) == 0
        assert model.arithmetic_genus(model.Q) == 0
        for i in range(1, m + 5):
            assert model.arithmetic_genus(model.E(i)) == 0


class TestCatalog:
    def test_b_class_m3(self):
        model = make_surface(3)
        entry = model.named_class("B")
        assert entry.cls.coords == tuple(
            Fraction(c) for c in [1, 3, 0, 0, 0, 0, -1, -1, -1])
        assert entry.self_intersection == 0
        assert entry.dot_canonical == -2

    def test_c_class_m2(self, m2):
        entry = m2.named_class("C")
        assert entry.self_intersection == -1
        assert entry.dot_canonical == -1

    def test_tangent_curve_disjoint_from_c(self, m2):
        gamma = m2.class_for_label("Gamma")
        c = m2.class_for_label("C")
        assert m2.intersect(gamma, c) == 0

    @pytest.mark.parametrize("m", range(2, 13))
    def test_profile_table(self, m):
        model = make_surface(m)
        expected = {"Gamma": (0, -2), "C": (-1, -1), "Cq": (0, -2),
                    "CqAlt": (-2, 0), "B": (0, -2)}
        for name, profile in expected.items():
            entry = model.named_class(name)
            assert (entry.self_intersection, entry.dot_canonical) == profile, name
        for i in range(1, 5):
            entry = model.named_class("EiDoublePrime", (i,))
            assert (entry.self_intersection, entry.dot_canonical) == (-1, -1)

    @pytest.mark.parametrize("m", range(2, 13))
    def test_fiber_decomposition(self, m):
        model = make_surface(m)
        for i in range(1, m + 5):
            e = model.E(i)
            ep = model.class_for_label(f"E{i}'")
            assert e + ep == model.F
            assert model.intersect(e, model.Q) == 0
            assert model.intersect(ep, model.Q) == 1

    def test_bad_names_and_indices(self, m2):
        with pytest.raises(InvalidParameterError):
            m2.named_class("Zq")
        with pytest.raises(InvalidParameterError):
            m2.named_class("Ei", (0,))
        with pytest.raises(InvalidParameterError):
            m2.named_class("Ei", (7,))
        with pytest.raises(InvalidParameterError):
            m2.named_class("Cq", (1, 1))

    def test_profile_is_computed_not_stored(self, m2):
        entry = m2.named_class("Gamma")
        assert entry.fiber_degree == m2.intersect(entry.cls, m2.F)
        assert entry.dot_exceptional == m2.intersect(entry.cls, m2.Q)

    def test_label_roundtrip(self, m2):
        for label in ("Q", "F", "Gamma", "C", "Cq", "CqAlt", "B", "E3", "E3'", "E1''"):
            cls = m2.class_for_label(label)
            assert isinstance(cls, DivisorClass)
        assert parse_label("E12''") == ("EiDoublePrime", (12,))
        assert parse_label("Gamma_q") == ("Gamma", ())
        with pytest.raises(InvalidParameterError):
            parse_label("X3")

    def test_label_for_reverse_lookup(self, m2):
        assert m2.label_for(m2.E(2)) == "E2"
        assert m2.label_for(m2.F - m2.E(3)) == "E3'"
        assert m2.label_for(m2.class_for_label("B")) == "B"
        assert m2.label_for(m2.class_from([5] + [0] * 7)) is None


class TestDivisorClassArithmetic:
    def test_vector_space_ops(self, m2):
        rng = seeded(7)
        a = rand_int_class(m2, rng)
        b = rand_int_class(m2, rng)
        assert (a + b) - b == a
        assert -(-a) == a
        assert Fraction(1, 2) * (a + a) == a
        assert (2 * a).coords == tuple(2 * c for c in a.coords)

    def test_equality_is_q_linear_equivalence(self, m2):
        a = m2.class_from([1, 2] + [0] * 6)
        b = m2.class_from([Fraction(2, 2), Fraction(4, 2)] + [0] * 6)
        assert a == b

    def test_mixed_lattice_addition_rejected(self, m2):
        from polarcyl.singular import pushforward
        with pytest.raises(InvalidClassError):
            m2.F + pushforward(m2, m2.F)
