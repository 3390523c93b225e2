from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolkerov.exactmath import (GradedPolynomial, InvalidInputError,
                                 RationalMatrix, UniPoly, apply_iota,
                                 iota_eigenvalue, matrix_rank,
                                 series_expand_at_infinity, series_inverse,
                                 series_mul, solve_exact)


class TestUniPoly:
    def test_from_roots_vanishes_at_roots(self):
        p = UniPoly.from_roots([1, -2, 5])
        assert p.degree == 3 and p.is_monic
        for r in (1, -2, 5):
            assert p(r) == 0
        assert p(0) == 10  # (-1)(2)(-5)

    def test_zero_polynomial_sentinel(self):
        z = UniPoly([0, 0])
        assert z.is_zero and z.degree == -1
        assert (z * UniPoly([1, 2])).is_zero

    def test_arithmetic(self):
        p = UniPoly([1, 1])
        q = UniPoly([-1, 1])
        assert (p * q).coeffs == (Fraction(-1), Fraction(0), Fraction(1))
        assert (p - p).is_zero
        assert (p + q).coeffs == (Fraction(0), Fraction(2),)


class TestSeriesExpansion:
    def test_constant_ratio(self):
        # z/z expands to the constant function 1
        cs = series_expand_at_infinity(UniPoly([0, 1]), UniPoly([0, 1]), 5)
        assert cs == [1, 0, 0, 0, 0, 0]

    def test_monomial_over_monomial(self):
        # (z^2 - 1)/z = z - z^{-1}
        cs = series_expand_at_infinity(UniPoly([-1, 0, 1]), UniPoly([0, 1]), 4)
        assert cs == [1, 0, -1, 0, 0]

    def test_geometric_tail(self):
        # (z^2 - z - 2)/(z - 1) = z - 2 z^{-1} - 2 z^{-2} - ...
        cs = series_expand_at_infinity(UniPoly([-2, -1, 1]), UniPoly([-1, 1]), 6)
        assert cs == [1, 0, -2, -2, -2, -2, -2]

    def test_rejects_non_monic(self):
        with pytest.raises(InvalidInputError):
            series_expand_at_infinity(UniPoly([1]), UniPoly([0, 2]), 3)

    def test_rejects_degree_gap(self):
        with pytest.raises(InvalidInputError):
            series_expand_at_infinity(UniPoly([0, 0, 0, 1]), UniPoly([0, 1]), 3)

    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=4),
           st.lists(st.integers(-3, 3), min_size=1, max_size=3, unique=True))
    def test_multiply_back(self, numer_coeffs, roots):
        numer = UniPoly(numer_coeffs)
        denom = UniPoly.from_roots(roots)
        order = 8
        if numer.degree > denom.degree + 1:
            return
        cs = series_expand_at_infinity(numer, denom, order)
        # convolving the expansion with the denominator's descending
        # coefficients must reproduce the numerator's descending coefficients
        d = [denom.coeffs[denom.degree - j] if j <= denom.degree else Fraction(0)
             for j in range(order + 1)]
        back = series_mul(cs, d, order)
        nd = numer.degree if not numer.is_zero else -1
        for j in range(order + 1 - denom.degree):
            want = numer.coeffs[nd - j] if numer.degree - j >= 0 else 0
            # alignment: back[j] is the z^(deg numer - j) coefficient
            assert back[j] == want


class TestSeriesHelpers:
    def test_inverse(self):
        inv = series_inverse([Fraction(1), Fraction(2)], 4)
        assert inv == [1, -2, 4, -8, 16]
        assert series_mul([1, 2], inv, 4) == [1, 0, 0, 0, 0]

    def test_inverse_needs_unit(self):
        with pytest.raises(InvalidInputError):
            series_inverse([Fraction(0), Fraction(1)], 2)


class TestGradedPolynomial:
    def test_construction_and_weights(self):
        p = GradedPolynomial("x", {(2, 3): 1, (4,): 1, (): 5})
        assert p.weighted_degree() == 2  # x4 has weight 2, x2*x3 weight 1
        assert p.total_degree() == 2
        assert p.support_indices() == {2, 3, 4}

    def test_zero_prints_zero(self):
        assert str(GradedPolynomial.zero("x")) == "0"
        assert GradedPolynomial("x", {(2,): 0}).is_zero

    def test_canonical_print_order(self):
        p = GradedPolynomial("x", {(2,): 1, (2, 2): 1, (4,): 1})
        assert str(p) == "x4 + x2^2 + x2"

    def test_print_coefficients_and_signs(self):
        p = GradedPolynomial("x", {(3,): -2, (): 7})
        assert str(p) == "-2*x3 + 7"

    def test_arithmetic(self):
        x2 = GradedPolynomial.variable("x", 2)
        x3 = GradedPolynomial.variable("x", 3)
        p = (x2 + 1) * (x3 - 2)
        assert p.terms == {(2, 3): 1, (2,): -2, (3,): 1, (): -2}

    def test_family_mismatch_rejected(self):
        with pytest.raises(InvalidInputError):
            GradedPolynomial.variable("x", 2) + GradedPolynomial.variable("y", 2)

    def test_substitute(self):
        p = GradedPolynomial("x", {(2, 2): 1, (3,): 2})
        assert p.substitute({2: Fraction(3), 3: Fraction(-1)}) == 7

    def test_iota_examples(self):
        x2 = GradedPolynomial.variable("x", 2)
        x3 = GradedPolynomial.variable("x", 3)
        assert apply_iota(x2 * x2 + x2) == x2 * x2 + x2
        assert apply_iota(x3) == -x3
        assert iota_eigenvalue(x3) == -1
        assert iota_eigenvalue(x2 + x3) is None

    @given(st.dictionaries(
        st.lists(st.integers(0, 6), max_size=4).map(tuple),
        st.integers(-9, 9), max_size=6))
    def test_iota_is_an_involution(self, terms):
        p = GradedPolynomial("x", terms)
        assert apply_iota(apply_iota(p)) == p


class TestSolveExact:
    def test_unique_solution(self):
        a = RationalMatrix([[1, 1], [1, -1], [2, 0]])
        res = solve_exact(a, [3, 1, 4])
        assert res.status == "ok"
        assert res.solution == (Fraction(2), Fraction(1))

    def test_rank_deficient(self):
        a = RationalMatrix([[1, 2], [2, 4], [3, 6]])
        res = solve_exact(a, [1, 2, 3])
        assert res.status == "rank_deficient"
        assert res.rank == 1 and res.solution is None

    def test_inconsistent(self):
        a = RationalMatrix([[1], [1]])
        res = solve_exact(a, [2, 3])
        assert res.status == "inconsistent"
        assert res.solution is None

    def test_underdetermined_rejected(self):
        with pytest.raises(InvalidInputError):
            solve_exact(RationalMatrix([[1, 2]]), [1])

    def test_rational_entries(self):
        a = RationalMatrix([[Fraction(1, 2), Fraction(1, 3)],
                            [Fraction(1, 5), Fraction(-1, 7)]])
        res = solve_exact(a, [Fraction(5, 6), Fraction(2, 35)])
        assert res.status == "ok"
        assert res.solution == (Fraction(1), Fraction(1))

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(
        st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                 min_size=n, max_size=n + 2),
        st.lists(st.integers(-6, 6), min_size=n, max_size=n))))
    @settings(max_examples=60)
    def test_solution_satisfies_system(self, data):
        rows, x = data
        a = RationalMatrix(rows)
        b = [sum(r[j] * x[j] for j in range(len(x))) for r in rows]
        res = solve_exact(a, b)
        assert res.status in ("ok", "rank_deficient")
        if res.status == "ok":
            for i, r in enumerate(rows):
                assert sum(r[j] * res.solution[j] for j in range(len(x))) == b[i]

    def test_matrix_rank(self):
        assert matrix_rank([[1, 2], [2, 4]]) == 1
        assert matrix_rank([[1, 0], [0, 1], [1, 1]]) == 2
        assert matrix_rank([]) == 0
