from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from delaymoments.algebra import (
    ExactDivisionError,
    PoleError,
    Polynomial,
    RationalFunction,
    SeriesOrderError,
    TruncatedSeries,
    VAR_GAMMA,
    VAR_INV_M,
    VariableMismatchError,
    laurent_expand_inverse_power,
    polynomial_gcd,
)


def pm(*coeffs):
    return Polynomial("M", coeffs)


def pg(*coeffs):
    return Polynomial("g", coeffs)


small_fraction = st.fractions(min_value=-4, max_value=4, max_denominator=6)
small_poly = st.builds(lambda cs: pm(*cs),
                       st.lists(small_fraction, min_size=0, max_size=5))


class TestPolynomial:
    def test_basic_shape(self):
        p = pm(1, 0, 3)
        assert p.degree == 2 and p.coefficient(1) == 0
        assert pm().is_zero and pm().degree == -1
        assert pm(0, 0).is_zero

    def test_division_examples(self):
        q = pm(-1, 0, 1).exact_div(pm(-1, 1))
        assert q == pm(1, 1)
        with pytest.raises(ExactDivisionError):
            pm(1, 0, 1).exact_div(pm(-1, 1))

    def test_gcd_example(self):
        g = polynomial_gcd(pm(-1, 0, 1), pm(1, -2, 1))
        assert g == pm(-1, 1)

    def test_evaluate(self):
        assert pg(1, 1).__pow__(4).evaluate(1) == 16
        assert pm(2, -1).evaluate(Fraction(1, 2)) == Fraction(3, 2)

    def test_symbol_mixing_rejected(self):
        with pytest.raises(VariableMismatchError):
            pm(1, 1) * pg(1, 1)

    def test_str(self):
        assert str(pm(4, 0, -5, 0, 1)) == "M^4-5M^2+4"
        assert str(pg(0, -1)) == "-g"
        assert str(pm()) == "0"

    @given(a=small_poly, b=small_poly, c=small_poly)
    @settings(max_examples=60)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a + b == b + a

    @given(a=small_poly, b=small_poly)
    @settings(max_examples=60)
    def test_divmod_invariant(self, a, b):
        if b.is_zero:
            return
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree


class TestRationalFunction:
    def test_normalization(self):
        r = RationalFunction(pm(0, 2), pm(0, 0, 4))
        assert r.num == pm(Fraction(1, 2)) and r.den == pm(0, 1)
        again = RationalFunction(r.num, r.den)
        assert again == r

    def test_zero(self):
        z = RationalFunction(pm(), pm(3, 7))
        assert z.is_zero and z.den == pm(1)

    def test_arithmetic(self):
        a = RationalFunction(pm(1), pm(-1, 1))
        b = RationalFunction(pm(1), pm(1, 1))
        s = a + b
        assert s == RationalFunction(pm(0, 2), pm(-1, 0, 1))
        assert a * b == RationalFunction(pm(1), pm(-1, 0, 1))
        assert (a / b) == RationalFunction(pm(1, 1), pm(-1, 1))
        assert a - a == RationalFunction.constant("M", 0)

    def test_pow_negative(self):
        r = RationalFunction(pg(0, 1))
        assert r**-3 == RationalFunction(pg(1), pg(0, 0, 0, 1))

    def test_evaluate_and_pole(self):
        r = RationalFunction(pm(2), pm(-4, 0, 1))
        assert r.evaluate(4) == Fraction(1, 6)
        with pytest.raises(PoleError) as err:
            r.evaluate(2)
        assert "M^2-4" in str(err.value)

    def test_rendering(self):
        r = RationalFunction(pg(2, 0, 1), pg(1, 1) ** 6)
        assert str(r) == "(g^2+2)/(1+g)^6"
        assert r.latex() == r"\frac{\gamma^{2}+2}{(1+\gamma)^{6}}"
        s = RationalFunction(pm(0, 0, -12), pm(-1, 0, 1) * pm(-4, 0, 1))
        assert str(s) == "-12M^2/(M^2-1)(M^2-4)"
        t = RationalFunction(pm(-1, 0, -1), pm(0, 0, 1))
        assert str(t) == "-(M^2+1)/M^2"

    def test_integer_form(self):
        r = RationalFunction(pm(0, Fraction(3, 2)), pm(1, Fraction(1, 2)))
        num, den = r.integer_form()
        assert num == [0, 3] and den == [2, 1]

    @given(a=small_poly, b=small_poly, c=small_poly, d=small_poly)
    @settings(max_examples=40)
    def test_field_axioms(self, a, b, c, d):
        if b.is_zero or d.is_zero:
            return
        x = RationalFunction(a, b)
        y = RationalFunction(c, d)
        assert x + y == y + x
        assert (x + y) - y == x
        if not y.is_zero:
            assert (x / y) * y == x


def series(variable, coeffs, order, **kw):
    return TruncatedSeries(variable, coeffs, order, **kw)


class TestTruncatedSeries:
    def test_square_of_alternating(self):
        s = series(VAR_GAMMA, {0: 1, 1: -1, 2: 1}, 2)
        sq = s * s
        assert sq.order == 2
        assert sq.coefficient(0) == RationalFunction.constant("M", 1)
        assert sq.coefficient(1) == RationalFunction.constant("M", -2)
        assert sq.coefficient(2) == RationalFunction.constant("M", 3)
        with pytest.raises(SeriesOrderError):
            sq.coefficient(3)

    def test_shift_power(self):
        s = series(VAR_GAMMA, {0: 1, 1: 1}, 1)
        shifted = s.shift_power(-2)
        assert shifted.min_power == -2 and shifted.order == -1
        assert shifted.coefficient(-2) == RationalFunction.constant("M", 1)

    def test_variable_mixing_rejected(self):
        a = series(VAR_GAMMA, {0: 1}, 1)
        b = series(VAR_INV_M, {0: 1}, 1)
        with pytest.raises(VariableMismatchError):
            a + b

    def test_order_propagation_in_product(self):
        a = series(VAR_GAMMA, {1: 1}, 3)          # x + O(x^4)
        b = series(VAR_GAMMA, {0: 1, 1: 1}, 2)    # 1 + x + O(x^3)
        prod = a * b
        assert prod.order == 3 and prod.min_power == 1

    def test_truncate_cannot_extend(self):
        s = series(VAR_GAMMA, {0: 1}, 2)
        assert s.truncate(1).order == 1
        with pytest.raises(SeriesOrderError):
            s.truncate(5)

    def test_laurent_expansion(self):
        p = Polynomial("M", (0, 0, 1))
        s = laurent_expand_inverse_power(p, 3, 10)
        assert s.terms() == [(1, RationalFunction.constant("g", 1))]
        q = Polynomial("M", (0, 1, 1))
        s = laurent_expand_inverse_power(q, 2, 10)
        assert [(0, "1"), (1, "1")] == [(p_, str(c)) for p_, c in s.terms()]
        s = laurent_expand_inverse_power(p, 1, 10)
        assert s.min_power == -1

    def test_times_m_polynomial(self):
        s = laurent_expand_inverse_power(Polynomial("M", (1,)), 0, 6)
        shifted = s.times_m_polynomial(Polynomial("M", (0, 0, 1)))
        assert shifted.min_power == -2 and shifted.order == 4
        assert shifted.coefficient(-2) == RationalFunction.constant("g", 1)

    def test_evaluate(self):
        s = series(VAR_INV_M, {0: RationalFunction(pg(1), pg(1, 1)), 2: 1}, 2)
        value = s.evaluate(2, 1)
        assert value == Fraction(1, 2) + Fraction(1, 4)

    @given(acoeffs=st.lists(small_fraction, min_size=1, max_size=4),
           bcoeffs=st.lists(small_fraction, min_size=1, max_size=4),
           x=st.fractions(min_value=Fraction(-1, 8), max_value=Fraction(1, 8),
                          max_denominator=16))
    @settings(max_examples=40)
    def test_product_matches_evaluation_up_to_tail(self, acoeffs, bcoeffs, x):
        order = max(len(acoeffs), len(bcoeffs)) - 1
        a = series(VAR_GAMMA, dict(enumerate(acoeffs)), order)
        b = series(VAR_GAMMA, dict(enumerate(bcoeffs)), order)
        prod = a * b
        lhs = prod.evaluate(1, x)
        rhs = a.evaluate(1, x) * b.evaluate(1, x)
        bound_const = (sum(abs(c) for c in acoeffs)
                       * sum(abs(c) for c in bcoeffs)) * 2
        assert abs(lhs - rhs) <= bound_const * abs(x) ** (prod.order + 1)

    def test_conservative_recomputation(self):
        low = series(VAR_GAMMA, {0: 1, 1: 2, 2: 3}, 2)
        high = series(VAR_GAMMA, {0: 1, 1: 2, 2: 3, 3: 4}, 3)
        for p in range(0, 3):
            assert low.coefficient(p) == high.coefficient(p)

    def test_normalization_idempotence(self):
        s = series(VAR_INV_M, {-1: RationalFunction(pg(0, 2), pg(0, 0, 4)),
                               2: 5}, 3)
        again = TruncatedSeries(s.variable, s.coeffs, s.order, s.min_power)
        assert again == s and again.min_power == s.min_power
        r = RationalFunction(pm(0, 2), pm(0, 0, 4))
        assert RationalFunction(r.num, r.den) == r
        p = pm(1, 2, 0, 0)
        assert Polynomial("M", p.coeffs) == p
