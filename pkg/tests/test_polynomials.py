"""Polynomial grammar, calculus, and canonical printing."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from milnorbook import Polynomial, parse_map, parse_polynomial
from milnorbook.errors import PolynomialSyntaxError, UnknownVariable


class TestGrammar:
    @pytest.mark.parametrize(
        "text, n, point, value",
        [
            ("z0^2 + z1^3", 2, (2, 1), 5),
            ("z0 z1", 2, (2, 3), 6),
            ("z0*z1", 2, (2, 3), 6),
            ("3 z0^2", 1, (2,), 12),
            ("3*z0^2", 1, (2,), 12),
            ("(1+2i) z0", 1, (1,), 1 + 2j),
            ("(1-0.5i)", 1, (7,), 1 - 0.5j),
            ("-z0 + 2", 1, (3,), -1),
            ("z0 - z0", 1, (5,), 0),
            ("2.5e-1 z0", 1, (2,), 0.5),
            (".5", 1, (0,), 0.5),
            ("z0^0", 1, (9,), 1),
            ("z0 z0", 1, (3,), 9),  # exponents accumulate
        ],
    )
    def test_parse_and_evaluate(self, text, n, point, value):
        poly = parse_polynomial(text, n)
        assert poly.evaluate(point) == pytest.approx(value)

    @pytest.mark.parametrize(
        "text, n, position",
        [
            ("", 1, 0),
            ("   ", 1, 3),
            ("z0^2 +", 1, 6),
            ("z0 & z1", 2, 3),
            ("z", 1, 1),
            ("z0^", 1, 3),
            ("(1+2) z0", 1, 4),
            ("(1+2i z0", 1, 6),
            ("3*", 1, 1),  # position rewinds to the checkpoint before '*'
            ("+ + z0", 1, 2),
        ],
    )
    def test_syntax_error_positions(self, text, n, position):
        with pytest.raises(PolynomialSyntaxError) as info:
            parse_polynomial(text, n)
        assert info.value.position == position

    def test_unknown_variable_position(self):
        with pytest.raises(UnknownVariable) as info:
            parse_polynomial("z0 + z5", 2)
        assert info.value.index == 5
        assert info.value.n_vars == 2
        assert info.value.position == 5

    def test_unknown_variable_position_skips_whitespace(self):
        with pytest.raises(UnknownVariable) as info:
            parse_polynomial("  z9", 1)
        assert info.value.position == 2

    def test_zero_variables_rejected(self):
        with pytest.raises(PolynomialSyntaxError):
            parse_polynomial("1", 0)

    def test_parse_map_comma_string(self):
        components = parse_map("z0, z1^2", 2)
        assert len(components) == 2
        assert components[1].evaluate((0, 3)) == 9

    def test_parse_map_sequence(self):
        components = parse_map(["z0", "z0^3"], 1)
        assert [p.total_degree for p in components] == [1, 3]


class TestCalculus:
    def test_derivative(self):
        poly = parse_polynomial("z0^2 z1 + 3 z1", 2)
        assert poly.derivative(0) == parse_polynomial("2 z0 z1", 2)
        assert poly.derivative(1) == parse_polynomial("z0^2 + 3", 2)

    def test_derivative_bad_index(self):
        with pytest.raises(ValueError):
            parse_polynomial("z0", 1).derivative(1)

    def test_gradient(self):
        poly = parse_polynomial("z0^2 + z1^3 + z2^5", 3)
        grad = poly.gradient()
        assert grad[0] == parse_polynomial("2 z0", 3)
        assert grad[1] == parse_polynomial("3 z1^2", 3)
        assert grad[2] == parse_polynomial("5 z2^4", 3)

    def test_evaluate_batch_matches_scalar(self):
        poly = parse_polynomial("(2+1i) z0^2 z1 - z1", 2)
        points = np.array([[1 + 1j, 2.0], [0.5, -1j], [0, 0]])
        batch = poly.evaluate_batch(points)
        singles = [poly.evaluate(p) for p in points]
        assert np.allclose(batch, singles)

    def test_magnitude_bound_is_a_bound(self):
        poly = parse_polynomial("z0^2 - 2 z0 + (0+3i)", 1)
        radius = 1.5
        bound = poly.magnitude_bound(radius)
        for angle in np.linspace(0, 2 * np.pi, 17):
            z = radius * np.exp(1j * angle)
            assert abs(poly.evaluate((z,))) <= bound + 1e-12

    def test_constructors_and_properties(self):
        assert Polynomial.constant(2, 0).is_zero
        assert Polynomial.constant(2, 5).total_degree == 0
        assert Polynomial.variable(3, 1).total_degree == 1
        assert str(Polynomial.variable(3, 1)) == "z1"


coefficients = st.one_of(
    st.integers(-9, 9).map(complex),
    st.complex_numbers(
        allow_nan=False, allow_infinity=False, max_magnitude=1e6
    ),
)


@st.composite
def polynomials(draw):
    n = draw(st.integers(1, 3))
    exponents = st.tuples(*[st.integers(0, 3)] * n)
    terms = draw(st.dictionaries(exponents, coefficients, max_size=5))
    return Polynomial.from_terms(n, terms)


class TestCanonicalForm:
    @given(polynomials())
    def test_print_parse_round_trip(self, poly):
        assert parse_polynomial(str(poly), poly.n_vars) == poly

    @given(polynomials())
    def test_from_terms_is_canonical(self, poly):
        rebuilt = Polynomial.from_terms(poly.n_vars, dict(poly.terms))
        assert rebuilt == poly
        assert str(rebuilt) == str(poly)

    def test_zero_prints_and_parses(self):
        zero = Polynomial.from_terms(2, {})
        assert str(zero) == "0"
        assert parse_polynomial("0", 2) == zero

    def test_leading_negative_round_trips(self):
        poly = parse_polynomial("-2 z0 + 1", 1)
        assert str(poly) == "-2*z0 + 1"
        assert parse_polynomial(str(poly), 1) == poly

    def test_terms_sorted_by_degree(self):
        poly = parse_polynomial("1 + z0^3 + z0", 1)
        degrees = [sum(e) for e, _ in poly.terms]
        assert degrees == sorted(degrees, reverse=True)
