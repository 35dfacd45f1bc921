import json
from fractions import Fraction

from chinos.fock import FockPoly
from chinos.formats import (
    distribution_json,
    exact_float,
    fock_json,
    parse_exact,
    render_csv,
    render_markdown,
)
from chinos.scalars import INV_SQRT2, QuadScalar


class TestExactFloat:
    def test_fraction_field(self):
        payload = exact_float(Fraction(11, 21))
        assert payload == {"exact": "11/21", "float": 11 / 21}
        assert parse_exact(payload) == Fraction(11, 21)

    def test_rational_quad_collapses_to_fraction_string(self):
        payload = exact_float(QuadScalar(Fraction(7, 4)))
        assert payload["exact"] == "7/4"

    def test_irrational_quad_keeps_components(self):
        payload = exact_float(INV_SQRT2)
        assert payload["exact"] == {"a": "0/1", "b": "1/2"}
        assert parse_exact(payload) == INV_SQRT2

    def test_float_only(self):
        payload = exact_float(0.25)
        assert payload == {"exact": None, "float": 0.25}
        assert parse_exact(payload) == 0.25

    def test_round_trip_through_json_text(self):
        for value in [Fraction(1, 3), QuadScalar(1, -1), Fraction(0)]:
            payload = json.loads(json.dumps(exact_float(value)))
            assert parse_exact(payload) == value


class TestFockJson:
    def test_monomial_plus_number_views(self):
        state = FockPoly.from_coeffs([Fraction(1, 2), 1, Fraction(1, 2)])
        payload = fock_json(state)
        assert payload["monomial"]["basis"] == "monomial"
        assert payload["monomial"]["coeffs"][0] == {"a": "1/2", "b": "0/1"}
        import math

        assert payload["number"]["normalized"][1] == pytest_approx(2 / math.sqrt(7))

    def test_distribution_json(self):
        rendered = distribution_json((Fraction(1, 3), Fraction(0), Fraction(2, 3)))
        assert [p["exact"] for p in rendered] == ["1/3", "0/1", "2/3"]


def pytest_approx(x, tol=1e-12):
    import pytest

    return pytest.approx(x, abs=tol)


class TestTabular:
    def test_csv(self):
        out = render_csv(["a", "b"], [["1/2", "x"], ["3", "y"]])
        assert out.splitlines() == ["a,b", "1/2,x", "3,y"]

    def test_markdown(self):
        out = render_markdown(["h1", "h2"], [["v1", "v2"]])
        assert out.splitlines()[0] == "| h1 | h2 |"
        assert out.splitlines()[2] == "| v1 | v2 |"
