import pytest
from hypothesis import given, settings, strategies as st

from dixmier_lab.hankel import BidegreeSymbol
from dixmier_lab.parser import (
    MAX_EXPONENT,
    ExponentOverflowError,
    SymbolSyntaxError,
    parse_power_series,
    parse_symbol,
    render,
)
from dixmier_lab.spaces import PowerSeries


def sym(text):
    return parse_symbol(text).symbol


@pytest.mark.parametrize(
    "text, terms",
    [
        ("w", {(0, 1): 1}),
        ("z*w", {(1, 1): 1}),
        ("w^2 + 3*w", {(0, 2): 1, (0, 1): 3}),
        (" w ^ 2+3 * w ", {(0, 2): 1, (0, 1): 3}),
        ("zw", {(1, 1): 1}),
        ("2.5", {(0, 0): 2.5}),
        ("2i*z", {(1, 0): 2j}),
        ("i*w", {(0, 1): 1j}),
        ("(1+2i)*z^2*w", {(2, 1): 1 + 2j}),
        ("(1-i) w^3", {(0, 3): 1 - 1j}),
        ("(-0.5)*z", {(1, 0): -0.5}),
        ("-z + z", {}),
        ("1e-3*w", {(0, 1): 1e-3}),
        ("w*z^2*w", {(2, 2): 1}),
        ("3 - w", {(0, 0): 3, (0, 1): -1}),
    ],
)
def test_parse(text, terms):
    assert sym(text) == BidegreeSymbol(terms)


@pytest.mark.parametrize(
    "text, pos",
    [("", 0), ("w^", 2), ("w^x", 2), ("2*", 2), ("(1+2i", 5), ("z + + w", 4), ("w)", 1), ("3.x", 2), ("(1+2)", 4)],
)
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(SymbolSyntaxError) as err:
        parse_symbol(text)
    assert err.value.pos == pos
    assert "position" in str(err.value)


def test_error_position_counts_whitespace():
    with pytest.raises(SymbolSyntaxError) as err:
        parse_symbol("z +   ?")
    assert err.value.pos == 6


def test_exponent_overflow():
    assert sym(f"w^{MAX_EXPONENT}").degzbar == MAX_EXPONENT
    with pytest.raises(ExponentOverflowError):
        parse_symbol(f"w^{MAX_EXPONENT + 1}")
    with pytest.raises(ExponentOverflowError):
        parse_symbol(f"w^{MAX_EXPONENT}*w")


def test_rejects_non_string():
    with pytest.raises(TypeError):
        parse_symbol(3)


finite = st.floats(-1e6, 1e6, allow_nan=False, allow_infinity=False)
terms = st.dictionaries(
    st.tuples(st.integers(0, 20), st.integers(0, 20)),
    st.builds(complex, finite, finite),
    max_size=6,
)


@settings(max_examples=200, deadline=None)
@given(terms)
def test_render_round_trip(t):
    s = BidegreeSymbol(t)
    assert sym(render(s)) == s


def test_render_examples():
    assert render(BidegreeSymbol({})) == "0"
    assert sym(render(sym("w^2 + 3*w"))) == sym("w^2 + 3*w")


def test_parse_power_series():
    assert parse_power_series("z + 0.5*z^2") == PowerSeries([0, 1, 0.5])
    assert parse_power_series("z^3 - z") == PowerSeries([0, -1, 0, 1])
    with pytest.raises(ValueError):
        parse_power_series("z*w")
