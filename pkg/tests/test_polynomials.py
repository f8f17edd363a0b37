from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from folsym.cyclotomic import rat, zeta
from folsym.polynomials import (
    PolyParseError,
    Polynomial,
    exact_divide,
    parse_polynomial,
    poly_gcd,
    poly_to_str,
)

small_ints = st.integers(min_value=-5, max_value=5)


@st.composite
def polys(draw, nvars=2, max_degree=4, max_terms=5):
    n_terms = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n_terms):
        exps = tuple(
            draw(st.integers(min_value=0, max_value=max_degree))
            for _ in range(nvars)
        )
        c = draw(small_ints)
        if c:
            terms[exps] = terms.get(exps, rat(0)) + rat(c)
    return Polynomial({e: c for e, c in terms.items() if c}, nvars)


@settings(max_examples=100, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f * g) * h == f * (g * h)


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_exact_divide_inverts_product(f, g):
    if f and g:
        q = exact_divide(f * g, g)
        assert q == f


@settings(max_examples=60, deadline=None)
@given(polys())
def test_homogeneous_parts_sum(f):
    total = Polynomial.zero(2)
    for d in range(f.total_degree() + 1):
        total = total + f.homogeneous_part(d)
    if f:
        assert total == f


@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_diff_is_derivation(f, g):
    for i in range(2):
        lhs = (f * g).diff(i)
        rhs = f.diff(i) * g + f * g.diff(i)
        assert lhs == rhs


def test_eval_at():
    f = parse_polynomial("x^2*y + -3*y")
    assert f.eval_at([rat(2), rat(1)]) == rat(1)
    assert f.eval_at([zeta(4), rat(1)]) == rat(-4)


def test_compose_linear():
    f = parse_polynomial("x^2 + y^2")
    swap = [[rat(0), rat(1)], [rat(1), rat(0)]]
    assert f.compose_linear(swap) == f
    scale = [[rat(2), rat(0)], [rat(0), rat(3)]]
    assert f.compose_linear(scale) == parse_polynomial("4*x^2 + 9*y^2")


def test_gcd_common_factor():
    x = Polynomial.variable(0, 2)
    y = Polynomial.variable(1, 2)
    f = x * x * y
    g = x * y * y
    d = poly_gcd(f, g)
    assert exact_divide(f, d) is not None
    assert exact_divide(g, d) is not None
    assert d.total_degree() == 2  # x*y up to scalar


def test_parse_minus_signs():
    f = parse_polynomial("y - y^4")
    assert f == parse_polynomial("-1*y^4 + y")
    g = parse_polynomial("-x + x^4")
    assert g == parse_polynomial("x^4 + -1*x")


def test_parse_round_trip():
    texts = ["x^2*y + -3*y", "X^2*Y + Z^3", "1*zeta(3)^1*x"]
    for t in texts:
        f = parse_polynomial(t)
        assert parse_polynomial(poly_to_str(f)) == f


def test_parse_errors():
    with pytest.raises(PolyParseError):
        parse_polynomial("")
    from folsym.cyclotomic import CycloParseError

    with pytest.raises((PolyParseError, CycloParseError)):
        parse_polynomial("x + !!")
