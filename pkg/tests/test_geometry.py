from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from folsym.cyclotomic import rat, zeta
from folsym.geometry import (
    AffineOneForm,
    FoliationError,
    HomogeneousVectorField,
    affine_form_to_str,
    affine_to_projective,
    common_factor_free,
    decompose_homogeneous,
    divergence,
    field_from_form,
    field_to_str,
    foliation_degree,
    foliation_from_pencil,
    make_divergence_free,
    monomials_of_degree,
    parse_affine_form,
    parse_field,
    pullback_affine,
    pushforward,
    same_foliation,
)
from folsym.groups import mat, mat_mul
from folsym.polynomials import Polynomial, parse_polynomial

small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def homogeneous_polys(draw, degree, nvars=2):
    monos = monomials_of_degree(degree, nvars)
    terms = {}
    for m in monos:
        c = draw(small_ints)
        if c:
            terms[m] = rat(c)
    return Polynomial(terms, nvars)


@st.composite
def homogeneous_fields(draw, degree):
    comps = []
    for _ in range(3):
        monos = monomials_of_degree(degree, 3)
        terms = {}
        for m in monos:
            c = draw(small_ints)
            if c:
                terms[m] = rat(c)
        comps.append(Polynomial(terms, 3))
    return HomogeneousVectorField(tuple(comps), degree)


def test_foliation_degree_examples():
    assert foliation_degree(parse_affine_form("(x^2*y - 1)dx + (y^2 - x^3)dy")) == (2, False)
    assert foliation_degree(parse_affine_form("(y - y^4)dx + (-x + x^4)dy")) == (4, True)
    assert foliation_degree(parse_affine_form("x*dy - y*dx")) == (0, False)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.tuples(homogeneous_polys(n), homogeneous_polys(n))))
def test_euler_relation_and_reconstruction(ab):
    # dP + Q(x dy - y dx) recovers the homogeneous form exactly
    a, b = ab
    if not a and not b:
        return
    n = max(a.total_degree(), b.total_degree())
    omega = AffineOneForm(a, b)
    p, q = decompose_homogeneous(omega, n)
    x = Polynomial.variable(0, 2)
    y = Polynomial.variable(1, 2)
    assert p.diff(0) - y * q == a
    assert p.diff(1) + x * q == b
    # Euler relation for the homogeneous potential
    if p:
        assert x * p.diff(0) + y * p.diff(1) == p * rat(n + 1)


def test_decompose_examples():
    p, q = decompose_homogeneous(parse_affine_form("x*dy - y*dx"), 1)
    assert not p and q == Polynomial.constant(rat(1), 2)
    omega = parse_affine_form("(5*x^4*y - y^5)dx + (x^5 - 5*x*y^4)dy")
    p, q = decompose_homogeneous(omega, 5)
    assert p == parse_polynomial("x^5*y - x*y^5")
    assert not q


def test_decompose_rejects_inhomogeneous():
    with pytest.raises(FoliationError):
        decompose_homogeneous(parse_affine_form("(x^2 + 1)dx + (y)dy"), 2)


@settings(max_examples=30, deadline=None)
@given(homogeneous_fields(2))
def test_make_divergence_free_posts(v):
    w = make_divergence_free(v)
    assert not divergence(w)
    # the change is a multiple of the radial field
    diffs = [v.components[i] - w.components[i] for i in range(3)]
    x, y, z = (Polynomial.variable(i, 3) for i in range(3))
    assert diffs[0] * y == diffs[1] * x
    assert diffs[0] * z == diffs[2] * x
    assert diffs[1] * z == diffs[2] * y
    # and the foliation is unchanged
    if any(v.components):
        assert same_foliation(v, w) is not None


@settings(max_examples=20, deadline=None)
@given(homogeneous_fields(2))
def test_pushforward_action_law(v):
    g = [[rat(1), rat(1), rat(0)], [rat(0), rat(1), rat(0)], [rat(2), rat(0), rat(1)]]
    h = [[rat(0), rat(1), rat(0)], [rat(1), rat(0), rat(0)], [rat(0), rat(0), rat(-1)]]
    lhs = pushforward(mat_mul(g, h), v)
    rhs = pushforward(g, pushforward(h, v))
    assert lhs.components == rhs.components


def test_pullback_examples():
    omega = parse_affine_form("(x^2*y)dx + (0)dy")
    g = [[rat(2), rat(0)], [rat(0), rat(3)]]
    pb = pullback_affine(g, omega)
    # diag(a,b) sends x^i y^j dx to a^(i+1) b^j x^i y^j dx
    assert pb.a == parse_polynomial("24*x^2*y") and not pb.b
    swap = [[rat(0), rat(1)], [rat(1), rat(0)]]
    omega2 = parse_affine_form("(x)dx + (y^2)dy")
    pb2 = pullback_affine(swap, omega2)
    assert pb2.a == parse_polynomial("x^2 + 0*y") and pb2.b == parse_polynomial("y + 0*x")


def test_common_factor_free():
    assert not common_factor_free(parse_affine_form("(x*y)dx + (x^2)dy"))
    assert common_factor_free(parse_affine_form("dx"))
    assert common_factor_free(parse_affine_form("(x)dx + (y)dy"))


def test_affine_to_projective_radial():
    h = affine_to_projective(parse_affine_form("x*dy - y*dx"))
    # X dY - Y dX up to the Z-clearing convention
    assert h.components[2] == Polynomial.zero(3)
    x = Polynomial.variable(0, 3)
    y = Polynomial.variable(1, 3)
    scale = None
    for lhs, rhs in ((h.components[0], -y), (h.components[1], x)):
        q = None
        for e, c in lhs.terms.items():
            q = c / rhs.terms[e]
        assert q is not None
        if scale is None:
            scale = q
        assert q == scale


def test_same_foliation_witness():
    v = parse_field("(1*Y^2)dX + (1*Z^2)dY + (1*X^2)dZ")
    x, y, z = (Polynomial.variable(i, 3) for i in range(3))
    p = x + y - z
    w = HomogeneousVectorField(
        tuple(v.components[i] * rat(3) + p * m for i, m in enumerate((x, y, z))), 2
    )
    alpha, pp = same_foliation(v, w)
    assert alpha == rat(3) and pp == p
    u = parse_field("(1*X^2)dX + (1*Y^2)dY + (0)dZ")
    assert same_foliation(v, u) is None


def test_field_round_trip():
    v = parse_field("(1*Y^2)dX + (1*Z^2)dY + (1*X^2)dZ")
    assert parse_field(field_to_str(v)).components == v.components
    omega = parse_affine_form("(x^2*y - 1)dx + (y^2 - x^3)dy")
    assert affine_form_to_str(parse_affine_form(affine_form_to_str(omega))) == affine_form_to_str(omega)


def test_foliation_from_pencil():
    f = parse_polynomial("X^3 + Y^3 + Z^3")
    g = parse_polynomial("X*Y*Z")
    omega = foliation_from_pencil(f, g)
    v = field_from_form(omega)
    # the pencil field is tangent to every member F + t G: v(F)*G = F*v(G)
    vf = sum((v.components[i] * f.diff(i) for i in range(3)), Polynomial.zero(3))
    vg = sum((v.components[i] * g.diff(i) for i in range(3)), Polynomial.zero(3))
    assert vf * g == f * vg
