from __future__ import annotations

import random

import pytest

from folsym.cyclotomic import rat, zeta
from folsym.diagonal import (
    bezout_bound_check,
    diagonal_group,
    extremal_form_detect,
    monomial_set,
    stripped_degrees,
    verify_membership,
)
from folsym.geometry import parse_affine_form
from folsym.polynomials import Polynomial


def jouanolou_form(d):
    a = Polynomial({(d, 1): rat(1), (0, 0): rat(-1)}, 2)
    b = Polynomial({(0, d): rat(1), (d + 1, 0): rat(-1)}, 2)
    return parse_affine_form(f"(x^{d}*y - 1)dx + (y^{d} - x^{d+1})dy")


def fermat_form(d):
    return parse_affine_form(f"(y - y^{d})dx + (-x + x^{d})dy")


def brute_force_elements(omega, L):
    """All pairs of L-th roots of unity fixing the foliation."""
    out = []
    for i in range(L):
        for j in range(L):
            g = (zeta(L, i), zeta(L, j))
            if verify_membership(g, omega):
                out.append(g)
    return out


@pytest.mark.parametrize("d,expected", [(2, 7), (3, 13), (4, 21), (5, 31), (6, 43)])
def test_jouanolou_orders(d, expected):
    dg = diagonal_group(monomial_set(jouanolou_form(d)))
    assert dg.finite and dg.order == expected == d * d + d + 1


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_fermat_orders(d):
    dg = diagonal_group(monomial_set(fermat_form(d)))
    assert dg.finite and dg.order == (d - 1) ** 2


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_g_form_orders(d):
    omega = parse_affine_form(
        f"(y + y^{d} - 2*x^{d-1}*y)dx + (x + x^{d} - 2*x*y^{d-1})dy"
    )
    dg = diagonal_group(monomial_set(omega))
    assert dg.finite and dg.order == (d - 1) ** 2


def test_s_form_order():
    omega = parse_affine_form("(-x + x*y^2)dx + (y - x^2*y)dy")
    dg = diagonal_group(monomial_set(omega))
    assert dg.finite and dg.order == 4


def test_monomial_set_examples():
    m = monomial_set(fermat_form(4))
    assert set(m.monomials) == {(1, 1), (1, 4), (4, 1)}
    m2 = monomial_set(parse_affine_form("dx"))
    assert set(m2.monomials) == {(1, 0)}


def test_radial_form_infinite():
    dg = diagonal_group(monomial_set(parse_affine_form("x*dy - y*dx")))
    assert not dg.finite
    with pytest.raises(Exception):
        dg.elements()


@pytest.mark.parametrize(
    "omega",
    [jouanolou_form(2), jouanolou_form(3), jouanolou_form(4),
     fermat_form(3), fermat_form(5), fermat_form(6),
     parse_affine_form("(-x + x*y^2)dx + (y - x^2*y)dy")],
    ids=["J2", "J3", "J4", "F3", "F5", "F6", "S"],
)
def test_snf_enumeration_vs_brute_force(omega):
    dg = diagonal_group(monomial_set(omega))
    assert dg.finite and dg.order <= 200
    elems = dg.elements()
    assert len(elems) == dg.order
    assert len(set(elems)) == dg.order
    for g in elems:
        assert verify_membership(g, omega)
    L = dg.lattice.diag[1]
    brute = brute_force_elements(omega, L)
    assert set(brute) == set(elems)


def test_extremal_form_detect():
    got = extremal_form_detect(parse_affine_form("(1 + x^2*y)dx + (y^2 - x^3)dy"))
    assert got == (rat(1), rat(1), rat(1))
    assert extremal_form_detect(parse_affine_form("(1 + x^2*y)dx + (y^2 + x^3)dy")) is None


def random_form(rng, max_degree=4):
    terms_a = {}
    terms_b = {}
    for _ in range(rng.randint(1, 4)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        terms_a[(i, j)] = rat(rng.randint(1, 3))
    for _ in range(rng.randint(1, 4)):
        i = rng.randint(0, max_degree)
        j = rng.randint(0, max_degree - i)
        terms_b[(i, j)] = rat(-rng.randint(1, 3))
    from folsym.geometry import AffineOneForm

    return AffineOneForm(Polynomial(terms_a, 2), Polynomial(terms_b, 2))


def test_bezout_bound_on_random_forms():
    rng = random.Random(20240823)
    checked = 0
    while checked < 100:
        omega = random_form(rng)
        from folsym.geometry import common_factor_free

        if not common_factor_free(omega):
            continue
        m = monomial_set(omega)
        dg = diagonal_group(m)
        if not dg.finite:
            continue
        assert bezout_bound_check(dg.order, stripped_degrees(m))
        checked += 1
