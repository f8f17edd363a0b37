from __future__ import annotations

import pytest

from folsym.cyclotomic import rat, zeta
from folsym.groups import (
    Character,
    ClosureError,
    binary_icosahedral_ext,
    binary_octahedral_ext,
    canonical_point,
    closure,
    fermat_aut,
    group_from_json,
    group_to_json,
    hessian_cover,
    hessian_projective,
    jouanolou_aut,
    linear_characters,
    mat,
    mat_inverse,
    mat_mul,
    named_group,
    orbit,
    projective_closure,
    scalar_normalize,
    subgroup_E,
    subgroup_F,
)


def is_normal_in(H, G):
    ginvs = [mat_inverse(g) for g in G.generators]
    for g, gi in zip(G.generators, ginvs):
        for h in H.generators:
            conj = scalar_normalize(mat_mul(mat_mul(g, h), gi))
            if conj not in H.index:
                return False
    return True


def test_fixed_group_orders():
    assert hessian_cover().order == 648
    assert hessian_projective().order == 216
    assert subgroup_E().order == 36
    assert subgroup_F().order == 72
    assert named_group("icosahedral").order == 60
    assert named_group("klein").order == 168
    assert named_group("valentiner").order == 1080


def test_lifted_polyhedral_groups():
    p5 = binary_octahedral_ext()
    assert p5.order == 96 and len(p5.center()) == 4
    p11 = binary_icosahedral_ext()
    assert p11.order == 600 and len(p11.center()) == 10


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7])
def test_parametric_group_orders(d):
    assert jouanolou_aut(d).order == 3 * (d * d + d + 1)
    assert fermat_aut(d).order == 6 * (d - 1) ** 2


def test_subgroup_chain_normality():
    e = subgroup_E()
    f = subgroup_F()
    g = hessian_projective()
    assert all(m in f.index for m in e.elements)
    assert all(m in g.index for m in f.elements)
    assert is_normal_in(e, f)
    assert is_normal_in(f, g)


def test_closure_rejects_infinite_group():
    two = mat([[rat(2), rat(0)], [rat(0), rat(1)]])
    with pytest.raises(ClosureError):
        closure([two], max_order=500)


def test_closure_is_a_group():
    g = named_group("icosahedral")
    idx = g.index
    # closed under product and inverse on a sample
    sample = g.elements[::7]
    for a in sample:
        assert mat_inverse(a) in idx
        for b in sample:
            assert mat_mul(a, b) in idx
    invs = g.inverses()
    for i, a in enumerate(g.elements[:20]):
        assert mat_mul(a, invs[i]) == g.elements[0]


def test_linear_character_counts():
    assert len(linear_characters(hessian_cover())) == 3
    for name in ("icosahedral", "klein", "valentiner"):
        assert len(linear_characters(named_group(name))) == 1


def test_hessian_characters_on_first_generator():
    g = hessian_cover()
    r1 = g.generators[0]
    vals = {str(ch(r1)) for ch in linear_characters(g)}
    assert vals == {str(rat(1)), str(zeta(3)), str(zeta(3, 2))}


def test_characters_are_multiplicative():
    g = hessian_cover()
    for ch in linear_characters(g):
        for a in g.elements[::101]:
            for b in g.elements[::73]:
                assert ch(mat_mul(a, b)) == ch(a) * ch(b)


def test_orbits():
    f = subgroup_F()
    assert len(orbit(f, [rat(0), rat(0), rat(1)])) == 12
    assert len(orbit(f, [rat(0), rat(1), rat(-1)])) == 9
    t = named_group("trivial")
    assert len(orbit(t, [rat(1), rat(0), rat(0)])) == 1


def test_canonical_point():
    p = canonical_point([rat(0), rat(2), rat(-4)])
    q = canonical_point([rat(0), rat(-1), rat(2)])
    assert p == q


def test_group_json_round_trip():
    g = named_group("icosahedral")
    g2 = group_from_json(group_to_json(g))
    assert g2.order == g.order
    assert set(g2.index) == set(g.index)


def test_named_group_parametric():
    assert named_group("jouanolou", 3).order == 39
    assert named_group("fermat", 4).order == 54
    with pytest.raises(ValueError):
        named_group("no-such-group")


def test_projective_closure_normalizes_scalars():
    w = zeta(3)
    s = mat([[w, rat(0), rat(0)], [rat(0), w, rat(0)], [rat(0), rat(0), w]])
    g = projective_closure([s])
    assert g.order == 1
