"""Catalog of the extremal plane foliations and their symmetry groups.

Each entry packages a defining object (projective vector field, affine
1-form, pencil of curves, or a plane form x dy - y dx + dP), the known
symmetry generators, and the expected group order.  The verification
routines recompute everything from scratch: every generator is
certified to preserve the foliation (with its scalar), the generated
group is closed and counted, the diagonal part is cross-checked against
the binomial-lattice count, and the Bernoulli entries are checked
against their polyhedral normal form.
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Tuple, Union

from .cyclotomic import Cyclo, ONE, ZERO, cyclo_to_str, rat, zeta
from .diagonal import diagonal_group, monomial_set
from .geometry import (
    AffineOneForm,
    FoliationError,
    HomogeneousVectorField,
    affine_field_to_projective,
    affine_form_to_str,
    decompose_homogeneous,
    field_from_form,
    field_to_str,
    foliation_from_pencil,
    is_semi_invariant,
    pullback_affine,
    pushforward,
    same_foliation,
)
from .groups import (
    FiniteMatrixGroup,
    binary_icosahedral_ext,
    binary_octahedral_ext,
    closure,
    fermat_aut,
    hessian_projective,
    jouanolou_aut,
    projective_closure,
)
from .linalg import Matrix, det, mat
from .polynomials import Polynomial, poly_to_str

PARAMETRIC_NAMES = ("J", "F", "G")
FIXED_NAMES = ("S", "H4", "H7", "P5", "P11")
ALL_NAMES = PARAMETRIC_NAMES + FIXED_NAMES

DefiningObject = Union[AffineOneForm, HomogeneousVectorField, Tuple[Polynomial, Polynomial]]


class CatalogEntry:
    __slots__ = (
        "name",
        "degree",
        "expected_aut_order",
        "defining_object",
        "aut_generators",
        "aut_structure_note",
        "affine_form",
    )

    def __init__(
        self,
        name: str,
        degree: int,
        expected_aut_order: int,
        defining_object: DefiningObject,
        aut_generators: List[Matrix],
        aut_structure_note: str,
        affine_form: Optional[AffineOneForm] = None,
    ):
        self.name = name
        self.degree = degree
        self.expected_aut_order = expected_aut_order
        self.defining_object = defining_object
        self.aut_generators = aut_generators
        self.aut_structure_note = aut_structure_note
        self.affine_form = affine_form

    @property
    def is_planar(self) -> bool:
        """True for the Bernoulli entries, whose group lives in GL(2)."""
        return self.name in ("P5", "P11")

    def __repr__(self):
        return (
            f"CatalogEntry({self.name}, degree={self.degree}, "
            f"order={self.expected_aut_order})"
        )


def _vars3():
    return tuple(Polynomial.variable(i, 3) for i in range(3))


def _vars2():
    return tuple(Polynomial.variable(i, 2) for i in range(2))


def _plane_form(P: Polynomial) -> AffineOneForm:
    """x dy - y dx + dP as an affine 1-form."""
    x, y = _vars2()
    return AffineOneForm(P.diff(0) - y, P.diff(1) + x)


def bernoulli_polynomial(name: str) -> Polynomial:
    x, y = _vars2()
    if name == "P5":
        return x ** 5 * y - x * y ** 5
    if name == "P11":
        return x ** 11 * y + x ** 6 * y ** 6 * 11 - x * y ** 11
    raise ValueError(f"no orbit polynomial for {name}")


def build(name: str, d: Optional[int] = None) -> CatalogEntry:
    """Catalog entry with its defining object and symmetry generators."""
    if name in PARAMETRIC_NAMES:
        if d is None or d < 2:
            raise ValueError(f"{name} needs a degree d >= 2")
    elif name in FIXED_NAMES:
        if d is not None and d != _fixed_degree(name):
            raise ValueError(f"{name} has fixed degree {_fixed_degree(name)}")
        d = _fixed_degree(name)
    else:
        raise ValueError(f"unknown catalog name: {name}")
    X, Y, Z = _vars3()
    x, y = _vars2()
    one2 = Polynomial.constant(1, 2)
    if name == "J":
        field = HomogeneousVectorField((Y ** d, Z ** d, X ** d), degree=d)
        omega = AffineOneForm(
            x ** d * y - one2, y ** d - x ** (d + 1)
        )
        return CatalogEntry(
            name, d, 3 * (d * d + d + 1), field,
            list(jouanolou_aut(d).generators),
            f"Z/{d * d + d + 1} : Z/3 - Jouanolou foliation",
            affine_form=omega,
        )
    if name == "F":
        field = HomogeneousVectorField((X ** d, Y ** d, Z ** d), degree=d)
        omega = AffineOneForm(y - y ** d, -(x - x ** d))
        return CatalogEntry(
            name, d, 6 * (d - 1) ** 2, field,
            list(fermat_aut(d).generators),
            f"(Z/{d - 1})^2 : S3 - isotrivial hyperbolic fibration",
            affine_form=omega,
        )
    if name == "G":
        omega = AffineOneForm(
            y + y ** d - x ** (d - 1) * y * 2,
            x + x ** d - x * y ** (d - 1) * 2,
        )
        return CatalogEntry(
            name, d, 6 * (d - 1) ** 2, omega,
            list(fermat_aut(d).generators),
            f"(Z/{d - 1})^2 : S3 - nonisotrivial hyperbolic fibration",
            affine_form=omega,
        )
    if name == "S":
        field = HomogeneousVectorField((Y * Z, Z * X, X * Y), degree=2)
        omega = AffineOneForm(-x + x * y ** 2, y - x ** 2 * y)
        return CatalogEntry(
            name, 2, 24, field,
            list(fermat_aut(3).generators),
            "(Z/2)^2 : S3 - rational fibration (same group as F at degree 3)",
            affine_form=omega,
        )
    if name == "H4":
        pencil = (X ** 3 + Y ** 3 + Z ** 3, X * Y * Z)
        return CatalogEntry(
            name, 4, 216, pencil,
            list(hessian_projective().generators),
            "Hessian group - nonisotrivial elliptic fibration",
        )
    if name == "H7":
        p = (x ** 3 - one2) * (x ** 3 + y ** 3 * 7 + one2) * x
        q = (y ** 3 - one2) * (y ** 3 + x ** 3 * 7 + one2) * y
        field = affine_field_to_projective(p, q)
        return CatalogEntry(
            name, 7, 216, field,
            list(hessian_projective().generators),
            "Hessian group - nonisotrivial hyperbolic fibration",
        )
    if name == "P5":
        omega = _plane_form(bernoulli_polynomial("P5"))
        return CatalogEntry(
            name, 5, 96, omega,
            list(binary_octahedral_ext().generators),
            "(Z/2 x 2T) . Z/2 - general type Bernoulli foliation",
            affine_form=omega,
        )
    # P11
    omega = _plane_form(bernoulli_polynomial("P11"))
    return CatalogEntry(
        name, 11, 600, omega,
        list(binary_icosahedral_ext().generators),
        "Z/5 x 2I - general type Bernoulli foliation",
        affine_form=omega,
    )


def _fixed_degree(name: str) -> int:
    return {"S": 2, "H4": 4, "H7": 7, "P5": 5, "P11": 11}[name]


def projective_field(e: CatalogEntry) -> HomogeneousVectorField:
    """Homogeneous vector field defining the entry's foliation."""
    if e.is_planar:
        raise FoliationError(f"{e.name} is defined by a plane form, not a field")
    obj = e.defining_object
    if isinstance(obj, HomogeneousVectorField):
        return obj
    if isinstance(obj, AffineOneForm):
        from .geometry import affine_to_projective

        return field_from_form(affine_to_projective(obj))
    return field_from_form(foliation_from_pencil(*obj))


def _form_scalar(base: AffineOneForm, other: AffineOneForm) -> Optional[Cyclo]:
    """Scalar c with other = c * base, or None."""
    s = None
    for p, q in ((base.a, other.a), (base.b, other.b)):
        if set(p.terms) != set(q.terms):
            return None
        for ex, c in p.terms.items():
            r = q.terms[ex] * c.inverse()
            if s is None:
                s = r
            elif r != s:
                return None
    return s


def bound_f(d: int) -> int:
    """Sharp upper bound for the symmetry group order at degree d."""
    if d < 2:
        raise FoliationError(
            "foliations of degree 0 or 1 have infinitely many automorphisms"
        )
    if d == 2:
        return 24
    if d == 3:
        return 39
    if d == 4:
        return 216
    return 6 * (d - 1) ** 2


def extremal_names(d: int) -> List[str]:
    """Catalog entries attaining bound_f at degree d."""
    if d == 2:
        return ["S"]
    if d == 3:
        return ["J"]
    if d == 4:
        return ["H4"]
    if d == 5:
        return ["G", "F", "P5"]
    return ["G", "F"]


def verify_generators(e: CatalogEntry) -> Dict:
    """Certify that every listed generator preserves the foliation.

    Failures are reported, not thrown.  For plane entries the check is
    pullback proportionality of the affine form; otherwise the scalar of
    the pushforward action on the homogeneous field (falling back to
    equality of foliations when the field itself is only preserved up to
    radial terms)."""
    checks = []
    if e.is_planar:
        omega = e.defining_object
        for g in e.aut_generators:
            pb = pullback_affine(g, omega)
            s = _form_scalar(omega, pb)
            checks.append(_gen_report(g, s))
    else:
        v = projective_field(e)
        for g in e.aut_generators:
            s = is_semi_invariant(v, g)
            if s is None:
                res = same_foliation(pushforward(g, v), v)
                s = res[0] if res is not None else None
            checks.append(_gen_report(g, s))
    return {
        "name": e.name,
        "degree": e.degree,
        "generators": checks,
        "all_certified": all(c["certified"] for c in checks),
    }


def _gen_report(g: Matrix, scalar: Optional[Cyclo]) -> Dict:
    return {
        "generator": matrix_to_strs(g),
        "certified": scalar is not None,
        "scalar": cyclo_to_str(scalar) if scalar is not None else None,
    }


def verify_order(e: CatalogEntry, max_order: int = 4000) -> Dict:
    """Close the generator set and compare against the expected order.

    Plane entries are closed linearly (their order counts scalars);
    the others projectively.  Diagonal-heavy entries additionally
    cross-check the diagonal subgroup against the lattice count."""
    report: Dict = {"name": e.name, "degree": e.degree}
    if e.is_planar:
        G = closure(e.aut_generators, max_order=max_order)
        report["computed_order"] = G.order
        report["center_order"] = len(G.center())
        report["expected_center"] = 4 if e.name == "P5" else 10
        report["center_ok"] = report["center_order"] == report["expected_center"]
    else:
        G = projective_closure(e.aut_generators, max_order=max_order)
        report["computed_order"] = G.order
    report["expected_order"] = e.expected_aut_order
    report["order_ok"] = G.order == e.expected_aut_order
    if e.name in ("J", "F", "G", "S"):
        d = e.degree
        expected_diag = {
            "J": d * d + d + 1,
            "F": (d - 1) ** 2,
            "G": (d - 1) ** 2,
            "S": 4,
        }[e.name]
        dg = diagonal_group(monomial_set(e.affine_form))
        report["diagonal_order"] = dg.order
        report["expected_diagonal_order"] = expected_diag
        report["diagonal_ok"] = dg.finite and dg.order == expected_diag
    ok = report["order_ok"] and report.get("diagonal_ok", True) and report.get(
        "center_ok", True
    )
    report["all_ok"] = ok
    return report


def verify_polyhedral_normal_form(e: CatalogEntry) -> Dict:
    """For the Bernoulli entries: check that the top homogeneous part of
    the plane form is exact (equal to dP with zero rotational part), the
    degree-1 part is a multiple of x dy - y dx, and P is semi-invariant
    under the entry's GL(2) group generators."""
    if not e.is_planar:
        raise FoliationError("normal-form check applies to P5 and P11 only")
    omega = e.defining_object
    d = e.degree
    top = AffineOneForm(
        omega.a.homogeneous_part(d), omega.b.homogeneous_part(d)
    )
    P, Q = decompose_homogeneous(top, d)
    expected_P = bernoulli_polynomial(e.name)
    checks: Dict = {
        "name": e.name,
        "P_recovered": poly_to_str(P),
        "P_ok": P == expected_P,
        "Q_zero": not Q,
    }
    # degree-1 part must be a multiple of x dy - y dx
    a1 = omega.a.homogeneous_part(1)
    b1 = omega.b.homogeneous_part(1)
    x, y = _vars2()
    mu = None
    base = AffineOneForm(-y, x)
    low = AffineOneForm(a1, b1) if (a1 or b1) else None
    if low is not None:
        mu = _form_scalar(base, low)
    checks["linear_part_ok"] = mu is not None
    checks["linear_part_scalar"] = cyclo_to_str(mu) if mu is not None else None
    # P semi-invariant under the generators
    scalars = []
    ok = True
    for g in e.aut_generators:
        Pg = P.compose_linear(g)
        s = None
        if Pg.terms.keys() == P.terms.keys():
            ex = next(iter(P.terms))
            s = Pg.terms[ex] * P.terms[ex].inverse()
            if Pg != P * s:
                s = None
        if s is None:
            ok = False
            scalars.append(None)
        else:
            scalars.append(cyclo_to_str(s))
    checks["P_semi_invariant"] = ok
    checks["P_scalars"] = scalars
    checks["all_ok"] = (
        checks["P_ok"] and checks["Q_zero"] and checks["linear_part_ok"] and ok
    )
    return checks


def torus_normal_form(kind: str, d: int, theta: Cyclo) -> AffineOneForm:
    """The intermediate normal forms of the classification, one per cube
    root theta: kind "F" is (y - theta*y^d)dx + (-x + theta^2*x^d)dy,
    kind "G" carries the extra mixed terms, and kind "S" is the
    degree-2 rational-fibration form."""
    x, y = _vars2()
    t2 = theta * theta
    if kind == "F":
        return AffineOneForm(y - y ** d * theta, -x + x ** d * t2)
    if kind == "G":
        return AffineOneForm(
            y + y ** d * theta - x ** (d - 1) * y * (t2 + t2),
            x + x ** d * t2 - x * y ** (d - 1) * (theta + theta),
        )
    if kind == "S":
        return AffineOneForm(x * (-theta) + x * y ** 2, y * t2 - x ** 2 * y)
    raise ValueError(f"unknown normal-form kind: {kind}")


def rescaling_to_catalog(kind: str, d: int, k: int) -> Optional[Cyclo]:
    """Apply the rescaling (x, y) <- (alpha x, beta y) with
    alpha^(d-1) = theta, beta^(d-1) = theta^2 (theta the k-th cube root)
    to the torus normal form and compare with the catalog form; returns
    the proportionality scalar (alpha*beta) on success, None otherwise.
    For kind "S" the exponents are 2 and the roles of theta are swapped."""
    theta = zeta(3, k)
    if kind == "S":
        alpha = _square_root_of(theta * theta)
        beta = _square_root_of(theta)
        target = build("S").affine_form
    else:
        alpha = _root_of(theta, d - 1)
        beta = _root_of(theta * theta, d - 1)
        target = build(kind, d).affine_form
    nf = torus_normal_form(kind, d, theta)
    sub = ((alpha, ZERO), (ZERO, beta))
    pulled = pullback_affine(sub, nf)
    s = _form_scalar(target, pulled)
    if s is None:
        return None
    if kind != "S" and s != alpha * beta:
        return None
    return s


def _root_of(c: Cyclo, k: int) -> Cyclo:
    """Some exact k-th root of a root of unity c = zeta_3^j."""
    for n in (1, 3):
        for j in range(n):
            if zeta(n, j) == c:
                return zeta(n * k, j)
    raise ValueError("expected a cube root of unity")


def _square_root_of(c: Cyclo) -> Cyclo:
    return _root_of(c, 2)


# ---------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------

def matrix_to_strs(g: Matrix) -> List[List[str]]:
    return [[cyclo_to_str(c) for c in row] for row in g]


def entry_to_json_dict(e: CatalogEntry) -> Dict:
    obj = e.defining_object
    if isinstance(obj, AffineOneForm):
        defining = {"kind": "affine-form", "form": affine_form_to_str(obj)}
    elif isinstance(obj, HomogeneousVectorField):
        defining = {"kind": "field", "field": field_to_str(obj)}
    else:
        defining = {
            "kind": "pencil",
            "numerator": poly_to_str(obj[0]),
            "denominator": poly_to_str(obj[1]),
        }
    return {
        "name": e.name,
        "degree": e.degree,
        "expected_aut_order": e.expected_aut_order,
        "aut_structure_note": e.aut_structure_note,
        "defining_object": defining,
        "aut_generators": [matrix_to_strs(g) for g in e.aut_generators],
    }


def default_instantiations() -> List[Tuple[str, Optional[int]]]:
    """The (name, degree) pairs shipped in catalog.json: parametric
    families at degrees 2..7 plus the fixed entries."""
    out: List[Tuple[str, Optional[int]]] = []
    for name in PARAMETRIC_NAMES:
        for d in range(2, 8):
            out.append((name, d))
    for name in FIXED_NAMES:
        out.append((name, None))
    return out


def catalog_json_text() -> str:
    rows = [entry_to_json_dict(build(n, d)) for n, d in default_instantiations()]
    return json.dumps(rows, indent=2) + "\n"


def load_catalog() -> List[Dict]:
    """The shipped catalog.json as a list of dicts."""
    from importlib.resources import files

    return json.loads(files("folsym.data").joinpath("catalog.json").read_text())
