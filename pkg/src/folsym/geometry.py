"""Foliations of the projective plane: affine 1-forms, homogeneous vector
fields and 1-forms, and the translations between them (degree, divergence,
pullback/pushforward, equality of foliations up to radial shifts).
"""

from __future__ import annotations

import re
from typing import Optional, Sequence, Tuple

from .cyclotomic import Cyclo, ONE, ZERO, rat
from .linalg import mat_inverse, solve
from .polynomials import (
    Polynomial,
    PolyParseError,
    exact_divide,
    grlex_key,
    parse_polynomial,
    poly_gcd,
    poly_to_str,
)


class FoliationError(ValueError):
    pass


def monomials_of_degree(d: int, nvars: int) -> list:
    """All exponent tuples of total degree d, sorted in graded lex order."""
    if d < 0:
        return []
    out = []

    def rec(prefix, remaining, k):
        if k == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for i in range(remaining + 1):
            rec(prefix + [i], remaining - i, k - 1)

    rec([], d, nvars)
    out.sort(key=grlex_key)
    return out


class AffineOneForm:
    """omega = a dx + b dy with polynomial coefficients in (x, y)."""

    __slots__ = ("a", "b")

    def __init__(self, a: Polynomial, b: Polynomial):
        if a.nvars != 2 or b.nvars != 2:
            raise FoliationError("affine 1-form coefficients must be in (x, y)")
        if not a and not b:
            raise FoliationError("zero 1-form")
        self.a = a
        self.b = b

    def __eq__(self, other):
        return isinstance(other, AffineOneForm) and self.a == other.a and self.b == other.b

    def __repr__(self):
        return f"AffineOneForm(({poly_to_str(self.a)})dx + ({poly_to_str(self.b)})dy)"


class HomogeneousVectorField:
    """v = A d/dX + B d/dY + C d/dZ, components homogeneous of a common degree."""

    __slots__ = ("components", "degree")

    def __init__(self, components: Sequence[Polynomial], degree: Optional[int] = None):
        comps = tuple(components)
        if len(comps) != 3 or any(p.nvars != 3 for p in comps):
            raise FoliationError("need three polynomials in (X, Y, Z)")
        degs = {p.total_degree() for p in comps if p}
        if len(degs) > 1:
            raise FoliationError("components have different degrees")
        if any(p and not p.is_homogeneous() for p in comps):
            raise FoliationError("components must be homogeneous")
        if degs:
            d = degs.pop()
            if degree is not None and degree != d:
                raise FoliationError("stated degree does not match components")
            self.degree = d
        else:
            self.degree = degree if degree is not None else 0
        self.components = comps

    def __bool__(self):
        return any(self.components)

    def __eq__(self, other):
        return (
            isinstance(other, HomogeneousVectorField)
            and self.components == other.components
        )

    def __add__(self, other):
        return HomogeneousVectorField(
            tuple(p + q for p, q in zip(self.components, other.components)),
            degree=self.degree,
        )

    def __sub__(self, other):
        return HomogeneousVectorField(
            tuple(p - q for p, q in zip(self.components, other.components)),
            degree=self.degree,
        )

    def scale(self, c) -> "HomogeneousVectorField":
        return HomogeneousVectorField(
            tuple(p * c for p in self.components), degree=self.degree
        )

    def coefficient_vector(self, basis) -> tuple:
        """Coefficients over (component, monomial) pairs of the given monomial basis."""
        out = []
        for p in self.components:
            for e in basis:
                out.append(p.terms.get(e, ZERO))
        return tuple(out)

    def __repr__(self):
        return f"HomogeneousVectorField({field_to_str(self)!r})"


class HomogeneousOneForm:
    """Projective 1-form A dX + B dY + C dZ with X*A + Y*B + Z*C = 0."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[Polynomial]):
        comps = tuple(components)
        if len(comps) != 3 or any(p.nvars != 3 for p in comps):
            raise FoliationError("need three polynomials in (X, Y, Z)")
        X, Y, Z = (Polynomial.variable(i, 3) for i in range(3))
        if X * comps[0] + Y * comps[1] + Z * comps[2]:
            raise FoliationError("radial contraction is nonzero")
        self.components = comps

    def __bool__(self):
        return any(self.components)

    def __eq__(self, other):
        return (
            isinstance(other, HomogeneousOneForm)
            and self.components == other.components
        )

    def coefficient_degree(self) -> int:
        return max(p.total_degree() for p in self.components)


def radial_field(d: int) -> HomogeneousVectorField:
    """P = 1 radial field X d/dX + Y d/dY + Z d/dZ (degree 1)."""
    return HomogeneousVectorField(
        tuple(Polynomial.variable(i, 3) for i in range(3)), degree=1
    )


def foliation_degree(omega: AffineOneForm) -> Tuple[int, bool]:
    """Degree of the foliation and whether the line at infinity is invariant.

    With k the top coefficient degree: degree k and a non-invariant line at
    infinity when the top parts satisfy A_k*x + B_k*y != 0, else degree k-1
    with invariant line.
    """
    a, b = omega.a, omega.b
    k = max(a.total_degree(), b.total_degree())
    x = Polynomial.variable(0, 2)
    y = Polynomial.variable(1, 2)
    top = a.homogeneous_part(k) * x + b.homogeneous_part(k) * y
    if top:
        return k, True
    return k - 1, False


def divergence(v: HomogeneousVectorField) -> Polynomial:
    return sum(
        (v.components[i].diff(i) for i in range(3)), Polynomial.zero(3)
    )


def make_divergence_free(v: HomogeneousVectorField) -> HomogeneousVectorField:
    d = v.degree
    div = divergence(v)
    if not div:
        return v
    p = div * rat(-1, d + 2)
    comps = tuple(
        v.components[i] + p * Polynomial.variable(i, 3) for i in range(3)
    )
    return HomogeneousVectorField(comps, degree=d)


def pushforward(phi, v: HomogeneousVectorField) -> HomogeneousVectorField:
    """phi_* v = phi . (v o phi^{-1}) for an invertible 3x3 matrix."""
    inv = mat_inverse(phi)
    composed = [p.compose_linear(inv) for p in v.components]
    comps = []
    for i in range(3):
        s = Polynomial.zero(3)
        for j in range(3):
            c = Cyclo._coerce(phi[i][j])
            if c:
                s = s + composed[j] * c
        comps.append(s)
    return HomogeneousVectorField(tuple(comps), degree=v.degree)


def pullback_affine(g, omega: AffineOneForm) -> AffineOneForm:
    """g^* omega for an invertible 2x2 matrix acting on (x, y)."""
    det = Cyclo._coerce(g[0][0]) * Cyclo._coerce(g[1][1]) - Cyclo._coerce(
        g[0][1]
    ) * Cyclo._coerce(g[1][0])
    if not det:
        raise FoliationError("singular matrix")
    ag = omega.a.compose_linear(g)
    bg = omega.b.compose_linear(g)
    new_a = ag * g[0][0] + bg * g[1][0]
    new_b = ag * g[0][1] + bg * g[1][1]
    return AffineOneForm(new_a, new_b)


def same_foliation(
    v: HomogeneousVectorField, w: HomogeneousVectorField
) -> Optional[Tuple[Cyclo, Polynomial]]:
    """Solve w = alpha*v + P*R exactly; None when no solution exists."""
    if v.degree != w.degree:
        raise FoliationError("degree mismatch")
    d = v.degree
    basis = monomials_of_degree(d, 3)
    pbasis = monomials_of_degree(d - 1, 3)
    nrows = 3 * len(basis)
    # columns: alpha, then one per monomial of P
    cols = [list(v.coefficient_vector(basis))]
    for m in pbasis:
        col = [ZERO] * nrows
        for i in range(3):
            e = list(m)
            e[i] += 1
            col[i * len(basis) + basis.index(tuple(e))] = ONE
        cols.append(col)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
    rhs = list(w.coefficient_vector(basis))
    sol = solve(rows, rhs)
    if sol is None:
        return None
    alpha = sol[0]
    if not alpha:
        return None
    p = Polynomial(
        {m: c for m, c in zip(pbasis, sol[1:]) if c}, 3
    )
    return alpha, p


def is_semi_invariant(v: HomogeneousVectorField, phi) -> Optional[Cyclo]:
    """Scalar c with phi_* v = c*v, or None."""
    w = pushforward(phi, v)
    # ratio at the first nonzero coefficient of v
    basis = monomials_of_degree(v.degree, 3)
    vv = v.coefficient_vector(basis)
    ww = w.coefficient_vector(basis)
    c = None
    for x, y_ in zip(vv, ww):
        if x:
            c = y_ * x.inverse()
            break
    if c is None:
        return None
    for x, y_ in zip(vv, ww):
        if y_ != x * c:
            return None
    return c


def form_from_field(v: HomogeneousVectorField) -> HomogeneousOneForm:
    """Contraction i_R i_v (dX ^ dY ^ dZ)."""
    A, B, C = v.components
    X, Y, Z = (Polynomial.variable(i, 3) for i in range(3))
    return HomogeneousOneForm((B * Z - C * Y, C * X - A * Z, A * Y - B * X))


def field_from_form(omega: HomogeneousOneForm) -> HomogeneousVectorField:
    """Divergence-free field inducing the form; inverse of form_from_field
    up to radial shifts and a scalar."""
    if not omega:
        raise FoliationError("zero 1-form")
    m = omega.coefficient_degree()
    if m < 1:
        raise FoliationError("coefficient degree must be at least 1")
    d = m - 1
    basis = monomials_of_degree(d, 3)
    target = monomials_of_degree(m, 3)
    nunk = 3 * len(basis)
    # rows: 3 components x target monomials; unknowns: coefficients of A, B, C
    rows = []
    rhs = []
    # form_from_field linear map: (A,B,C) -> (BZ - CY, CX - AZ, AY - BX)
    pairs = [
        ((1, 2), (2, 1)),  # component 0: +B*Z, -C*Y
        ((2, 0), (0, 2)),  # component 1: +C*X, -A*Z
        ((0, 1), (1, 0)),  # component 2: +A*Y, -B*X
    ]
    for ci, ((p_idx, p_var), (n_idx, n_var)) in enumerate(pairs):
        for t in target:
            row = [ZERO] * nunk
            for bi, e in enumerate(basis):
                ep = list(e)
                ep[p_var] += 1
                if tuple(ep) == t:
                    row[p_idx * len(basis) + bi] = ONE
                en = list(e)
                en[n_var] += 1
                if tuple(en) == t:
                    row[n_idx * len(basis) + bi] = -ONE
            rows.append(row)
            rhs.append(omega.components[ci].terms.get(t, ZERO))
    sol = solve(rows, rhs)
    if sol is None:
        raise FoliationError("form is not induced by a polynomial vector field")
    comps = []
    for i in range(3):
        comps.append(
            Polynomial(
                {e: c for e, c in zip(basis, sol[i * len(basis):(i + 1) * len(basis)]) if c},
                3,
            )
        )
    return make_divergence_free(HomogeneousVectorField(tuple(comps), degree=d))


def foliation_from_pencil(F: Polynomial, G: Polynomial) -> HomogeneousOneForm:
    """Primitive form G dF - F dG of the pencil [F : G]."""
    if not F or not G:
        raise FoliationError("zero pencil member")
    if not (F.is_homogeneous() and G.is_homogeneous()):
        raise FoliationError("pencil members must be homogeneous")
    if F.total_degree() != G.total_degree():
        raise FoliationError("pencil members must have equal degrees")
    if not poly_gcd(F, G).is_constant():
        raise FoliationError("pencil members must be coprime")
    comps = [G * F.diff(i) - F * G.diff(i) for i in range(3)]
    g = poly_gcd(poly_gcd(comps[0], comps[1]), comps[2])
    if not g.is_constant():
        comps = [exact_divide(p, g) for p in comps]
    return HomogeneousOneForm(tuple(comps))


def affine_to_projective(omega: AffineOneForm) -> HomogeneousOneForm:
    """Homogenize a dx + b dy by x = X/Z, y = Y/Z and clear denominators."""
    a, b = omega.a, omega.b
    k = max(a.total_degree(), b.total_degree())
    X, Y, Z = (Polynomial.variable(i, 3) for i in range(3))

    def homogenize(p: Polynomial) -> Polynomial:
        out = {}
        for (i, j), c in p.terms.items():
            out[(i, j, k - i - j)] = c
        return Polynomial(out, 3)

    ah = homogenize(a)
    bh = homogenize(b)
    comps = [ah * Z, bh * Z, -(ah * X) - (bh * Y)]
    # strip any common power of Z
    while all(not p or all(e[2] >= 1 for e in p.terms) for p in comps) and any(comps):
        comps = [
            Polynomial({(e[0], e[1], e[2] - 1): c for e, c in p.terms.items()}, 3)
            for p in comps
        ]
    return HomogeneousOneForm(tuple(comps))


def decompose_homogeneous(omega: AffineOneForm, n: int) -> Tuple[Polynomial, Polynomial]:
    """Split a homogeneous degree-n form as dP + Q(x dy - y dx)."""
    a, b = omega.a, omega.b
    for p in (a, b):
        if p and (not p.is_homogeneous() or p.total_degree() != n):
            raise FoliationError("form is not homogeneous of the stated degree")
    x = Polynomial.variable(0, 2)
    y = Polynomial.variable(1, 2)
    inv = rat(1, n + 1)
    P = (a * x + b * y) * inv
    Q = (b.diff(0) - a.diff(1)) * inv
    return P, Q


def common_factor_free(omega: AffineOneForm) -> bool:
    return poly_gcd(omega.a, omega.b).is_constant()


def affine_field_to_projective(
    p: Polynomial, q: Polynomial
) -> HomogeneousVectorField:
    """Homogeneous divergence-free field of the affine field p d/dx + q d/dy."""
    omega = AffineOneForm(-q, p) if (q or p) else None
    if omega is None:
        raise FoliationError("zero vector field")
    return field_from_form(affine_to_projective(omega))


# ---------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------

_AFFINE_FORM_RE = re.compile(
    r"^\(\s*(?P<a>[^)]*)\s*\)\s*dx\s*\+\s*\(\s*(?P<b>[^)]*)\s*\)\s*dy\s*$"
)


def parse_affine_form(text: str) -> AffineOneForm:
    """Parse `(poly)dx + (poly)dy`; zeta() in coefficients is handled by
    matching the outermost parenthesis pairs positionally."""
    s = text.strip()
    m = re.match(r"^\((.*)\)\s*\*?\s*dx\s*\+\s*\((.*)\)\s*\*?\s*dy$", s, re.DOTALL)
    if m:
        a = parse_polynomial(m.group(1), nvars=2)
        b = parse_polynomial(m.group(2), nvars=2)
        return AffineOneForm(a, b)
    m = re.match(r"^\((.*)\)\s*\*?\s*dy\s*\+\s*\((.*)\)\s*\*?\s*dx$", s, re.DOTALL)
    if m:
        b = parse_polynomial(m.group(1), nvars=2)
        a = parse_polynomial(m.group(2), nvars=2)
        return AffineOneForm(a, b)
    # bare syntax: a sum of monomial terms each carrying a dx or dy factor,
    # e.g. `x*dy - y*dx`
    a = Polynomial.zero(2)
    b = Polynomial.zero(2)
    for chunk in re.sub(r"-", "+-", s).lstrip("+").split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        m = re.match(r"^(.*?)\*?\s*(dx|dy)$", chunk)
        if not m or "(" in chunk:
            raise PolyParseError(f"cannot parse affine 1-form: {text!r}")
        head = m.group(1).strip().rstrip("*").strip()
        sign = 1
        if head.startswith("-"):
            sign = -1
            head = head[1:].strip()
        p = parse_polynomial(head, nvars=2) if head else Polynomial.constant(ONE, 2)
        if sign < 0:
            p = -p
        if m.group(2) == "dx":
            a = a + p
        else:
            b = b + p
    return AffineOneForm(a, b)


def affine_form_to_str(omega: AffineOneForm) -> str:
    return f"({poly_to_str(omega.a)})dx + ({poly_to_str(omega.b)})dy"


def parse_field(text: str) -> HomogeneousVectorField:
    """Parse `(poly)dX + (poly)dY + (poly)dZ` (ASCII alias of the del operator)."""
    s = text.strip().replace("∂", "d")
    m = re.match(r"^\((.*)\)\s*dX\s*\+\s*\((.*)\)\s*dY\s*\+\s*\((.*)\)\s*dZ$", s, re.DOTALL)
    if not m:
        raise PolyParseError(f"cannot parse vector field: {text!r}")
    comps = [parse_polynomial(g, nvars=3) if g.strip() != "0" else Polynomial.zero(3)
             for g in m.groups()]
    return HomogeneousVectorField(tuple(comps))


def field_to_str(v: HomogeneousVectorField) -> str:
    return " + ".join(f"({poly_to_str(p)})d{n}" for p, n in zip(v.components, "XYZ"))


def form3_to_str(omega: HomogeneousOneForm) -> str:
    return " + ".join(f"({poly_to_str(p)})d{n}" for p, n in zip(omega.components, "XYZ"))
