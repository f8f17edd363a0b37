"""Diagonal symmetries of an affine 1-form via binomial exponent lattices.

A diagonal map (x, y) -> (a x, b y) fixes the foliation of
omega = sum alpha_ij x^i y^j dx + sum beta_ij x^i y^j dy exactly when
(a, b) kills every exponent difference of the associated monomial set
M = {x^{i+1} y^j : alpha_ij != 0} u {x^i y^{j+1} : beta_ij != 0}.
The solution count in the torus is the index of the difference lattice
in Z^2, read off the Smith normal form; the same unimodular transform
enumerates the solutions as explicit pairs of roots of unity.
"""

from __future__ import annotations

from itertools import combinations
from typing import List, Optional, Tuple

from .cyclotomic import Cyclo, ONE, zeta
from .geometry import AffineOneForm, FoliationError, common_factor_free, pullback_affine
from .intlattice import smith_normal_form


class MonomialSet:
    __slots__ = ("monomials",)

    def __init__(self, monomials):
        self.monomials = frozenset(tuple(m) for m in monomials)

    def __iter__(self):
        return iter(sorted(self.monomials))

    def __len__(self):
        return len(self.monomials)

    def __repr__(self):
        return f"MonomialSet({sorted(self.monomials)})"


def monomial_set(omega: AffineOneForm) -> MonomialSet:
    if not common_factor_free(omega):
        raise FoliationError("1-form coefficients share a common factor")
    mons = set()
    for (i, j) in omega.a.terms:
        mons.add((i + 1, j))
    for (i, j) in omega.b.terms:
        mons.add((i, j + 1))
    return MonomialSet(mons)


class ExponentLattice:
    """Lattice of exponent differences of a monomial set, with SNF data."""

    __slots__ = ("generators", "diag", "U", "V")

    def __init__(self, M: MonomialSet):
        mons = sorted(M.monomials)
        base = mons[0]
        self.generators: List[Tuple[int, int]] = [
            (m[0] - base[0], m[1] - base[1]) for m in mons[1:]
        ]
        rows = [list(g) for g in self.generators] or [[0, 0]]
        d, u, v = smith_normal_form(rows)
        d1 = d[0][0] if len(d) >= 1 and len(d[0]) >= 1 else 0
        d2 = d[1][1] if len(d) >= 2 and len(d[0]) >= 2 else 0
        self.diag = (d1, d2)
        self.U = u
        self.V = v

    def rank(self) -> int:
        return sum(1 for x in self.diag if x)


class DiagonalGroup:
    __slots__ = ("finite", "order", "lattice")

    def __init__(self, finite: bool, order: Optional[int], lattice: ExponentLattice):
        self.finite = finite
        self.order = order
        self.lattice = lattice

    def elements(self) -> List[Tuple[Cyclo, Cyclo]]:
        """All torus solutions as explicit pairs of roots of unity."""
        if not self.finite:
            raise FoliationError("infinite diagonal group has no element list")
        d1, d2 = self.lattice.diag
        v = self.lattice.V
        out = []
        q = d2 // d1
        for s in range(d1):
            for t in range(d2):
                # (x, y) = V . (s/d1, t/d2) as exponents of zeta_{d2}
                ex = s * q * v[0][0] + t * v[0][1]
                ey = s * q * v[1][0] + t * v[1][1]
                out.append((zeta(d2, ex % d2), zeta(d2, ey % d2)))
        return out


def diagonal_group(M: MonomialSet) -> DiagonalGroup:
    lat = ExponentLattice(M)
    if lat.rank() < 2:
        return DiagonalGroup(False, None, lat)
    d1, d2 = lat.diag
    return DiagonalGroup(True, d1 * d2, lat)


def verify_membership(g: Tuple[Cyclo, Cyclo], omega: AffineOneForm) -> bool:
    """True iff the diagonal map with the given torus entries fixes the
    foliation of omega (pullback is a nonzero scalar multiple)."""
    a, b = (Cyclo._coerce(x) for x in g)
    if not a or not b:
        raise FoliationError("torus entries must be nonzero")
    pb = pullback_affine([[a, Cyclo._coerce(0)], [Cyclo._coerce(0), b]], omega)
    # proportionality of the two coefficient pairs
    ratio = None
    for p, q in ((omega.a, pb.a), (omega.b, pb.b)):
        if bool(p) != bool(q):
            return False
        for e, c in p.terms.items():
            c2 = q.terms.get(e)
            if c2 is None:
                return False
            r = c2 * c.inverse()
            if ratio is None:
                ratio = r
            elif r != ratio:
                return False
        if len(p.terms) != len(q.terms):
            return False
    return ratio is not None and bool(ratio)


def stripped_degrees(M: MonomialSet) -> List[int]:
    """Degrees of the stripped binomials m/x^k y^l - m'/x^k y^l over all pairs."""
    out = []
    for m, mp in combinations(sorted(M.monomials), 2):
        k = min(m[0], mp[0])
        l = min(m[1], mp[1])
        s1 = (m[0] - k) + (m[1] - l)
        s2 = (mp[0] - k) + (mp[1] - l)
        out.append(max(s1, s2))
    return out


def bezout_bound_check(order: int, degrees: List[int]) -> bool:
    """Order of the (finite) solution set against the product bound
    N * deg(f) for every stripped binomial f, N the max degree."""
    if not degrees:
        raise FoliationError("no binomials: solution set is not finite")
    n = max(degrees)
    return all(order <= n * d for d in degrees)


def extremal_form_detect(
    omega: AffineOneForm,
) -> Optional[Tuple[Cyclo, Cyclo, Cyclo]]:
    """Match (alpha + rho x^d y)dx + (beta y^d - rho x^{d+1})dy exactly;
    returns (alpha, beta, rho) or None."""
    a, b = omega.a, omega.b
    if len(a.terms) != 2 or len(b.terms) != 2:
        return None
    if (0, 0) not in a.terms:
        return None
    alpha = a.terms[(0, 0)]
    rest = [e for e in a.terms if e != (0, 0)]
    (i, j) = rest[0]
    if j != 1 or i < 1:
        return None
    d = i
    rho = a.terms[(d, 1)]
    beta = b.terms.get((0, d))
    neg_rho = b.terms.get((d + 1, 0))
    if beta is None or neg_rho is None:
        return None
    if neg_rho != -rho:
        return None
    return alpha, beta, rho
