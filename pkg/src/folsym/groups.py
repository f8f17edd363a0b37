"""Finite subgroups of GL(2, C) and GL(3, C) over cyclotomic numbers.

Groups are built by breadth-first closure from generators, with exact
matrix equality for deduplication.  Projective groups canonicalize each
matrix so its first nonzero row-major entry is 1.  Linear characters are
computed through the abelianization (cosets of the commutator subgroup,
then the Smith normal form of the quotient's multiplication-table
relations).
"""

from __future__ import annotations

import json
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclotomic import Cyclo, ONE, ZERO, cyclo_to_str, parse_cyclo, rat, zeta, sqrt_minus3, sqrt5
from .intlattice import smith_normal_form
from .linalg import Matrix, det, identity, mat, mat_inverse, mat_mul, mat_vec

__all__ = [
    "ClosureError",
    "FiniteMatrixGroup",
    "ProjectiveGroup",
    "Character",
    "closure",
    "projectivize",
    "projective_closure",
    "commutator_subgroup",
    "linear_characters",
    "canonical_point",
    "orbit",
    "hessian_cover",
    "hessian_projective",
    "subgroup_E",
    "subgroup_F",
    "icosahedral_A5",
    "klein_PSL27",
    "valentiner_cover",
    "binary_octahedral_ext",
    "binary_icosahedral_ext",
    "jouanolou_aut",
    "fermat_aut",
    "group_from_json",
    "group_to_json",
    "named_group",
]

DEFAULT_MAX_ORDER = 10000


class ClosureError(RuntimeError):
    pass


def scalar_normalize(m: Matrix) -> Matrix:
    """Scale so the first nonzero entry in row-major order equals 1."""
    for row in m:
        for x in row:
            if x:
                if x == ONE:
                    return m
                inv = x.inverse()
                return tuple(tuple(y * inv for y in row2) for row2 in m)
    raise ValueError("zero matrix")


def _bfs_closure(
    generators: List[Matrix],
    max_order: int,
    normalize=None,
) -> Tuple[List[Matrix], Dict[Matrix, int]]:
    n = len(generators[0])
    ident = identity(n)
    if normalize:
        ident = normalize(ident)
        generators = [normalize(g) for g in generators]
    elements: List[Matrix] = [ident]
    index: Dict[Matrix, int] = {ident: 0}
    frontier = [ident]
    while frontier:
        new_frontier = []
        for e in frontier:
            for g in generators:
                p = mat_mul(e, g)
                if normalize:
                    p = normalize(p)
                if p not in index:
                    index[p] = len(elements)
                    elements.append(p)
                    new_frontier.append(p)
                    if len(elements) > max_order:
                        raise ClosureError(
                            f"group order exceeds max_order={max_order}"
                        )
        frontier = new_frontier
    return elements, index


class FiniteMatrixGroup:
    """Closed finite matrix group; elements in deterministic BFS order."""

    def __init__(self, dimension: int, elements: List[Matrix],
                 index: Dict[Matrix, int], generators: List[Matrix]):
        self.dimension = dimension
        self.elements = elements
        self.index = index
        self.generators = generators
        self._inverses: Optional[List[Matrix]] = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, m: Matrix) -> bool:
        return m in self.index

    def inverses(self) -> List[Matrix]:
        """Element inverses, aligned with the element list."""
        if self._inverses is None:
            inv_map = {}
            for g in self.generators:
                inv_map[g] = mat_inverse(g)
            out: List[Optional[Matrix]] = [None] * len(self.elements)
            out[0] = self.elements[0]
            # rebuild BFS: elements[k] = e * g, so inverse = g^-1 * e^-1
            done = 1
            frontier = [0]
            while done < len(self.elements):
                new_frontier = []
                for ei in frontier:
                    for g in self.generators:
                        p = mat_mul(self.elements[ei], g)
                        pi = self.index[p]
                        if out[pi] is None:
                            out[pi] = mat_mul(inv_map[g], out[ei])
                            new_frontier.append(pi)
                            done += 1
                frontier = new_frontier
            self._inverses = out  # type: ignore[assignment]
        return self._inverses

    def center(self) -> List[Matrix]:
        gens = self.generators
        return [
            e for e in self.elements
            if all(mat_mul(e, g) == mat_mul(g, e) for g in gens)
        ]


class ProjectiveGroup(FiniteMatrixGroup):
    """Matrix group modulo scalars; all elements scalar-normalized."""


def closure(generators: Sequence, max_order: int = DEFAULT_MAX_ORDER) -> FiniteMatrixGroup:
    gens = [mat(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    n = len(gens[0])
    for g in gens:
        if not det(g):
            raise ClosureError("singular generator")
    elements, index = _bfs_closure(gens, max_order)
    return FiniteMatrixGroup(n, elements, index, gens)


def projective_closure(generators: Sequence, max_order: int = DEFAULT_MAX_ORDER) -> ProjectiveGroup:
    gens = [mat(g) for g in generators]
    n = len(gens[0])
    elements, index = _bfs_closure(gens, max_order, normalize=scalar_normalize)
    return ProjectiveGroup(n, elements, index, [scalar_normalize(g) for g in gens])


def projectivize(G: FiniteMatrixGroup) -> ProjectiveGroup:
    seen: Dict[Matrix, int] = {}
    elements: List[Matrix] = []
    for e in G.elements:
        p = scalar_normalize(e)
        if p not in seen:
            seen[p] = len(elements)
            elements.append(p)
    gens = []
    for g in G.generators:
        p = scalar_normalize(g)
        if p not in gens:
            gens.append(p)
    return ProjectiveGroup(G.dimension, elements, seen, gens)


def commutator_subgroup(G: FiniteMatrixGroup) -> FiniteMatrixGroup:
    """Normal closure of the generator commutators inside G."""
    gens = G.generators
    inv = {g: mat_inverse(g) for g in gens}
    seeds: List[Matrix] = []
    seen_seeds = set()
    normalize = scalar_normalize if isinstance(G, ProjectiveGroup) else None

    def add_seed(m):
        if normalize:
            m = normalize(m)
        if m not in seen_seeds:
            seen_seeds.add(m)
            seeds.append(m)

    for a in gens:
        for b in gens:
            if a is b:
                continue
            add_seed(mat_mul(mat_mul(a, b), mat_mul(inv[a], inv[b])))
    if not seeds:
        ident = identity(G.dimension)
        return FiniteMatrixGroup(G.dimension, [ident], {ident: 0}, [ident])
    while True:
        elements, index = _bfs_closure(seeds, len(G.elements), normalize=normalize)
        if len(elements) == len(G.elements):
            break  # the whole group: perfect
        grew = False
        for g in gens:
            for s in list(seeds):
                c = mat_mul(mat_mul(g, s), inv[g])
                if normalize:
                    c = normalize(c)
                if c not in index:
                    add_seed(c)
                    grew = True
        if not grew:
            break
    cls = ProjectiveGroup if isinstance(G, ProjectiveGroup) else FiniteMatrixGroup
    return cls(G.dimension, elements, index, seeds)


class Character:
    """Multiplicative character, stored as one value per group element."""

    def __init__(self, G: FiniteMatrixGroup, values: List[Cyclo]):
        self.group = G
        self.values = values

    def __call__(self, i) -> Cyclo:
        if isinstance(i, int):
            return self.values[i]
        return self.values[self.group.index[i]]

    def is_trivial(self) -> bool:
        return all(v == ONE for v in self.values)

    def __eq__(self, other):
        return isinstance(other, Character) and self.values == other.values


def _coset_ids(G: FiniteMatrixGroup, H: FiniteMatrixGroup) -> Tuple[List[int], List[int]]:
    """Coset index of every element of G mod H; returns (ids, representatives)."""
    reps: List[int] = []
    rep_invs: List[Matrix] = []
    ids = [-1] * len(G.elements)
    for i, e in enumerate(G.elements):
        found = False
        for ci, rinv in enumerate(rep_invs):
            if mat_mul(rinv, e) in H.index:
                ids[i] = ci
                found = True
                break
        if not found:
            ids[i] = len(reps)
            reps.append(i)
            rep_invs.append(mat_inverse(e))
    return ids, reps


def linear_characters(G: FiniteMatrixGroup) -> List[Character]:
    """All homomorphisms G -> C*, via characters of G/[G,G]."""
    H = commutator_subgroup(G)
    ids, reps = _coset_ids(G, H)
    q = len(reps)
    if q == 1:
        return [Character(G, [ONE] * len(G.elements))]
    # multiplication table of the abelian quotient
    table = [[0] * q for _ in range(q)]
    for a in range(q):
        for b in range(q):
            prod = mat_mul(G.elements[reps[a]], G.elements[reps[b]])
            if isinstance(G, ProjectiveGroup):
                prod = scalar_normalize(prod)
            table[a][b] = ids[G.index[prod]]
    # relation lattice of Z^q -> quotient: e_a + e_b - e_{ab}, and e_identity
    id_coset = ids[0]
    rel_rows = []
    seen = set()
    for a in range(q):
        for b in range(a, q):
            row = [0] * q
            row[a] += 1
            row[b] += 1
            row[table[a][b]] -= 1
            t = tuple(row)
            if t not in seen and any(row):
                seen.add(t)
                rel_rows.append(row)
    row = [0] * q
    row[id_coset] = 1
    rel_rows.append(row)
    d, u, v = smith_normal_form(rel_rows)
    diag = [d[i][i] for i in range(q)]
    assert all(diag), "quotient of a finite group must be finite"
    # characters: phi = V . (t_1/d_1, ..., t_q/d_q), value on coset c is
    # exp(2 pi i phi_c)
    chars = []
    import itertools

    for ts in itertools.product(*(range(x) for x in diag)):
        coset_vals = []
        for c in range(q):
            num = 0
            den = 1
            for l in range(q):
                if ts[l]:
                    # add ts[l] * V[c][l] / diag[l]
                    num = num * diag[l] + ts[l] * v[c][l] * den
                    den *= diag[l]
            if den == 1:
                coset_vals.append(ONE)
            else:
                coset_vals.append(zeta(den, num % den))
        chars.append(Character(G, [coset_vals[ids[i]] for i in range(len(G.elements))]))
    # deterministic order: trivial character first, then by value tuple
    def sort_key(ch):
        return [cyclo_to_str(x) for x in ch.values]

    chars.sort(key=lambda ch: (not ch.is_trivial(), sort_key(ch)))
    return chars


# ---------------------------------------------------------------------
# projective points and orbits
# ---------------------------------------------------------------------

def canonical_point(coords: Sequence) -> Tuple[Cyclo, ...]:
    vals = [Cyclo._coerce(c) for c in coords]
    for x in vals:
        if x:
            inv = x.inverse()
            return tuple(y * inv for y in vals)
    raise ValueError("zero projective point")


def orbit(G: FiniteMatrixGroup, p: Sequence) -> List[Tuple[Cyclo, ...]]:
    start = canonical_point(p)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for q in frontier:
            for g in G.generators:
                r = canonical_point(mat_vec(g, q))
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(seen, key=lambda pt: tuple(cyclo_to_str(c) for c in pt))


# ---------------------------------------------------------------------
# named constructors
# ---------------------------------------------------------------------

def hessian_cover() -> FiniteMatrixGroup:
    """Order-648 triple cover generated by three pseudo-reflections."""
    lam = zeta(3)
    lam2 = lam * lam
    s = sqrt_minus3().inverse()
    r1 = ((1, 0, 0), (0, 1, 0), (0, 0, lam2))
    r2 = tuple(
        tuple(s * (lam if i == j else lam2) for j in range(3)) for i in range(3)
    )
    r3 = ((1, 0, 0), (0, lam2, 0), (0, 0, 1))
    return closure([r1, r2, r3])


def _hessian_projective_gens():
    lam = zeta(3)
    lam2 = lam * lam
    T = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    U = ((1, 0, 0), (0, 1, 0), (0, 0, lam))
    S = ((1, 0, 0), (0, lam, 0), (0, 0, lam2))
    V = ((1, 1, 1), (1, lam, lam2), (1, lam2, lam))
    return T, U, S, V


def hessian_projective() -> ProjectiveGroup:
    """The order-216 Hessian group of plane projective transformations."""
    T, U, S, V = _hessian_projective_gens()
    return projective_closure([T, U, S, V])


def subgroup_E() -> ProjectiveGroup:
    T, U, S, V = _hessian_projective_gens()
    return projective_closure([T, S, V])


def subgroup_F() -> ProjectiveGroup:
    T, U, S, V = _hessian_projective_gens()
    Um = mat(U)
    UVU = mat_mul(mat_mul(Um, mat(V)), mat_inverse(Um))
    return projective_closure([T, S, V, UVU])


def icosahedral_A5() -> FiniteMatrixGroup:
    """A5 in SL(3), entries in the golden-ratio field."""
    r = ONE + zeta(5) + zeta(5, 4)  # (1 + sqrt 5)/2
    A = ((-1, 0, 0), (0, -1, 0), (r, r, 1))
    B = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    return closure([A, B])


def klein_PSL27() -> FiniteMatrixGroup:
    """PSL(2, 7) in SL(3), the symmetry group of the Klein quartic."""
    r = zeta(7) + zeta(7, 2) + zeta(7, 4)  # (-1 + sqrt(-7))/2
    A = ((1, -(ONE + r), r), (0, -1, 0), (0, 0, -1))
    B = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    return closure([A, B])


def valentiner_cover() -> FiniteMatrixGroup:
    """Perfect triple cover of A6 in SL(3), order 1080."""
    xi = zeta(15)
    alpha = -(xi ** 7) - xi ** 13
    beta = -(xi ** 2) - xi ** 8
    A = ((-1, 0, 0), (0, 0, 1), (0, 1, 0))
    B = ((0, 1, 0), (-1, 0, 0), (alpha, beta, 1))
    return closure([A, B])


def binary_octahedral_ext() -> FiniteMatrixGroup:
    """Order-96 subgroup of GL(2) fixing the foliation of
    x dy - y dx + d(x^5 y - x y^5); center {scalar of order dividing 4}."""
    i = zeta(4)
    half = rat(1, 2)
    # rotation lifts adjusted by scalars so x^5 y - x y^5 transforms by det
    a = ((i, 0), (0, 1))
    b = ((0, 1), (-1, 0))
    c = (
        ((ONE + i) * half, (ONE + i) * half),
        ((-ONE + i) * half, (ONE - i) * half),
    )
    return closure([a, b, c, ((i, 0), (0, i))])


def binary_icosahedral_ext() -> FiniteMatrixGroup:
    """Order-600 subgroup of GL(2) fixing the foliation of
    x dy - y dx + d(x^11 y + 11 x^6 y^6 - x y^11); center of order 10."""
    e = zeta(5)
    s5_inv = sqrt5().inverse()
    S = ((e ** 3, 0), (0, e ** 2))
    T = (
        (-(e - e ** 4) * s5_inv, (e ** 2 - e ** 3) * s5_inv),
        ((e ** 2 - e ** 3) * s5_inv, (e - e ** 4) * s5_inv),
    )
    z10 = -(e ** 3)  # primitive 10th root of unity
    return closure([S, T, ((z10, 0), (0, z10))])


def jouanolou_aut(d: int) -> ProjectiveGroup:
    """Projective symmetries of the degree-d Jouanolou foliation: order 3(d^2+d+1)."""
    n = d * d + d + 1
    l = zeta(n)
    T = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    D = ((l ** (d + 1), 0, 0), (0, l, 0), (0, 0, 1))
    return projective_closure([T, D])


def fermat_aut(d: int) -> ProjectiveGroup:
    """Projective symmetries of the degree-d Fermat foliation: order 6(d-1)^2."""
    lam = zeta(d - 1) if d > 2 else ONE
    T = ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    W = ((1, 0, 0), (0, 0, 1), (0, 1, 0))
    D1 = ((lam, 0, 0), (0, 1, 0), (0, 0, 1))
    D2 = ((1, 0, 0), (0, lam, 0), (0, 0, 1))
    return projective_closure([T, W, D1, D2])


_NAMED = {
    "hessian-cover": hessian_cover,
    "hessian": hessian_projective,
    "E": subgroup_E,
    "F": subgroup_F,
    "icosahedral": icosahedral_A5,
    "klein": klein_PSL27,
    "valentiner": valentiner_cover,
    "octahedral-ext": binary_octahedral_ext,
    "icosahedral-ext": binary_icosahedral_ext,
}


def named_group(name: str, d: Optional[int] = None):
    """Group constructor lookup used by the CLI."""
    if name == "trivial":
        ident = identity(3)
        return FiniteMatrixGroup(3, [ident], {ident: 0}, [ident])
    if name == "jouanolou":
        if d is None:
            raise ValueError("jouanolou group needs a degree")
        return jouanolou_aut(d)
    if name == "fermat":
        if d is None:
            raise ValueError("fermat group needs a degree")
        return fermat_aut(d)
    if name in _NAMED:
        return _NAMED[name]()
    raise ValueError(f"unknown group name: {name}")


# ---------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------

def group_from_json(text: str) -> FiniteMatrixGroup:
    doc = json.loads(text)
    dim = doc["dimension"]
    gens = []
    for g in doc["generators"]:
        if len(g) != dim or any(len(row) != dim for row in g):
            raise ValueError("generator shape does not match dimension")
        gens.append(tuple(tuple(parse_cyclo(x) for x in row) for row in g))
    return closure(gens)


def group_to_json(G: FiniteMatrixGroup) -> str:
    return json.dumps(
        {
            "dimension": G.dimension,
            "generators": [
                [[cyclo_to_str(x) for x in row] for row in g] for g in G.generators
            ],
        },
        indent=2,
    )
