"""Bases of divergence-free semi-invariant vector fields.

Two routes to the chi-isotypic part of the degree-d vector fields.
reynolds_image averages the group action over every element (the
textbook idempotent projector); it is simple and faithful, and serves
as an oracle at small degrees.  semi_invariant_fields computes the same
eigenspace by staged elimination that scales to degree 16 for the
order-1080 group: conjugate the group into a basis where a large
subgroup acts by monomial matrices, solve the monomial constraints with
a union-find over the monomial-field basis carrying scalar potentials,
then impose the few remaining dense generators by exact elimination.
The surviving space is pushed back to the original coordinates,
quotiented by the radial subspace via make_divergence_free, normalized,
and certified against the Molien series and check_character.

Composition of monomials with a linear map is done by incremental
substitution tables (x^a built from x^(a - e_j) times a linear form),
never by explicit symmetric-power matrices.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .cyclotomic import Cyclo, ONE, ZERO, rat, zeta
from .geometry import (
    HomogeneousVectorField,
    make_divergence_free,
    monomials_of_degree,
)
from .groups import Character, FiniteMatrixGroup, linear_characters
from .linalg import (
    Matrix,
    identity,
    independent_subset,
    mat,
    mat_inverse,
    mat_mul,
    nullspace,
)
from .polynomials import Polynomial
from .series import molien_fields

DEGREE_CAP = 20


class DimensionMismatchError(RuntimeError):
    """Computed basis size disagrees with the Molien series coefficient."""


class FieldSpaceBasis:
    """Basis of the degree-d divergence-free chi-semi-invariant fields."""

    __slots__ = ("degree", "character", "basis")

    def __init__(self, degree: int, character: Character, basis: List[HomogeneousVectorField]):
        self.degree = degree
        self.character = character
        self.basis = basis

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def __repr__(self):
        return f"FieldSpaceBasis(degree={self.degree}, dim={len(self.basis)})"


@lru_cache(maxsize=None)
def _monomial_basis(d: int, nvars: int = 3):
    monos = tuple(monomials_of_degree(d, nvars))
    index = {m: i for i, m in enumerate(monos)}
    return monos, index


class _SubstTable:
    """Incremental table of x^a composed with a fixed linear map.

    Initialized with the rows of the INVERSE of the map phi, so that
    table[a] is the expansion of x^a o phi^{-1} as {exponents: coeff}.
    """

    __slots__ = ("nvars", "linear", "table", "degree_done")

    def __init__(self, inverse_rows: Matrix):
        n = len(inverse_rows)
        self.nvars = n
        self.linear = [
            [(t, c) for t, c in enumerate(row) if c] for row in inverse_rows
        ]
        self.table: Dict[tuple, Dict[tuple, Cyclo]] = {(0,) * n: {(0,) * n: ONE}}
        self.degree_done = 0

    def extend(self, d: int) -> None:
        n = self.nvars
        for k in range(self.degree_done + 1, d + 1):
            for a in monomials_of_degree(k, n):
                j = next(i for i, e in enumerate(a) if e)
                prev_key = tuple(
                    e - 1 if i == j else e for i, e in enumerate(a)
                )
                prev = self.table[prev_key]
                out: Dict[tuple, Cyclo] = {}
                for t, c in self.linear[j]:
                    for e2, c2 in prev.items():
                        e3 = list(e2)
                        e3[t] += 1
                        key = tuple(e3)
                        cur = out.get(key)
                        v = c * c2
                        out[key] = v if cur is None else cur + v
                self.table[a] = {e: c for e, c in out.items() if c}
        self.degree_done = max(self.degree_done, d)

    def composed(self, a: tuple) -> Dict[tuple, Cyclo]:
        return self.table[a]


def _monomial_shape(m: Matrix) -> Optional[Tuple[tuple, tuple]]:
    """(perm, vals) with m[k][perm[k]] = vals[k], or None if not monomial."""
    n = len(m)
    perm = []
    vals = []
    for row in m:
        nz = [j for j, c in enumerate(row) if c]
        if len(nz) != 1:
            return None
        perm.append(nz[0])
        vals.append(row[nz[0]])
    if len(set(perm)) != n:
        return None
    return tuple(perm), tuple(vals)


class _MonomialAction:
    """Pushforward of monomial fields under a monomial matrix."""

    __slots__ = ("perm", "vals", "inv_of", "_invs", "_inv_pows")

    def __init__(self, perm: tuple, vals: tuple):
        self.perm = perm
        self.vals = vals
        self.inv_of = [0] * len(perm)
        for k, p in enumerate(perm):
            self.inv_of[p] = k
        self._invs = [v.inverse() for v in vals]
        self._inv_pows = [[ONE] for _ in vals]

    def _inv_pow(self, k: int, e: int) -> Cyclo:
        lst = self._inv_pows[k]
        while len(lst) <= e:
            lst.append(lst[-1] * self._invs[k])
        return lst[e]

    def apply(self, comp: int, a: tuple) -> Tuple[int, tuple, Cyclo]:
        """Image of x^a d/dx_comp: (component, exponents, scalar)."""
        perm = self.perm
        a2 = tuple(a[p] for p in perm)
        k0 = self.inv_of[comp]
        s = self.vals[k0]
        for k, e in enumerate(a2):
            if e:
                s = s * self._inv_pow(k, e)
        return k0, a2, s


def _element_order(m: Matrix, idm: Matrix) -> int:
    p = m
    k = 1
    while p != idm:
        p = mat_mul(p, m)
        k += 1
    return k


def _eigenvector_frame(G: FiniteMatrixGroup) -> Optional[Matrix]:
    """Frame of exact eigenvectors of a maximal-order element, if it has
    a full eigenbasis; scanning an element prefix suffices in practice."""
    n = G.dimension
    idm = identity(n)
    best_h = None
    best_ord = 1
    for e in G.elements[:120]:
        o = _element_order(e, idm)
        if o > best_ord:
            best_ord, best_h = o, e
    if best_h is None:
        return None
    cols: List[tuple] = []
    for k in range(best_ord):
        lam = zeta(best_ord, k)
        rows = [
            [best_h[i][j] - lam if i == j else best_h[i][j] for j in range(n)]
            for i in range(n)
        ]
        cols.extend(nullspace(rows, n))
        if len(cols) == n:
            break
    if len(cols) != n:
        return None
    return mat([[cols[j][i] for j in range(n)] for i in range(n)])


def _monomial_elements(G: FiniteMatrixGroup, C: Optional[Matrix], Ci: Optional[Matrix]):
    out = []
    for i, e in enumerate(G.elements):
        m = e if C is None else mat_mul(Ci, mat_mul(e, C))
        sh = _monomial_shape(m)
        if sh is not None:
            out.append((i, m, sh))
    return out


def _close(gen_mats: List[Matrix], dimension: int) -> set:
    idm = identity(dimension)
    have = {idm}
    frontier = [idm]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gen_mats:
                p = mat_mul(e, g)
                if p not in have:
                    have.add(p)
                    nxt.append(p)
        frontier = nxt
    return have


def _generating_subset(monos, dimension: int):
    """Greedy generating subset of the (closed) monomial element list.

    Imposing eigen-constraints for a generating set of the monomial
    subgroup is equivalent to imposing them for every element."""
    gens = []
    gen_mats: List[Matrix] = []
    have = _close([], dimension)
    for i, m, sh in monos:
        if m in have:
            continue
        gens.append((i, sh))
        gen_mats.append(m)
        have = _close(gen_mats, dimension)
    return gens


class _GroupData:
    """Cached per-group data for the staged eigenspace computation."""

    def __init__(self, G: FiniteMatrixGroup):
        self.G = G
        n = G.dimension
        orig = _monomial_elements(G, None, None)
        C = Ci = None
        monos = orig
        if len(orig) < len(G.elements):
            frame = _eigenvector_frame(G)
            if frame is not None:
                frame_inv = mat_inverse(frame)
                conj = _monomial_elements(G, frame, frame_inv)
                if len(conj) > len(orig):
                    C, Ci, monos = frame, frame_inv, conj
        self.C = C
        self.Ci = Ci
        mono_index = {i for i, _, _ in monos}
        self.mono_actions = [
            (i, _MonomialAction(*sh)) for i, sh in _generating_subset(monos, n)
        ]
        # generators that stay dense in the working frame, with their tables
        self.dense: List[Tuple[int, Matrix, _SubstTable]] = []
        for g in G.generators:
            gi = G.index[g]
            if gi in mono_index:
                continue
            gg = g if C is None else mat_mul(Ci, mat_mul(g, C))
            self.dense.append((gi, gg, _SubstTable(mat_inverse(gg))))
        # table for pushing results back to the original coordinates
        self.back_table = None if C is None else _SubstTable(Ci)
        # original-frame generator tables, built on demand by check_character
        self.orig_tables: Dict[int, _SubstTable] = {}


def _group_data(G: FiniteMatrixGroup) -> _GroupData:
    gd = getattr(G, "_semi_invariant_data", None)
    if gd is None:
        gd = _GroupData(G)
        G._semi_invariant_data = gd
    return gd


class _UnionFind:
    """Union-find with multiplicative potentials: c_u = pot[u] * c_root."""

    __slots__ = ("parent", "pot", "dead")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.pot = [ONE] * n
        self.dead = [False] * n

    def find(self, u: int) -> Tuple[int, Cyclo]:
        chain = []
        while self.parent[u] != u:
            chain.append(u)
            u = self.parent[u]
        acc = ONE
        for w in reversed(chain):
            acc = acc * self.pot[w]
            self.parent[w] = u
            self.pot[w] = acc
        return u, acc

    def union(self, u: int, v: int, f: Cyclo) -> None:
        """Impose c_v = f * c_u; inconsistent cycles kill the component."""
        ru, pu = self.find(u)
        rv, pv = self.find(v)
        if ru == rv:
            if pv != f * pu:
                self.dead[ru] = True
            return
        self.parent[rv] = ru
        self.pot[rv] = f * pu * pv.inverse()
        self.dead[ru] = self.dead[ru] or self.dead[rv]


def _eigenspace_columns(gd: _GroupData, chi: Character, d: int) -> List[Dict[int, Cyclo]]:
    """chi-eigenspace of the group on degree-d fields, in the working
    frame, as sparse columns over (component, monomial) slots."""
    n = gd.G.dimension
    monos, midx = _monomial_basis(d, n)
    nm = len(monos)
    N = n * nm
    uf = _UnionFind(N)
    for gi, act in gd.mono_actions:
        cvi = chi(gi).inverse()
        for comp in range(n):
            base = comp * nm
            for mi, a in enumerate(monos):
                k0, a2, s = act.apply(comp, a)
                uf.union(base + mi, k0 * nm + midx[a2], s * cvi)
    groups: Dict[int, List[Tuple[int, Cyclo]]] = {}
    for u in range(N):
        r, p = uf.find(u)
        if uf.dead[r]:
            continue
        groups.setdefault(r, []).append((u, p))
    cols: List[Dict[int, Cyclo]] = [dict(lst) for _, lst in sorted(groups.items())]
    for gi, gg, table in gd.dense:
        if not cols:
            break
        table.extend(d)
        cv = chi(gi)
        wcols: List[Dict[int, Cyclo]] = []
        for col in cols:
            w: Dict[int, Cyclo] = {}
            for u, cu in col.items():
                comp, mi = divmod(u, nm)
                sub = table.composed(monos[mi])
                for k in range(n):
                    gk = gg[k][comp]
                    if not gk:
                        continue
                    base = k * nm
                    f = cu * gk
                    for e2, c2 in sub.items():
                        v = base + midx[e2]
                        cur = w.get(v)
                        t = f * c2
                        w[v] = t if cur is None else cur + t
                cur = w.get(u, ZERO)
                w[u] = cur - cv * cu
            wcols.append(w)
        row_ids = sorted(set().union(*[set(w) for w in wcols]))
        combos = nullspace(
            ([w.get(r, ZERO) for w in wcols] for r in row_ids), len(wcols)
        )
        new_cols = []
        for x in combos:
            nc: Dict[int, Cyclo] = {}
            for t, xt in enumerate(x):
                if not xt:
                    continue
                for u, cu in cols[t].items():
                    cur = nc.get(u)
                    v = xt * cu
                    nc[u] = v if cur is None else cur + v
            new_cols.append({u: c for u, c in nc.items() if c})
        cols = new_cols
    return cols


def _column_to_field(col: Dict[int, Cyclo], d: int, monos) -> HomogeneousVectorField:
    nm = len(monos)
    comps: List[Dict[tuple, Cyclo]] = [{}, {}, {}]
    for u, c in col.items():
        comp, mi = divmod(u, nm)
        comps[comp][monos[mi]] = c
    return HomogeneousVectorField(
        tuple(Polynomial(t, 3) for t in comps), degree=d
    )


def _apply_linear(outer: Matrix, table: _SubstTable, col: Dict[int, Cyclo],
                  d: int, monos) -> Dict[int, Cyclo]:
    """Pushforward of a sparse field column by the linear map with the
    given outer matrix and substitution table of its inverse."""
    nm = len(monos)
    _, midx = _monomial_basis(d, len(outer))
    table.extend(d)
    out: Dict[int, Cyclo] = {}
    for u, cu in col.items():
        comp, mi = divmod(u, nm)
        sub = table.composed(monos[mi])
        for k in range(len(outer)):
            ck = outer[k][comp]
            if not ck:
                continue
            base = k * nm
            f = cu * ck
            for e2, c2 in sub.items():
                v = base + midx[e2]
                cur = out.get(v)
                t = f * c2
                out[v] = t if cur is None else cur + t
    return {u: c for u, c in out.items() if c}


def _field_to_column(v: HomogeneousVectorField, monos) -> Dict[int, Cyclo]:
    nm = len(monos)
    _, midx = _monomial_basis(v.degree, 3)
    col: Dict[int, Cyclo] = {}
    for comp, p in enumerate(v.components):
        base = comp * nm
        for e, c in p.terms.items():
            col[base + midx[e]] = c
    return col


def _normalize_field(v: HomogeneousVectorField, monos) -> HomogeneousVectorField:
    """Scale so the first nonzero coefficient in monomial order is 1."""
    for p in v.components:
        for e in monos:
            c = p.terms.get(e)
            if c:
                return v.scale(c.inverse())
    return v


def _molien_coefficient(G: FiniteMatrixGroup, chi: Character, d: int) -> int:
    cache = getattr(G, "_molien_fields_cache", None)
    if cache is None:
        cache = {}
        G._molien_fields_cache = cache
    key = tuple(chi.values)
    ser = cache.get(key)
    if ser is None or ser.truncation_degree < d:
        ser = molien_fields(G, chi, max(d, DEGREE_CAP))
        cache[key] = ser
    return ser[d]


def _cached_characters(G: FiniteMatrixGroup) -> List[Character]:
    chars = getattr(G, "_linear_characters", None)
    if chars is None:
        chars = linear_characters(G)
        G._linear_characters = chars
    return chars


def semi_invariant_fields(
    G: FiniteMatrixGroup, chi: Character, d: int, max_degree: int = DEGREE_CAP
) -> FieldSpaceBasis:
    """Basis of the degree-d divergence-free chi-semi-invariant fields.

    The size always equals the t^d coefficient of molien_fields; a
    disagreement raises DimensionMismatchError.  Every basis vector is
    divergence-free, normalized, and certified by check_character.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    if d > max_degree:
        raise ValueError(f"degree {d} exceeds the cap {max_degree}")
    if G.dimension != 3:
        raise ValueError("vector fields live on 3 coordinates")
    gd = _group_data(G)
    monos, _ = _monomial_basis(d, 3)
    cols = _eigenspace_columns(gd, chi, d)
    fields = []
    for col in cols:
        if gd.C is not None:
            col = _apply_linear(gd.C, gd.back_table, col, d, monos)
        v = make_divergence_free(_column_to_field(col, d, monos))
        if v:
            fields.append(v)
    if fields:
        vecs = [v.coefficient_vector(monos) for v in fields]
        fields = [fields[i] for i in independent_subset(vecs)]
    fields = [_normalize_field(v, monos) for v in fields]
    expected = _molien_coefficient(G, chi, d)
    if len(fields) != expected:
        raise DimensionMismatchError(
            f"got {len(fields)} fields at degree {d}, Molien series says {expected}"
        )
    for v in fields:
        got = check_character(v, G)
        if got is None or got != chi:
            raise DimensionMismatchError(
                f"certification failed at degree {d}: field is not "
                f"semi-invariant for the requested character"
            )
    return FieldSpaceBasis(d, chi, fields)


def check_character(
    v: HomogeneousVectorField, G: FiniteMatrixGroup
) -> Optional[Character]:
    """The unique character with pushforward(g, v) = chi(g) v for all g,
    or None if v is not semi-invariant.  Scalars are computed on the
    generators and matched against the character table of G."""
    if not v:
        raise ValueError("the zero field has no character")
    gd = _group_data(G)
    d = v.degree
    monos, _ = _monomial_basis(d, 3)
    col = _field_to_column(v, monos)
    scalars = []
    for g in G.generators:
        gi = G.index[g]
        table = gd.orig_tables.get(gi)
        if table is None:
            table = _SubstTable(mat_inverse(g))
            gd.orig_tables[gi] = table
        image = _apply_linear(g, table, col, d, monos)
        s = _proportionality(image, col)
        if s is None:
            return None
        scalars.append(s)
    for ch in _cached_characters(G):
        if all(ch(G.index[g]) == s for g, s in zip(G.generators, scalars)):
            return ch
    return None


def _proportionality(image: Dict[int, Cyclo], col: Dict[int, Cyclo]) -> Optional[Cyclo]:
    if set(image) != set(col):
        return None
    u = min(col)
    s = image[u] * col[u].inverse()
    for u, c in col.items():
        if image[u] != s * c:
            return None
    return s


# -- full-group Reynolds average (oracle scale) --------------------------


def reynolds_matrix(G: FiniteMatrixGroup, chi: Character, d: int) -> List[List[Cyclo]]:
    """Matrix of the averaging operator (1/|G|) sum chi(g)^{-1} g_* on the
    monomial basis of degree-d fields; rows and columns indexed by
    (component, monomial) slots.  Idempotent with image (S^d tensor W)^chi."""
    if G.dimension != 3:
        raise ValueError("vector fields live on 3 coordinates")
    cache = getattr(G, "_reynolds_cache", None)
    if cache is None:
        cache = {}
        G._reynolds_cache = cache
    key = (tuple(chi.values), d)
    got = cache.get(key)
    if got is not None:
        return got
    monos, midx = _monomial_basis(d, 3)
    nm = len(monos)
    N = 3 * nm
    avg = [[ZERO] * N for _ in range(N)]
    invs = G.inverses()
    for i, g in enumerate(G.elements):
        table = _SubstTable(invs[i])
        table.extend(d)
        weight = chi(i).inverse()
        for comp in range(3):
            base_u = comp * nm
            for mi, a in enumerate(monos):
                u = base_u + mi
                sub = table.composed(a)
                for k in range(3):
                    gk = g[k][comp]
                    if not gk:
                        continue
                    f = weight * gk
                    base = k * nm
                    for e2, c2 in sub.items():
                        r = base + midx[e2]
                        avg[r][u] = avg[r][u] + f * c2
    inv_order = rat(1, G.order)
    avg = [[c * inv_order for c in row] for row in avg]
    cache[key] = avg
    return avg


def reynolds_apply(
    G: FiniteMatrixGroup, chi: Character, v: HomogeneousVectorField
) -> HomogeneousVectorField:
    """Apply the averaging operator to one field."""
    monos, _ = _monomial_basis(v.degree, 3)
    col = _field_to_column(v, monos)
    m = reynolds_matrix(G, chi, v.degree)
    out: Dict[int, Cyclo] = {}
    for u, cu in col.items():
        for r in range(len(m)):
            c = m[r][u]
            if c:
                cur = out.get(r)
                t = c * cu
                out[r] = t if cur is None else cur + t
    return _column_to_field({u: c for u, c in out.items() if c}, v.degree, monos)


def reynolds_image(
    G: FiniteMatrixGroup, chi: Character, d: int
) -> List[HomogeneousVectorField]:
    """Exact column-space basis of the averaging operator on degree-d
    fields; spans the full chi-eigenspace (S^d tensor W)^chi."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    monos, _ = _monomial_basis(d, 3)
    m = reynolds_matrix(G, chi, d)
    N = len(m)
    columns = [tuple(m[r][u] for r in range(N)) for u in range(N)]
    keep = independent_subset(columns)
    fields = []
    for u in keep:
        col = {r: m[r][u] for r in range(N) if m[r][u]}
        fields.append(_normalize_field(_column_to_field(col, d, monos), monos))
    return fields

