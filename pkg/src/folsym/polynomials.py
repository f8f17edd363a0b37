"""Sparse multivariate polynomials over cyclotomic numbers.

Terms are stored as a dict mapping exponent tuples to nonzero Cyclo
coefficients.  Monomial order is graded lexicographic with x < y (< z).
Includes exact multivariate gcd by primitive-part pseudo-remainder
recursion, and the text grammar used by the file formats.
"""

from __future__ import annotations

import re
from typing import Dict, List, Optional, Sequence, Tuple

from .cyclotomic import Cyclo, ONE, ZERO, cyclo_to_str, parse_cyclo, rat

Exponents = Tuple[int, ...]


def grlex_key(exps: Exponents) -> Tuple[int, Exponents]:
    return (sum(exps), exps)


class Polynomial:
    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Dict[Exponents, Cyclo], nvars: int):
        self.terms = {e: c for e, c in terms.items() if c}
        self.nvars = nvars

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls({}, nvars)

    @classmethod
    def constant(cls, c, nvars: int) -> "Polynomial":
        c = Cyclo._coerce(c)
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def variable(cls, i: int, nvars: int) -> "Polynomial":
        e = [0] * nvars
        e[i] = 1
        return cls({tuple(e): ONE}, nvars)

    @classmethod
    def monomial(cls, exps: Sequence[int], coef=1, nvars: Optional[int] = None) -> "Polynomial":
        exps = tuple(exps)
        return cls({exps: Cyclo._coerce(coef)}, nvars if nvars is not None else len(exps))

    # -- basics --------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({poly_to_str(self)!r})"

    def copy_terms(self) -> Dict[Exponents, Cyclo]:
        return dict(self.terms)

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial({e: c for e, c in self.terms.items() if sum(e) == d}, self.nvars)

    def leading(self) -> Tuple[Exponents, Cyclo]:
        """Leading term in graded lex order."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def trailing(self) -> Tuple[Exponents, Cyclo]:
        """First term in graded lex order (used for normalization)."""
        e = min(self.terms, key=grlex_key)
        return e, self.terms[e]

    def monic(self) -> "Polynomial":
        """Scale so the trailing (first in monomial order) coefficient is 1."""
        if not self.terms:
            return self
        _, c = self.trailing()
        return self * c.inverse()

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Cyclo:
        return self.terms.get((0,) * self.nvars, ZERO)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(out, self.nvars)

    def __neg__(self) -> "Polynomial":
        return Polynomial({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            out: Dict[Exponents, Cyclo] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    s = out.get(e, ZERO) + c1 * c2
                    if s:
                        out[e] = s
                    else:
                        out.pop(e, None)
            return Polynomial(out, self.nvars)
        c = Cyclo._coerce(other)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial({e: v * c for e, v in self.terms.items()}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ValueError("mixed variable counts")
            return other
        return Polynomial.constant(other, self.nvars)

    # -- calculus and substitution --------------------------------------
    def diff(self, i: int) -> "Polynomial":
        out: Dict[Exponents, Cyclo] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = c * rat(e[i])
        return Polynomial(out, self.nvars)

    def compose_linear(self, g) -> "Polynomial":
        """P(g . x): substitute variable i by the linear form sum_j g[i][j] x_j."""
        n = self.nvars
        forms = [
            Polynomial({tuple(1 if t == j else 0 for t in range(n)): Cyclo._coerce(g[i][j])
                        for j in range(n) if g[i][j]}, n)
            for i in range(n)
        ]
        pow_cache: Dict[Tuple[int, int], Polynomial] = {}

        def form_pow(i: int, k: int) -> Polynomial:
            key = (i, k)
            if key not in pow_cache:
                pow_cache[key] = forms[i] ** k
            return pow_cache[key]

        out = Polynomial.zero(n)
        for e, c in self.terms.items():
            term = Polynomial.constant(c, n)
            for i, k in enumerate(e):
                if k:
                    term = term * form_pow(i, k)
            out = out + term
        return out

    def eval_at(self, point: Sequence) -> Cyclo:
        vals = [Cyclo._coerce(p) for p in point]
        total = ZERO
        for e, c in self.terms.items():
            v = c
            for x, k in zip(vals, e):
                if k:
                    v = v * x ** k
            total = total + v
        return total


# ---------------------------------------------------------------------
# exact division and gcd
# ---------------------------------------------------------------------

def exact_divide(f: Polynomial, d: Polynomial) -> Optional[Polynomial]:
    """f / d when the division is exact, else None."""
    if not d:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return Polynomial.zero(f.nvars)
    quo: Dict[Exponents, Cyclo] = {}
    rem = f
    de, dc = d.leading()
    dc_inv = dc.inverse()
    while rem:
        re, rc = rem.leading()
        qe = tuple(a - b for a, b in zip(re, de))
        if any(x < 0 for x in qe):
            return None
        qc = rc * dc_inv
        quo[qe] = quo.get(qe, ZERO) + qc
        rem = rem - Polynomial({qe: qc}, f.nvars) * d
    return Polynomial(quo, f.nvars)


def _to_univariate(f: Polynomial, var: int) -> List[Polynomial]:
    """Dense coefficient list in the given variable; coefficients keep nvars."""
    deg = max((e[var] for e in f.terms), default=0)
    coeffs = [Polynomial.zero(f.nvars) for _ in range(deg + 1)]
    for e, c in f.terms.items():
        e2 = list(e)
        k = e2[var]
        e2[var] = 0
        coeffs[k] = coeffs[k] + Polynomial({tuple(e2): c}, f.nvars)
    return coeffs


def _from_univariate(coeffs: List[Polynomial], var: int, nvars: int) -> Polynomial:
    out = Polynomial.zero(nvars)
    for k, c in enumerate(coeffs):
        if c:
            shift = {tuple(e[i] + (k if i == var else 0) for i in range(nvars)): v
                     for e, v in c.terms.items()}
            out = out + Polynomial(shift, nvars)
    return out


def _trim(coeffs: List[Polynomial]) -> List[Polynomial]:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _pseudo_rem(f: List[Polynomial], g: List[Polynomial], nvars: int) -> List[Polynomial]:
    """Pseudo-remainder of dense coefficient lists (main-variable division)."""
    f = f[:]
    lg = g[-1]
    while len(f) >= len(g):
        lf = f[-1]
        shift = len(f) - len(g)
        f = [c * lg for c in f]
        for i, gc in enumerate(g):
            f[i + shift] = f[i + shift] - lf * gc
        f = _trim(f)
        if not f:
            break
    return f


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd over the cyclotomic coefficient field."""
    if not f:
        return g.monic() if g else g
    if not g:
        return f.monic()
    n = f.nvars
    # pick the last variable that actually appears in either polynomial
    var = None
    for i in reversed(range(n)):
        if any(e[i] for e in f.terms) or any(e[i] for e in g.terms):
            var = i
            break
    if var is None:
        return Polynomial.constant(1, n)

    def content(coeffs: List[Polynomial]) -> Polynomial:
        c = Polynomial.zero(n)
        for x in coeffs:
            if x:
                c = poly_gcd(c, x) if c else x.monic()
                if c.is_constant():
                    return Polynomial.constant(1, n)
        return c

    fu = _trim(_to_univariate(f, var))
    gu = _trim(_to_univariate(g, var))
    if len(fu) == 1 and len(gu) == 1:
        return poly_gcd(fu[0], gu[0])
    cf = content(fu)
    cg = content(gu)
    fp = [exact_divide(x, cf) for x in fu]
    gp = [exact_divide(x, cg) for x in gu]
    cc = poly_gcd(cf, cg)
    a, b = fp, gp
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b, n)
        if r:
            cr = content(r)
            r = [exact_divide(x, cr) for x in r]
        a, b = b, r
    ca = content(a)
    a = [exact_divide(x, ca) for x in a]
    return (cc * _from_univariate(a, var, n)).monic()


# ---------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------

_VAR_SETS = {2: "xy", 3: "XYZ"}
_VAR_INDEX = {"x": 0, "y": 1, "X": 0, "Y": 1, "Z": 2}
_MONO_RE = re.compile(r"^([xyXYZ])(?:\^(\d+))?$")


class PolyParseError(ValueError):
    pass


def parse_polynomial(text: str, nvars: Optional[int] = None) -> Polynomial:
    """Parse `term ('+' term)*` with term = [cyclo-factors '*'] monomial-factors."""
    s = text.strip()
    if not s:
        raise PolyParseError("empty polynomial text")
    if s == "0":
        if nvars is None:
            raise PolyParseError("cannot infer variable count of the zero polynomial")
        return Polynomial.zero(nvars)
    # turn binary '-' into '+-' so both read as a signed term, then split
    # top-level '+' (a '-' never occurs inside a zeta(...) literal)
    s = re.sub(r"-", "+-", s).lstrip("+").strip()
    chunks = [c.strip() for c in re.split(r"\+(?![^(]*\))", s) if c.strip()]
    if not chunks:
        raise PolyParseError(f"empty polynomial text {text!r}")
    seen_vars = set(re.findall(r"[xyXYZ]", s))
    if nvars is None:
        nvars = 3 if seen_vars & set("XYZ") else 2
    terms: Dict[Exponents, Cyclo] = {}
    for chunk in chunks:
        if not chunk:
            raise PolyParseError(f"empty term in {text!r}")
        negate = chunk.startswith("-")
        if negate:
            chunk = chunk[1:].strip()
        factors = [f.strip() for f in chunk.split("*")]
        exps = [0] * nvars
        coef_parts = []
        for fac in factors:
            m = _MONO_RE.match(fac)
            if m:
                idx = _VAR_INDEX[m.group(1)]
                if idx >= nvars:
                    raise PolyParseError(f"variable {m.group(1)} out of range in {text!r}")
                exps[idx] += int(m.group(2)) if m.group(2) else 1
            else:
                coef_parts.append(fac)
        coef = parse_cyclo("*".join(coef_parts)) if coef_parts else ONE
        if negate:
            coef = -coef
        e = tuple(exps)
        c = terms.get(e, ZERO) + coef
        if c:
            terms[e] = c
        else:
            terms.pop(e, None)
    return Polynomial(terms, nvars)


def poly_to_str(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    names = _VAR_SETS.get(p.nvars)
    parts = []
    for e in sorted(p.terms, key=grlex_key):
        c = p.terms[e]
        mono = "*".join(f"{names[i]}^{k}" for i, k in enumerate(e) if k)
        cs = cyclo_to_str(c)
        if " + " in cs:
            # multi-term coefficient: emit one polynomial term per cyclo term
            for piece in cs.split(" + "):
                parts.append(f"{piece}*{mono}" if mono else piece)
        else:
            parts.append(f"{cs}*{mono}" if mono else cs)
    return " + ".join(parts)
