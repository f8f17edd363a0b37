"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis 1, zeta_n, ..., zeta_n^(phi(n)-1)
reduced modulo the n-th cyclotomic polynomial, always at the *minimal*
conductor: after every operation the result is re-expressed in the smallest
cyclotomic subfield containing it.  Conductors congruent to 2 mod 4 are never
used (Q(zeta_2m) = Q(zeta_m) for odd m).

Rational coefficients are gmpy2.mpq (arbitrary precision, always normalized).
"""

from __future__ import annotations

import math
import re
from functools import lru_cache
from typing import Iterable, Optional, Union

from gmpy2 import mpq, mpz

Rat = mpq
RatLike = Union[int, mpq]

_ZERO = mpq(0)
_ONE = mpq(1)

_DEFAULT_CONDUCTOR_CAP = 120
_conductor_cap = _DEFAULT_CONDUCTOR_CAP


class ConductorCapError(ArithmeticError):
    """Raised when an operation would need a conductor above the cap."""


def conductor_cap() -> int:
    return _conductor_cap


def set_conductor_cap(cap: int) -> None:
    global _conductor_cap
    if cap < 1:
        raise ValueError("conductor cap must be positive")
    _conductor_cap = cap


def euler_phi(n: int) -> int:
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Coefficients (low to high) of the n-th cyclotomic polynomial, as ints."""
    if n == 1:
        return (-1, 1)
    # x^n - 1 divided by the product of Phi_d for proper divisors d of n
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            div = cyclotomic_polynomial(d)
            poly = _exact_poly_div_int(poly, list(div))
    return tuple(poly)


def _exact_poly_div_int(num: list, den: list) -> list:
    """Exact division of integer coefficient lists (low to high)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    dlead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        assert c % dlead == 0
        q = c // dlead
        out[i] = q
        if q:
            for j, dc in enumerate(den):
                num[i + j] -= q * dc
    assert all(c == 0 for c in num[: len(den) - 1])
    return out


def canonical_conductor(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


class _Level:
    """Cached reduction data for one conductor."""

    __slots__ = ("n", "phi", "pow_table", "subfields")

    def __init__(self, n: int):
        self.n = n
        self.phi = euler_phi(n)
        phi = self.phi
        phin = cyclotomic_polynomial(n)
        # pow_table[e] = coefficients of x^e mod Phi_n, for 0 <= e < max(n, 2*phi-1)
        size = max(n, 2 * phi - 1)
        table = []
        for e in range(phi):
            row = [0] * phi
            row[e] = 1
            table.append(tuple(row))
        for e in range(phi, size):
            prev = table[e - 1]
            row = [0] * phi
            for j in range(phi - 1):
                row[j + 1] = prev[j]
            top = prev[phi - 1]
            if top:
                for j in range(phi):
                    row[j] -= top * phin[j]
            table.append(tuple(row))
        self.pow_table = table
        self.subfields = None  # built lazily

    def _build_subfields(self):
        subs = []
        primes = sorted({p for p in range(2, self.n + 1) if self.n % p == 0 and _is_prime(p)})
        seen = set()
        for p in primes:
            m = canonical_conductor(self.n // p)
            if m == self.n or m in seen or m < 1:
                continue
            seen.add(m)
            subs.append(_SubfieldSolver(self, m))
        # larger subfields first: descend in the fewest steps
        subs.sort(key=lambda s: -s.m)
        self.subfields = subs


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in range(2, int(p**0.5) + 1):
        if p % q == 0:
            return False
    return True


class _SubfieldSolver:
    """Solves membership/rewriting of Q(zeta_n) elements into Q(zeta_m), m | n."""

    __slots__ = ("m", "phi_m", "basis", "sel_rows", "inv")

    def __init__(self, level: _Level, m: int):
        self.m = m
        self.phi_m = euler_phi(m)
        n = level.n
        step = n // m
        # columns: zeta_m^j = zeta_n^(j*step) in the big power basis (integer entries)
        cols = [level.pow_table[(j * step) % n] for j in range(self.phi_m)]
        self.basis = cols
        # pick phi_m rows making the selection square-invertible; invert over Q
        rows = self._select_rows(level.phi)
        self.sel_rows = rows
        mat = [[mpq(cols[j][r]) for j in range(self.phi_m)] for r in rows]
        self.inv = _invert_rational(mat)

    def _select_rows(self, big_phi: int):
        k = self.phi_m
        chosen = []
        work = []  # rows in echelon build
        for r in range(big_phi):
            row = [mpq(self.basis[j][r]) for j in range(k)]
            red = _reduce_against(row, work)
            if red is not None:
                work.append(red)
                chosen.append(r)
                if len(chosen) == k:
                    return chosen
        raise RuntimeError("subfield basis not independent")

    def rewrite(self, coeffs) -> Optional[tuple]:
        """Coefficients over Q(zeta_m) if the element lies there, else None."""
        k = self.phi_m
        sel = [coeffs[r] for r in self.sel_rows]
        cand = [sum(self.inv[i][j] * sel[j] for j in range(k)) for i in range(k)]
        # verify on all coordinates
        big = len(coeffs)
        for r in range(big):
            val = _ZERO
            for j in range(k):
                cj = cand[j]
                if cj:
                    b = self.basis[j][r]
                    if b:
                        val += cj * b
            if val != coeffs[r]:
                return None
        return tuple(cand)


def _reduce_against(row, work):
    row = list(row)
    for wrow, piv in work:
        if row[piv]:
            f = row[piv] / wrow[piv]
            for i in range(len(row)):
                row[i] -= f * wrow[i]
    for i, v in enumerate(row):
        if v:
            return (row, i)
    return None


def _invert_rational(mat):
    k = len(mat)
    aug = [list(mat[i]) + [_ONE if j == i else _ZERO for j in range(k)] for i in range(k)]
    for col in range(k):
        piv = next(r for r in range(col, k) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[k:] for row in aug]


@lru_cache(maxsize=None)
def _level(n: int) -> _Level:
    return _Level(n)


def _check_cap(n: int) -> None:
    if n > _conductor_cap:
        raise ConductorCapError(f"conductor {n} exceeds cap {_conductor_cap}")


def _descend(n: int, coeffs: tuple):
    """Minimal-conductor canonical form of the element given at conductor n."""
    while n > 1:
        if all(c == 0 for c in coeffs[1:]):
            return 1, (coeffs[0],)
        lv = _level(n)
        if lv.subfields is None:
            lv._build_subfields()
        for sub in lv.subfields:
            got = sub.rewrite(coeffs)
            if got is not None:
                n, coeffs = sub.m, got
                break
        else:
            return n, coeffs
    return 1, coeffs


class Cyclo:
    """An exact element of a cyclotomic field, at its minimal conductor."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs: tuple, _canonical: bool = False):
        if not _canonical:
            n = canonical_conductor(n)
            coeffs = tuple(mpq(c) for c in coeffs)
            n, coeffs = _descend(n, coeffs)
        self.n = n
        self.coeffs = coeffs
        self._hash = hash((n, coeffs))

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_rational(r: RatLike) -> "Cyclo":
        return Cyclo(1, (mpq(r),), _canonical=True)

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Cyclo":
        """The root of unity zeta_n^k in canonical form."""
        if n < 1:
            raise ValueError("n must be positive")
        k %= n
        g = math.gcd(k, n) if k else n
        n, k = n // g, k // g
        if n % 4 == 2:
            # zeta_{2m}^k = (-zeta_m^((m+1)/2))^k for odd m
            m = n // 2
            sign = -1 if k % 2 else 1
            k = (k * ((m + 1) // 2)) % m
            n = m
            if sign < 0:
                return -Cyclo.zeta(n, k)
        if n == 1:
            return _CYC_ONE
        _check_cap(n)
        lv = _level(n)
        row = lv.pow_table[k]
        coeffs = tuple(mpq(c) for c in row)
        n2, coeffs = _descend(n, coeffs)
        return Cyclo(n2, coeffs, _canonical=True)

    # -- basic predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return self.n == 1 and self.coeffs[0] == 0

    def is_rational(self) -> bool:
        return self.n == 1

    def as_rational(self) -> mpq:
        if self.n != 1:
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def is_integer(self) -> bool:
        return self.n == 1 and self.coeffs[0].denominator == 1

    def as_integer(self) -> Optional[int]:
        if not self.is_integer():
            return None
        return int(self.coeffs[0])

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- promotion ---------------------------------------------------------

    def _embed(self, big_n: int) -> tuple:
        """Coefficients of self in the power basis at conductor big_n."""
        if self.n == big_n:
            return self.coeffs
        lv = _level(big_n)
        step = big_n // self.n
        out = [_ZERO] * lv.phi
        for j, c in enumerate(self.coeffs):
            if c:
                row = lv.pow_table[(j * step) % big_n]
                for i in range(lv.phi):
                    if row[i]:
                        out[i] += c * row[i]
        return tuple(out)

    @staticmethod
    def _common(a: "Cyclo", b: "Cyclo"):
        if a.n == b.n:
            return a.n, a.coeffs, b.coeffs
        n = a.n * b.n // math.gcd(a.n, b.n)
        n = canonical_conductor(n)
        _check_cap(n)
        return n, a._embed(n), b._embed(n)

    # -- arithmetic ----------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Cyclo":
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (int, mpq, type(mpz(0)))):
            return Cyclo(1, (mpq(x),), _canonical=True)
        return NotImplemented

    def __add__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n, a, b = Cyclo._common(self, other)
        return Cyclo(n, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, tuple(-c for c in self.coeffs), _canonical=True)

    def __sub__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n, a, b = Cyclo._common(self, other)
        return Cyclo(n, tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.n == 1:
            c = self.coeffs[0]
            if c == 0:
                return _CYC_ZERO
            return Cyclo(other.n, tuple(c * x for x in other.coeffs), _canonical=True)
        if other.n == 1:
            c = other.coeffs[0]
            if c == 0:
                return _CYC_ZERO
            return Cyclo(self.n, tuple(c * x for x in self.coeffs), _canonical=True)
        n, a, b = Cyclo._common(self, other)
        lv = _level(n)
        phi = lv.phi
        conv = [_ZERO] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        out = list(conv[:phi])
        table = lv.pow_table
        for e in range(phi, 2 * phi - 1):
            c = conv[e]
            if c:
                row = table[e]
                for i in range(phi):
                    if row[i]:
                        out[i] += c * row[i]
        return Cyclo(n, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("division by zero cyclotomic number")
        if self.n == 1:
            return Cyclo(1, (1 / self.coeffs[0],), _canonical=True)
        n = self.n
        lv = _level(n)
        phi = lv.phi
        # multiplication-by-self matrix, columns = self * x^j
        cols = [list(self.coeffs)]
        for _ in range(phi - 1):
            prev = cols[-1]
            nxt = [_ZERO] * phi
            for j in range(phi - 1):
                nxt[j + 1] = prev[j]
            top = prev[phi - 1]
            if top:
                row = lv.pow_table[phi]
                for j in range(phi):
                    if row[j]:
                        nxt[j] += top * row[j]
            cols.append(nxt)
        aug = [[cols[j][i] for j in range(phi)] + [_ONE if i == 0 else _ZERO] for i in range(phi)]
        sol = _solve_square(aug, phi)
        return Cyclo(n, tuple(sol))

    def __truediv__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "Cyclo":
        if k < 0:
            return self.inverse() ** (-k)
        result = _CYC_ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- structure -----------------------------------------------------------

    def galois(self, k: int) -> "Cyclo":
        """Apply the automorphism zeta_n -> zeta_n^k (gcd(k, n) must be 1)."""
        n = self.n
        if n == 1:
            return self
        if math.gcd(k, n) != 1:
            raise ValueError("galois exponent not coprime to conductor")
        lv = _level(n)
        out = [_ZERO] * lv.phi
        for j, c in enumerate(self.coeffs):
            if c:
                row = lv.pow_table[(j * k) % n]
                for i in range(lv.phi):
                    if row[i]:
                        out[i] += c * row[i]
        return Cyclo(n, tuple(out))

    def conjugate(self) -> "Cyclo":
        return self.galois(self.n - 1) if self.n > 1 else self

    def is_root_of_unity(self) -> Optional[int]:
        """Multiplicative order if self is a root of unity, else None."""
        if self.is_zero():
            return None
        n = self.n
        if n == 1:
            c = self.coeffs[0]
            if c == 1:
                return 1
            if c == -1:
                return 2
            return None
        lv = _level(n)
        for k in range(n):
            row = lv.pow_table[k]
            if all(a == b for a, b in zip(self.coeffs, row)):
                return n // math.gcd(n, k)
            if all(a == -b for a, b in zip(self.coeffs, row)):
                # -zeta_n^k = zeta_{2n}^{n + 2k}
                return 2 * n // math.gcd(2 * n, n + 2 * k)
        return None

    # -- hashing / comparison --------------------------------------------------

    def __eq__(self, other):
        other = Cyclo._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return self._hash

    # -- io ---------------------------------------------------------------------

    def __repr__(self):
        return f"Cyclo({self})"

    def __str__(self):
        return cyclo_to_str(self)

    def evalf(self) -> complex:
        """Floating approximation; debug only, never used for decisions."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(complex(c) * z**j for j, c in enumerate(self.coeffs))


_CYC_ZERO = Cyclo(1, (_ZERO,), _canonical=True)
_CYC_ONE = Cyclo(1, (_ONE,), _canonical=True)


def _solve_square(aug, k):
    """Solve a k x k system given as augmented rows (k+1 wide), over mpq."""
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        if pv != 1:
            aug[col] = [v / pv for v in aug[col]]
        for r in range(k):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[i][k] for i in range(k)]


ZERO = _CYC_ZERO
ONE = _CYC_ONE


def rat(x: RatLike, den: int = 1) -> Cyclo:
    if den != 1:
        return Cyclo.from_rational(mpq(x, den))
    return Cyclo.from_rational(x)


def zeta(n: int, k: int = 1) -> Cyclo:
    return Cyclo.zeta(n, k)


def sqrt_minus3() -> Cyclo:
    """The fixed square root of -3: zeta_3 - zeta_3^2."""
    return zeta(3) - zeta(3, 2)


def sqrt5() -> Cyclo:
    """The positive square root of 5: 1 + 2(zeta_5 + zeta_5^4)."""
    return rat(1) + (zeta(5) + zeta(5, 4)) * 2


def golden_ratio() -> Cyclo:
    """(1 + sqrt 5)/2 = 1 + zeta_5 + zeta_5^4."""
    return rat(1) + zeta(5) + zeta(5, 4)


# ---------------------------------------------------------------------------
# text literal grammar:
#   rational := ['-'] digits ['/' digits]
#   cyclo    := sum of `rational '*' 'zeta(' n ')' '^' k` terms and rationals
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>-?\d+(?:/\d+)?)\s*(?:\*\s*(?P<z1>zeta\(\s*(?P<n1>\d+)\s*\)(?:\s*\^\s*(?P<k1>-?\d+))?))?
          |
          (?P<z2>zeta\(\s*(?P<n2>\d+)\s*\)(?:\s*\^\s*(?P<k2>-?\d+))?)
        )\s*""",
    re.VERBOSE,
)


class CycloParseError(ValueError):
    pass


def parse_cyclo(text: str) -> Cyclo:
    """Parse the cyclotomic literal grammar, e.g. '1/2 + -1/2*zeta(3)^1'."""
    s = text.strip()
    if not s:
        raise CycloParseError("empty cyclotomic literal")
    pos = 0
    total = _CYC_ZERO
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise CycloParseError(f"bad cyclotomic literal at offset {pos}: {text!r}")
        sign = m.group("sign")
        if sign is None and not first:
            raise CycloParseError(f"missing '+' between terms at offset {pos}: {text!r}")
        sgn = -1 if sign == "-" else 1
        if m.group("coef") is not None:
            coef = mpq(m.group("coef")) * sgn
            if m.group("z1"):
                term = zeta(int(m.group("n1")), int(m.group("k1") or 1)) * coef
            else:
                term = rat(coef)
        else:
            term = zeta(int(m.group("n2")), int(m.group("k2") or 1)) * sgn
        total = total + term
        pos = m.end()
        first = False
    return total


def cyclo_to_str(a: Cyclo) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for j, c in enumerate(a.coeffs):
        if c == 0:
            continue
        if j == 0:
            parts.append(str(c))
        else:
            parts.append(f"{c}*zeta({a.n})^{j}")
    return " + ".join(parts)
