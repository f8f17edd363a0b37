"""Truncated power series and Molien-type averages.

Two series flavors: exact cyclotomic coefficients for per-element summands,
and plain integers for the averaged results.  Averages whose coefficients
fail to be non-negative rational integers abort loudly: integrality is a
theorem, so a violation means invalid input.

The per-element expansion of 1/det(I - t*phi) uses the linear recurrence
h_k = e1*h_{k-1} - e2*h_{k-2} + e3*h_{k-3} read off the characteristic
polynomial, so everything stays in exact arithmetic.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Union

from .cyclotomic import Cyclo, ONE, ZERO, rat
from .groups import Character, FiniteMatrixGroup
from .linalg import char_poly_coeffs, mat

DEFAULT_TRUNCATION = 40


class MolienIntegralityError(RuntimeError):
    def __init__(self, degree: int, value):
        super().__init__(
            f"non-integer Molien coefficient at degree {degree}: {value!r}"
        )
        self.degree = degree


class IntegerPowerSeries:
    __slots__ = ("coefficients", "truncation_degree")

    def __init__(self, coefficients: Sequence[int], truncation_degree: int):
        coeffs = list(coefficients)
        if len(coeffs) < truncation_degree + 1:
            coeffs += [0] * (truncation_degree + 1 - len(coeffs))
        self.coefficients = coeffs[: truncation_degree + 1]
        self.truncation_degree = truncation_degree

    def __getitem__(self, d: int) -> int:
        return self.coefficients[d]

    def __eq__(self, other):
        return (
            isinstance(other, IntegerPowerSeries)
            and self.truncation_degree == other.truncation_degree
            and self.coefficients == other.coefficients
        )

    def __add__(self, other):
        t = min(self.truncation_degree, other.truncation_degree)
        return IntegerPowerSeries(
            [a + b for a, b in zip(self.coefficients, other.coefficients)], t
        )

    def __sub__(self, other):
        t = min(self.truncation_degree, other.truncation_degree)
        return IntegerPowerSeries(
            [a - b for a, b in zip(self.coefficients, other.coefficients)], t
        )

    def shift(self, k: int = 1) -> "IntegerPowerSeries":
        """Multiply by t^k (truncation degree unchanged)."""
        return IntegerPowerSeries([0] * k + self.coefficients, self.truncation_degree)

    def __str__(self):
        parts = []
        for d, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if d == 0:
                parts.append(str(c))
            elif d == 1:
                parts.append(f"{c}*t" if c != 1 else "t")
            else:
                parts.append(f"{c}*t^{d}" if c != 1 else f"t^{d}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"IntegerPowerSeries({self})"


class CycloPowerSeries:
    __slots__ = ("coefficients", "truncation_degree")

    def __init__(self, coefficients: Sequence[Cyclo], truncation_degree: int):
        coeffs = list(coefficients)
        if len(coeffs) < truncation_degree + 1:
            coeffs += [ZERO] * (truncation_degree + 1 - len(coeffs))
        self.coefficients = coeffs[: truncation_degree + 1]
        self.truncation_degree = truncation_degree

    def accumulate(self, other: "CycloPowerSeries", scale: Cyclo) -> None:
        self.coefficients = [
            a + scale * b
            for a, b in zip(self.coefficients, other.coefficients)
        ]

    def to_integer_series(self, divisor: int = 1) -> IntegerPowerSeries:
        """Collapse to non-negative integers after dividing by divisor."""
        inv = rat(1, divisor) if divisor != 1 else None
        out = []
        for d, c in enumerate(self.coefficients):
            if inv is not None:
                c = c * inv
            n = c.as_integer()
            if n is None or n < 0:
                raise MolienIntegralityError(d, c)
            out.append(n)
        return IntegerPowerSeries(out, self.truncation_degree)


def inverse_det_series(phi, trunc: int) -> CycloPowerSeries:
    """Expansion of 1/det(I - t*phi) for a 2x2 or 3x3 matrix."""
    phi = mat(phi)
    es = char_poly_coeffs(phi)
    h = [ONE]
    if len(es) == 3:
        e1, e2, e3 = es
        for k in range(1, trunc + 1):
            v = e1 * h[k - 1]
            if k >= 2:
                v = v - e2 * h[k - 2]
            if k >= 3:
                v = v + e3 * h[k - 3]
            h.append(v)
    else:
        e1, e2 = es
        for k in range(1, trunc + 1):
            v = e1 * h[k - 1]
            if k >= 2:
                v = v - e2 * h[k - 2]
            h.append(v)
    return CycloPowerSeries(h, trunc)


def _trace(m) -> Cyclo:
    return sum((m[i][i] for i in range(len(m))), ZERO)


def molien_ring(
    G: FiniteMatrixGroup, chi: Character, trunc: int = DEFAULT_TRUNCATION
) -> IntegerPowerSeries:
    """Poincare series of the chi-semi-invariant polynomials:
    (1/|G|) sum chi(g) / det(I - t g)."""
    total = CycloPowerSeries([], trunc)
    for i, g in enumerate(G.elements):
        total.accumulate(inverse_det_series(g, trunc), chi(i))
    return total.to_integer_series(G.order)


def molien_vector_part(
    G: FiniteMatrixGroup, chi: Character, trunc: int = DEFAULT_TRUNCATION
) -> IntegerPowerSeries:
    """Series of the chi-part of polynomials tensor the ambient space:
    (1/|G|) sum chi(g) tr(g^-1) / det(I - t g)."""
    invs = G.inverses()
    total = CycloPowerSeries([], trunc)
    for i, g in enumerate(G.elements):
        total.accumulate(inverse_det_series(g, trunc), chi(i) * _trace(invs[i]))
    return total.to_integer_series(G.order)


def molien_fields(
    G: FiniteMatrixGroup, chi: Character, trunc: int = DEFAULT_TRUNCATION
) -> IntegerPowerSeries:
    """Poincare series of divergence-free chi-semi-invariant vector fields:
    (1/|G|) sum chi(g) (tr(g^-1) - t) / det(I - t g)."""
    invs = G.inverses()
    total = CycloPowerSeries([], trunc)
    for i, g in enumerate(G.elements):
        h = inverse_det_series(g, trunc)
        tr = _trace(invs[i])
        summand = [tr * h.coefficients[0]]
        for k in range(1, trunc + 1):
            summand.append(tr * h.coefficients[k] - h.coefficients[k - 1])
        total.accumulate(CycloPowerSeries(summand, trunc), chi(i))
    return total.to_integer_series(G.order)


NumeratorLike = Union[Dict[int, int], Sequence[int]]


def expand_closed_form(
    numerator: NumeratorLike,
    denominator_exponents: Sequence[int],
    trunc: int = DEFAULT_TRUNCATION,
) -> IntegerPowerSeries:
    """Truncated expansion of numerator(t) / prod_i (1 - t^{a_i}).

    The numerator is a dict {exponent: coefficient} or a dense list.
    """
    if isinstance(numerator, dict):
        coeffs = [0] * (max(numerator, default=0) + 1)
        for e, c in numerator.items():
            coeffs[e] = c
    else:
        coeffs = list(numerator)
    out = coeffs[: trunc + 1] + [0] * max(0, trunc + 1 - len(coeffs))
    for a in denominator_exponents:
        # multiply by 1/(1 - t^a): out[k] += out[k-a]
        for k in range(a, trunc + 1):
            out[k] += out[k - a]
    return IntegerPowerSeries(out, trunc)
