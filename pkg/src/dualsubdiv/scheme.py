"""Subdivision scheme data model.

A mask is the finite coefficient sequence a_k of the refinement rule
c'_n = sum_k a_{n-mk} c_k for an arity-m scheme.  Its symbol is the Laurent
polynomial A(z) = (1/m) sum_k a_k z^k, and the shift parameter tau = A'(1)
separates primal (tau = 0) from dual (tau = 1/2) symmetric schemes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exactalg import LaurentPoly, RationalLike, rat


class NotDivisible(Exception):
    """The requested smoothing-factor factorization does not exist."""


class Symmetry(enum.Enum):
    PRIMAL = "primal"
    DUAL = "dual"
    NONE = "none"


@dataclass(frozen=True)
class Mask:
    """Arity m >= 2 plus the coefficient window; zero ends are trimmed."""

    arity: int
    offset: int
    coeffs: tuple[Fraction, ...]

    def __init__(self, arity: int, offset: int, coeffs: Iterable[RationalLike]):
        if arity < 2:
            raise ValueError("arity must be at least 2")
        poly = LaurentPoly(offset, [rat(c) for c in coeffs])
        if poly.is_zero:
            raise ValueError("mask must have at least one nonzero coefficient")
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "offset", poly.offset)
        object.__setattr__(self, "coeffs", poly.coeffs)

    @property
    def k_left(self) -> int:
        return self.offset

    @property
    def k_right(self) -> int:
        return self.offset + len(self.coeffs) - 1

    def coefficient(self, k: int) -> Fraction:
        i = k - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def coeff_poly(self) -> LaurentPoly:
        """The un-normalized generating function sum_k a_k z^k."""
        return LaurentPoly(self.offset, self.coeffs)

    def to_dict(self) -> dict:
        return {
            "arity": self.arity,
            "offset": self.offset,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Mask":
        return cls(int(data["arity"]), int(data["offset"]), [rat(c) for c in data["coeffs"]])


@dataclass(frozen=True)
class SchemeDescriptor:
    mask: Mask
    tau: Fraction
    symmetry: Symmetry
    smoothing_order: int


def symbol(mask: Mask) -> LaurentPoly:
    """A(z) = (1/m) sum_k a_k z^k, exactly."""
    return mask.coeff_poly() * Fraction(1, mask.arity)


def sub_symbol(mask: Mask, n: int) -> LaurentPoly:
    """The residue-class slice A_n(z); indices are taken mod m (A_{n+m} = A_n)."""
    m = mask.arity
    r = n % m
    terms = [
        (k, c)
        for k, c in symbol(mask).terms()
        if k % m == r
    ]
    return LaurentPoly.from_terms(terms)


def sub_symbols(mask: Mask) -> list[LaurentPoly]:
    """All m sub-symbols A_0, ..., A_{m-1}; their sum is the symbol."""
    return [sub_symbol(mask, n) for n in range(mask.arity)]


def shift_parameter(mask: Mask) -> Fraction:
    """tau = A'(1) = (1/m) sum_k k a_k."""
    return symbol(mask).derivative_at_one()


def _is_palindrome(coeffs: tuple[Fraction, ...]) -> bool:
    return coeffs == tuple(reversed(coeffs))


def smoothing_factor(m: int) -> LaurentPoly:
    """(1 + z + ... + z^{m-1}) / m."""
    return LaurentPoly(0, [Fraction(1, m)] * m)


def divide_smoothing(poly: LaurentPoly, m: int, order: int) -> LaurentPoly:
    """Exact division of a Laurent polynomial by smoothing_factor(m)**order."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order == 0:
        return poly
    quotient, remainder = poly.divide(smoothing_factor(m) ** order)
    if not remainder.is_zero:
        raise NotDivisible(f"no factorization of order {order} for arity {m}")
    return quotient


def factor_smoothing(mask: Mask, d: int) -> LaurentPoly:
    """B(z) with A(z) = ((1+...+z^{m-1})/m)^d B(z), or raise NotDivisible."""
    return divide_smoothing(symbol(mask), mask.arity, d)


def max_smoothing_order(mask: Mask) -> int:
    """Largest d for which factor_smoothing succeeds."""
    d = 0
    # each factor eats m-1 degrees of the coefficient window
    limit = (len(mask.coeffs) - 1) // (mask.arity - 1)
    while d < limit:
        try:
            factor_smoothing(mask, d + 1)
        except NotDivisible:
            break
        d += 1
    return d


def classify_symmetry(mask: Mask) -> SchemeDescriptor:
    """Exact shift and symmetry classification of a mask.

    Primal symmetric means tau = 0 with a palindromic window k_l = -k_r;
    dual symmetric means tau = 1/2 with a palindromic window k_l = 1 - k_r.
    """
    tau = shift_parameter(mask)
    palindromic = _is_palindrome(mask.coeffs)
    if palindromic and tau == 0 and mask.k_left == -mask.k_right:
        sym = Symmetry.PRIMAL
    elif palindromic and tau == Fraction(1, 2) and mask.k_left == 1 - mask.k_right:
        sym = Symmetry.DUAL
    else:
        sym = Symmetry.NONE
    return SchemeDescriptor(mask, tau, sym, max_smoothing_order(mask))


def support_interval(m: int, k_star: int) -> tuple[Fraction, Fraction]:
    """Basic limit function support for a mask on {1-k*, ..., k*}."""
    if m < 2:
        raise ValueError("arity must be at least 2")
    if k_star < 1:
        raise ValueError("k* must be at least 1")
    hi = Fraction(2 * k_star - 1, 2 * (m - 1))
    return -hi, hi


def limit_support(mask: Mask) -> tuple[Fraction, Fraction]:
    """Support of the limit function of an arbitrary mask: [(k_l - tau)/(m-1), (k_r - tau)/(m-1)]."""
    tau = shift_parameter(mask)
    m = mask.arity
    return (mask.k_left - tau) / (m - 1), (mask.k_right - tau) / (m - 1)
