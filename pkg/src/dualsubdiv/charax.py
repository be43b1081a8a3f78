"""Exact verification of the algebraic identities characterizing refinability
and dual interpolatory schemes.

All identities are compared coefficient-wise as formal Laurent polynomials;
"satisfied" is a symbolic zero test, never a numeric tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactalg import LaurentPoly
from .samples import SampleSet, phi_poly
from .scheme import Mask, shift_parameter, sub_symbol


class ShiftLatticeMismatch(ValueError):
    """tau * T is not an integer, so the lattice identity is undefined."""


class ShiftMismatch(ValueError):
    """The mask shift is not 1/2, so the dual forms do not apply."""


class ArityTwoUnsupported(ValueError):
    """No convergent dual interpolatory scheme exists for arity 2."""


@dataclass(frozen=True)
class IdentityResidual:
    """Left-hand side minus right-hand side of the tested identity, exact."""

    residual: LaurentPoly

    @property
    def satisfied(self) -> bool:
        return self.residual.is_zero

    def nonzero_terms(self) -> list[tuple[int, Fraction]]:
        return self.residual.terms()


def verify_refinability(mask: Mask, s: SampleSet, T: int | None = None) -> IdentityResidual:
    """Residual of the lattice refinability identity at density T.

    sum_{g=0}^{mT-1} Phi_{T,g}(z^m)
        = m z^{-tau T} sum_b sum_{g + bT == tau T (mod m)} A_b(z^T) Phi_{T,g}(z)
    """
    if T is None:
        T = s.T
    if T != s.T:
        raise ValueError(f"sample set lives on Z/{s.T}, not Z/{T}")
    m = mask.arity
    tau = shift_parameter(mask)
    tau_T = tau * T
    if tau_T.denominator != 1:
        raise ShiftLatticeMismatch(f"tau*T = {tau_T} is not an integer")
    t = int(tau_T)

    phis = [phi_poly(s, m, g) for g in range(m * T)]

    lhs = LaurentPoly.zero()
    for g in range(m * T):
        lhs = lhs + phis[g].scale_exponents(m)

    rhs = LaurentPoly.zero()
    for b in range(m):
        a_b = sub_symbol(mask, b).scale_exponents(T)
        if a_b.is_zero:
            continue
        acc = LaurentPoly.zero()
        for g in range(m * T):
            if (g + b * T - t) % m == 0:
                acc = acc + phis[g]
        rhs = rhs + a_b * acc
    rhs = (rhs * m).shift(-t)
    return IdentityResidual(lhs - rhs)


def _dual_preconditions(mask: Mask, s: SampleSet) -> None:
    if mask.arity == 2:
        raise ArityTwoUnsupported(
            "arity 2 admits no convergent dual interpolatory scheme: the"
            " identity forces boundary mask elements equal to 1, which rules"
            " out contractivity"
        )
    if s.T != 2:
        raise ValueError("dual interpolatory forms require samples on Z/2")
    tau = shift_parameter(mask)
    if tau != Fraction(1, 2):
        raise ShiftMismatch(f"dual forms require tau = 1/2, got {tau}")


def _odd_phi_half_sum(mask: Mask, s: SampleSet) -> tuple[list[LaurentPoly], LaurentPoly]:
    """The odd-residue Phi polynomials and the shared left-hand side."""
    m = mask.arity
    phis = [phi_poly(s, m, 2 * g + 1) for g in range(m)]
    lhs = LaurentPoly.constant(Fraction(1, 2))
    for p in phis:
        lhs = lhs + p.scale_exponents(m)
    return phis, lhs


def verify_lemma_form(mask: Mask, s: SampleSet) -> IdentityResidual:
    """Residual of the intermediate dual-interpolatory identity.

    1/2 + sum_g Phi_{2,2g+1}(z^m)
        = m z^{-1} ( sum_{2b == 1 (m)} A_b(z^2)/2
                     + sum_{2(b+g) == 0 (m)} A_b(z^2) Phi_{2,2g+1}(z) )
    """
    _dual_preconditions(mask, s)
    m = mask.arity
    phis, lhs = _odd_phi_half_sum(mask, s)

    subs = [sub_symbol(mask, b).scale_exponents(2) for b in range(m)]
    rhs = LaurentPoly.zero()
    for b in range(m):
        if (2 * b - 1) % m == 0:
            rhs = rhs + subs[b] * Fraction(1, 2)
    for b in range(m):
        for g in range(m):
            if (2 * (b + g)) % m == 0:
                rhs = rhs + subs[b] * phis[g]
    rhs = (rhs * m).shift(-1)
    return IdentityResidual(lhs - rhs)


def verify_dual_interpolatory(mask: Mask, s: SampleSet) -> IdentityResidual:
    """Residual of the arity-specific dual interpolatory characterization.

    Odd m:  1/2 + sum_g Phi_{2,2g+1}(z^m)
              = m z^{-1} ( A_{(m+1)/2}(z^2)/2
                           + sum_g A_{m-g}(z^2) Phi_{2,2g+1}(z) )
    Even m: 1/2 + sum_g Phi_{2,2g+1}(z^m)
              = m z^{-1} sum_g ( A_{m/2-g}(z^2) + A_{m-g}(z^2) ) Phi_{2,2g+1}(z)
    """
    _dual_preconditions(mask, s)
    m = mask.arity
    phis, lhs = _odd_phi_half_sum(mask, s)

    rhs = LaurentPoly.zero()
    if m % 2 == 1:
        rhs = rhs + sub_symbol(mask, (m + 1) // 2).scale_exponents(2) * Fraction(1, 2)
        for g in range(m):
            rhs = rhs + sub_symbol(mask, m - g).scale_exponents(2) * phis[g]
    else:
        for g in range(m):
            weight = (
                sub_symbol(mask, m // 2 - g) + sub_symbol(mask, m - g)
            ).scale_exponents(2)
            rhs = rhs + weight * phis[g]
    rhs = (rhs * m).shift(-1)
    return IdentityResidual(lhs - rhs)
