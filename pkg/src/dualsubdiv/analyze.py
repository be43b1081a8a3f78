"""Numerical analysis of subdivision schemes.

Limit-function evaluation by exact iteration of the refinement equation,
difference-scheme contractivity bounds with the derived Holder lower bound,
polynomial reproduction degree, and curve subdivision.

Evaluation stays in exact rationals until coefficient bit sizes pass a
threshold, then falls back to double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .construct import SolutionFamily
from .exactalg import LaurentPoly
from .samples import SampleSet
from .scheme import (
    Mask,
    divide_smoothing,
    factor_smoothing,
    limit_support,
    shift_parameter,
)


class SeedInconsistent(Exception):
    """The seed values do not satisfy the refinement equation on their lattice."""


class NoContractivePoint(Exception):
    """No sampled parameter in the search interval was contractive."""


@dataclass(frozen=True)
class LatticeFunction:
    """Values phi((offset + i)/denominator); zero outside the stored window."""

    denominator: int
    offset: int
    values: tuple

    def value_at_index(self, i: int):
        j = i - self.offset
        if 0 <= j < len(self.values):
            return self.values[j]
        return Fraction(0) if self.is_exact else 0.0

    @property
    def is_exact(self) -> bool:
        return not self.values or isinstance(self.values[0], Fraction)

    def points(self) -> list[tuple[float, float]]:
        return [
            (float(Fraction(self.offset + i, self.denominator)), float(v))
            for i, v in enumerate(self.values)
        ]


@dataclass(frozen=True)
class RegularityReport:
    """Per-level contraction bounds of the order-(k+1) difference scheme.

    ``bounds[L-1]`` is the L-th root of the infinity norm of the L-times
    iterated difference scheme; contractivity at any level certifies C^k
    membership and yields the Holder lower bound k - log_m(best bound).
    """

    order: int
    levels: int
    bounds: tuple[float, ...]
    contractive: bool
    holder_lower_bound: float | None


@dataclass(frozen=True)
class Polyline:
    parameters: tuple[float, ...]
    points: tuple[tuple[float, float], ...]


def _max_bits(values: Sequence[Fraction]) -> int:
    bits = 0
    for v in values:
        bits = max(bits, v.numerator.bit_length(), v.denominator.bit_length())
    return bits


def _check_seed(mask: Mask, seed: SampleSet, t: int) -> None:
    lo, hi = limit_support(mask)
    s_lo, s_hi = seed.support
    if seed.values and (s_lo < lo or s_hi > hi):
        raise SeedInconsistent(
            f"seed support [{s_lo}, {s_hi}] exceeds the limit support [{lo}, {hi}]"
        )
    T = seed.T
    for alpha in range(math.ceil(lo * T), math.floor(hi * T) + 1):
        lhs = seed.value_at_index(alpha)
        rhs = Fraction(0)
        for j, a in enumerate(mask.coeffs):
            k = mask.offset + j
            rhs += a * seed.value_at_index(mask.arity * alpha + t - k * T)
        if lhs != rhs:
            raise SeedInconsistent(
                f"refinement equation fails at {alpha}/{T}: {lhs} != {rhs}"
            )


def refine_values(
    mask: Mask,
    seed: SampleSet,
    depth: int,
    *,
    bit_limit: int = 4096,
    check_seed: bool = True,
) -> LatticeFunction:
    """Values of the limit function on Z/(T m^depth) via the refinement equation.

    Each level evaluates phi(x) = sum_k a_k phi(m x - k + tau) for x on the
    next finer lattice, reading the previous level.  Depth 0 returns the seed
    as a LatticeFunction.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    m = mask.arity
    tau = shift_parameter(mask)
    tau_T = tau * seed.T
    if tau_T.denominator != 1:
        raise ValueError(f"tau*T = {tau_T} is not an integer")
    t = int(tau_T)
    if check_seed:
        _check_seed(mask, seed, t)

    lo, hi = limit_support(mask)
    Q = seed.T
    n_lo = math.ceil(lo * Q)
    n_hi = math.floor(hi * Q)
    values: list = [seed.value_at_index(i) for i in range(n_lo, n_hi + 1)]

    exact = True
    for _ in range(depth):
        shift = t * (Q // seed.T)
        Q2 = Q * m
        n_lo2 = math.ceil(lo * Q2)
        n_hi2 = math.floor(hi * Q2)
        weights = list(mask.coeffs) if exact else [float(a) for a in mask.coeffs]
        new: list = []
        for q in range(n_lo2, n_hi2 + 1):
            acc = Fraction(0) if exact else 0.0
            for j, a in enumerate(weights):
                k = mask.offset + j
                idx = q + shift - k * Q - n_lo
                if 0 <= idx < len(values):
                    acc += a * values[idx]
            new.append(acc)
        values, Q, n_lo, n_hi = new, Q2, n_lo2, n_hi2
        if exact and _max_bits(values) > bit_limit:
            values = [float(v) for v in values]
            exact = False
    return LatticeFunction(Q, n_lo, tuple(values))


def difference_scheme(mask: Mask, order: int) -> Mask:
    """Mask of the order-k difference scheme.

    Its symbol is m^k (1-z)^k (1-z^m)^{-k} A(z), which is exactly the
    quotient of A by the k-th power of the smoothing factor; raises
    NotDivisible when the factorization does not exist.
    """
    if order == 0:
        return mask
    b = factor_smoothing(mask, order)
    scaled = b * mask.arity
    return Mask(mask.arity, scaled.offset, scaled.coeffs)


def _iterated_norms(offset: int, coeffs: Sequence, m: int, levels: int) -> list:
    """Infinity norms of the L-times iterated scheme, L = 1..levels.

    The iterate's symbol is the product p(z) p(z^m) ... p(z^{m^{L-1}}); the
    norm is the largest absolute coefficient sum over residue classes mod m^L.
    Works for exact (Fraction) and float coefficients alike.
    """
    base = {offset + i: c for i, c in enumerate(coeffs) if c != 0}
    norms = []
    q = dict(base)
    for level in range(1, levels + 1):
        if level > 1:
            stride = m ** (level - 1)
            nxt: dict = {}
            for e1, c1 in q.items():
                for e2, c2 in base.items():
                    e = e1 + stride * e2
                    if e in nxt:
                        nxt[e] += c1 * c2
                    else:
                        nxt[e] = c1 * c2
            q = nxt
        modulus = m**level
        sums: dict = {}
        for e, c in q.items():
            r = e % modulus
            sums[r] = sums.get(r, 0) + abs(c)
        norms.append(max(sums.values()) if sums else 0)
    return norms


def contractivity_bound(mask: Mask, order: int, levels: int) -> RegularityReport:
    """Contraction analysis of the order-(order+1) difference scheme.

    Exact arithmetic throughout; only the reported L-th roots are floats.
    Contractivity of any level certifies C^order membership with Holder lower
    bound order - log_m(best bound).
    """
    if levels < 1:
        raise ValueError("need at least one level")
    p = factor_smoothing(mask, order + 1)
    norms = _iterated_norms(p.offset, p.coeffs, mask.arity, levels)
    bounds = tuple(float(n) ** (1.0 / L) for L, n in enumerate(norms, start=1))
    contractive = any(n < 1 for n in norms)
    holder = None
    if contractive:
        holder = order - math.log(min(bounds)) / math.log(mask.arity)
    return RegularityReport(order, levels, bounds, contractive, holder)


def _family_difference_parts(
    family: SolutionFamily, order: int
) -> tuple[LaurentPoly, LaurentPoly]:
    if family.dimension != 1:
        raise ValueError("parameter sweeps need a one-dimensional family")
    m = family.problem.m
    dp = factor_smoothing(family.particular, order)
    dv = divide_smoothing(family.basis[0] * Fraction(1, m), m, order)
    return dp, dv


def _line_best_bound(
    dp: LaurentPoly, dv: LaurentPoly, m: int, levels: int, t: float
) -> float:
    """Best (smallest) rooted norm over levels for the member at parameter t."""
    lo = min(dp.offset, dv.offset)
    hi = max(dp.offset + len(dp.coeffs), dv.offset + len(dv.coeffs))
    coeffs = [
        float(dp.coefficient(e)) + t * float(dv.coefficient(e)) for e in range(lo, hi)
    ]
    norms = _iterated_norms(lo, coeffs, m, levels)
    return min(n ** (1.0 / L) for L, n in enumerate(norms, start=1))


def contractivity_profile(
    family: SolutionFamily,
    order: int,
    levels: int,
    parameters: Sequence[float],
) -> list[tuple[float, float]]:
    """(parameter, best rooted norm bound) along a one-parameter family."""
    dp, dv = _family_difference_parts(family, order + 1)
    m = family.problem.m
    return [(t, _line_best_bound(dp, dv, m, levels, t)) for t in parameters]


def contractivity_range(
    family: SolutionFamily,
    order: int,
    levels: int,
    search_interval: tuple[float, float],
    *,
    grid: int = 129,
    tol: float = 1e-6,
) -> tuple[float, float]:
    """Endpoints of the contractive parameter interval of a 1-parameter family.

    Samples the search interval, requires the contractive set to be one
    contiguous block (raises NoContractivePoint when empty, ValueError when
    split), then bisects each crossing of the best level bound through 1 down
    to the requested parameter tolerance.  Endpoints clamp to the search
    interval when the contractive region touches it.
    """
    dp, dv = _family_difference_parts(family, order + 1)
    m = family.problem.m

    def contractive(t: float) -> bool:
        return _line_best_bound(dp, dv, m, levels, t) < 1.0

    a, b = search_interval
    if not a < b:
        raise ValueError("empty search interval")
    ts = [a + (b - a) * i / (grid - 1) for i in range(grid)]
    flags = [contractive(t) for t in ts]
    if not any(flags):
        raise NoContractivePoint(
            f"no contractive parameter among {grid} samples in [{a}, {b}]"
        )
    first = flags.index(True)
    last = len(flags) - 1 - flags[::-1].index(True)
    if not all(flags[first : last + 1]):
        raise ValueError("contractive set is not an interval on the sample grid")

    def bisect(lo: float, hi: float, lo_state: bool) -> float:
        # invariant: contractivity flips somewhere between lo and hi
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if contractive(mid) == lo_state:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    left = ts[first] if first == 0 else bisect(ts[first - 1], ts[first], False)
    right = ts[last] if last == len(ts) - 1 else bisect(ts[last], ts[last + 1], True)
    return left, right


def reproduction_degree(
    mask: Mask,
    seed: SampleSet,
    max_degree: int,
    depth: int,
    tol: float,
) -> int:
    """Largest D <= max_degree with sum_k k^e phi(x-k) = x^e within tol for
    all e <= D at every lattice point of refine_values(depth).

    Returns -1 when even constants are not reproduced within tolerance.
    """
    lf = refine_values(mask, seed, depth)
    Q = lf.denominator
    lo_i = lf.offset
    hi_i = lf.offset + len(lf.values) - 1
    for e in range(max_degree + 1):
        for i, _ in enumerate(lf.values):
            p = lo_i + i
            # k with p - k*Q inside the stored window
            k_lo = math.ceil(Fraction(p - hi_i, Q))
            k_hi = math.floor(Fraction(p - lo_i, Q))
            acc = Fraction(0) if lf.is_exact else 0.0
            for k in range(k_lo, k_hi + 1):
                acc += (k**e) * lf.value_at_index(p - k * Q)
            x = Fraction(p, Q)
            err = abs(acc - x**e) if lf.is_exact else abs(acc - float(x) ** e)
            if err > tol:
                return e - 1
    return max_degree


def _subdivide_once(
    mask: Mask, pts: list[tuple[float, ...]], first: int, closed: bool
) -> tuple[list[tuple[float, ...]], int]:
    m = mask.arity
    dim = len(pts[0])
    weights = [float(c) for c in mask.coeffs]
    if closed:
        n_out = m * len(pts)
        out = [[0.0] * dim for _ in range(n_out)]
        for k, pt in enumerate(pts):
            for j, w in enumerate(weights):
                target = (m * k + mask.offset + j) % n_out
                for c in range(dim):
                    out[target][c] += w * pt[c]
        return [tuple(p) for p in out], 0
    new_first = m * first + mask.k_left
    n_out = m * (first + len(pts) - 1) + mask.k_right - new_first + 1
    out = [[0.0] * dim for _ in range(n_out)]
    for k_rel, pt in enumerate(pts):
        k = first + k_rel
        for j, w in enumerate(weights):
            target = m * k + mask.offset + j - new_first
            for c in range(dim):
                out[target][c] += w * pt[c]
    return [tuple(p) for p in out], new_first


def subdivide_points(
    mask: Mask, control: Sequence[Sequence[float]], steps: int, *, closed: bool = False
) -> tuple[list[float], list[tuple[float, ...]]]:
    """Apply the subdivision operator ``steps`` times to control points.

    Returns (parameters, points).  The level-j index n is attached to the
    parameter (n - tau (m^j - 1)/(m - 1)) / m^j, the fixed point of the
    refinement parameter map; consecutive parameters differ by m^{-j}.
    """
    if len(control) < 2:
        raise ValueError("need at least two control points")
    pts = [tuple(float(x) for x in p) for p in control]
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ValueError("control points must share one dimension")
    m = mask.arity
    tau = shift_parameter(mask)
    first = 0
    for _ in range(steps):
        pts, first = _subdivide_once(mask, pts, first, closed)
    drift = tau * (m**steps - 1) / (m - 1)
    scale = Fraction(m) ** steps
    params = [float((n - drift) / scale) for n in range(first, first + len(pts))]
    return params, pts


def subdivide_curve(
    mask: Mask, control: Sequence[Sequence[float]], steps: int, *, closed: bool = False
) -> Polyline:
    """Subdivide 2D control points ``steps`` times; see subdivide_points."""
    params, pts = subdivide_points(mask, control, steps, closed=closed)
    if pts and len(pts[0]) != 2:
        raise ValueError("curve subdivision expects 2D points")
    return Polyline(tuple(params), tuple(pts))
