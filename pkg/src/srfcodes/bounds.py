"""Exact rational evaluation of decoding radii and failure-probability bounds.

Every quantity is a :class:`fractions.Fraction`; the bounds reach scales like
q^-31 where binary floats carry no usable information, so comparisons against
Monte-Carlo counts must stay in exact arithmetic end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = [
    "BoundValue",
    "t_max",
    "t_max_floor",
    "t_bar_i",
    "t_bar_e",
    "bound_thm1",
    "bound_thm2",
    "bound_thm1_hybrid",
    "bound_thm2_hybrid",
    "bound_thm1_poles",
    "bound_thm2_poles",
    "product_factor_bound",
    "simplified_exponent",
]


@dataclass(frozen=True)
class BoundValue:
    """An exact probability bound together with its display base.

    ``value`` may exceed 1 for weak parameters; ``clamped`` is what a
    probability comparison should use, while ``value`` keeps the raw
    rational for reporting.
    """

    value: Fraction
    q: int

    @property
    def clamped(self) -> Fraction:
        return self.value if self.value < 1 else Fraction(1)

    @property
    def log_q(self) -> float:
        v = self.value
        return (math.log(v.numerator) - math.log(v.denominator)) / math.log(self.q)

    def __str__(self) -> str:
        v = self.value
        return f"{v.numerator}/{v.denominator} ~ q^{self.log_q:.2f}"


def t_max(ell: int, L: int, d_f: int, d_g: int) -> Fraction:
    """Decoding radius ell/(ell+1) * (L - d_f - d_g + 1) for full-support errors."""
    if ell < 1:
        raise ValueError("interleaving parameter must be positive")
    gap = L - d_f - d_g + 1
    if gap < 0:
        raise ValueError("degree budget exceeds the point system")
    return Fraction(ell, ell + 1) * gap


def t_max_floor(ell: int, L: int, d_f: int, d_g: int) -> int:
    """Largest integer distance parameter admitted by :func:`t_max`."""
    return math.floor(t_max(ell, L, d_f, d_g))


def _split_radius(ell: int, L: int, d_f: int, d_g: int, fixed: int) -> Fraction:
    if ell < 1:
        raise ValueError("interleaving parameter must be positive")
    if fixed < 0:
        raise ValueError("fixed error budget must be non-negative")
    slack = L - d_f - d_g + 1 - 2 * fixed
    if slack < 0:
        raise ValueError("negative radius")
    return Fraction(ell, ell + 1) * slack


def t_bar_i(ell: int, L: int, d_f: int, d_g: int, t_u: int) -> Fraction:
    """Random-part radius when t_u degrees are reserved for adversarial errors."""
    return _split_radius(ell, L, d_f, d_g, t_u)


def t_bar_e(ell: int, L: int, d_f: int, d_g: int, t_v: int) -> Fraction:
    """Evaluation-error radius when t_v degrees are reserved for valuation errors."""
    return _split_radius(ell, L, d_f, d_g, t_v)


def _slack_exponent(ell: int, radius, t: int) -> int:
    """Integer exponent (ell+1)*(radius - t); the radius is an ell/(ell+1)
    multiple of an integer, so the product is integral whenever the inputs
    are consistent."""
    if t < 0:
        raise ValueError("distance parameter must be non-negative")
    e = (ell + 1) * (Fraction(radius) - t)
    if e.denominator != 1:
        raise ValueError("radius must be an ell/(ell+1) multiple of an integer")
    e = int(e)
    if e < 0:
        raise ValueError("distance parameter exceeds the decoding radius")
    return e


def _locator_product(q: int, ell: int, exps: Sequence[int], denom_exp: int) -> Fraction:
    den = 1 - Fraction(1, q ** denom_exp)
    out = Fraction(1)
    for nu in exps:
        if nu <= 0:
            raise ValueError("locator multiplicities must be positive")
        out *= (1 - Fraction(1, q ** (ell + nu))) / den
    return out


def _check_locator_degree(exps: Sequence[int], t: int, what: str) -> None:
    if sum(exps) > t:
        raise ValueError(f"{what} degree {sum(exps)} exceeds the distance "
                         f"parameter {t}")


def bound_thm1(q: int, ell: int, t: int, t_max_val, locator: Sequence[int] = ()
               ) -> BoundValue:
    """Failure bound for errors with every column drawn at an exact valuation.

    ``locator`` lists the root multiplicities of the error locator; the
    empty tuple is the trivial locator.
    """
    e = _slack_exponent(ell, t_max_val, t)
    _check_locator_degree(locator, t, "locator")
    val = Fraction(1, q ** e * (q - 1)) * _locator_product(q, ell, locator, ell)
    return BoundValue(val, q)


def bound_thm2(q: int, ell: int, t: int, t_max_val, locator: Sequence[int] = ()
               ) -> BoundValue:
    """Failure bound when columns may exceed their nominal valuations."""
    e = _slack_exponent(ell, t_max_val, t)
    _check_locator_degree(locator, t, "maximal locator")
    val = Fraction(1, q ** e * (q - 1)) * _locator_product(q, ell, locator, ell + 1)
    return BoundValue(val, q)


def bound_thm1_hybrid(q: int, ell: int, t_i: int, t_bar_i_val,
                      locator: Sequence[int] = ()) -> BoundValue:
    """Exact-valuation bound for the random part of a random/fixed split.

    ``locator`` covers only the random part; the fixed part does not enter
    the formula.
    """
    e = _slack_exponent(ell, t_bar_i_val, t_i)
    _check_locator_degree(locator, t_i, "random-part locator")
    val = Fraction(1, q ** e * (q - 1)) * _locator_product(q, ell, locator, ell)
    return BoundValue(val, q)


def bound_thm2_hybrid(q: int, ell: int, t_i: int, t_bar_i_val,
                      locator: Sequence[int] = ()) -> BoundValue:
    """Bounded-valuation variant of :func:`bound_thm1_hybrid`."""
    e = _slack_exponent(ell, t_bar_i_val, t_i)
    _check_locator_degree(locator, t_i, "random-part locator")
    val = Fraction(1, q ** e * (q - 1)) * _locator_product(q, ell, locator, ell + 1)
    return BoundValue(val, q)


def bound_thm1_poles(q: int, ell: int, t_e: int, t_bar_e_val,
                     locator: Sequence[int] = (), *,
                     with_prefactor: bool = False) -> BoundValue:
    """Exact-valuation bound for evaluation errors alongside valuation errors.

    The printed form carries no 1/(q-1) prefactor; ``with_prefactor``
    additionally applies it for comparison with the pole-free bounds.
    """
    e = _slack_exponent(ell, t_bar_e_val, t_e)
    _check_locator_degree(locator, t_e, "evaluation locator")
    val = Fraction(1, q ** e) * _locator_product(q, ell, locator, ell)
    if with_prefactor:
        val /= q - 1
    return BoundValue(val, q)


def bound_thm2_poles(q: int, ell: int, t_e: int, t_bar_e_val,
                     locator: Sequence[int] = (), *,
                     with_prefactor: bool = False) -> BoundValue:
    """Bounded-valuation variant of :func:`bound_thm1_poles`."""
    e = _slack_exponent(ell, t_bar_e_val, t_e)
    _check_locator_degree(locator, t_e, "maximal evaluation locator")
    val = Fraction(1, q ** e) * _locator_product(q, ell, locator, ell + 1)
    if with_prefactor:
        val /= q - 1
    return BoundValue(val, q)


def product_factor_bound(n: int, q: int, f_exp: int) -> Fraction:
    """Upper bound 1/(1 - n/q^f) on any locator product over n points."""
    if n < 0:
        raise ValueError("point count must be non-negative")
    qf = q ** f_exp
    if n >= qf:
        raise ValueError("point count must stay below q^f")
    return 1 / (1 - Fraction(n, qf))


def simplified_exponent(ell: int, slack: int) -> int:
    """Exponent of the coarse estimate q^-((ell+1)*slack + 1), which folds the
    1/(q-1) prefactor into one extra power of q."""
    if slack < 0:
        raise ValueError("slack must be non-negative")
    return (ell + 1) * slack + 1
