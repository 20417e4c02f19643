"""Decoding radii and exact rational failure bounds."""

from fractions import Fraction

import pytest

from srfcodes.bounds import (BoundValue, bound_thm1, bound_thm1_hybrid,
                             bound_thm1_poles, bound_thm2, bound_thm2_hybrid,
                             bound_thm2_poles, product_factor_bound,
                             simplified_exponent, t_bar_e, t_bar_i, t_max,
                             t_max_floor)
from srfcodes.field import Rng


def thm1_direct(q, ell, t, radius, exps):
    """Same bound assembled purely from integer powers of q."""
    e = (ell + 1) * (Fraction(radius) - t)
    assert e.denominator == 1
    num, den = 1, q ** int(e) * (q - 1)
    for nu in exps:
        num *= q ** (ell + nu) - 1
        den *= (q ** ell - 1) * q ** nu
    return Fraction(num, den)


def thm2_direct(q, ell, t, radius, exps):
    e = (ell + 1) * (Fraction(radius) - t)
    assert e.denominator == 1
    num, den = 1, q ** int(e) * (q - 1)
    for nu in exps:
        num *= q ** (ell + nu) - 1
        den *= (q ** (ell + 1) - 1) * q ** (nu - 1)
    return Fraction(num, den)


def test_t_max_worked_values():
    assert t_max(2, 19, 5, 2) == Fraction(26, 3)
    assert t_max_floor(2, 19, 5, 2) == 8
    assert t_max(1, 10, 3, 2) == 3
    assert t_max(4, 13, 4, 4) == Fraction(24, 5)
    assert t_max_floor(4, 13, 4, 4) == 4
    # degree budget eats the whole point system
    assert t_max(3, 5, 4, 2) == 0
    assert t_max_floor(3, 5, 4, 2) == 0


def test_t_max_validation():
    with pytest.raises(ValueError, match="interleaving"):
        t_max(0, 10, 2, 2)
    with pytest.raises(ValueError, match="degree budget"):
        t_max(2, 4, 4, 2)


def test_split_radii_worked_values():
    assert t_bar_i(2, 19, 5, 2, 3) == Fraction(14, 3)
    assert t_bar_e(3, 12, 3, 2, 2) == 3
    # nothing reserved: both collapse to the full radius
    assert t_bar_i(2, 19, 5, 2, 0) == t_max(2, 19, 5, 2)
    assert t_bar_e(2, 19, 5, 2, 0) == t_max(2, 19, 5, 2)
    with pytest.raises(ValueError, match="negative radius"):
        t_bar_i(2, 19, 5, 2, 7)
    with pytest.raises(ValueError, match="non-negative"):
        t_bar_e(2, 19, 5, 2, -1)


def test_thm1_frozen_value():
    got = bound_thm1(5, 2, 2, Fraction(2), (2,))
    assert got.value == Fraction(13, 50)
    assert got.q == 5


def test_trivial_locator_is_pure_power():
    got = bound_thm1(101, 4, 4, t_max(4, 13, 4, 4))
    assert got.value == Fraction(1, 101 ** 4 * 100)
    # without a locator the two variants agree
    assert bound_thm2(101, 4, 4, t_max(4, 13, 4, 4)).value == got.value


def test_bounds_match_integer_formula():
    for q in (2, 5, 101):
        for ell in (1, 2, 4):
            for exps in ((), (1,), (2,), (1, 1), (3, 2)):
                base = sum(exps)
                for t in (base, base + 1):
                    for slack in (0, 1, 3):
                        radius = Fraction(t + slack)
                        got1 = bound_thm1(q, ell, t, radius, exps)
                        got2 = bound_thm2(q, ell, t, radius, exps)
                        assert got1.value == thm1_direct(q, ell, t, radius, exps)
                        assert got2.value == thm2_direct(q, ell, t, radius, exps)
                        assert got1.q == q
                    # fractional radius ell/(ell+1) * integer
                    radius = Fraction(ell, ell + 1) * (2 * t + 2)
                    assert bound_thm1(q, ell, t, radius, exps).value == \
                        thm1_direct(q, ell, t, radius, exps)


def test_thm2_simple_roots_are_free():
    base = bound_thm2(7, 2, 3, Fraction(4)).value
    assert bound_thm2(7, 2, 3, Fraction(4), (1, 1, 1)).value == base
    # the exact-valuation variant charges for the same roots
    assert bound_thm1(7, 2, 3, Fraction(4), (1, 1, 1)).value > \
        bound_thm1(7, 2, 3, Fraction(4)).value
    ratio = (1 - Fraction(1, 7 ** 3)) / (1 - Fraction(1, 7 ** 2))
    assert bound_thm1(7, 2, 3, Fraction(4), (2, 1)).value == \
        bound_thm2(7, 2, 3, Fraction(4), (2, 1)).value * ratio ** 2


def test_hybrid_with_no_fixed_errors_matches_plain():
    q, ell, L, d_f, d_g = 11, 3, 14, 3, 2
    tm = t_max(ell, L, d_f, d_g)
    assert t_bar_i(ell, L, d_f, d_g, 0) == tm
    for exps in ((), (1,), (2, 1)):
        h1 = bound_thm1_hybrid(q, ell, 3, t_bar_i(ell, L, d_f, d_g, 0), exps)
        h2 = bound_thm2_hybrid(q, ell, 3, t_bar_i(ell, L, d_f, d_g, 0), exps)
        assert h1.value == bound_thm1(q, ell, 3, tm, exps).value
        assert h2.value == bound_thm2(q, ell, 3, tm, exps).value
    # reserved budget shrinks the radius: t_bar = 3/4 * (10 - 4) = 9/2
    got = bound_thm1_hybrid(11, 3, 2, t_bar_i(3, 14, 3, 2, 2), (1,))
    assert got.value == Fraction(1464, 11 ** 10 * 10 * 1463)


def test_pole_bounds_prefactor_switch():
    q, ell, exps = 17, 2, (2, 1)
    t, radius = 4, Fraction(6)
    plain1 = bound_thm1(q, ell, t, radius, exps).value
    plain2 = bound_thm2(q, ell, t, radius, exps).value
    assert bound_thm1_poles(q, ell, t, radius, exps).value == plain1 * (q - 1)
    assert bound_thm2_poles(q, ell, t, radius, exps).value == plain2 * (q - 1)
    assert bound_thm1_poles(q, ell, t, radius, exps,
                            with_prefactor=True).value == plain1
    assert bound_thm2_poles(q, ell, t, radius, exps,
                            with_prefactor=True).value == plain2


def test_product_factor_bound_dominates_locator_products():
    rng = Rng(55)
    for _ in range(200):
        q = (2, 3, 5, 17)[rng.randrange(4)]
        ell = 1 + rng.randrange(3)
        n = 1 + rng.randrange(6)
        if n >= q ** ell:
            continue
        exps = tuple(1 + rng.randrange(3) for _ in range(n))
        t = sum(exps)
        # slack zero isolates the locator product times 1/(q-1)
        prod1 = bound_thm1(q, ell, t, Fraction(t), exps).value * (q - 1)
        prod2 = bound_thm2(q, ell, t, Fraction(t), exps).value * (q - 1)
        assert 1 <= prod1 <= product_factor_bound(n, q, ell)
        assert 1 <= prod2 <= product_factor_bound(n, q, ell + 1)


def test_product_factor_bound_values_and_validation():
    assert product_factor_bound(3, 5, 2) == Fraction(25, 22)
    assert product_factor_bound(0, 5, 2) == 1
    with pytest.raises(ValueError, match="non-negative"):
        product_factor_bound(-1, 5, 2)
    with pytest.raises(ValueError, match="below q\\^f"):
        product_factor_bound(25, 5, 2)


def test_bounds_monotone_in_slack_and_distance():
    q, ell, exps = 5, 2, (1,)
    shrink = [bound_thm1(q, ell, 1, Fraction(1 + s), exps).value
              for s in range(6)]
    assert all(a > b for a, b in zip(shrink, shrink[1:]))
    grow = [bound_thm1(q, ell, t, Fraction(8), exps).value
            for t in range(1, 9)]
    assert all(a < b for a, b in zip(grow, grow[1:]))


def test_simplified_exponent_folds_prefactor():
    assert simplified_exponent(4, 6) == 31
    assert simplified_exponent(1, 0) == 1
    exact = bound_thm1(101, 4, 0, Fraction(6)).value
    assert Fraction(1, 101 ** simplified_exponent(4, 6)) <= exact
    assert exact <= Fraction(1, 101 ** 30)
    with pytest.raises(ValueError, match="slack"):
        simplified_exponent(3, -1)


def test_bound_value_display_and_clamp():
    assert str(BoundValue(Fraction(13, 50), 5)) == "13/50 ~ q^-0.84"
    shown = str(bound_thm1(101, 4, 0, Fraction(6)))
    assert shown.startswith("1/")
    assert shown.endswith("~ q^-31.00")
    weak = BoundValue(Fraction(7, 2), 5)
    assert weak.clamped == 1
    assert weak.value == Fraction(7, 2)
    assert BoundValue(Fraction(1, 3), 5).clamped == Fraction(1, 3)


def test_bound_validation_errors():
    with pytest.raises(ValueError, match="multiple of an integer"):
        bound_thm1(5, 2, 0, Fraction(1, 2))
    with pytest.raises(ValueError, match="exceeds the decoding radius"):
        bound_thm1(5, 2, 3, Fraction(2))
    with pytest.raises(ValueError, match="non-negative"):
        bound_thm1(5, 2, -1, Fraction(2))
    with pytest.raises(ValueError, match="locator degree 2 exceeds"):
        bound_thm1(5, 2, 1, Fraction(2), (2,))
    with pytest.raises(ValueError, match="multiplicities must be positive"):
        bound_thm1(5, 2, 2, Fraction(2), (0, 2))
