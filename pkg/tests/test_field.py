import math
import re
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from galoisdct import field
from galoisdct.field import (DyadicRational, FieldElement, FieldError, LevelCapError,
                             LevelMismatchError, NotDyadicError, fe_arith, lift, parse_rational,
                             rat_arith, tower_level, two_cos, two_cos_surd)
from galoisdct.poly import Poly


def theta(k):
    return FieldElement.generator(k)


# -- rationals ---------------------------------------------------------------

def test_rat_arith_examples():
    assert rat_arith(F(1, 2), F(1, 3), "add") == F(5, 6)
    assert F(2, 4) == F(1, 2) and F(2, 4).denominator == 2
    assert rat_arith(F(3, 7), F(7, 3), "mul") == 1
    assert F(0).numerator == 0 and F(0).denominator == 1


def test_rat_div_by_zero():
    with pytest.raises(FieldError):
        rat_arith(1, 0, "div")


@pytest.mark.parametrize("text,value", [("3/4", F(3, 4)), ("-2/6", F(-1, 3)), ("0.125", F(1, 8)),
                                        ("7", F(7)), (" 1e-2 ", F(1, 100))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


# -- dyadic skews ----------------------------------------------------------

def test_dyadic_parse_and_children():
    r = DyadicRational.parse("3/2^3")
    assert r == DyadicRational(3, 3) == DyadicRational.parse("3/8")
    assert str(r) == "3/8"
    assert r.half() == DyadicRational(3, 4)
    assert r.reflected_half() == DyadicRational(13, 4)  # 1 - 3/16


def test_dyadic_canonical_form():
    assert DyadicRational.parse("2/4") == DyadicRational(1, 1)
    assert DyadicRational.parse("6/2^4") == DyadicRational(3, 3)


@pytest.mark.parametrize("bad", ["1/6", "1/3", "0/2", "2/2", "5/4", "0.5", "x"])
def test_dyadic_rejects(bad):
    with pytest.raises(NotDyadicError):
        DyadicRational.parse(bad)


# -- tower levels ------------------------------------------------------------

def test_tower_moduli():
    assert tower_level(0).modulus == Poly([0, 1])
    assert tower_level(1).modulus == Poly([-2, 0, 1])
    assert tower_level(2).modulus == Poly([2, 0, -4, 0, 1])


def test_modulus_k2_from_t4():
    # 2·T_4(x/2) with T_4 = 8x^4 - 8x^2 + 1
    half_x = Poly([0, F(1, 2)])
    t4 = Poly([1, 0, -8, 0, 8])
    assert t4.compose(half_x) * 2 == tower_level(2).modulus
    th = 2 * math.cos(math.pi / 8)
    assert abs(tower_level(2).modulus(th)) < 1e-12


@pytest.mark.parametrize("k", range(0, 7))
def test_modulus_monic_integer_and_root(k):
    mod = tower_level(k).modulus
    assert mod.degree == 2 ** k and mod.lead == 1
    assert all(isinstance(c, int) for c in mod.coeffs)
    # float Horner loses digits to cancellation; evaluate in high precision instead
    with mpmath.workdps(50):
        th = 2 * mpmath.cos(mpmath.pi / 2 ** (k + 1))
        assert abs(mpmath.polyval(list(reversed(mod.coeffs)), th)) < mpmath.mpf(10) ** -30 * sum(abs(c) for c in mod.coeffs)


def test_level_cap():
    with pytest.raises(LevelCapError):
        tower_level(field.LEVEL_CAP + 1)
    assert tower_level(field.LEVEL_CAP).k == field.LEVEL_CAP


def _rational_roots(poly):
    # rational root theorem on a monic integer polynomial: roots are integer divisors
    c0 = poly.coeffs[0]
    cands = {d for d in range(1, abs(c0) + 1) if c0 % d == 0} if c0 else {0}
    return [s * d for d in cands for s in (1, -1) if poly(s * d) == 0]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_modulus_irreducible(k):
    """No rational root, and no proper product of linear factors has rational coefficients."""
    from itertools import combinations

    mod = tower_level(k).modulus
    assert _rational_roots(mod) == []
    d = 2 ** k
    roots = [FieldElement.basis_element(k, 2 * i + 1) for i in range(d)]
    for size in range(1, d // 2 + 1):
        for subset in combinations(roots, size):
            prod = Poly([1])
            for a in subset:
                prod = prod * Poly([-a, 1])
            # any factor over Q would be demoted to rational coefficients
            assert not all(isinstance(c, (int, F)) for c in prod.coeffs)


def test_modulus_irreducible_sympy():
    sympy = pytest.importorskip("sympy")
    x = sympy.Symbol("x")
    for k in range(1, 5):
        expr = sum(c * x ** i for i, c in enumerate(tower_level(k).modulus.coeffs))
        _, factors = sympy.factor_list(expr)
        assert len(factors) == 1 and factors[0][1] == 1


# -- field arithmetic --------------------------------------------------------

def test_sqrt2_squared_at_level2():
    s = theta(2) * theta(2) - 2
    assert s.coeffs == (-2, 0, 1, 0)
    assert s * s == 2


def test_inverse_of_theta_level2():
    inv = theta(2).inverse()
    # from θ^4 - 4θ^2 + 2 = 0: θ^{-1} = (4θ - θ^3)/2
    assert inv.coeffs == (0, 2, 0, F(-1, 2))
    assert theta(2) * inv == 1
    assert fe_arith(theta(2), inv, "mul") == 1


def test_additive_identity():
    e = FieldElement.from_coeffs([1, F(2, 3), -5, 7])
    assert e + 0 == e
    assert fe_arith(e, FieldElement(2), "add") == e


def test_fe_arith_strict_levels():
    with pytest.raises(LevelMismatchError):
        fe_arith(theta(1), theta(2), "add")


def test_division_by_zero():
    with pytest.raises(FieldError):
        theta(2) / FieldElement(2)
    with pytest.raises(FieldError):
        fe_arith(theta(2), FieldElement(2), "div")


def test_coeffs_round_trip():
    cs = [F(1), F(-2, 3), F(0), F(5, 7), F(1, 2), F(0), F(-3), F(2)]
    assert FieldElement.from_coeffs(cs).coeffs == tuple(cs)


# -- lift ----------------------------------------------------------------------

def test_lift_sqrt2():
    sqrt2 = two_cos(F(1, 4))
    up = lift(sqrt2, 2)
    assert up.coeffs == (-2, 0, 1, 0)
    assert abs(up.real_value() - 2 * math.cos(math.pi / 4)) < 1e-12
    assert abs(up.real_value() - 1.41421) < 1e-5


def test_lift_identity_and_rationals():
    e = FieldElement.from_coeffs([3, 1, 4, 1])
    assert lift(e, 2) is e
    assert lift(3, 3).coeffs == (3, 0, 0, 0, 0, 0, 0, 0)
    with pytest.raises(LevelMismatchError):
        lift(e, 1)


def test_lift_matches_chebyshev_substitution():
    # θ_j = 2T_{2^Δ}(θ_k / 2): substitute into e's power form and compare
    e = FieldElement.from_coeffs([F(1, 2), -3])
    for delta in range(1, 4):
        k = 1 + delta
        sub = theta(k)
        for _ in range(delta):
            sub = sub * sub - 2
        expected = e.coeffs[0] + e.coeffs[1] * sub
        assert lift(e, k) == expected


# -- two_cos -----------------------------------------------------------------

def test_two_cos_examples():
    assert two_cos(F(1, 2)) == 0 and two_cos(F(1, 2)).level == 0
    r4 = two_cos(F(1, 4))
    assert r4.level == 1 and r4.coeffs == (0, 1)
    r8 = two_cos(F(1, 8))
    assert r8.level == 2 and r8 == theta(2)
    assert abs(r8.real_value() - 1.847759) < 1e-6
    assert two_cos(0) == 2 and two_cos(1) == -2


def test_two_cos_rejects_non_dyadic():
    with pytest.raises(NotDyadicError):
        two_cos(F(1, 3))


@pytest.mark.parametrize("j", range(2, 10))
def test_two_cos_values(j):
    for m in range(1, 2 ** j, 2):
        e = two_cos(F(m, 2 ** j))
        assert e.level == j - 1 and e.min_level == j - 1
        assert abs(e.real_value() - 2 * math.cos(m * math.pi / 2 ** j)) < 1e-12


@pytest.mark.parametrize("j", range(1, 9))
def test_half_angle_identity(j):
    # (2cos(rπ/2))^2 = 2 + 2cos(rπ)
    for m in range(1, 2 ** j, 2):
        r = F(m, 2 ** j)
        assert two_cos(r / 2) ** 2 == 2 + two_cos(r)


def test_surd_strings():
    assert two_cos_surd(F(1, 4)) == "√2"
    assert two_cos_surd(F(3, 4)) == "-√2"
    assert two_cos_surd(F(1, 8)) == "√(2+√2)"
    assert two_cos_surd(F(3, 8)) == "√(2-√2)"
    assert two_cos_surd(F(5, 8)) == "-√(2-√2)"
    assert two_cos_surd(F(1, 16)) == "√(2+√(2+√2))"
    assert (two_cos(F(1, 4)) / 2).surd() == "√2/2"


def test_surd_numeric():
    # evaluate the nested radical text independently
    for m in range(1, 32, 2):
        s = re.sub(r"√(\d+)", r"sqrt(\1)", two_cos_surd(F(m, 32))).replace("√", "sqrt")
        assert abs(eval(s, {"sqrt": math.sqrt}) - 2 * math.cos(m * math.pi / 32)) < 1e-12


def test_hash_consistent_across_levels():
    a = two_cos(F(1, 4))
    b = a.lift(5)
    assert a == b and hash(a) == hash(b)
    assert hash(FieldElement.rational(F(3, 2), 4)) == hash(F(3, 2))
    assert len({a, b, two_cos(F(3, 4)), -b}) == 2


# -- properties --------------------------------------------------------------

coef = st.fractions(min_value=-10, max_value=10, max_denominator=12)


def elements(level):
    return st.lists(coef, min_size=2 ** level, max_size=2 ** level).map(
        lambda cs: FieldElement.from_coeffs(cs, level))


level_st = st.integers(min_value=0, max_value=4)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_field_axioms(data):
    k = data.draw(level_st)
    a, b, c = (data.draw(elements(k)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if a != 0:
        assert a * a.inverse() == 1
        assert (b / a) * a == b


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_real_value_homomorphism(data):
    k = data.draw(level_st)
    a, b = data.draw(elements(k)), data.draw(elements(k))
    assert abs((a * b).real_value() - a.real_value() * b.real_value()) < 1e-10 * max(
        1.0, abs(a.real_value() * b.real_value()))
    assert abs((a + b).real_value() - (a.real_value() + b.real_value())) < 1e-10


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_real_value_matches_power_form(data):
    k = data.draw(level_st)
    a = data.draw(elements(k))
    th = tower_level(k).theta
    direct = sum(float(c) * th ** i for i, c in enumerate(a.coeffs))
    assert abs(a.real_value() - direct) < 1e-9


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_lift_is_ring_homomorphism(data):
    k = data.draw(st.integers(min_value=0, max_value=3))
    up = data.draw(st.integers(min_value=k, max_value=5))
    a, b = data.draw(elements(k)), data.draw(elements(k))
    assert lift(a * b, up) == lift(a, up) * lift(b, up)
    assert lift(a + b, up) == lift(a, up) + lift(b, up)
    assert lift(a, up).descend() == a
