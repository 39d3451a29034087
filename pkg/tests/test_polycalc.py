"""Fueter-calculus oracles: frozen derivative values, operator identities."""

import math
import random
from fractions import Fraction

import pytest

from crfbench.hypercomplex import DIM, HNumber
from crfbench.polycalc import (
    HPoly,
    compat_pbar,
    dbar_system,
    fueter_d,
    fueter_d_right,
    fueter_dbar,
    fueter_dbar_right,
    fueter_transform,
    laplacian,
)


def rand_poly(rng, algebra, n, max_deg, n_terms, span=3):
    d = DIM[algebra]
    terms = {}
    for _ in range(n_terms):
        exp = [0] * (d * n)
        for _ in range(rng.randint(0, max_deg)):
            exp[rng.randrange(d * n)] += 1
        coef = HNumber(algebra, [Fraction(rng.randint(-span, span)) for _ in range(d)])
        terms[tuple(exp)] = terms.get(tuple(exp), HNumber.zero(algebra)) + coef
    return HPoly(algebra, n, terms)


# ---------------------------------------------------------------------------
# frozen first-order values
# ---------------------------------------------------------------------------

def test_partial_of_coordinate():
    x0 = HPoly.coordinate("H", 1, 0, 0)
    assert x0.partial(0, 0) == HPoly.constant("H", 1, 1)
    assert x0.partial(0, 1).is_zero()


def test_dbar_of_variable_is_minus_two():
    q = HPoly.variable("H", 1, 0)
    assert fueter_dbar(q, 0) == HPoly.constant("H", 1, -2)
    # octonionic analog: 1 - 7 = -6
    p = HPoly.variable("O", 1, 0)
    assert fueter_dbar(p, 0) == HPoly.constant("O", 1, -6)


def test_dbar_of_conj_variable_is_dim():
    qb = HPoly.variable_conj("H", 1, 0)
    assert fueter_dbar(qb, 0) == HPoly.constant("H", 1, 4)
    pb = HPoly.variable_conj("O", 1, 0)
    assert fueter_dbar(pb, 0) == HPoly.constant("O", 1, 8)


def test_dbar_ignores_other_variables():
    rng = random.Random(11)
    for _ in range(20):
        p = rand_poly(rng, "H", 2, 3, 4)
        # a polynomial in the second variable only is annihilated by dbar_0
        q_only = HPoly("H", 2, {e: c for e, c in p.terms.items() if not any(e[:4])})
        assert fueter_dbar(q_only, 0).is_zero()


def test_dbar_system_of_second_variable():
    q2 = HPoly.variable("H", 2, 1)
    s = dbar_system(q2)
    assert s[0].is_zero()
    assert s[1] == HPoly.constant("H", 2, -2)


def test_laplacian_of_cubed_variable_golden():
    # Delta q^3 = -2(d-2)(2q + conj q): -4 for quaternions, -12 for octonions
    # (hand derivation via q^3 = x0^3 - 3 x0 s + (3 x0^2 - s) v, s = |Im q|^2)
    for algebra, factor in (("H", -4), ("O", -12)):
        q = HPoly.variable(algebra, 1, 0)
        qb = HPoly.variable_conj(algebra, 1, 0)
        lhs = laplacian(q ** 3, 0)
        rhs = (2 * q + qb).scale(factor)
        assert lhs == rhs


# ---------------------------------------------------------------------------
# operator identities on random polynomials
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("algebra", ["H", "O"])
def test_laplacian_factorization_both_orders(algebra):
    rng = random.Random(12)
    for _ in range(100):
        p = rand_poly(rng, algebra, 2, 4, 4)
        h = rng.randrange(2)
        a = fueter_d(fueter_dbar(p, h), h)
        b = fueter_dbar(fueter_d(p, h), h)
        c = laplacian(p, h)
        assert a == c
        assert b == c


@pytest.mark.parametrize("algebra", ["H", "O"])
def test_laplacian_commutes_with_dbar(algebra):
    # the Laplacian is a scalar operator, so it commutes with the
    # unit-multiplying Fueter operators in any variable; the Fueter operators
    # of *different* variables do not commute with each other.
    rng = random.Random(13)
    for _ in range(50):
        p = rand_poly(rng, algebra, 2, 4, 4)
        assert laplacian(fueter_dbar(p, 0), 1) == fueter_dbar(laplacian(p, 1), 0)
        assert laplacian(fueter_dbar(p, 0), 0) == fueter_dbar(laplacian(p, 0), 0)


@pytest.mark.parametrize("algebra", ["H", "O"])
def test_compat_residuals_annihilate_gradients(algebra):
    # P-bar of dbar_system(u) vanishes identically for every polynomial u
    rng = random.Random(14)
    for _ in range(100):
        u = rand_poly(rng, algebra, 2, 4, 4)
        g = dbar_system(u)
        for r in compat_pbar(g):
            assert r.is_zero()


def test_compat_residual_octonion_witness():
    # g = (x_{1,0}^2, 0): exactly the (0,1) residual fires, with value 2
    x = HPoly.coordinate("O", 2, 1, 0)
    g = [x * x, HPoly.zero("O", 2)]
    res = compat_pbar(g)
    assert res[0] == HPoly.constant("O", 2, 2)
    assert res[1].is_zero()


def test_compat_residual_quaternion_incompatible_example():
    # g = (y_0^2, 0) is not a dbar_system image: first residual = -2
    y0 = HPoly.coordinate("H", 2, 1, 0)
    g = [y0 * y0, HPoly.zero("H", 2)]
    res = compat_pbar(g)
    assert res[0] == HPoly.constant("H", 2, -2)
    assert res[1].is_zero()


def test_right_operators_smoke():
    rng = random.Random(15)
    q = HPoly.variable("H", 1, 0)
    assert fueter_dbar_right(q, 0) == HPoly.constant("H", 1, -2)
    for _ in range(20):
        p = rand_poly(rng, "H", 1, 3, 3)
        a = fueter_d_right(fueter_dbar_right(p, 0), 0)
        assert a == laplacian(p, 0)
    with pytest.raises(ValueError):
        fueter_dbar_right(HPoly.variable("O", 1, 0), 0)


def test_left_linearity_over_right_constants():
    # dbar(p * c) == dbar(p) * c for constant quaternions (associativity)
    rng = random.Random(16)
    for _ in range(50):
        p = rand_poly(rng, "H", 2, 3, 4)
        c = HNumber("H", [Fraction(rng.randint(-3, 3)) for _ in range(4)])
        assert fueter_dbar(p.mul_const_right(c), 0) == \
            fueter_dbar(p, 0).mul_const_right(c)


# ---------------------------------------------------------------------------
# slice-function lift
# ---------------------------------------------------------------------------

def test_fueter_transform_cube():
    # u + iv = (x + iy)^3 lifts z^3 to q^3
    u = lambda x, y: x ** 3 - 3 * x * y ** 2
    v = lambda x, y: 3 * x ** 2 * y - y ** 3
    rng = random.Random(17)
    for _ in range(20):
        q = HNumber("H", [rng.uniform(-2, 2) for _ in range(4)], backend="float")
        expected = q * q * q
        got = fueter_transform(u, v, q)
        for a, b in zip(got.coeffs, expected.coeffs):
            assert abs(a - b) < 1e-12


def test_fueter_transform_identity_at_j():
    # F(z) = z lifted and evaluated at q = j gives j
    qj = HNumber.unit("H", 2).to_float()
    got = fueter_transform(lambda x, y: x, lambda x, y: y, qj)
    assert got == qj


def test_fueter_transform_cube_golden_value():
    # (1 + 2i)^3 = -11 - 2i, computed by hand
    u = lambda x, y: x ** 3 - 3 * x * y ** 2
    v = lambda x, y: 3 * x ** 2 * y - y ** 3
    q = HNumber("H", (1.0, 2.0, 0.0, 0.0), backend="float")
    got = fueter_transform(u, v, q)
    assert abs(got.coeffs[0] + 11) < 1e-12
    assert abs(got.coeffs[1] + 2) < 1e-12


def test_fueter_transform_axis():
    q = HNumber("H", (2.0, 0.0, 0.0, 0.0), backend="float")
    got = fueter_transform(lambda x, y: x * x, lambda x, y: y, q)
    assert got.coeffs == (4.0, 0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        fueter_transform(lambda x, y: x, lambda x, y: 1.0 + y, q)


# ---------------------------------------------------------------------------
# ring mechanics / io
# ---------------------------------------------------------------------------

def test_product_coefficient_order():
    # (i x) * (j x) = k x^2 while (j x) * (i x) = -k x^2
    x = HPoly.coordinate("H", 1, 0, 0)
    i, j, k = (HNumber.unit("H", a) for a in (1, 2, 3))
    assert x.mul_const_left(i) * x.mul_const_left(j) == (x * x).mul_const_left(k)
    assert x.mul_const_left(j) * x.mul_const_left(i) == (x * x).mul_const_left(-k)


def test_evaluate_exact_and_float():
    q = HPoly.variable("H", 1, 0)
    p = q * q
    v = p.evaluate((Fraction(1), Fraction(2), Fraction(0), Fraction(0)))
    assert v == HNumber("H", (-3, 4, 0, 0))
    vf = p.evaluate((1.0, 2.0, 0.0, 0.0))
    assert vf.backend == "float"
    assert abs(vf.coeffs[0] + 3) < 1e-14 and abs(vf.coeffs[1] - 4) < 1e-14


def test_substitute_linear_reduces_on_hyperplane():
    # substitute x_0 := 1 - 2 y_1 into a polynomial and check by evaluation
    rng = random.Random(18)
    p = rand_poly(rng, "H", 2, 3, 5)
    coeffs = [0] * 8
    coeffs[5] = Fraction(-2)
    sub = p.substitute_linear(0, coeffs, 1)
    for _ in range(10):
        pt = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(8)]
        pt[0] = 1 - 2 * pt[5]
        assert p.evaluate(pt) == sub.evaluate(pt)
    assert all(e[0] == 0 for e in sub.terms)


def test_json_roundtrip():
    rng = random.Random(19)
    p = rand_poly(rng, "O", 2, 3, 5)
    assert HPoly.from_json(p.to_json()) == p
    blob = p.to_json()
    assert blob["schema_version"] == 1
    assert blob["terms"] == sorted(blob["terms"], key=lambda t: t["exp"])


def test_compat_pbar_input_validation():
    with pytest.raises(ValueError):
        compat_pbar([HPoly.zero("H", 3)] * 3)  # quaternionic needs n == 2
    with pytest.raises(ValueError):
        compat_pbar([HPoly.zero("H", 2)])      # wrong length
