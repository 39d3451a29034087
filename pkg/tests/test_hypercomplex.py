"""Algebra-level oracles: frozen unit products, division-algebra laws."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crfbench.hypercomplex import (
    ALGEBRAS,
    DIM,
    MUL_TABLE,
    OCT_DBAR_MATRIX,
    AlgebraMismatch,
    HNumber,
    unit_product,
)


def rand_hnumber(rng, algebra, span=9):
    return HNumber(
        algebra,
        [Fraction(rng.randint(-span, span), rng.randint(1, span)) for _ in range(DIM[algebra])],
    )


# ---------------------------------------------------------------------------
# frozen golden products
# ---------------------------------------------------------------------------

def test_quaternion_ij_is_k():
    i = HNumber.unit("H", 1)
    j = HNumber.unit("H", 2)
    k = HNumber.unit("H", 3)
    assert i * j == k
    assert j * i == -k


def test_octonion_imaginary_unit_squares_to_minus_one():
    for alpha in range(1, 8):
        u = HNumber.unit("O", alpha)
        assert u * u == -HNumber.one("O")


def test_octonion_nonassociativity_witness():
    # Golden values extracted by hand from the realified operator matrix
    # before this module was written: the two bracketings differ in sign.
    i1, i2, i4, i7 = (HNumber.unit("O", a) for a in (1, 2, 4, 7))
    left = (i1 * i2) * i4
    right = i1 * (i2 * i4)
    assert left == i7
    assert right == -i7
    assert left == -right


def test_unit_product_table_lookup():
    assert unit_product("H", 1, 2) == (3, 1)
    assert unit_product("O", 2, 5) == (7, 1)   # oriented triple (2,5,7)
    assert unit_product("O", 5, 2) == (7, -1)


def test_conj_and_norm_golden():
    one_plus_i = HNumber("H", (1, 1, 0, 0))
    assert one_plus_i.conj() == HNumber("H", (1, -1, 0, 0))
    assert HNumber("H", (1, 1, 1, 1)).norm_sq() == 4


def test_inverse_golden():
    a = HNumber.unit("O", 5).scale(2)
    inv = a.inverse()
    assert inv == HNumber("O", (0, 0, 0, 0, 0, -Fraction(1, 2), 0, 0))
    assert a * inv == HNumber.one("O")
    assert inv * a == HNumber.one("O")


def test_octonion_matrix_defines_total_product():
    # every (alpha, beta) pair appears exactly once in the derived table
    table = MUL_TABLE["O"]
    assert len(table) == 8 and all(len(row) == 8 for row in table)
    seen = set()
    for gamma, row in enumerate(OCT_DBAR_MATRIX):
        for beta, (sign, alpha) in enumerate(row):
            assert sign in (1, -1)
            seen.add((alpha, beta))
    assert len(seen) == 64


def test_quaternion_table_is_octonion_restriction():
    for a in range(4):
        for b in range(4):
            assert MUL_TABLE["H"][a][b] == MUL_TABLE["O"][a][b]


# ---------------------------------------------------------------------------
# division-algebra laws on bulk random samples
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("algebra", ALGEBRAS)
def test_norm_multiplicativity_bulk(algebra):
    rng = random.Random(20240501)
    for _ in range(10_000):
        a = rand_hnumber(rng, algebra, span=5)
        b = rand_hnumber(rng, algebra, span=5)
        assert (a * b).norm_sq() == a.norm_sq() * b.norm_sq()


def test_quaternion_associativity_bulk():
    rng = random.Random(20240502)
    for _ in range(10_000):
        a = rand_hnumber(rng, "H", span=4)
        b = rand_hnumber(rng, "H", span=4)
        c = rand_hnumber(rng, "H", span=4)
        assert (a * b) * c == a * (b * c)


def test_octonion_alternativity_bulk():
    rng = random.Random(20240503)
    for _ in range(10_000):
        a = rand_hnumber(rng, "O", span=4)
        b = rand_hnumber(rng, "O", span=4)
        assert (a * a) * b == a * (a * b)
        assert (b * a) * a == b * (a * a)


def test_octonion_linearized_alternativity_units():
    # i_alpha (i_beta w) + i_beta (i_alpha w) == 0 for distinct imaginary units;
    # this is what makes the second-order operator calculus work.
    rng = random.Random(20240504)
    for alpha in range(1, 8):
        for beta in range(1, 8):
            if alpha == beta:
                continue
            w = rand_hnumber(rng, "O")
            ia, ib = HNumber.unit("O", alpha), HNumber.unit("O", beta)
            assert ia * (ib * w) + ib * (ia * w) == HNumber.zero("O")


@pytest.mark.parametrize("algebra", ALGEBRAS)
def test_conjugation_is_antiautomorphism(algebra):
    rng = random.Random(20240505)
    for _ in range(2_000):
        a = rand_hnumber(rng, algebra, span=5)
        b = rand_hnumber(rng, algebra, span=5)
        assert (a * b).conj() == b.conj() * a.conj()


@pytest.mark.parametrize("algebra", ALGEBRAS)
def test_inverse_roundtrip(algebra):
    rng = random.Random(20240506)
    for _ in range(500):
        a = rand_hnumber(rng, algebra, span=5)
        if a.is_zero():
            continue
        assert a * a.inverse() == HNumber.one(algebra)
        assert a.inverse() * a == HNumber.one(algebra)


small_fracs = st.fractions(min_value=-10, max_value=10, max_denominator=12)


@given(st.lists(small_fracs, min_size=8, max_size=8),
       st.lists(small_fracs, min_size=8, max_size=8))
@settings(max_examples=200, deadline=None)
def test_norm_multiplicativity_hypothesis(ca, cb):
    a = HNumber("O", ca)
    b = HNumber("O", cb)
    assert (a * b).norm_sq() == a.norm_sq() * b.norm_sq()


@given(st.lists(small_fracs, min_size=4, max_size=4),
       st.lists(small_fracs, min_size=4, max_size=4),
       st.lists(small_fracs, min_size=4, max_size=4))
@settings(max_examples=200, deadline=None)
def test_quaternion_associativity_hypothesis(ca, cb, cc):
    a, b, c = HNumber("H", ca), HNumber("H", cb), HNumber("H", cc)
    assert (a * b) * c == a * (b * c)


# ---------------------------------------------------------------------------
# error handling and serialization
# ---------------------------------------------------------------------------

def test_mixed_algebra_raises():
    with pytest.raises(AlgebraMismatch):
        HNumber.one("H") * HNumber.one("O")


def test_mixed_backend_raises():
    with pytest.raises(AlgebraMismatch):
        HNumber.one("H") * HNumber.one("H", backend="float")


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        HNumber.zero("H").inverse()


def test_json_roundtrip_exact():
    a = HNumber("O", [Fraction(3, 7), -2, 0, 1, 0, 0, Fraction(-5, 2), 0])
    assert HNumber.from_json(a.to_json()) == a
    assert a.to_json()["c"][0] == "3/7"


def test_json_roundtrip_float():
    a = HNumber("H", (0.5, -1.25, 0.0, 3.0), backend="float")
    b = HNumber.from_json(a.to_json())
    assert b.backend == "float"
    assert b == a


def test_float_backend_mul_matches_exact():
    rng = random.Random(20240507)
    for _ in range(200):
        a = rand_hnumber(rng, "O", span=3)
        b = rand_hnumber(rng, "O", span=3)
        cf = (a.to_float() * b.to_float()).coeffs
        ce = (a * b).coeffs
        for x, y in zip(cf, ce):
            assert abs(x - float(y)) < 1e-12
