import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import analytic_class_number, lucas_seq
from trinogen.arith import is_prime, jacobi
from trinogen.lucas import core_discriminant, period, wss_test
from trinogen.quadfield import (
    HypothesisError,
    QuadInt,
    class_number_real,
    field_data,
    form_cycles,
    is_fundamental_discriminant,
    main1_congruence,
    main1_value,
    narrow_class_number,
    quad_pow,
    residual_degree,
    unit_order,
)

ODD_PRIMES_100 = [p for p in range(3, 100) if is_prime(p)]


@pytest.mark.parametrize(
    "k,D,fund,h", [(1, 5, 5, 1), (2, 2, 8, 1), (6, 10, 40, 2), (15, 229, 229, 3), (8, 17, 17, 1)]
)
def test_field_examples(k, D, fund, h):
    fd = field_data(k)
    assert (fd.D, fd.fund_disc, fd.class_number) == (D, fund, h)


def test_field_flags():
    assert not field_data(8).in_theorem_range  # k = 0 mod 4
    fd = field_data(11)  # D = 125
    assert not fd.squarefree_D and fd.class_number is None and fd.fund_disc == 5
    with pytest.raises(ValueError):
        field_data(4)


def test_ring_examples():
    eps = QuadInt.epsilon(1, 9)
    x = eps**8
    assert (x.a, x.b) == (4, 3)
    x4 = eps**4
    assert (x4.a, x4.b) == (2, 3)
    assert not (x4 + 1).is_zero()
    y = QuadInt.epsilon(1, 3) ** 4
    assert (y + 1).is_zero()


def test_ring_mismatch():
    with pytest.raises(ValueError):
        QuadInt.epsilon(1, 9) * QuadInt.epsilon(2, 9)


@settings(max_examples=500, deadline=None)
@given(st.integers(1, 20), st.integers(2, 1000), st.integers(1, 60))
def test_coordinate_law(k, m, n):
    seq = lucas_seq(k, n + 1, m)
    x = quad_pow(QuadInt.epsilon(k, m), n)
    assert (x.a, x.b) == (seq[n - 1], seq[n])


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 40), st.integers(2, 10**6), st.integers(0, 200))
def test_norm_of_powers(k, m, n):
    nrm = quad_pow(QuadInt.epsilon(k, m), n).norm()
    assert nrm == QuadInt((-1) ** n, 0, k, m)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 40), st.integers(2, 10**4), st.integers(-50, 50), st.integers(-50, 50))
def test_conjugate_is_involution(k, m, a, b):
    x = QuadInt(a, b, k, m)
    assert x.conjugate().conjugate() == x
    assert (x + x.conjugate()).b == 0


def test_unit_order_examples():
    assert unit_order(1, 3) == 8
    assert unit_order(2, 13) == 28
    assert unit_order(1, 9) == 24
    with pytest.raises(HypothesisError):
        unit_order(1, 11)  # 5 is a residue mod 11


def test_unit_order_bridge():
    for k in range(1, 21):
        for p in ODD_PRIMES_100:
            if jacobi(core_discriminant(k), p) != -1:
                continue
            assert unit_order(k, p) == period(k, p).pi
            assert unit_order(k, p * p) == period(k, p * p).pi
            assert (quad_pow(QuadInt.epsilon(k, p), p + 1) + 1).is_zero()


def test_residual_degree():
    assert residual_degree(1, 3) == 2
    assert residual_degree(1, 11) == 1


@pytest.mark.parametrize("k,p,m_exp,expected", [(2, 13, 1, True), (1, 3, 1, False), (1, 3, 2, False)])
def test_main1_examples(k, p, m_exp, expected):
    assert main1_congruence(k, p, m_exp) is expected


def test_main1_large_exponent():
    assert main1_congruence(2, 13, 10**6) is True


@pytest.mark.parametrize(
    "k,p,condition",
    [(1, 2, "p_odd_prime"), (1, 9, "p_odd_prime"), (11, 3, "D_squarefree"), (3, 3, "p_divides_k"),
     (32, 3, "gcd_p_hD"), (1, 5, "gcd_p_hD"), (1, 11, "delta")],
)
def test_main1_hypotheses(k, p, condition):
    with pytest.raises(HypothesisError) as exc:
        main1_congruence(k, p, 1)
    assert exc.value.condition == condition


def test_conjugate_congruence_agrees():
    for k in range(1, 31):
        if k == 4 or field_data(k).class_number is None:
            continue
        for p in (q for q in range(3, 200) if is_prime(q)):
            if jacobi(core_discriminant(k), p) != -1:
                continue
            for m_exp in (1, 2):
                lhs = main1_value(k, p, m_exp)
                rhs = main1_value(k, p, m_exp, conjugate=True)
                assert lhs.is_zero() == rhs.is_zero()
                # conj form = -(eps form) / eps^(2p^m)
                e2 = quad_pow(QuadInt.epsilon(k, p * p), 2 * p**m_exp)
                assert rhs * e2 == -lhs


def test_main1_matches_wss():
    for k in range(1, 31):
        if k == 4:
            continue
        fd = field_data(k)
        if fd.class_number is None:
            continue
        for p in (q for q in range(3, 500) if is_prime(q)):
            if k % p == 0 or (fd.class_number * fd.D) % p == 0 or jacobi(fd.D, p) != -1:
                continue
            assert main1_congruence(k, p, 1) == wss_test(k, p).is_wss, (k, p)


def test_unit_congruence_property():
    # eps^(p^r - 1) == 1 mod p^2 exactly for the WSS primes
    for k in range(1, 31):
        if k == 4:
            continue
        fd = field_data(k)
        if fd.class_number is None:
            continue
        for p in (q for q in range(3, 300) if is_prime(q)):
            delta = jacobi(fd.D, p)
            if delta == 0 or (fd.class_number * fd.D) % p == 0:
                continue
            r = residual_degree(k, p)
            unit = quad_pow(QuadInt.epsilon(k, p * p), p**r - 1) == QuadInt.one(k, p * p)
            assert unit == wss_test(k, p).is_wss, (k, p)


@pytest.mark.parametrize("d,h", [(5, 1), (8, 1), (13, 1), (40, 2), (60, 2)])
def test_class_number_examples(d, h):
    assert class_number_real(d) == h


def test_narrow_versus_wide():
    assert narrow_class_number(60) == 4 and class_number_real(60) == 2
    assert narrow_class_number(12) == 2 and class_number_real(12) == 1
    assert narrow_class_number(5) == 1


def test_class_numbers_against_analytic_formula():
    for d in range(5, 700):
        if is_fundamental_discriminant(d):
            assert class_number_real(d) == analytic_class_number(d), d


def test_forms_in_cycles_are_reduced():
    import math

    for d in (40, 60, 229, 401, 1009):
        r = math.sqrt(d)
        for cyc in form_cycles(d):
            for a, b, c in cyc:
                assert b * b - 4 * a * c == d
                assert 0 < b < r and r - b < 2 * abs(a) < r + b


def test_fundamental_discriminants():
    assert [d for d in range(2, 45) if is_fundamental_discriminant(d)] == [
        5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44,
    ]
    with pytest.raises(ValueError):
        class_number_real(20)
