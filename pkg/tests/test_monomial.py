"""Taylor-route checks: coefficients, moments, truncation, convolution.

The moment identities and the rotation rows each get an independent
in-test oracle (closed forms, exact-rational polynomial expansion), and
the assembled evaluators are pinned against the 2-D quadrature and the
closed-form spectral route.
"""

import math
import random
from fractions import Fraction

import pytest
from scipy.special import eval_legendre

import sphconv.monomial as monomial_mod
from sphconv import (
    DomainError,
    Method,
    Problem,
    TruncationFailure,
    PrecisionFailure,
    eval_method_1_2,
    eval_method_3,
    evaluate,
    f_kernel,
    integrate_2d,
    moment_j,
    moment_j_gaussian,
    monomial_to_legendre,
    rotation_row,
    scaled_taylor_coeffs,
    taylor_coeffs,
    truncation_m,
)
from sphconv.hiprec import BIG_FLOAT, NATIVE, PrecisionContext, certified


# ----------------------------------------------------------- Taylor d_{2k}

def test_taylor_constant_term_follows_parity():
    for n, want in ((1, 2.0), (2, 0.0), (7, 2.0), (10, 0.0)):
        d = taylor_coeffs(Problem(n, 1.0), 3, NATIVE)
        assert float(d.values[0]) == want


def test_taylor_first_order_closed_form():
    # N=1: d_2 = 2 - A^2/2! with A = pi.
    d = taylor_coeffs(Problem(1, 1.0), 1, NATIVE)
    assert float(d.values[1]) == pytest.approx(2.0 - math.pi ** 2 / 2.0, rel=1e-15)


def test_taylor_series_reconstructs_kernel():
    # The d_{2k} are defined by f_N(t) = sum d_{2k} t^{2k}; the partial sums
    # pass through ~e^A sized excursions, hence the certified context.
    t = 0.5
    for n in range(1, 7):
        p = Problem(n, 1.0)
        d = taylor_coeffs(p, 60, certified(n, 16))
        total = math.fsum(float(v) * t ** (2 * k) for k, v in enumerate(d.values))
        assert abs(total - f_kernel(t, p)) < 1e-10


def test_taylor_coeffs_length_contract():
    d = taylor_coeffs(Problem(2, 1.0), 5, NATIVE)
    assert d.k_max == 5 and len(d.values) == 6


# ------------------------------------------------------------ sphere moments

def test_moment_low_order_closed_forms():
    for c in (-0.9, 0.0, 0.3, 1.0):
        assert moment_j(0, 0, c) == pytest.approx(4.0 * math.pi, rel=1e-15)
        assert moment_j(1, 0, c) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-15)
        assert moment_j(1, 1, c) == pytest.approx(
            4.0 * math.pi * (1.0 + 2.0 * c * c) / 15.0, rel=1e-14)


def test_moment_routes_agree():
    # Generating-function route vs Gaussian-lift route: independent algebra,
    # identical values.
    rng = random.Random(1138)
    for _ in range(60):
        k = rng.randrange(9)
        j = rng.randrange(9)
        c = rng.uniform(-1.0, 1.0)
        a = moment_j(k, j, c)
        b = moment_j_gaussian(k, j, c)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


def test_moment_rejects_negative_orders():
    with pytest.raises(DomainError):
        moment_j(-1, 0, 0.5)
    with pytest.raises(DomainError):
        moment_j_gaussian(0, -2, 0.5)


# ---------------------------------------------------------------- truncation

def _truncation_reference(n: int, target: int) -> int:
    # Independent walk on exact log T_j = 2j ln A - ln (2j)! via lgamma.
    a = n * math.pi
    j = 0
    while True:
        log_t = 2 * j * math.log(a) - math.lgamma(2 * j + 1)
        if log_t < -target * math.log(10.0) and 2 * j > a:
            return max(j - 2, 0)
        j += 1


def test_truncation_matches_reference_walk():
    for n in (1, 2, 5, 20, 60):
        for target in (10, 16, 30):
            assert truncation_m(Problem(n, 1.0), target) == \
                _truncation_reference(n, target)


def test_truncation_grows_with_target():
    p = Problem(10, 1.0)
    assert truncation_m(p, 30) > truncation_m(p, 10)


def test_truncation_rejects_bad_target():
    with pytest.raises(DomainError):
        truncation_m(Problem(2, 1.0), 0)


def test_truncation_cap_trips(monkeypatch):
    monkeypatch.setattr(monomial_mod, "truncation_cap", lambda p, t: 3)
    with pytest.raises(TruncationFailure, match="safety cap"):
        monomial_mod.truncation_m(Problem(20, 1.0), 16)


# --------------------------------------------------------- scaled b_m values

def test_scaled_taylor_matches_factorial_scaling():
    # b_m = (2m)! d_{2m}; the backward solve and the forward sum must agree
    # wherever the zero-seed error has contracted away (m well below the
    # truncation order).
    for n in (1, 4):
        p = Problem(n, 1.0)
        ctx = certified(n, 30)
        m_trunc = truncation_m(p, 30)
        b = scaled_taylor_coeffs(p, m_trunc, ctx).values
        d = taylor_coeffs(p, m_trunc, ctx).values
        for m in range(13):
            want = math.factorial(2 * m) * float(d[m])
            assert float(b[m]) == pytest.approx(want, rel=1e-11, abs=1e-11)


def test_scaled_taylor_seed_value():
    # b_0 = 1 - (-1)^N: exactly 2 for odd N, truncation-level noise for even.
    for n, odd in ((1, True), (2, False), (6, False), (9, True)):
        p = Problem(n, 1.0)
        b0 = float(scaled_taylor_coeffs(p, truncation_m(p, 16),
                                        certified(n, 16)).values[0])
        if odd:
            assert b0 == pytest.approx(2.0, rel=1e-13)
        else:
            assert abs(b0) < 1e-12


def test_scaled_taylor_rejects_negative_truncation():
    with pytest.raises(DomainError):
        scaled_taylor_coeffs(Problem(1, 1.0), -1, NATIVE)


# ------------------------------------------------------------- rotation rows

def _row_reference(k: int, c: float) -> list:
    # Hhat_K(a) = [z^a] (1 + 2 C z + z^2)^K / (2K)! expanded exactly.
    poly = [Fraction(1)]
    kernel = [Fraction(1), 2 * Fraction(c), Fraction(1)]
    for _ in range(k):
        new = [Fraction(0)] * (len(poly) + 2)
        for i, pc in enumerate(poly):
            for d, kc in enumerate(kernel):
                new[i + d] += pc * kc
        poly = new
    scale = Fraction(1, math.factorial(2 * k))
    return [float(v * scale) for v in poly]


def test_rotation_row_matches_polynomial_expansion():
    rng = random.Random(404)
    for k in range(7):
        c = rng.uniform(-1.0, 1.0)
        row = rotation_row(k, c)
        ref = _row_reference(k, c)
        for a in range(2 * k + 1):
            assert row.value(a) == pytest.approx(ref[a], rel=1e-12, abs=1e-18)


def test_rotation_row_sum_identity():
    # At C = 1 the trinomial is (1 + z)^{2K}, so the row sums to 4^K / (2K)!.
    for k in range(13):
        want = 4.0 ** k / math.factorial(2 * k)
        assert rotation_row(k, 1.0).full_sum() == pytest.approx(want, rel=1e-13)


def test_rotation_row_palindrome_and_support():
    row = rotation_row(5, 0.37)
    assert row.value(-1) == 0.0
    assert row.value(11) == 0.0
    for a in range(11):
        assert row.value(a) == row.value(10 - a)


def test_rotation_row_rejects_negative_index():
    with pytest.raises(DomainError):
        rotation_row(-1, 0.5)


# ------------------------------------------------- assembled methods 1 and 2

def test_methods_1_2_match_quadrature():
    for n, alpha in ((1, 0.5), (3, 1.9)):
        p = Problem(n, alpha)
        ref = integrate_2d(p)
        r1 = eval_method_1_2(p, label=Method.METHOD1)
        r2 = eval_method_1_2(p, label=Method.METHOD2)
        assert abs(r1.value - ref) < 2e-8 * max(1.0, abs(ref))
        # same rescaled convolution underneath, so bitwise equal values
        assert r1.value == r2.value
        assert (r1.method, r2.method) == (Method.METHOD1, Method.METHOD2)


def test_methods_1_2_label_validation():
    with pytest.raises(DomainError):
        eval_method_1_2(Problem(1, 1.0), label=Method.METHOD3)


def test_method_2_native_is_garbage_at_n20():
    # The ~e^{N pi} cancellation exhausts doubles around N ~ 8; by N = 20
    # the native result is finite but wildly wrong.
    p = Problem(20, 1.3)
    ref = evaluate(p, Method.parse("m6")).value
    try:
        got = eval_method_1_2(p, ctx=NATIVE, label=Method.METHOD2).value
    except PrecisionFailure:
        return
    assert abs(got - ref) > 1.0


def test_method_1_2_digit_budget_failfast():
    # 16 digits sits below the ~30-digit cancellation floor at N = 20.
    with pytest.raises(PrecisionFailure, match="cancellation"):
        eval_method_1_2(Problem(20, 1.0), ctx=PrecisionContext(16, BIG_FLOAT))


def test_method_1_2_error_shrinks_with_digits():
    p = Problem(8, 1.1)
    ref = evaluate(p, Method.parse("m6")).value
    errs = {d: abs(eval_method_1_2(p, ctx=PrecisionContext(d, BIG_FLOAT)).value - ref)
            for d in (16, 24, 30)}
    assert errs[16] > 1e-4 > errs[24] > errs[30]
    assert errs[30] < 1e-12


# ----------------------------------------------------------------- method 3

def test_monomial_to_legendre_low_rows():
    assert monomial_to_legendre(0) == (Fraction(1),)
    assert monomial_to_legendre(1) == (Fraction(1, 3), Fraction(2, 3))


def test_monomial_to_legendre_rows_are_positive_partitions():
    for k in range(41):
        row = monomial_to_legendre(k)
        assert all(v > 0 for v in row)
        assert sum(row) == 1  # value of t^{2k} at t = 1, exactly


def test_monomial_to_legendre_reconstructs_powers():
    rng = random.Random(77)
    for k in range(11):
        x = rng.uniform(-1.0, 1.0)
        total = sum(float(t) * eval_legendre(2 * m, x)
                    for m, t in enumerate(monomial_to_legendre(k)))
        assert total == pytest.approx(x ** (2 * k), rel=1e-12, abs=1e-13)


def test_monomial_to_legendre_rejects_negative():
    with pytest.raises(DomainError):
        monomial_to_legendre(-3)


def test_method_3_matches_spectral_route():
    for n, alpha in ((1, 0.8), (4, 2.0)):
        p = Problem(n, alpha)
        ref = evaluate(p, Method.parse("m6")).value
        got = eval_method_3(p).value
        assert abs(got - ref) < 1e-12 * max(1.0, abs(ref))


def test_method_3_digit_budget_failfast():
    with pytest.raises(PrecisionFailure):
        eval_method_3(Problem(20, 1.0), ctx=PrecisionContext(16, BIG_FLOAT))
