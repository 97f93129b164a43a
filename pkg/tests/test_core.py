"""Problem/method/coefficient domain types and the sphere sum."""

import math

import numpy as np
import pytest

from sphconv.core import (
    Method,
    MethodResult,
    Problem,
    Provenance,
    SpectralCoeffs,
    funk_hecke_sum,
    power_spectrum,
    symmetry_partner,
)
from sphconv.errors import DomainError
from sphconv.gegenbauer import solve_method_6
from sphconv.oracle import integrate_2d


def test_problem_basic_fields():
    p = Problem(7, 1.25)
    assert p.a == 7 * math.pi
    assert p.parity == -1
    assert Problem(4, 1.0).parity == 1


def test_problem_rejects_bad_n():
    with pytest.raises(DomainError):
        Problem(0, 1.0)
    with pytest.raises(DomainError):
        Problem(-3, 1.0)
    with pytest.raises(DomainError):
        Problem(1.5, 1.0)
    with pytest.raises(DomainError):
        Problem(True, 1.0)


def test_problem_accepts_numpy_integers():
    assert Problem(np.int64(6), 1.0).n == 6


def test_problem_rejects_alpha_outside_clamp():
    for alpha in (0.0, -0.5, math.pi, math.pi - 1e-9, 5e-7):
        with pytest.raises(DomainError):
            Problem(1, alpha)
    # the clamp boundary itself is legal
    Problem(1, 1e-6)
    Problem(1, math.pi - 1e-6)


def test_method_parse_aliases():
    assert Method.parse("m1") is Method.METHOD1
    assert Method.parse("m4") is Method.GALERKIN
    assert Method.parse("m6") is Method.GEGENBAUER
    assert Method.parse("gegenbauer") is Method.GEGENBAUER
    assert Method.parse(Method.VOLTERRA) is Method.VOLTERRA
    with pytest.raises(DomainError):
        Method.parse("m7")
    with pytest.raises(DomainError):
        Method.parse("newton")


def test_spectral_coeffs_validation():
    c = np.array([1.0, 0.5])
    coeffs = SpectralCoeffs(c, 1, Provenance.GEGENBAUER)
    assert coeffs.c0 == 1.0
    with pytest.raises(ValueError):
        SpectralCoeffs(c, 3, Provenance.GEGENBAUER)


def test_tail_convergence_flag():
    decaying = SpectralCoeffs(np.array([1.0, 1e-3, 1e-17]), 2, Provenance.GEGENBAUER)
    assert decaying.tail_is_converged()
    flat = SpectralCoeffs(np.array([1.0, 0.9, 0.8]), 2, Provenance.GEGENBAUER)
    assert not flat.tail_is_converged()


def test_funk_hecke_single_coefficient():
    # With only C_0 present, I = 4 pi C_0^2 regardless of alpha.
    coeffs = SpectralCoeffs(np.array([0.7]), 0, Provenance.GEGENBAUER)
    for alpha in (0.4, 1.2, 2.8):
        assert abs(funk_hecke_sum(coeffs, alpha) - 4 * math.pi * 0.49) < 1e-14


def test_funk_hecke_zero_padding_invariance():
    problem = Problem(3, 1.1)
    coeffs = solve_method_6(problem)
    padded = SpectralCoeffs(np.concatenate([coeffs.c, np.zeros(5)]),
                            coeffs.j_max + 5, coeffs.provenance)
    a = funk_hecke_sum(coeffs, 1.1)
    b = funk_hecke_sum(padded, 1.1)
    assert abs(a - b) < 1e-12 * abs(a)


def test_funk_hecke_rejects_bad_alpha():
    coeffs = SpectralCoeffs(np.array([1.0]), 0, Provenance.GEGENBAUER)
    for alpha in (0.0, math.pi, -1.0):
        with pytest.raises(DomainError):
            funk_hecke_sum(coeffs, alpha)


def test_method_result_rejects_nonfinite():
    with pytest.raises(ValueError):
        MethodResult(float("nan"), Method.GEGENBAUER, 10, 16, 0.0)
    with pytest.raises(ValueError):
        MethodResult(float("inf"), Method.GEGENBAUER, 10, 16, 0.0)


def test_power_spectrum_prefactor():
    # P_N = 32 G mu^2 / (pi^3 N^2) * I against an oracle I value
    problem = Problem(10, 1.0)
    i_val = integrate_2d(problem)
    p_val = power_spectrum(problem, 1.0, i_val)
    assert abs(p_val - 32.0 * i_val / (math.pi ** 3 * 100.0)) < 1e-15 * abs(p_val)
    assert power_spectrum(problem, 0.0, i_val) == 0.0


def test_symmetry_partner_involution():
    p = Problem(9, 0.77)
    q = symmetry_partner(p)
    assert q.n == p.n
    assert abs(q.alpha - (math.pi - 0.77)) < 1e-15
    r = symmetry_partner(q)
    assert abs(r.alpha - p.alpha) < 1e-15


def test_integral_parity_through_partner():
    from sphconv.gegenbauer import eval_method_6

    p = Problem(3, 0.6)
    v1 = eval_method_6(p).value
    v2 = eval_method_6(symmetry_partner(p)).value
    assert abs(v1 - v2) < 1e-9 * (1.0 + abs(v1))
