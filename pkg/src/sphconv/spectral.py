"""Stable double-precision spectral routes: Galerkin and Volterra.

Both avoid the Taylor catastrophe by never forming partial sums of e^A
size.  The Galerkin route tests f_N (1 - t^2) = 1 - (-1)^N cos(A t)
against even Legendre polynomials, producing a symmetric positive
definite tridiagonal system for the C_{2j} (tridiagonal because
multiplication by t^2 couples P_l only to P_{l +- 2}).  The Volterra
route integrates the same identity twice, which turns it into a stable
forward recursion seeded by C_0 = Cin(2A)/2.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .core import MethodResult, Method, Problem, Provenance, SpectralCoeffs, funk_hecke_sum
from .errors import SolverFailure
from .specfun import cin, spherical_bessel_all


@dataclass(frozen=True)
class TridiagonalSystem:
    """Symmetric tridiagonal system in the half-index i (order 2i)."""

    diag: np.ndarray
    off: np.ndarray   # off[i] couples rows i and i+1
    rhs: np.ndarray
    dim: int

    def __post_init__(self) -> None:
        if len(self.diag) != self.dim or len(self.rhs) != self.dim:
            raise ValueError("diag/rhs length must equal dim")
        if len(self.off) != self.dim - 1:
            raise ValueError("off-diagonal length must be dim - 1")


def xsq_legendre_coeffs(l: float | np.ndarray):
    """t^2 P_l = A_l P_{l+2} + B_l P_l + C_l P_{l-2} (three-term ladder)."""
    a = (l + 1.0) * (l + 2.0) / ((2.0 * l + 1.0) * (2.0 * l + 3.0))
    b = (2.0 * l * l + 2.0 * l - 1.0) / ((2.0 * l - 1.0) * (2.0 * l + 3.0))
    c = l * (l - 1.0) / ((2.0 * l - 1.0) * (2.0 * l + 1.0))
    return a, b, c


def min_dim(problem: Problem) -> int:
    return math.ceil(problem.a / 2.0) + 20


def default_dim(problem: Problem, target_digits: int = 16) -> int:
    return min_dim(problem) + math.ceil(0.75 * target_digits)


def build_galerkin(problem: Problem, dim: int | None = None) -> TridiagonalSystem:
    """Assemble G C = b with G_ij = integral (1-t^2) P_{2i} P_{2j} dt and
    b_i = integral P_{2i} [1 - (-1)^N cos(A t)] dt = 2 d_{i0} - 2 (-1)^{N+i} j_{2i}(A)."""
    if dim is None:
        dim = default_dim(problem)
    if dim < min_dim(problem):
        raise ValueError(f"dim = {dim} below the floor {min_dim(problem)} for N = {problem.n}")
    i = np.arange(dim, dtype=float)
    l = 2.0 * i
    a_l, b_l, _ = xsq_legendre_coeffs(l)
    diag = 2.0 / (4.0 * i + 1.0) * (1.0 - b_l)
    off = -a_l[:-1] * 2.0 / (4.0 * i[:-1] + 5.0)
    j_even = spherical_bessel_all(problem.a, 2 * (dim - 1)).values[::2]
    signs = problem.parity * np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)
    rhs = -2.0 * signs * j_even
    rhs[0] += 2.0
    return TridiagonalSystem(diag=diag, off=off, rhs=rhs, dim=dim)


def _solve_tridiagonal_spd(sys: TridiagonalSystem) -> np.ndarray:
    """LDL^T solve; pivots must stay positive for the SPD construction."""
    d = sys.diag.copy()
    rhs = sys.rhs.copy()
    n = sys.dim
    w = np.empty(n - 1) if n > 1 else np.empty(0)
    for k in range(n - 1):
        if d[k] <= 0.0:
            raise SolverFailure(f"non-positive pivot {d[k]!r} at row {k}")
        w[k] = sys.off[k] / d[k]
        d[k + 1] = d[k + 1] - w[k] * sys.off[k]
        rhs[k + 1] = rhs[k + 1] - w[k] * rhs[k]
    if d[n - 1] <= 0.0:
        raise SolverFailure(f"non-positive pivot {d[n - 1]!r} at row {n - 1}")
    x = rhs / d
    for k in range(n - 2, -1, -1):
        x[k] -= w[k] * x[k + 1]
    return x


def solve_method_4(problem: Problem, dim: int | None = None) -> SpectralCoeffs:
    """Galerkin coefficients C_{2j}, j = 0..dim-1."""
    if dim is None:
        dim = default_dim(problem)
    system = build_galerkin(problem, dim)
    c = _solve_tridiagonal_spd(system)
    return SpectralCoeffs(c, dim - 1, Provenance.GALERKIN)


def volterra_t1(problem: Problem, two_j: int, j_at_a: float | None = None) -> float:
    """Driving term T_1(2j) = -2 A^2 (-1)^{N+j} j_{2j}(A)."""
    if two_j % 2:
        raise ValueError("order must be even")
    j = two_j // 2
    if j_at_a is None:
        j_at_a = float(spherical_bessel_all(problem.a, two_j).values[two_j])
    sign = problem.parity * (1.0 if j % 2 == 0 else -1.0)
    return -2.0 * problem.a * problem.a * sign * j_at_a


def solve_method_5(problem: Problem, j_max: int | None = None) -> SpectralCoeffs:
    """Forward recursion

        C_{2j} = (4j+1) [T_1(2j) + S_R(j)] / (4 (2j^2 - j)),   j >= 1,
        S_R(j) = sum_{m=0}^{j-1} (8m+2) gamma_{2m},  gamma_{2m} = 2 C_{2m}/(4m+1),

    seeded by the analytically known C_0 = Cin(2A)/2."""
    if j_max is None:
        j_max = default_dim(problem) - 1
    if j_max < min_dim(problem) - 1:
        raise ValueError(
            f"j_max = {j_max} below the floor {min_dim(problem) - 1} for N = {problem.n}"
        )
    a = problem.a
    j_even = spherical_bessel_all(a, 2 * j_max).values[::2]
    c = np.empty(j_max + 1)
    c[0] = 0.5 * cin(2.0 * a)
    gamma = 2.0 * c[0]          # gamma_0 = 2 C_0 / 1
    s_r = 0.0
    for j in range(1, j_max + 1):
        s_r += (8 * (j - 1) + 2) * gamma
        t1 = volterra_t1(problem, 2 * j, j_at_a=float(j_even[j]))
        cj = (4 * j + 1) * (t1 + s_r) / (4.0 * (2 * j * j - j))
        c[j] = cj
        gamma = 2.0 * cj / (4 * j + 1)
    return SpectralCoeffs(c, j_max, Provenance.VOLTERRA)


def eval_method_4(problem: Problem, dim: int | None = None) -> MethodResult:
    t0 = time.perf_counter()
    coeffs = solve_method_4(problem, dim)
    value = funk_hecke_sum(coeffs, problem.alpha)
    dt = time.perf_counter() - t0
    return MethodResult(value, Method.GALERKIN, coeffs.j_max + 1, 16, dt)


def eval_method_5(problem: Problem, j_max: int | None = None) -> MethodResult:
    t0 = time.perf_counter()
    coeffs = solve_method_5(problem, j_max)
    value = funk_hecke_sum(coeffs, problem.alpha)
    dt = time.perf_counter() - t0
    return MethodResult(value, Method.VOLTERRA, coeffs.j_max, 16, dt)
