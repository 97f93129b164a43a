"""Brute-force quadrature ground truth.

Tensor-product Gauss-Legendre over (cos theta, phi) with panel doubling:
node counts start at a multiple of N (the integrand oscillates ~N times
per axis), then double until two successive refinements agree to abs_tol.
The phi average of the integrand is entire in t = cos theta, so the
product rule converges geometrically once the oscillation is resolved;
the doubling test is then a reliable error certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import Problem
from .errors import ConvergenceFailure, DomainError

DEFAULT_ABS_TOL = 1e-9
_SEAM = 1e-6  # |t| above 1 - _SEAM switches to the cancellation-free form


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and convergence policy for the 2-D oracle."""

    nodes_theta: int
    nodes_phi: int
    abs_tol: float = DEFAULT_ABS_TOL
    refinement_limit: int = 6

    def __post_init__(self) -> None:
        if self.nodes_theta < 1 or self.nodes_phi < 1:
            raise ValueError("node counts must be positive")
        if self.abs_tol <= 0:
            raise ValueError("abs_tol must be positive")
        if self.refinement_limit < 1:
            raise ValueError("refinement_limit must be at least 1")

    @classmethod
    def for_problem(cls, problem: Problem, abs_tol: float = DEFAULT_ABS_TOL,
                    refinement_limit: int = 6) -> "QuadratureSpec":
        n = 32 * problem.n + 64
        return cls(nodes_theta=n, nodes_phi=n, abs_tol=abs_tol,
                   refinement_limit=refinement_limit)


@lru_cache(maxsize=64)
def _leggauss(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def f_kernel(t, problem: Problem):
    """f_N(t) = [1 - (-1)^N cos(N pi t)] / (1 - t^2), safely near |t| = 1.

    Within 1e-6 of the endpoints the numerator and denominator are
    rewritten in u = 1 - |t|:  numerator 2 sin^2(A u / 2) (using
    cos(A t) = (-1)^N cos(A u) at integer N), denominator u (2 - u).
    The removable endpoint limit is 0.  Scalar in, scalar out.
    """
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    if np.any(np.abs(t_arr) > 1.0 + 1e-9):
        raise DomainError("f_kernel requires |t| <= 1")
    t_arr = np.clip(t_arr, -1.0, 1.0)
    a = problem.a
    parity = problem.parity
    out = np.empty_like(t_arr)
    u = 1.0 - np.abs(t_arr)
    near = u <= _SEAM
    ti = t_arr[~near]
    out[~near] = (1.0 - parity * np.cos(a * ti)) / (1.0 - ti * ti)
    ub = u[near]
    s = np.sin(0.5 * a * ub)
    with np.errstate(invalid="ignore", divide="ignore"):
        edge = 2.0 * s * s / (ub * (2.0 - ub))
    edge[ub == 0.0] = 0.0
    out[near] = edge
    return float(out[0]) if scalar else out


def _tensor_estimate(problem: Problem, nodes_theta: int, nodes_phi: int) -> float:
    t, wt = _leggauss(nodes_theta)
    x, wx = _leggauss(nodes_phi)
    phi = math.pi * (x + 1.0)          # map [-1, 1] -> [0, 2 pi]
    wphi = math.pi * wx
    ca = math.cos(problem.alpha)
    sa = math.sin(problem.alpha)
    f1 = f_kernel(t, problem)
    # second argument e2 = t cos(alpha) + sqrt(1-t^2) cos(phi) sin(alpha)
    st = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    e2 = t[:, None] * ca + st[:, None] * (np.cos(phi)[None, :] * sa)
    np.clip(e2, -1.0, 1.0, out=e2)
    f2 = f_kernel(e2, problem)
    inner = f2 @ wphi
    return float(np.dot(wt, f1 * inner))


def integrate_2d(problem: Problem, spec: QuadratureSpec | None = None) -> float:
    """I(N, alpha) by panel-doubled tensor Gauss-Legendre quadrature."""
    if spec is None:
        spec = QuadratureSpec.for_problem(problem)
    if spec.nodes_theta < 32 * problem.n + 64:
        raise ValueError(
            f"nodes_theta = {spec.nodes_theta} below the resolution floor "
            f"{32 * problem.n + 64} for N = {problem.n}"
        )
    nt, nphi = spec.nodes_theta, spec.nodes_phi
    prev = _tensor_estimate(problem, nt, nphi)
    for _ in range(spec.refinement_limit):
        nt *= 2
        nphi *= 2
        cur = _tensor_estimate(problem, nt, nphi)
        if abs(cur - prev) < spec.abs_tol:
            return cur
        prev = cur
    raise ConvergenceFailure(
        f"2-D quadrature did not converge to {spec.abs_tol} within "
        f"{spec.refinement_limit} doublings; last estimates {prev!r}, "
        f"{cur!r} differ by {abs(cur - prev):.3e}"
    )


def _legendre_at_nodes(order: int, t: np.ndarray) -> np.ndarray:
    """P_order evaluated at a node vector by the upward recurrence."""
    pm = np.ones_like(t)
    if order == 0:
        return pm
    pc = t.copy()
    for l in range(1, order):
        pm, pc = pc, ((2 * l + 1) * t * pc - l * pm) / (l + 1)
    return pc


def coeff_oracle(problem: Problem, j: int, abs_tol: float = 1e-12,
                 refinement_limit: int = 6) -> float:
    """Legendre coefficient C_{2j} = (4j+1)/2 integral f_N(t) P_{2j}(t) dt
    by panel-doubled 1-D Gauss-Legendre quadrature."""
    if j < 0:
        raise DomainError("coefficient index must be non-negative")
    if 2 * j > 4 * problem.n + 200:
        raise ValueError(
            f"coefficient order 2j = {2 * j} beyond the supported window "
            f"4N + 200 = {4 * problem.n + 200}"
        )
    n_nodes = 16 * problem.n + 64

    def estimate(n: int) -> float:
        t, w = _leggauss(n)
        vals = f_kernel(t, problem) * _legendre_at_nodes(2 * j, t)
        return (4 * j + 1) / 2.0 * float(np.dot(w, vals))

    prev = estimate(n_nodes)
    for _ in range(refinement_limit):
        n_nodes *= 2
        cur = estimate(n_nodes)
        if abs(cur - prev) < abs_tol:
            return cur
        prev = cur
    raise ConvergenceFailure(
        f"coefficient quadrature for C_{2 * j} did not reach {abs_tol}; "
        f"last estimates {prev!r}, {cur!r}"
    )
