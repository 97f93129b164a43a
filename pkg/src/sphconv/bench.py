"""Grid runner: per-method values, errors against a reference, timings.

Produces the comparison datasets behind the three standard figures.  The
CSV schema is a stable external interface:

    method,n,alpha,value,reference,abs_error,seconds,digits,truncation

17-significant-digit decimal rendering, UTF-8, LF.  A JSON array with the
same field names is the alternative encoding.  Failures are data, not
exceptions: a failed cell keeps its grid position with value = nan and the
error class in the (non-serialized) failure field.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import hiprec
from .core import Method, Problem, MONOMIAL_METHODS
from .errors import NumericalFailure
from .gegenbauer import eval_method_6
from .methods import evaluate
from .oracle import integrate_2d

CSV_HEADER = "method,n,alpha,value,reference,abs_error,seconds,digits,truncation"

CERTIFIED = "certified"
NATIVE = "native"

ORACLE_2D = "oracle_2d"
METHOD_6 = "method_6"
AUTO = "auto"
# Above ~N = 30 the 2D oracle's node count makes it the slowest thing in the
# room; the exact spectral solution takes over as ground truth.
ORACLE_N_LIMIT = 30


@dataclass(frozen=True)
class AlphaGrid:
    start: float
    stop: float
    count: int

    def __post_init__(self) -> None:
        if self.count < 2:
            raise ValueError("alpha grid needs at least 2 points")
        if not (0.0 < self.start < self.stop < math.pi):
            raise ValueError("alpha grid endpoints must satisfy 0 < start < stop < pi")

    def points(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class GridSpec:
    n_values: tuple
    alpha_grid: AlphaGrid
    methods: tuple
    reference: str = AUTO
    repeats: int = 5
    monomial_mode: str = CERTIFIED
    monomial_digits: int | None = None

    def __post_init__(self) -> None:
        if not self.n_values:
            raise ValueError("n_values must be non-empty")
        if not self.methods:
            raise ValueError("methods must be non-empty")
        object.__setattr__(self, "methods", tuple(Method.parse(m) for m in self.methods))
        if self.reference not in (ORACLE_2D, METHOD_6, AUTO):
            raise ValueError(f"unknown reference {self.reference!r}")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.monomial_mode not in (CERTIFIED, NATIVE):
            raise ValueError(f"unknown monomial_mode {self.monomial_mode!r}")

    def reference_for(self, n: int) -> str:
        if self.reference != AUTO:
            return self.reference
        return ORACLE_2D if n <= ORACLE_N_LIMIT else METHOD_6


@dataclass(frozen=True)
class BenchRecord:
    method: str
    n: int
    alpha: float
    value: float
    reference: float
    seconds: float
    digits: int
    truncation: int
    failure: str = field(default="", compare=False)

    @property
    def abs_error(self) -> float:
        """Always recomputed; never a stale stored field."""
        return abs(self.value - self.reference)

    def as_dict(self) -> dict:
        def enc(x: float):
            return None if not math.isfinite(x) else x

        return {
            "method": self.method,
            "n": self.n,
            "alpha": self.alpha,
            "value": enc(self.value),
            "reference": enc(self.reference),
            "abs_error": enc(self.abs_error),
            "seconds": self.seconds,
            "digits": self.digits,
            "truncation": self.truncation,
        }

    def as_csv_row(self) -> str:
        return (
            f"{self.method},{self.n},{self.alpha:.17g},{self.value:.17g},"
            f"{self.reference:.17g},{self.abs_error:.17g},{self.seconds:.17g},"
            f"{self.digits},{self.truncation}"
        )


def _monomial_ctx(spec: GridSpec, n: int) -> hiprec.PrecisionContext:
    if spec.monomial_mode == NATIVE:
        return hiprec.NATIVE
    if spec.monomial_digits is not None:
        return hiprec.PrecisionContext(spec.monomial_digits, hiprec.BIG_FLOAT)
    return hiprec.certified(n)


def _reference_value(spec: GridSpec, problem: Problem) -> float:
    if spec.reference_for(problem.n) == ORACLE_2D:
        return integrate_2d(problem)
    return eval_method_6(problem).value


def _run_cell(problem: Problem, method: Method, ctx, repeats: int,
              reference: float) -> BenchRecord:
    kwargs = {"ctx": ctx} if method in MONOMIAL_METHODS else {}

    def attempt():
        return evaluate(problem, method, **kwargs)

    t0 = time.perf_counter()
    try:
        result = attempt()
    except NumericalFailure as exc:
        dt = time.perf_counter() - t0
        digits = ctx.decimal_digits if ctx is not None else 16
        return BenchRecord(
            method.value, problem.n, problem.alpha, math.nan, reference,
            dt, digits, 0, failure=f"{type(exc).__name__}: {exc}",
        )
    best = time.perf_counter() - t0
    # With repeats > 1 that first call was only a warm-up: its timing is
    # discarded and `repeats` fresh runs race for the minimum.
    if repeats > 1:
        best = math.inf
        for _ in range(repeats):
            t0 = time.perf_counter()
            result = attempt()
            best = min(best, time.perf_counter() - t0)
    return BenchRecord(
        method.value, problem.n, problem.alpha, result.value, reference,
        best, result.digits_used, result.truncation_order,
    )


def run_grid(spec: GridSpec) -> list:
    """One record per (method, n, alpha); cells run serially so timings do
    not contend.  Reference values are computed once per grid point,
    outside any timed region.  The first evaluation doubles as warm-up
    when repeats > 1 and its time is kept only if it is the minimum."""
    records = []
    alphas = spec.alpha_grid.points()
    for n in spec.n_values:
        problems = [Problem(int(n), float(a)) for a in alphas]
        references = [_reference_value(spec, p) for p in problems]
        for method in spec.methods:
            ctx = _monomial_ctx(spec, int(n)) if method in MONOMIAL_METHODS else None
            for problem, ref in zip(problems, references):
                records.append(_run_cell(problem, method, ctx, spec.repeats, ref))
    return records


def timing_summary(records: list) -> list:
    """Per-method median and 95th-percentile seconds over grid cells."""
    if not records:
        raise ValueError("timing_summary needs at least one record")
    by_method: dict = {}
    for r in records:
        by_method.setdefault(r.method, []).append(r.seconds)
    out = []
    for method in sorted(by_method):
        ts = np.array(by_method[method])
        out.append(
            {
                "method": method,
                "cells": len(ts),
                "median_seconds": float(np.median(ts)),
                "p95_seconds": float(np.percentile(ts, 95)),
            }
        )
    return out


def write_csv(records: list, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_csv(records))


def render_csv(records: list) -> str:
    lines = [CSV_HEADER]
    lines.extend(r.as_csv_row() for r in records)
    return "\n".join(lines) + "\n"


def to_json(records: list) -> str:
    return json.dumps([r.as_dict() for r in records], indent=1)


_INTEGRAL_METHODS = (
    Method.METHOD1, Method.METHOD2, Method.METHOD3,
    Method.GALERKIN, Method.VOLTERRA, Method.GEGENBAUER,
)


def preset(name: str) -> GridSpec:
    """The three standard figure datasets.

    fig1: exact spectral curves vs oracle markers at moderate N.
    fig2: the N = 20 stress case, monomial methods in native doubles.
    fig3: spectral ground truth vs asymptote at N = 10, 100, 1000.
    """
    if name == "fig1":
        return GridSpec(
            n_values=(2, 5, 10, 15),
            alpha_grid=AlphaGrid(0.2, math.pi - 0.2, 12),
            methods=(Method.GEGENBAUER,),
            reference=ORACLE_2D,
        )
    if name == "fig2":
        return GridSpec(
            n_values=(20,),
            alpha_grid=AlphaGrid(0.1, math.pi - 0.1, 60),
            methods=_INTEGRAL_METHODS,
            reference=ORACLE_2D,
            monomial_mode=NATIVE,
        )
    if name == "fig3":
        return GridSpec(
            n_values=(10, 100, 1000),
            alpha_grid=AlphaGrid(0.1, math.pi - 0.1, 60),
            methods=(Method.GEGENBAUER, Method.ASYMPTOTIC),
            reference=METHOD_6,
        )
    raise ValueError(f"unknown preset {name!r} (expected fig1, fig2, or fig3)")
