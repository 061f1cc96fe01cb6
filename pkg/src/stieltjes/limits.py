"""Boundary-approach experiments for the disk transforms.

A field is evaluated along approach paths terminating at a boundary angle,
the trace is extrapolated, and the extrapolant is compared against the
predicted boundary value: the integrator's derivative for the harmonic
extension, the principal-value cotangent integral for the conjugate, and
their complex combination for the analytic and Cauchy transforms.

Checks never hard-fail on a residual.  Each comparison is graded pass
(within tolerance), marginal (within three times), or fail, so a report
carries evidence rather than a verdict; callers decide what a fail means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .accel import aitken_tail
from .core import TWO_PI, ApproachPath, BoundaryFunction, LimitEstimate
from .quadrature import QuadratureOptions
from .singular import hilbert_stieltjes
from .transforms import (
    cauchy_stieltjes,
    conj_poisson_stieltjes,
    poisson_stieltjes,
    schwartz_stieltjes,
)

__all__ = [
    "LIMITS_OPTS",
    "DEFAULT_APERTURES",
    "angular_limit",
    "LimitCheckRow",
    "LimitCheckReport",
    "poisson_limit_check",
    "conjugate_limit_check",
    "analytic_limit_check",
]

# Per-point transform accuracy well under the 1e-3 scale of the limit
# comparisons; the absolute floor matters because several fields tend to 0.
LIMITS_OPTS = QuadratureOptions(rel_tol=1e-5, abs_tol=3e-5)

DEFAULT_APERTURES = (math.pi / 6.0, math.pi / 3.0)


def angular_limit(field: Callable, path: ApproachPath, tol: float = 1e-3) -> LimitEstimate:
    """Evaluate ``field`` along ``path`` and extrapolate the boundary value.

    The trace records (k, value) for the dyadic schedule s_k = 2^-k; the
    extrapolant accelerates the last five entries and ``converged`` means
    the accelerated tail oscillates by less than ``tol``.
    """
    pairs = path.indexed_points()
    values = [field(z) for _k, z in pairs]
    limit, resid = aitken_tail(values, window=5)
    return LimitEstimate(
        trace=[(k, v) for (k, _z), v in zip(pairs, values)],
        extrapolated=limit,
        residual=float(resid),
        converged=bool(resid < tol),
    )


def _grade(residual: float, tol: float) -> str:
    if residual <= tol:
        return "pass"
    if residual <= 3.0 * tol:
        return "marginal"
    return "fail"


@dataclass
class LimitCheckRow:
    field: str
    approach: str
    estimate: LimitEstimate
    expected: complex
    residual: float
    grade: str


@dataclass
class LimitCheckReport:
    phi_name: str
    target: float
    tol: float
    rows: list
    aperture_spread: float

    @property
    def worst_grade(self) -> str:
        order = {"pass": 0, "marginal": 1, "fail": 2}
        return max((row.grade for row in self.rows), key=order.__getitem__)

    @property
    def passed(self) -> bool:
        return all(row.grade != "fail" for row in self.rows)


def _paths(target: float, apertures: Sequence[float], k_max: int):
    out = [("radial", ApproachPath(target, 0.0, k_max=k_max))]
    for a in apertures:
        out.append((f"stolz{+a:+.3f}", ApproachPath(target, +a, k_max=k_max)))
        out.append((f"stolz{-a:+.3f}", ApproachPath(target, -a, k_max=k_max)))
    return out


def _run_rows(field_name, field, paths, expected, tol):
    rows = []
    for label, path in paths:
        est = angular_limit(field, path, tol)
        residual = abs(est.extrapolated - expected)
        rows.append(
            LimitCheckRow(
                field=field_name,
                approach=label,
                estimate=est,
                expected=expected,
                residual=float(residual),
                grade=_grade(residual, tol),
            )
        )
    return rows


def _spread(rows) -> float:
    vals = [row.estimate.extrapolated for row in rows]
    return float(max(abs(a - b) for a in vals for b in vals)) if len(vals) > 1 else 0.0


def poisson_limit_check(
    phi: BoundaryFunction,
    t0: float,
    apertures: Sequence[float] = DEFAULT_APERTURES,
    tol: float = 1e-3,
    opts: Optional[QuadratureOptions] = None,
    k_max: int = 14,
) -> LimitCheckReport:
    """Angular limits of the harmonic extension against the derivative.

    Needs an integrator whose derivative at ``t0`` is certified (smooth
    kind, declared plateau, or an explicit known value); the harmonic
    extension must approach exactly that number along every nontangential
    path.
    """
    expected = phi.derivative(t0)
    if expected is None:
        raise ValueError(f"{phi.name} does not certify a derivative at t0={t0:.6g}")
    opts = opts or LIMITS_OPTS

    def field(z):
        return float(np.real(poisson_stieltjes(phi, z, opts).value))

    rows = _run_rows("U", field, _paths(t0, apertures, k_max), float(expected), tol)
    return LimitCheckReport(phi.name, t0, tol, rows, _spread(rows))


def conjugate_limit_check(
    phi: BoundaryFunction,
    tau: float,
    apertures: Sequence[float] = DEFAULT_APERTURES,
    tol: float = 2e-3,
    opts: Optional[QuadratureOptions] = None,
    k_max: int = 14,
) -> LimitCheckReport:
    """Angular limits of the conjugate extension against the PV integral."""
    opts = opts or LIMITS_OPTS
    expected = float(np.real(hilbert_stieltjes(phi, tau).value))

    def field(z):
        return float(np.real(conj_poisson_stieltjes(phi, z, opts).value))

    rows = _run_rows("V", field, _paths(tau, apertures, k_max), expected, tol)
    return LimitCheckReport(phi.name, tau, tol, rows, _spread(rows))


def analytic_limit_check(
    phi: BoundaryFunction,
    tau: float,
    apertures: Sequence[float] = (math.pi / 6.0,),
    tol: float = 3e-3,
    opts: Optional[QuadratureOptions] = None,
    k_max: int = 14,
) -> LimitCheckReport:
    """Angular limits of the analytic and Cauchy transforms together.

    The analytic transform must approach derivative + i * PV integral; the
    Cauchy transform half of that, shifted by net_increment / 4 pi when the
    integrator is a staircase (the two kernels differ by the constant 1/2,
    which integrates the net increment).
    """
    deriv = phi.derivative(tau)
    if deriv is None:
        raise ValueError(f"{phi.name} does not certify a derivative at tau={tau:.6g}")
    opts = opts or LIMITS_OPTS
    h = float(np.real(hilbert_stieltjes(phi, tau).value))
    expected_s = complex(float(deriv), h)
    expected_c = expected_s / 2.0 + phi.period_increment / (2.0 * TWO_PI)

    def s_field(z):
        return complex(schwartz_stieltjes(phi, z, opts).value)

    def c_field(z):
        return complex(cauchy_stieltjes(phi, z, opts).value)

    paths = _paths(tau, apertures, k_max)
    s_rows = _run_rows("S", s_field, paths, expected_s, tol)
    c_rows = _run_rows("C", c_field, paths, expected_c, tol)
    spread = max(_spread(s_rows), _spread(c_rows))
    return LimitCheckReport(phi.name, tau, tol, s_rows + c_rows, spread)
