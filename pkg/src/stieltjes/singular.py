"""Principal-value boundary integrals of an integrator.

The conjugate function's boundary values are reached through truncated
integrals of the cotangent kernel over symmetric angular exclusions
``eps <= |tau - t| <= pi``, refined along a dyadic schedule of ``eps`` and
extrapolated.  The singular Cauchy form excludes a chord-metric arc
``|zeta - zeta0| < eps`` instead, carries the 1/(2 pi i) normalization of
classical singular integrals, and its real part reproduces half the
cotangent limit; the imaginary part decays with the excluded arc's mass
(plus a constant for staircase integrators) and is reported, not mixed
into the comparison.

Evaluation at a declared atom of the integrator is refused: the truncated
integrals at such a point depend on the exclusion convention, and no
single value is canonical.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .accel import aitken_tail
from .core import TWO_PI, BoundaryFunction, DiskPoint, RSStatus, jump_images, reduce_angle
from .kernels import boundary_cot_kernel
from .quadrature import Grading, NonConvergentError, QuadratureOptions, rs_integral
from .transforms import conj_poisson_stieltjes

__all__ = [
    "SINGULAR_OPTS",
    "DEFAULT_EPS_SCHEDULE",
    "JumpAtEvaluationPoint",
    "PVResult",
    "hilbert_stieltjes",
    "truncated_conjugate_integral",
    "conjugate_truncation_trace",
    "singular_cauchy_stieltjes",
    "SingularConsistency",
    "singular_cauchy_consistency",
]

SINGULAR_OPTS = QuadratureOptions(rel_tol=1e-5, abs_tol=1e-9)

DEFAULT_EPS_SCHEDULE = tuple(2.0 ** -j for j in range(3, 17))

# how close the evaluation angle may come to a declared atom
JUMP_GUARD = 1e-9


class JumpAtEvaluationPoint(ValueError):
    """The requested boundary angle carries an atom of the integrator."""


@dataclass
class PVResult:
    """A principal-value limit with its truncation trace.

    ``eps_trace`` holds (eps, truncated value) in decreasing eps order;
    ``value`` is the extrapolated limit; ``est_error`` combines the
    extrapolation residual with the worst quadrature certificate along the
    tail; ``extrapolated`` distinguishes a genuine accelerated limit from a
    last-truncation fallback on short traces.
    """

    value: complex
    eps_trace: list
    extrapolated: bool
    est_error: float


def _check_not_at_jump(phi: BoundaryFunction, tau: float):
    for loc, _h in phi.jumps:
        if abs(reduce_angle(tau - loc)) <= JUMP_GUARD:
            raise JumpAtEvaluationPoint(
                f"{phi.name} has an atom at {loc:.6g}; the boundary value there is undefined"
            )


def _window_pair(phi, g, tau, delta, opts, scale):
    """Integrate g dPhi over [tau-pi, tau-delta] and [tau+delta, tau+pi]."""
    grading = Grading(centers=(tau,), scale=scale)
    left = rs_integral(g, phi, tau - math.pi, tau - delta, opts, grading=grading)
    right = rs_integral(g, phi, tau + delta, tau + math.pi, opts, grading=grading)
    for part in (left, right):
        if part.status is RSStatus.DIVERGED:
            raise NonConvergentError("truncated integral diverged", part)
    value = (left.value + right.value) / TWO_PI
    est = (left.est_error + right.est_error) / TWO_PI
    return value, est


def hilbert_stieltjes(
    phi: BoundaryFunction,
    tau: float,
    eps_schedule: Optional[Sequence[float]] = None,
    opts: Optional[QuadratureOptions] = None,
) -> PVResult:
    """Principal-value integral of cot((tau - t)/2) against dPhi, / 2 pi.

    Truncations use the symmetric angular exclusion |tau - t| < eps; the
    returned value extrapolates the eps -> 0 tail.
    """
    _check_not_at_jump(phi, tau)
    opts = opts or SINGULAR_OPTS
    schedule = tuple(eps_schedule) if eps_schedule is not None else DEFAULT_EPS_SCHEDULE
    if any(e <= 0 for e in schedule) or any(
        schedule[i + 1] >= schedule[i] for i in range(len(schedule) - 1)
    ):
        raise ValueError("eps schedule must be positive and strictly decreasing")

    g = lambda t: boundary_cot_kernel(tau, t)
    trace = []
    q_est = 0.0
    for eps in schedule:
        val, est = _window_pair(phi, g, tau, eps, opts, scale=eps)
        trace.append((eps, float(np.real(val))))
        q_est = max(q_est, est)

    values = [v for _e, v in trace]
    limit, resid = aitken_tail(values, window=5)
    return PVResult(
        value=float(limit),
        eps_trace=trace,
        extrapolated=len(values) >= 3,
        est_error=float(resid + q_est),
    )


def truncated_conjugate_integral(
    phi: BoundaryFunction,
    t0: float,
    r: float,
    opts: Optional[QuadratureOptions] = None,
) -> float:
    """One truncation of the conjugate boundary integral, at eps = 1 - r.

    This is the boundary-side quantity the conjugate Poisson transform at
    radius r approximates; no limit is taken.
    """
    if not (0.0 < r < 1.0):
        raise ValueError("need 0 < r < 1")
    _check_not_at_jump(phi, t0)
    opts = opts or SINGULAR_OPTS
    eps = 1.0 - r
    g = lambda t: boundary_cot_kernel(t0, t)
    val, _est = _window_pair(phi, g, t0, eps, opts, scale=eps)
    return float(np.real(val))


def conjugate_truncation_trace(
    phi: BoundaryFunction,
    t0: float,
    ks: Optional[Sequence[int]] = None,
    opts: Optional[QuadratureOptions] = None,
) -> list:
    """|V_phi(r e^{i t0}) - truncated integral at eps = 1 - r| along r -> 1.

    Radii follow r = 1 - 2^-k.  When phi is differentiable at t0 the
    difference tends to zero; the trace makes that decay observable.
    """
    ks = list(ks) if ks is not None else list(range(3, 13))
    out = []
    for k in ks:
        r = 1.0 - 2.0 ** (-k)
        v = float(np.real(conj_poisson_stieltjes(phi, DiskPoint(r, t0), opts).value))
        t = truncated_conjugate_integral(phi, t0, r, opts)
        out.append((r, abs(v - t)))
    return out


def singular_cauchy_stieltjes(
    phi: BoundaryFunction,
    zeta0: complex,
    eps_schedule: Optional[Sequence[float]] = None,
    opts: Optional[QuadratureOptions] = None,
) -> PVResult:
    """Boundary singular integral (1/2 pi i) int e^{it} dPhi / (e^{it} - zeta0).

    The exclusion removes the arc at chord distance |zeta - zeta0| < eps,
    whose angular half-width is 2 asin(eps / 2).  The result is complex;
    its real part carries the principal value, the imaginary part the
    vanishing (or, for staircases, constant) window boundary term.
    """
    zeta0 = complex(zeta0)
    if abs(abs(zeta0) - 1.0) > 1e-9:
        raise ValueError("evaluation point must lie on the unit circle")
    tau = cmath.phase(zeta0)
    _check_not_at_jump(phi, tau)
    opts = opts or SINGULAR_OPTS
    schedule = tuple(eps_schedule) if eps_schedule is not None else DEFAULT_EPS_SCHEDULE
    if any(not (0.0 < e < 2.0) for e in schedule):
        raise ValueError("chord exclusions must lie in (0, 2)")

    def g(t):
        zeta = np.exp(1j * np.asarray(t, dtype=float))
        return -1j * zeta / (zeta - zeta0)

    trace = []
    q_est = 0.0
    for eps in schedule:
        delta = 2.0 * math.asin(eps / 2.0)
        val, est = _window_pair(phi, g, tau, delta, opts, scale=delta)
        trace.append((eps, complex(val)))
        q_est = max(q_est, est)

    values = [v for _e, v in trace]
    limit, resid = aitken_tail(values, window=5)
    return PVResult(
        value=complex(limit),
        eps_trace=trace,
        extrapolated=len(values) >= 3,
        est_error=float(resid + q_est),
    )


@dataclass
class SingularConsistency:
    """Agreement between the cotangent PV and the singular Cauchy form.

    ``residual`` compares the cotangent limit against twice the real part
    of the Cauchy form; ``imag_magnitude`` reports the Cauchy form's
    imaginary part separately (it measures the window boundary term, not
    disagreement).
    """

    hilbert: PVResult
    cauchy: PVResult
    residual: float
    imag_magnitude: float


def singular_cauchy_consistency(
    phi: BoundaryFunction,
    tau: float,
    eps_schedule: Optional[Sequence[float]] = None,
    opts: Optional[QuadratureOptions] = None,
) -> SingularConsistency:
    h = hilbert_stieltjes(phi, tau, eps_schedule, opts)
    i = singular_cauchy_stieltjes(phi, cmath.exp(1j * tau), eps_schedule, opts)
    return SingularConsistency(
        hilbert=h,
        cauchy=i,
        residual=abs(float(np.real(h.value)) - 2.0 * i.value.real),
        imag_magnitude=abs(i.value.imag),
    )
