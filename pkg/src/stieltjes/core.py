"""Domain types shared by the quadrature engine and the boundary transforms.

The central object is :class:`BoundaryFunction`, a bounded real function on
the circle used as a Stieltjes integrator.  A boundary function is described
by its kind (closed form, staircase, piecewise, Cantor-like, pathological)
plus declared metadata: atom locations and heights, a sup bound, and any
angles where the derivative is known exactly.  Evaluation is vectorized over
numpy arrays.

Conventions
-----------
* Angles are reduced to the principal window ``(-pi, pi]`` by subtracting a
  single rounded multiple of ``2*pi``.
* Kinds whose measure is charge neutral over one period (``closed_form``,
  ``piecewise``, ``cantor``) evaluate periodically; any periodization seam is
  declared as an atom at ``pi``.  Staircase kinds (``step``) accumulate: the
  function gains ``period_increment`` per turn so that the measure, not the
  value, is what repeats.  This is what makes a unit atom radiate the plain
  Poisson kernel instead of a kernel difference.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

__all__ = [
    "TWO_PI",
    "reduce_angle",
    "DomainError",
    "BoundaryFunction",
    "DiskPoint",
    "Partition",
    "CyclicPartition",
    "ApproachPath",
    "RSStatus",
    "RSResult",
    "LimitEstimate",
    "jump_images",
]


class DomainError(ValueError):
    """Evaluation or construction outside the declared domain."""


def reduce_angle(t):
    """Reduce angles to ``(-pi, pi]`` with one subtraction of a 2*pi multiple.

    Accepts scalars or arrays; the return type mirrors the input.
    """
    arr = np.asarray(t, dtype=float)
    k = np.ceil((arr - math.pi) / TWO_PI)
    out = arr - TWO_PI * k
    # Rounding can land an angle a hair below -pi; fold it back.
    out = np.where(out <= -math.pi, out + TWO_PI, out)
    if np.isscalar(t) or getattr(t, "ndim", 1) == 0:
        return float(out)
    return out


def _cantor_staircase(x, depth):
    """Depth-``depth`` staircase approximant of the ternary singular function.

    Starts the recursion from the identity, so the result is continuous,
    nondecreasing, exact on every plateau resolved within ``depth`` levels,
    and within 2**-depth of the next approximant in sup norm.
    """
    x = np.array(x, dtype=float, copy=True)
    y = np.zeros_like(x)
    scale = np.full_like(x, 0.5)
    active = (x > 0.0) & (x < 1.0)
    y[x >= 1.0] = 1.0
    for _ in range(depth):
        if not active.any():
            break
        xa = x[active]
        lo = xa < 1.0 / 3.0
        hi = xa >= 2.0 / 3.0
        mid = ~(lo | hi)
        xa = np.where(lo, 3.0 * xa, np.where(hi, 3.0 * xa - 2.0, xa))
        ya = np.where(hi, scale[active], 0.0)
        idx = np.flatnonzero(active)
        x[idx] = xa
        y[idx] += ya
        # points that landed in the middle third sit on a plateau: freeze them
        y[idx[mid]] += scale[active][mid]
        still = np.zeros_like(active)
        still[idx[~mid]] = True
        active &= still
        scale[active] *= 0.5
    # unresolved points carry the linear seed of the recursion
    y[active] += x[active] * scale[active]
    return y


def _cantor_plateau_flag(x, depth):
    """True when ``x`` lies strictly inside a plateau resolved by ``depth``."""
    if x <= 0.0 or x >= 1.0:
        return True  # clamped flat margins
    for _ in range(depth):
        if 1.0 / 3.0 < x < 2.0 / 3.0:
            return True
        if x < 1.0 / 3.0:
            x *= 3.0
        elif x > 2.0 / 3.0:
            x = 3.0 * x - 2.0
        else:
            return False  # exactly on a plateau edge
    return False


# fraction of the period kept flat at each end of the Cantor entry so the
# periodization seam is an isolated atom between two plateaus
CANTOR_MARGIN = 0.05


@dataclass(frozen=True)
class BoundaryFunction:
    """Bounded integrator on the circle with declared structure.

    ``jumps`` lists atoms as ``(location in (-pi, pi], height)``; they repeat
    every period.  ``period_increment`` is ``phi(t + 2*pi) - phi(t)``, zero
    for charge-neutral kinds and the summed jump mass for staircases.
    ``known_derivative_at`` pins exact derivatives at specific angles on top
    of what the kind itself can certify.
    """

    name: str
    kind: str  # closed_form | step | piecewise | cantor | pathological
    fn: Optional[Callable] = None
    dfn: Optional[Callable] = None
    jumps: tuple = ()
    base: float = 0.0
    period_increment: float = 0.0
    bounded_by: Optional[float] = None
    known_derivative_at: tuple = ()  # ((angle, value), ...)
    domain: Optional[tuple] = None  # pathological only
    depth: int = 0
    margin: float = 0.0
    pieces: tuple = ()  # ((lo, hi, fn, dfn or None), ...) covering (-pi, pi]

    def __post_init__(self):
        if self.kind not in ("closed_form", "step", "piecewise", "cantor", "pathological"):
            raise ValueError(f"unknown boundary function kind: {self.kind!r}")
        for loc, _h in self.jumps:
            if not (-math.pi < loc <= math.pi):
                raise ValueError("jump locations must lie in (-pi, pi]")

    # -- evaluation ----------------------------------------------------

    def __call__(self, t):
        scalar = np.isscalar(t) or getattr(t, "ndim", 1) == 0
        arr = np.asarray(t, dtype=float)
        out = self._eval(np.atleast_1d(arr))
        if scalar:
            return float(out[0])
        return out.reshape(arr.shape)

    def _eval(self, t):
        if self.kind == "closed_form":
            return np.asarray(self.fn(reduce_angle(t)), dtype=float)
        if self.kind == "step":
            out = np.full(t.shape, self.base, dtype=float)
            for loc, h in self.jumps:
                out += h * np.floor((t - loc) / TWO_PI + 1.0)
            return out
        if self.kind == "piecewise":
            tr = np.asarray(reduce_angle(t), dtype=float)
            out = np.empty_like(tr)
            uppers = np.array([p[1] for p in self.pieces])
            idx = np.searchsorted(uppers, tr, side="left")
            idx = np.clip(idx, 0, len(self.pieces) - 1)
            for i, (_lo, _hi, pf, _pd) in enumerate(self.pieces):
                m = idx == i
                if m.any():
                    out[m] = pf(tr[m])
            return out
        if self.kind == "cantor":
            tr = np.asarray(reduce_angle(t), dtype=float)
            u = (tr + math.pi) / TWO_PI
            x = np.clip((u - self.margin) / (1.0 - 2.0 * self.margin), 0.0, 1.0)
            return _cantor_staircase(x, self.depth)
        # pathological: finite domain, no periodization
        a, b = self.domain
        if np.any(t < a - 1e-12) or np.any(t > b + 1e-12):
            raise DomainError(f"{self.name} is only defined on [{a}, {b}]")
        return np.asarray(self.fn(t), dtype=float)

    # -- declared structure --------------------------------------------

    def derivative(self, t: float) -> Optional[float]:
        """Exact derivative at ``t`` when the kind certifies one, else None."""
        for angle, value in self.known_derivative_at:
            if abs(reduce_angle(t - angle)) < 1e-12:
                return float(value)
        guard = 1e-9
        if self.kind == "pathological":
            return None
        tr = reduce_angle(t)
        near_jump = any(abs(reduce_angle(tr - loc)) < guard for loc, _h in self.jumps)
        if self.kind == "closed_form":
            if near_jump or self.dfn is None:
                return None
            return float(self.dfn(tr))
        if self.kind == "step":
            return None if near_jump else 0.0
        if self.kind == "cantor":
            if near_jump:
                return None
            u = (tr + math.pi) / TWO_PI
            x = (u - self.margin) / (1.0 - 2.0 * self.margin)
            if _cantor_plateau_flag(x, self.depth):
                return 0.0
            return None
        if self.kind == "piecewise":
            for lo, hi, _pf, pd in self.pieces:
                if lo + guard < tr < hi - guard:
                    return None if pd is None else float(pd(tr))
            return None
        return None

    def jump_locations(self) -> tuple:
        return tuple(loc for loc, _h in self.jumps)

    def is_charge_neutral(self) -> bool:
        return self.period_increment == 0.0


def jump_images(jumps: Sequence, lo: float, hi: float, periodic: bool = True):
    """Images of declared atoms inside the closed window ``[lo, hi]``.

    Returns a sorted list of ``(location, height)``.  Periodic atoms repeat
    every ``2*pi``; literal ones are used as given.
    """
    out = []
    for loc, h in jumps:
        if periodic:
            k0 = math.ceil((lo - loc) / TWO_PI - 1e-12)
            k1 = math.floor((hi - loc) / TWO_PI + 1e-12)
            for k in range(k0, k1 + 1):
                tt = loc + TWO_PI * k
                if lo - 1e-12 <= tt <= hi + 1e-12:
                    out.append((min(max(tt, lo), hi), h))
        else:
            if lo - 1e-12 <= loc <= hi + 1e-12:
                out.append((float(loc), h))
    out.sort(key=lambda p: p[0])
    return out


@dataclass(frozen=True)
class DiskPoint:
    """Point of the open unit disk in polar form."""

    r: float
    theta: float

    def __post_init__(self):
        if not (0.0 <= self.r < 1.0):
            raise DomainError(f"radius {self.r} is outside [0, 1)")

    @property
    def z(self) -> complex:
        return self.r * cmath.exp(1j * self.theta)

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        return cls(abs(z), math.atan2(z.imag, z.real))


@dataclass(frozen=True)
class Partition:
    """Tagged partition: nondecreasing points plus one tag per subinterval."""

    points: np.ndarray
    tags: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        tgs = np.asarray(self.tags, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "tags", tgs)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("a partition needs at least two points")
        if np.any(np.diff(pts) < 0):
            raise ValueError("partition points must be nondecreasing")
        if tgs.shape != (pts.size - 1,):
            raise ValueError("need exactly one tag per subinterval")
        if np.any(tgs < pts[:-1]) or np.any(tgs > pts[1:]):
            raise ValueError("tags must lie inside their subintervals")

    @property
    def a(self) -> float:
        return float(self.points[0])

    @property
    def b(self) -> float:
        return float(self.points[-1])

    @property
    def mesh(self) -> float:
        return float(np.max(np.diff(self.points)))

    @property
    def n_intervals(self) -> int:
        return self.points.size - 1

    @classmethod
    def uniform(cls, a: float, b: float, n: int, tag_rule: str = "midpoint",
                rng: Optional[np.random.Generator] = None) -> "Partition":
        pts = np.linspace(a, b, n + 1)
        if tag_rule == "midpoint":
            tags = 0.5 * (pts[:-1] + pts[1:])
        elif tag_rule == "left":
            tags = pts[:-1].copy()
        elif tag_rule == "right":
            tags = pts[1:].copy()
        elif tag_rule == "random":
            rng = rng or np.random.default_rng()
            tags = pts[:-1] + rng.random(n) * np.diff(pts)
        else:
            raise ValueError(f"unknown tag rule {tag_rule!r}")
        return cls(pts, tags)

    def bisected(self) -> "Partition":
        """Insert the midpoint of every subinterval; midpoint tags."""
        pts = self.points
        mids = 0.5 * (pts[:-1] + pts[1:])
        new = np.empty(pts.size + mids.size)
        new[0::2] = pts
        new[1::2] = mids
        tags = 0.5 * (new[:-1] + new[1:])
        return Partition(new, tags)


@dataclass(frozen=True)
class CyclicPartition:
    """Partition of the full circle; the closure point is repeated once.

    ``angles`` is strictly increasing with ``angles[-1] == angles[0] + 2*pi``,
    so the first and last entries name the same boundary point.
    """

    angles: np.ndarray
    tags: np.ndarray

    def __post_init__(self):
        ang = np.asarray(self.angles, dtype=float)
        tgs = np.asarray(self.tags, dtype=float)
        object.__setattr__(self, "angles", ang)
        object.__setattr__(self, "tags", tgs)
        if ang.size < 2:
            raise ValueError("a cyclic partition needs at least two angles")
        if abs((ang[-1] - ang[0]) - TWO_PI) > 1e-12:
            raise ValueError("cyclic partition must close up after one turn")
        if np.any(np.diff(ang) <= 0):
            raise ValueError("cyclic partition angles must be increasing")
        if tgs.shape != (ang.size - 1,):
            raise ValueError("need exactly one tag per arc")

    @property
    def gaps(self) -> np.ndarray:
        return np.diff(self.angles)

    def to_partition(self) -> Partition:
        return Partition(self.angles, self.tags)

    @classmethod
    def uniform(cls, n: int, base: float = -math.pi) -> "CyclicPartition":
        ang = base + TWO_PI * np.arange(n + 1) / n
        tags = 0.5 * (ang[:-1] + ang[1:])
        return cls(ang, tags)


@dataclass(frozen=True)
class ApproachPath:
    """Boundary approach along ``z_k = zeta0 * (1 - s_k * exp(i*alpha))``.

    ``alpha = 0`` is the radial approach; a nonzero signed ``alpha`` is a
    Stolz (nontangential) approach with that opening.  The dyadic schedule
    ``s_k = 2**-k`` keeps successive points geometrically closer to the
    boundary, which is what the Aitken tail of a limit check expects.
    """

    target_angle: float
    alpha: float = 0.0
    k_min: int = 1
    k_max: int = 14

    def __post_init__(self):
        if abs(self.alpha) >= math.pi / 2:
            raise DomainError("Stolz opening must satisfy |alpha| < pi/2")
        if self.k_min < 1 or self.k_max < self.k_min:
            raise ValueError("need 1 <= k_min <= k_max")

    @property
    def mode(self) -> str:
        return "radial" if self.alpha == 0.0 else "stolz"

    def schedule(self) -> np.ndarray:
        return 2.0 ** (-np.arange(self.k_min, self.k_max + 1, dtype=float))

    def indexed_points(self) -> list:
        """(k, point) pairs; wide openings may clip their earliest entries."""
        zeta0 = cmath.exp(1j * self.target_angle)
        shift = cmath.exp(1j * self.alpha)
        out = []
        for k in range(self.k_min, self.k_max + 1):
            s = 2.0 ** (-k)
            # clip to the open disk: very wide openings lose their first points
            if s >= 2.0 * math.cos(self.alpha):
                continue
            z = zeta0 * (1.0 - s * shift)
            out.append((k, DiskPoint.from_complex(z)))
        if not out:
            raise DomainError("approach path has no points inside the disk")
        return out

    def points(self) -> list:
        return [p for _k, p in self.indexed_points()]


class RSStatus(Enum):
    CONVERGED = "converged"
    DIVERGED = "diverged"
    INCONCLUSIVE = "inconclusive"


@dataclass
class RSResult:
    """Outcome of a refinement run of tagged Riemann-Stieltjes sums.

    ``value`` is the midpoint-policy sum at the deepest level reached (a
    complex number for complex integrands).  ``levels`` records
    ``(mesh, sum)`` per level.  ``est_error`` folds the last level-to-level
    difference together with the spread over tag-policy replicas, so a
    ``CONVERGED`` status certifies both refinement and tag insensitivity.
    """

    value: complex
    levels: list
    est_error: float
    status: RSStatus

    @property
    def converged(self) -> bool:
        return self.status is RSStatus.CONVERGED


@dataclass
class LimitEstimate:
    """Extrapolated boundary limit along one approach path."""

    trace: list  # (k, value) pairs
    extrapolated: complex
    residual: float
    converged: bool
