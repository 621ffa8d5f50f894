"""Recovery-time measurement, covering estimates, box dimension, rate diagnostics.

The central quantity is the recovery time: the least n such that the first
n+1 orbit points of the chaos game cover the attractor by closed eps-balls.
All measurements run against a finite AttractorCloud; because the cloud is a
subset of the attractor with certified resolution delta, covering the cloud
at radius eps certifies covering the attractor at radius eps + delta.  Every
record carries the guard (the cloud resolution) so both sides of that bracket
are recoverable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import CapExceededError, ValidationError
from .ifs import AttractorCloud, IfsSystem, _as_vector

DEFAULT_ORBIT_CAP = 10 ** 7
_CHUNK = 8192


@dataclass(frozen=True)
class CoverEstimate:
    """Two-sided bracket on the covering number N(eps) of the sampled set."""

    eps: float
    lower: int   # size of a maximal 2*eps-separated subset (packing bound)
    upper: int   # size of a greedy ball cover with point centers


@dataclass(frozen=True)
class RecoveryRecord:
    """One recovery-time measurement of an orbit against a cloud.

    n is None when the orbit cap (or a finite driver) was exhausted before
    the cloud was covered.  guard is the cloud resolution: coverage of the
    full attractor is certified at radius eps + guard.
    """

    eps: float
    n: int | None
    x0: np.ndarray
    driver: str
    guard: float
    cap: int

    @property
    def exceeded(self) -> bool:
        return self.n is None


@dataclass(frozen=True)
class DimensionEstimate:
    """Lower box dimension estimate from a geometric radius schedule."""

    value: float                  # min over the window of ln(upper)/ln(1/b_m)
    schedule: tuple               # (a, r, (m_lo, m_hi))
    samples: tuple                # CoverEstimate per kept radius b_m
    rates_lower: tuple            # ln(lower)/ln(1/b_m) per kept radius
    rates_upper: tuple            # ln(upper)/ln(1/b_m) per kept radius
    liminf_proxy: float

    @property
    def bracket_width(self) -> float:
        return self.value - min(self.rates_lower)


def recovery_time(ifs: IfsSystem, driver, x0, eps: float,
                  cloud: AttractorCloud, cap: int = DEFAULT_ORBIT_CAP) -> RecoveryRecord:
    """Least n with every cloud point within eps of some orbit point x_0..x_n.

    The orbit is generated incrementally; coverage flags are maintained with
    a spatial index over the still-uncovered cloud points, so the returned n
    is the exact deterministic minimum.  Does not consume the driver cursor.
    """
    if eps <= cloud.resolution:
        raise ValidationError(
            f"eps={eps:g} must exceed the cloud resolution {cloud.resolution:g} "
            "for coverage to be certifiable"
        )
    if cap < 0:
        raise ValidationError("orbit cap must be >= 0")
    x0 = _as_vector(x0, ifs.dim)
    covered = np.zeros(cloud.size, dtype=bool)

    # 1-d fast path: plain-float recurrence keeps long orbits cheap.
    scalar = ifs.dim == 1
    if scalar:
        coeffs = [(float(m.matrix[0, 0]), float(m.offset[0])) for m in ifs.maps]

    label = driver.describe()
    x = x0.copy()
    pos = 0          # index of the orbit point currently stored in x
    pending = [x0]   # orbit points not yet checked against the cloud

    def flush(first_pos: int) -> int | None:
        """Mark coverage for pending points; return the minimal covering n."""
        uncov_idx = np.flatnonzero(~covered)
        tree = cKDTree(cloud.points[uncov_idx])
        hits = tree.query_ball_point(np.asarray(pending), eps)
        for off, hit in enumerate(hits):
            if hit:
                covered[uncov_idx[hit]] = True
                if covered.all():
                    return first_pos + off
        return None

    n = flush(0)
    while n is None:
        if pos >= cap:
            return RecoveryRecord(eps=float(eps), n=None, x0=x0,
                                  driver=label, guard=cloud.resolution, cap=cap)
        stop = min(pos + _CHUNK, cap)
        try:
            symbols = driver.segment(pos, stop)
        except CapExceededError:
            # Finite driver ran out before covering the cloud.
            symbols = driver.segment(pos, driver.buffered)
            if len(symbols) == 0:
                return RecoveryRecord(eps=float(eps), n=None, x0=x0,
                                      driver=label, guard=cloud.resolution, cap=cap)
            stop = pos + len(symbols)
        pending = []
        if scalar:
            xv = float(x[0])
            for s in symbols:
                a, b = coeffs[s - 1]
                xv = a * xv + b
                pending.append((xv,))
            x = np.array([xv])
        else:
            for s in symbols:
                x = ifs.map_for(int(s))(x)
                pending.append(x)
        n = flush(pos + 1)
        pos = stop
    return RecoveryRecord(eps=float(eps), n=int(n), x0=x0,
                          driver=label, guard=cloud.resolution, cap=cap)


def coverage_holds(ifs: IfsSystem, driver, x0, eps: float,
                   cloud: AttractorCloud, n: int) -> bool:
    """From-scratch check that orbit points x_0..x_n cover the cloud at eps."""
    from .ifs import run_orbit

    orbit = run_orbit(ifs, driver, x0, n)
    d = cKDTree(orbit.points).query(cloud.points)[0]
    return bool((d <= eps).all())


def covering_estimate(points, eps: float) -> CoverEstimate:
    """Deterministic two-sided bracket on the covering number of a point set.

    upper: greedy — repeatedly center a closed eps-ball at the first (in
    canonical order) uncovered point.  lower: greedy maximal 2*eps-separated
    subset; no eps-ball can contain two such points, so the true covering
    number is at least its size.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[0] == 0:
        raise ValidationError("covering estimate needs a nonempty point set")
    if eps <= 0:
        raise ValidationError("covering radius must be positive")
    tree = cKDTree(pts)
    n = pts.shape[0]

    covered = np.zeros(n, dtype=bool)
    upper = 0
    cursor = 0
    while True:
        while cursor < n and covered[cursor]:
            cursor += 1
        if cursor == n:
            break
        covered[tree.query_ball_point(pts[cursor], eps)] = True
        upper += 1

    excluded = np.zeros(n, dtype=bool)
    lower = 0
    cursor = 0
    while True:
        while cursor < n and excluded[cursor]:
            cursor += 1
        if cursor == n:
            break
        excluded[tree.query_ball_point(pts[cursor], 2.0 * eps)] = True
        lower += 1

    return CoverEstimate(eps=float(eps), lower=lower, upper=upper)


def box_dimension(cloud: AttractorCloud, a: float, r: float,
                  m_lo: int, m_hi: int) -> DimensionEstimate:
    """Lower box dimension proxy over the radius schedule b_m = a * r^m.

    Radii at or below twice the cloud resolution (where the cloud stops
    resembling the attractor) and radii >= 1 (degenerate log scale) are
    dropped; the estimate is the minimum of the upper-rate curve, a finite
    stand-in for the liminf.
    """
    if not 0.0 < r < 1.0:
        raise ValidationError("schedule ratio r must lie in (0, 1)")
    if a <= 0 or m_lo > m_hi:
        raise ValidationError("schedule needs a > 0 and m_lo <= m_hi")
    samples, rl, ru = [], [], []
    for m in range(m_lo, m_hi + 1):
        b = a * r ** m
        if b <= 2.0 * cloud.resolution or b >= 1.0:
            continue
        est = covering_estimate(cloud.points, b)
        denom = math.log(1.0 / b)
        samples.append(est)
        rl.append(math.log(est.lower) / denom)
        ru.append(math.log(est.upper) / denom)
    if not samples:
        raise ValidationError(
            "no usable radii: the schedule fell below twice the cloud resolution"
        )
    value = min(ru)
    return DimensionEstimate(value=value, schedule=(a, r, (m_lo, m_hi)),
                             samples=tuple(samples), rates_lower=tuple(rl),
                             rates_upper=tuple(ru), liminf_proxy=value)


def log_rate(n: int, eps: float) -> float | None:
    """ln(n)/ln(1/eps); None (undefined) for n = 0 to keep limsup stats clean."""
    if not 0.0 < eps < 1.0:
        raise ValidationError("log rate needs 0 < eps < 1")
    if n < 0:
        raise ValidationError("recovery time must be >= 0")
    if n == 0:
        return None
    return math.log(n) / math.log(1.0 / eps)


def iterated_log_rate(n: int, eps: float, order: int) -> float:
    """ln^(order)(n)/ln(1/eps), with -inf when the iterated log is undefined."""
    if order < 1:
        raise ValidationError("iterated log order must be >= 1")
    if not 0.0 < eps < 1.0:
        raise ValidationError("iterated log rate needs 0 < eps < 1")
    if n < 1:
        raise ValidationError("iterated log rate needs n >= 1")
    x = float(n)
    for _ in range(order):
        if x <= 0.0:
            return float("-inf")
        x = math.log(x)
    return x / math.log(1.0 / eps)


def rate_ratio(n: int, psi, eps: float) -> float:
    """n / psi(eps): how far a recovery time sits from the target rate."""
    value = float(psi(eps))
    if math.isinf(value) or math.isnan(value):
        raise CapExceededError(
            f"rate function evaluation saturated (overflow) at eps={eps:g}"
        )
    if value <= 0.0:
        raise ValidationError("rate function must be positive at eps")
    return n / value


def key_inequality_check(record: RecoveryRecord, cover: CoverEstimate) -> bool:
    """Check n + 1 >= N(eps) via the packing lower bound (sound side)."""
    if record.eps != cover.eps:
        raise ValidationError("record and cover estimate must share the same eps")
    if record.n is None:
        raise ValidationError("cannot check the key inequality on a capped record")
    return record.n + 1 >= cover.lower
