"""Secrecy capacity regions for scalar and parallel Gaussian wiretap channels
with two eavesdropper strength levels.

All noise variances are normalized to one, so a channel is described by
its power budget and gain triple (legitimate gain ``a``, strong
eavesdropper gain ``b1``, weak eavesdropper gain ``b2`` with b1 >= b2).
Rates are in bits per channel use (base-2 logs throughout).

The total-power region is computed by direct numerical search over
power allocations (weighted-objective sweep on the simplex with grid
refinement) rather than a closed-form waterfilling rule; the objective
is concave in the allocation, so refinement around the coarse argmax is
globally valid.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from secembed.regions import HalfSpace, RateRegion

__all__ = [
    "cs_scalar",
    "ScalarGaussChannel",
    "ParallelGaussChannel",
    "ScalarRegionResult",
    "NaiveRegionResult",
    "ParallelRegionResult",
    "TotalPowerBoundary",
    "region_scalar",
    "naive_region",
    "region_parallel_individual",
    "region_parallel_total",
]


def cs_scalar(power: float, a: float, b: float) -> float:
    """Secrecy capacity [0.5*log2(1+a*P) - 0.5*log2(1+b*P)]^+ in bits/use."""
    if power < 0 or a < 0 or b < 0:
        raise ValueError("power and gains must be nonnegative")
    val = 0.5 * (np.log2(1.0 + a * power) - np.log2(1.0 + b * power))
    return float(max(0.0, val))


@dataclass(frozen=True)
class ScalarGaussChannel:
    power: float
    a: float
    b1: float
    b2: float

    def __post_init__(self):
        if min(self.power, self.a, self.b1, self.b2) < 0:
            raise ValueError("power and gains must be nonnegative")
        if self.b1 < self.b2:
            raise ValueError("strong eavesdropper gain b1 must be >= b2")


@dataclass(frozen=True)
class ParallelGaussChannel:
    """Independent parallel subchannels, powers fixed per subchannel or pooled.

    Exactly one of ``powers`` (per-subchannel budgets) and ``total_power``
    must be given.
    """

    a: tuple
    b1: tuple
    b2: tuple
    powers: tuple | None = None
    total_power: float | None = None

    def __post_init__(self):
        a = tuple(float(x) for x in self.a)
        b1 = tuple(float(x) for x in self.b1)
        b2 = tuple(float(x) for x in self.b2)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "b2", b2)
        if not (len(a) == len(b1) == len(b2)) or not a:
            raise ValueError("gain lists must be nonempty and of equal length")
        if any(x < 0 for x in a + b1 + b2):
            raise ValueError("gains must be nonnegative")
        if any(s < w for s, w in zip(b1, b2)):
            raise ValueError("need b1_l >= b2_l in every subchannel")
        if (self.powers is None) == (self.total_power is None):
            raise ValueError("give exactly one of powers / total_power")
        if self.powers is not None:
            powers = tuple(float(p) for p in self.powers)
            if len(powers) != len(a) or any(p < 0 for p in powers):
                raise ValueError("powers must match subchannels and be nonnegative")
            object.__setattr__(self, "powers", powers)
        elif self.total_power < 0:
            raise ValueError("total power must be nonnegative")

    @property
    def n_sub(self) -> int:
        return len(self.a)


@dataclass(frozen=True)
class ScalarRegionResult:
    channel: ScalarGaussChannel
    cap_high: float
    cap_low: float
    corner: tuple
    region: RateRegion

    def to_dict(self) -> dict:
        return {
            "cap_high": self.cap_high,
            "cap_low": self.cap_low,
            "corner": list(self.corner),
            "region": self.region.to_dict(),
        }


def region_scalar(ch: ScalarGaussChannel) -> ScalarRegionResult:
    """Region {R1 <= Cs(P,a,b1); R1+R2 <= Cs(P,a,b2)} plus its corner point.

    The corner (Cs(P,a,b1), Cs(P,a,b2) - Cs(P,a,b1)) carries the
    high-security message at full rate with no sum-rate loss.
    """
    cap_high = cs_scalar(ch.power, ch.a, ch.b1)
    cap_low = cs_scalar(ch.power, ch.a, ch.b2)
    return ScalarRegionResult(
        channel=ch,
        cap_high=cap_high,
        cap_low=cap_low,
        corner=(cap_high, cap_low - cap_high),
        region=RateRegion.from_rate_bounds(cap_high, cap_low),
    )


@dataclass(frozen=True)
class NaiveRegionResult:
    """Time-sharing region of two separately encoded wiretap codes."""

    cap_high: float
    cap_low: float
    region: RateRegion
    degenerate: bool

    def hull_violation(self, point) -> float:
        """Positive when the point lies strictly outside the time-sharing hull.

        Defined as R1/cap_high + R2/cap_low - 1 when both capacities are
        positive; only meaningful in that non-degenerate case.
        """
        if self.degenerate:
            raise ValueError("hull violation undefined for a degenerate naive region")
        return point[0] / self.cap_high + point[1] / self.cap_low - 1.0


def naive_region(ch: ScalarGaussChannel) -> NaiveRegionResult:
    """Separate-encoding benchmark: convex hull of the two single-code endpoints.

    With both capacities positive this is {R1/cap_high + R2/cap_low <= 1}
    over nonnegative rates; with either capacity zero it collapses to an
    axis segment.
    """
    cap_high = cs_scalar(ch.power, ch.a, ch.b1)
    cap_low = cs_scalar(ch.power, ch.a, ch.b2)
    nonneg = (HalfSpace((-1.0, 0.0), 0.0), HalfSpace((0.0, -1.0), 0.0))
    if cap_high > 0 and cap_low > 0:
        hull = HalfSpace((1.0 / cap_high, 1.0 / cap_low), 1.0)
        region = RateRegion(("R1", "R2"), (hull,) + nonneg)
        return NaiveRegionResult(cap_high, cap_low, region, degenerate=False)
    region = RateRegion(
        ("R1", "R2"),
        (HalfSpace((1.0, 0.0), cap_high), HalfSpace((0.0, 1.0), cap_low)) + nonneg,
    )
    return NaiveRegionResult(cap_high, cap_low, region, degenerate=True)


@dataclass(frozen=True)
class ParallelRegionResult:
    channel: ParallelGaussChannel
    cap_high_sum: float
    cap_low_sum: float
    corner: tuple
    region: RateRegion
    per_subchannel: tuple

    def to_dict(self) -> dict:
        return {
            "cap_high_sum": self.cap_high_sum,
            "cap_low_sum": self.cap_low_sum,
            "corner": list(self.corner),
            "per_subchannel": [list(p) for p in self.per_subchannel],
            "region": self.region.to_dict(),
        }


def region_parallel_individual(ch: ParallelGaussChannel) -> ParallelRegionResult:
    """Per-subchannel power constraints: bounds are sums of scalar capacities."""
    if ch.powers is None:
        raise ValueError("per-subchannel region needs fixed per-subchannel powers")
    per = tuple(
        (cs_scalar(p, a, s), cs_scalar(p, a, w))
        for p, a, s, w in zip(ch.powers, ch.a, ch.b1, ch.b2)
    )
    cap_high = sum(p[0] for p in per)
    cap_low = sum(p[1] for p in per)
    return ParallelRegionResult(
        channel=ch,
        cap_high_sum=cap_high,
        cap_low_sum=cap_low,
        corner=(cap_high, cap_low - cap_high),
        region=RateRegion.from_rate_bounds(cap_high, cap_low),
        per_subchannel=per,
    )


def _simplex_argmax(f, total: float, dims: int, resolution: float):
    """Deterministic coarse-to-fine argmax of a concave f over the simplex.

    Searches allocations with sum equal to the total (each scalar term is
    nondecreasing in power, so spare power is never useful).  Returns
    (allocation tuple, value).
    """
    if dims == 1:
        return (total,), f((total,))
    if total == 0:
        p = tuple(0.0 for _ in range(dims))
        return p, f(p)
    if resolution <= 0:
        raise ValueError("grid resolution must be positive")
    free = dims - 1
    npts = 9
    center = np.full(free, total / dims)
    width = total
    best_p, best_v = None, -np.inf
    while True:
        axes = [
            np.unique(np.clip(np.linspace(c - width, c + width, npts), 0.0, total))
            for c in center
        ]
        for combo in np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, free):
            last = total - combo.sum()
            if last < -1e-12:
                continue
            p = tuple(float(x) for x in combo) + (max(float(last), 0.0),)
            v = f(p)
            if best_p is None or v > best_v + 1e-15:
                best_p, best_v = p, v
        center = np.array(best_p[:free])
        spacing = 2.0 * width / (npts - 1)
        if spacing <= resolution * total:
            return best_p, best_v
        # a concave objective's true argmax lies within one coarse cell
        width = spacing


@dataclass(frozen=True)
class TotalPowerBoundary:
    """Upper boundary of the pooled-power region (union over allocations).

    ``max_r1`` is the largest achievable high-security rate, ``max_sum``
    the largest achievable sum rate; the two extreme allocations achieve
    them.  ``frontier`` holds the achievable (cap_high_sum, cap_low_sum)
    pairs traced by the weighted sweep, sorted by increasing cap_high.
    """

    channel: ParallelGaussChannel
    points: np.ndarray
    frontier: np.ndarray
    alloc_max_r1: tuple
    alloc_max_sum: tuple
    max_r1: float
    max_sum: float

    def best_sum_given_r1(self, r1: float):
        """max cap_low_sum over allocations whose cap_high_sum covers r1."""
        if r1 > self.max_r1 + 1e-12:
            return None
        a = self.frontier[:, 0]
        b = self.frontier[:, 1]
        if r1 <= a[0]:
            return float(self.max_sum)
        return float(np.interp(r1, a, b))

    def max_r2_at(self, r1: float):
        s = self.best_sum_given_r1(r1)
        return None if s is None else max(s - r1, 0.0)

    def contains(self, point, tol: float = 1e-9) -> bool:
        r1, r2 = float(point[0]), float(point[1])
        if r1 < -tol or r2 < -tol or r1 > self.max_r1 + tol:
            return False
        r2_max = self.max_r2_at(min(max(r1, 0.0), self.max_r1))
        return r2 <= r2_max + tol

    def embedding_gap(self) -> float:
        """Vertical distance of (max_r1, max_sum - max_r1) above the boundary.

        Positive means the channel is not perfectly embeddable under the
        pooled power constraint.
        """
        want = self.max_sum - self.max_r1
        have = self.max_r2_at(self.max_r1)
        return want - have

    def to_dict(self) -> dict:
        return {
            "max_r1": self.max_r1,
            "max_sum": self.max_sum,
            "alloc_max_r1": list(self.alloc_max_r1),
            "alloc_max_sum": list(self.alloc_max_sum),
            "embedding_gap": self.embedding_gap(),
            "boundary": [[float(a), float(b)] for a, b in self.points],
        }


def _simplex_grid(total: float, dims: int, steps: int):
    """All allocations with the given sum on a regular simplex grid."""
    if dims == 1:
        yield (total,)
        return
    for k in range(steps + 1):
        head = total * k / steps
        for rest in _simplex_grid(total - head, dims - 1, steps - k):
            yield (head,) + rest


def region_parallel_total(ch: ParallelGaussChannel, grid: float = 1e-3,
                          n_weights: int = 401, n_boundary: int = 201) -> TotalPowerBoundary:
    """Pooled-power region boundary via allocation search on the simplex.

    The achievable (cap_high_sum, cap_low_sum) pairs form a convex set
    because both sums are concave in the allocation, so the region
    boundary is the Pareto frontier of those pairs.  For few subchannels
    the simplex is enumerated directly at the requested resolution; for
    larger banks the frontier is traced by maximizing weighted
    objectives w*cap_high + (1-w)*cap_low, each located by grid
    refinement.  The two extreme allocations are always refined to the
    requested resolution.
    """
    if ch.total_power is None:
        raise ValueError("pooled-power region needs total_power")
    total = float(ch.total_power)
    dims = ch.n_sub

    def cap_pair(p):
        high = sum(cs_scalar(pw, a, s) for pw, a, s in zip(p, ch.a, ch.b1))
        low = sum(cs_scalar(pw, a, w) for pw, a, w in zip(p, ch.a, ch.b2))
        return high, low

    alloc_r1, _ = _simplex_argmax(lambda p: cap_pair(p)[0], total, dims, grid)
    alloc_sum, _ = _simplex_argmax(lambda p: cap_pair(p)[1], total, dims, grid)
    max_r1 = cap_pair(alloc_r1)[0]
    max_sum = cap_pair(alloc_sum)[1]

    pairs = {cap_pair(alloc_r1), cap_pair(alloc_sum)}
    steps = max(2, round(1.0 / grid))
    if total == 0:
        pairs.add(cap_pair(tuple(0.0 for _ in range(dims))))
    elif comb(steps + dims - 1, dims - 1) <= 2_000_000:
        for p in _simplex_grid(total, dims, steps):
            pairs.add(cap_pair(p))
    else:
        for w in np.linspace(0.0, 1.0, n_weights):
            alloc, _ = _simplex_argmax(
                lambda p: w * cap_pair(p)[0] + (1.0 - w) * cap_pair(p)[1],
                total, dims, grid)
            pairs.add(cap_pair(alloc))
    # Pareto frontier in (cap_high, cap_low), increasing high / decreasing low
    frontier = []
    for high, low in sorted(pairs, key=lambda t: (t[0], t[1])):
        while frontier and frontier[-1][1] <= low:
            frontier.pop()
        frontier.append((high, low))
    frontier = np.array(frontier)

    r1_grid = np.linspace(0.0, max_r1, n_boundary)
    a, b = frontier[:, 0], frontier[:, 1]
    sums = np.where(r1_grid <= a[0], max_sum, np.interp(r1_grid, a, b))
    points = np.column_stack([r1_grid, np.maximum(sums - r1_grid, 0.0)])
    return TotalPowerBoundary(
        channel=ch, points=points, frontier=frontier,
        alloc_max_r1=alloc_r1, alloc_max_sum=alloc_sum,
        max_r1=max_r1, max_sum=max_sum)
