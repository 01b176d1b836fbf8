"""Objects as time-indexed trajectories, and seating frames.

Identity over time is handled by extrapolating each trajectory seen before
an occlusion to the moment a candidate reappears and choosing the
assignment with the smallest total mismatch. :class:`SeatingFrame` models
"to the right of" around a table or along a line.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConceptSpaceError, InvalidSpaceError
from .space import ConceptualSpace, Point, _same_space

__all__ = [
    "Trajectory",
    "extrapolate",
    "interpolate_gap",
    "smoothness",
    "Match",
    "Reidentification",
    "reidentify",
    "crossing_scenario",
    "SeatingFrame",
    "right_of",
    "TransitivityReport",
    "transitivity_check",
]

EXHAUSTIVE_LIMIT = 8


@dataclass(frozen=True, eq=False)
class Trajectory:
    object_id: str
    samples: tuple[tuple[float, Point], ...]

    def __post_init__(self):
        samples = tuple((float(t), p) for t, p in self.samples)
        object.__setattr__(self, "samples", samples)
        if samples:
            _same_space(samples[0][1].space, *(p for _, p in samples))
        ts = [t for t, _ in samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise InvalidSpaceError(f"trajectory {self.object_id!r}: timestamps must increase")

    @classmethod
    def from_arrays(cls, object_id, space, times, coords):
        return cls(object_id, tuple((t, Point(tuple(c), space)) for t, c in zip(times, coords)))

    @property
    def space(self) -> ConceptualSpace:
        return self.samples[0][1].space

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.samples])

    @property
    def coords(self) -> np.ndarray:
        return np.array([p.coords for _, p in self.samples])

    def append(self, t: float, p: Point) -> "Trajectory":
        """A new trajectory with one more sample (the original is unchanged)."""
        return Trajectory(self.object_id, self.samples + ((t, p),))

    def __len__(self):
        return len(self.samples)


def _predict(traj: Trajectory, t: float, quadratic: bool) -> np.ndarray:
    space = traj.space
    ts, X = traj.times, traj.coords
    if quadratic and len(ts) >= 3:
        t0, t1, t2 = ts[-3:]
        # unwrap the last three samples onto one chart before fitting
        x2 = X[-1]
        x1 = x2 - space.delta(X[-2], X[-1])
        x0 = x1 - space.delta(X[-3], X[-2])
        l0 = (t - t1) * (t - t2) / ((t0 - t1) * (t0 - t2))
        l1 = (t - t0) * (t - t2) / ((t1 - t0) * (t1 - t2))
        l2 = (t - t0) * (t - t1) / ((t2 - t0) * (t2 - t1))
        out = l0 * x0 + l1 * x1 + l2 * x2
    else:
        v = space.delta(X[-2], X[-1]) / (ts[-1] - ts[-2])
        out = X[-1] + v * (t - ts[-1])
    return out


def extrapolate(traj: Trajectory, t: float, quadratic: bool = False) -> Point:
    """Predicted position at a future time ``t``.

    Constant velocity from the last two samples by default; ``quadratic``
    fits a parabola through the last three. Circular coordinates wrap and
    linear ones are clamped to their bounds.
    """
    if len(traj) < (3 if quadratic else 2):
        raise InvalidSpaceError("not enough samples to extrapolate")
    if not t > traj.samples[-1][0]:
        raise InvalidSpaceError("extrapolation time must lie after the last sample")
    return Point(tuple(traj.space.clamp(_predict(traj, t, quadratic))), traj.space)


def interpolate_gap(traj: Trajectory, t: float) -> Point:
    """Linear interpolation between the samples bracketing ``t``.

    Circular dimensions move along the shorter arc. ``t`` at a sample time
    returns that sample.
    """
    ts = traj.times
    if len(ts) == 0 or not ts[0] <= t <= ts[-1]:
        raise InvalidSpaceError(f"t={t} outside the sampled range")
    k = int(np.searchsorted(ts, t))
    if ts[k] == t:
        return traj.samples[k][1]
    (ta, a), (tb, b) = traj.samples[k - 1], traj.samples[k]
    s = (t - ta) / (tb - ta)
    x = np.asarray(a.coords) + s * traj.space.delta(a.coords, b.coords)
    return Point(tuple(traj.space.normalize(x)), traj.space)


def smoothness(traj: Trajectory) -> float:
    """Mean squared second difference (acceleration) along the trajectory.

    Non-uniform time steps use the three-point second-derivative estimate;
    the squared length of each acceleration vector is measured with the
    space metric. Zero for constant velocity.
    """
    if len(traj) < 3:
        raise InvalidSpaceError("smoothness needs at least three samples")
    space = traj.space
    ts, X = traj.times, traj.coords
    v = space.delta(X[:-1], X[1:]) / np.diff(ts)[:, None]
    acc = 2 * (v[1:] - v[:-1]) / (ts[2:] - ts[:-2])[:, None]
    n = space.norm(acc)
    return float(np.mean(n * n))


@dataclass(frozen=True)
class Match:
    pre_id: str
    post_id: str
    cost: float


@dataclass(frozen=True)
class Reidentification:
    matches: tuple[Match, ...]
    unmatched_pre: tuple[str, ...]
    unmatched_post: tuple[str, ...]
    exhaustive: bool
    cost_matrix: np.ndarray = field(repr=False, compare=False)

    @property
    def total_cost(self) -> float:
        return float(sum(m.cost for m in self.matches))

    def as_dict(self) -> dict:
        return {m.pre_id: m.post_id for m in self.matches}

    def __iter__(self):
        return iter(self.matches)


def reid_costs(pre, post) -> np.ndarray:
    """``cost[i, j]``: distance between pre ``i`` extrapolated to post ``j``'s
    first time and post ``j``'s first point."""
    cost = np.empty((len(pre), len(post)))
    for j, q in enumerate(post):
        t0, p0 = q.samples[0]
        for i, tr in enumerate(pre):
            guess = extrapolate(tr, t0)
            cost[i, j] = float(tr.space.distances(guess.coords, p0.coords))
    return cost


def reidentify(pre_gap, post_gap) -> Reidentification:
    """Match trajectories seen before an occlusion with those seen after.

    Exhaustive minimum-total-cost search when ``max(n, m) <= 8`` (first
    optimum in lexicographic order wins ties), greedy row-minimum beyond.
    """
    pre, post = list(pre_gap), list(post_gap)
    if not pre or not post:
        raise InvalidSpaceError("reidentify needs non-empty trajectory lists")
    for tr in pre:
        if len(tr) < 2:
            raise InvalidSpaceError(f"trajectory {tr.object_id!r} needs >= 2 samples")
    cost = reid_costs(pre, post)
    n, m = cost.shape
    exhaustive = max(n, m) <= EXHAUSTIVE_LIMIT
    pairs: list[tuple[int, int]] = []
    if exhaustive:
        best, best_pairs = math.inf, []
        if n <= m:
            for perm in itertools.permutations(range(m), n):
                total = sum(cost[i, perm[i]] for i in range(n))
                if total < best:
                    best, best_pairs = total, [(i, perm[i]) for i in range(n)]
        else:
            for perm in itertools.permutations(range(n), m):
                total = sum(cost[perm[j], j] for j in range(m))
                if total < best:
                    best, best_pairs = total, sorted((perm[j], j) for j in range(m))
        pairs = best_pairs
    else:
        used: set[int] = set()
        for i in range(n):
            free = [j for j in range(m) if j not in used]
            if not free:
                break
            j = min(free, key=lambda jj: (cost[i, jj], jj))
            used.add(j)
            pairs.append((i, j))
    matched_i = {i for i, _ in pairs}
    matched_j = {j for _, j in pairs}
    return Reidentification(
        tuple(Match(pre[i].object_id, post[j].object_id, float(cost[i, j])) for i, j in pairs),
        tuple(pre[i].object_id for i in range(n) if i not in matched_i),
        tuple(post[j].object_id for j in range(m) if j not in matched_j),
        exhaustive,
        cost,
    )


def crossing_scenario(space: ConceptualSpace, n: int = 2, seed: int = 0,
                      noise: float = 0.0, gap: float = 4.0):
    """Objects whose paths cross while occluded.

    Each object moves at constant velocity through a common meeting point
    reached in the middle of the occlusion, so that after the gap every
    object lies closest to where some *other* object was last seen.
    Returns ``(pre, post, truth)`` where ``truth`` maps pre ids to post ids;
    post ids are shuffled so that list order carries no identity.
    Only the first two dimensions move; needs a space of at least 2 dims.
    """
    rng = np.random.default_rng(seed)
    lo, hi = space.lower, space.upper
    mid = (lo + hi) / 2
    span = float(np.min(hi[:2] - lo[:2]))
    speed = span / (4 * (gap / 2 + 3))
    # headings at least pi/n apart
    jitter = rng.uniform(-np.pi / (4 * n), np.pi / (4 * n), n)
    angles = rng.uniform(0, 2 * np.pi) + 2 * np.pi * np.arange(n) / n + jitter
    t_pre = np.array([0.0, 1.0, 2.0])
    t_meet = t_pre[-1] + gap / 2
    t_post = t_pre[-1] + gap + np.array([0.0, 1.0, 2.0])
    pre, post = [], []
    order = rng.permutation(n)
    post_ids = [f"q{k}" for k in range(n)]
    truth = {}
    for k in range(n):
        v = np.zeros(space.ndim)
        v[0], v[1] = speed * np.cos(angles[k]), speed * np.sin(angles[k])
        def at(t):
            x = mid + v * (t - t_meet)
            x[:2] += rng.normal(0, noise, 2) if noise else 0.0
            return space.clamp(x)
        pid = f"p{k}"
        qid = post_ids[order[k]]
        truth[pid] = qid
        pre.append(Trajectory.from_arrays(pid, space, t_pre, [at(t) for t in t_pre]))
        post.append(Trajectory.from_arrays(qid, space, t_post, [at(t) for t in t_post]))
    post.sort(key=lambda tr: tr.object_id)
    return pre, post, truth


@dataclass(frozen=True)
class SeatingFrame:
    """Occupants around a circular table (angles in degrees, increasing
    clockwise) or along a line (coordinates increasing to the right)."""

    kind: str
    positions: tuple[tuple[str, float], ...]
    center: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple((str(i), float(v)) for i, v in self.positions))
        if self.kind not in ("circular", "linear"):
            raise InvalidSpaceError(f"unknown frame kind {self.kind!r}")
        ids = [i for i, _ in self.positions]
        if len(set(ids)) != len(ids):
            raise InvalidSpaceError("occupant identifiers must be unique")
        vals = [v % 360.0 if self.kind == "circular" else v for _, v in self.positions]
        if len(set(vals)) != len(vals):
            raise InvalidSpaceError("occupant positions must be distinct")
        if self.kind == "circular":
            object.__setattr__(
                self, "positions", tuple((i, v % 360.0) for i, v in self.positions)
            )

    @classmethod
    def circular(cls, angles: dict, center=(0.0, 0.0)) -> "SeatingFrame":
        return cls("circular", tuple(angles.items()), center)

    @classmethod
    def linear(cls, coords: dict) -> "SeatingFrame":
        return cls("linear", tuple(coords.items()))

    @property
    def ids(self) -> list[str]:
        return [i for i, _ in self.positions]

    def position(self, ident: str) -> float:
        for i, v in self.positions:
            if i == ident:
                return v
        raise ConceptSpaceError(f"unknown occupant {ident!r}")


def right_of(frame: SeatingFrame, x: str, y: str) -> bool:
    """Whether ``x`` sits to the right of ``y``.

    Circular: the clockwise offset from ``y`` to ``x`` lies strictly
    between 0 and 180 degrees. Linear: ``x`` has the larger coordinate.
    """
    px, py = frame.position(x), frame.position(y)
    if frame.kind == "linear":
        return px > py
    off = (px - py) % 360.0
    return 0.0 < off < 180.0


@dataclass(frozen=True)
class TransitivityReport:
    transitive: bool
    counterexamples: tuple[tuple[str, str, str], ...]


def transitivity_check(frame: SeatingFrame, ids=None) -> TransitivityReport:
    """Test every ordered triple ``(x, y, z)`` of distinct occupants.

    A counterexample has ``x`` right of ``y`` and ``y`` right of ``z`` but
    ``x`` not right of ``z``.
    """
    ids = list(ids) if ids is not None else frame.ids
    if len(ids) < 3:
        raise InvalidSpaceError("transitivity needs at least three occupants")
    bad = []
    for x, y, z in itertools.permutations(ids, 3):
        if right_of(frame, x, y) and right_of(frame, y, z) and not right_of(frame, x, z):
            bad.append((x, y, z))
    return TransitivityReport(not bad, tuple(bad))
