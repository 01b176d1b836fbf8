"""Concepts as convex regions with centroid prototypes.

Regions live in raw coordinate space. Four convex backends are provided
(:class:`Box`, :class:`Ball`, :class:`Halfspaces`, :class:`Hull`) plus
:class:`Intersection`, a membership-predicate region produced when two
regions cannot be intersected exactly. Polytopes share the canonical
``A x <= b`` form, which makes their intersection exact.

Regions must not straddle the seam of a circular dimension, and their
circular extent is limited to half a period, so that convexity in raw
coordinates agrees with convexity under the wrapped metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from .errors import (
    EmptyConjunctionError,
    InvalidSpaceError,
    SamplingError,
    SpaceMismatchError,
    UnsupportedMetricError,
)
from .space import ConceptualSpace, Point, _same_space

__all__ = [
    "Region",
    "Box",
    "Ball",
    "Halfspaces",
    "Hull",
    "Intersection",
    "Concept",
    "Exemplar",
    "CriterionPReport",
    "region_from_exemplars",
    "contains",
    "centroid",
    "sample_region",
    "concept_from_region",
    "typicality",
    "between",
    "check_criterion_p",
    "combine",
]

TOL = 1e-9
CENTROID_SAMPLES = 100_000
MIN_ACCEPTANCE = 1e-4
# thin regions keep drawing batches until this many members (or 100 batches)
TARGET_MEMBERS = 10_000


class Region:
    """Base class. Subclasses implement ``contains_many`` and ``bounds``."""

    space: ConceptualSpace
    convex = True

    def contains_many(self, xs) -> np.ndarray:
        raise NotImplementedError

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        raise NotImplementedError

    def halfspaces(self):
        """``(A, b)`` with unit-norm rows when the region is a polytope, else None."""
        return None

    def analytic_centroid(self):
        return None

    def _draw(self, n: int, rng: np.random.Generator) -> np.ndarray:
        lo, hi = self.bounds()
        return rng.uniform(lo, hi, size=(n, len(lo)))

    def _sample_batch(self, n, rng):
        xs = self._draw(n, rng)
        return xs[self.contains_many(xs)]

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Exactly ``n`` uniform member points by rejection."""
        got, drawn = [], 0
        count = 0
        batch = max(1000, 2 * n)
        while count < n:
            acc = self._sample_batch(batch, rng)
            drawn += batch
            got.append(acc)
            count += len(acc)
            if count / drawn < MIN_ACCEPTANCE:
                raise SamplingError(
                    f"acceptance rate {count / drawn:.2e} below {MIN_ACCEPTANCE:g}: region too thin",
                    accepted=count,
                )
        return np.concatenate(got)[:n]


def _check_seam(space: ConceptualSpace, lo, hi, what: str) -> None:
    circ = space.circular_mask
    if not circ.any():
        return
    per = space.periods[circ]
    l, h = np.asarray(lo)[circ], np.asarray(hi)[circ]
    if np.any(l < 0) or np.any(h > per):
        raise InvalidSpaceError(f"{what} crosses the seam of a circular dimension")
    if np.any(h - l > per / 2 + TOL):
        raise InvalidSpaceError(f"{what} spans more than half a period on a circular dimension")


def _clip_to_space(space, lo, hi):
    return np.maximum(lo, space.lower), np.minimum(hi, space.upper)


@dataclass(eq=False, frozen=True)
class Box(Region):
    space: ConceptualSpace
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float).reshape(-1)
        hi = np.asarray(self.hi, dtype=float).reshape(-1)
        if lo.shape != (self.space.ndim,) or hi.shape != lo.shape:
            raise InvalidSpaceError("box bounds must have one interval per dimension")
        if np.any(lo > hi):
            raise InvalidSpaceError("box interval with lo > hi")
        slo, shi = self.space.lower, self.space.upper
        if np.any(lo < slo) or np.any(hi > shi):
            raise InvalidSpaceError("box exceeds the space bounds")
        _check_seam(self.space, lo, hi, "box")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def contains_many(self, xs):
        xs = np.atleast_2d(xs)
        return np.all((xs >= self.lo) & (xs <= self.hi), axis=-1)

    def bounds(self):
        return self.lo.copy(), self.hi.copy()

    def halfspaces(self):
        n = self.space.ndim
        eye = np.eye(n)
        return np.vstack([eye, -eye]), np.concatenate([self.hi, -self.lo])

    def analytic_centroid(self):
        return (self.lo + self.hi) / 2

    def sample(self, n, rng):
        return rng.uniform(self.lo, self.hi, size=(n, len(self.lo)))

    _sample_batch = sample


@dataclass(eq=False, frozen=True)
class Ball(Region):
    """Metric ball ``{x : d(center, x) <= radius}`` (tolerance 1e-9)."""

    space: ConceptualSpace
    center: Point
    radius: float

    def __post_init__(self):
        _same_space(self.space, self.center)
        if not (self.radius >= 0 and math.isfinite(self.radius)):
            raise InvalidSpaceError("ball radius must be a nonnegative finite number")
        c = self.center.array
        half = self.radius / self.space.axis_scale()
        _check_seam(self.space, c - half, c + half, "ball")

    def contains_many(self, xs):
        return self.space.distances(np.atleast_2d(xs), self.center.array) <= self.radius + TOL

    def _raw_bounds(self):
        c = self.center.array
        half = self.radius / self.space.axis_scale()
        return c - half, c + half

    def bounds(self):
        return _clip_to_space(self.space, *self._raw_bounds())

    def analytic_centroid(self):
        lo, hi = self._raw_bounds()
        if np.all(lo >= self.space.lower) and np.all(hi <= self.space.upper):
            return self.center.array
        return None


def _normalize_rows(A, b):
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    norms = np.linalg.norm(A, axis=1)
    if np.any(norms == 0):
        raise InvalidSpaceError("halfspace with zero normal")
    return A / norms[:, None], b / norms


def _lp(space, A, b, c):
    res = linprog(
        c, A_ub=A, b_ub=b + TOL,
        bounds=list(zip(space.lower, space.upper)), method="highs",
    )
    return res


def _feasible_point(space, A, b):
    res = _lp(space, A, b, np.zeros(space.ndim))
    return res.x if res.status == 0 else None


@dataclass(eq=False, frozen=True)
class Halfspaces(Region):
    """Polytope ``{x : A x <= b}`` intersected with the space bounds."""

    space: ConceptualSpace
    A: np.ndarray
    b: np.ndarray
    _box: tuple = field(init=False, repr=False, default=None)

    def __post_init__(self):
        A, b = _normalize_rows(self.A, self.b)
        if A.shape[1] != self.space.ndim or len(b) != len(A):
            raise InvalidSpaceError("halfspace normals must match the space dimension")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        if _feasible_point(self.space, A, b) is None:
            raise InvalidSpaceError("halfspace system is empty")
        n = self.space.ndim
        lo, hi = np.empty(n), np.empty(n)
        for i in range(n):
            e = np.zeros(n)
            e[i] = 1.0
            lo[i] = _lp(self.space, A, b, e).fun
            hi[i] = -_lp(self.space, A, b, -e).fun
        lo, hi = _clip_to_space(self.space, lo, np.maximum(lo, hi))
        _check_seam(self.space, lo, hi, "halfspace region")
        object.__setattr__(self, "_box", (lo, hi))

    def contains_many(self, xs):
        xs = np.atleast_2d(xs)
        return np.all(xs @ self.A.T <= self.b + TOL, axis=-1)

    def bounds(self):
        return self._box[0].copy(), self._box[1].copy()

    def halfspaces(self):
        return self.A, self.b


def _affine_frame(points: np.ndarray):
    """Mean, orthonormal basis of the affine hull, and its complement."""
    m = points.mean(axis=0)
    centered = points - m
    scale = max(1.0, float(np.abs(points).max()))
    _, s, vt = np.linalg.svd(centered, full_matrices=True)
    rank = int(np.sum(s > 1e-10 * scale))
    return m, vt[:rank].T, vt[rank:].T


@dataclass(eq=False, frozen=True)
class Hull(Region):
    """Convex hull of generator points; degenerate (low-rank) inputs allowed."""

    space: ConceptualSpace
    generators: np.ndarray
    _A: np.ndarray = field(init=False, repr=False, default=None)
    _b: np.ndarray = field(init=False, repr=False, default=None)
    _frame: tuple = field(init=False, repr=False, default=None)

    def __post_init__(self):
        g = np.atleast_2d(np.asarray(self.generators, dtype=float))
        if g.size == 0:
            raise InvalidSpaceError("hull needs at least one generator")
        if g.shape[1] != self.space.ndim:
            raise InvalidSpaceError("hull generators must match the space dimension")
        self.space.check_coords(g)
        _check_seam(self.space, g.min(axis=0), g.max(axis=0), "hull")
        object.__setattr__(self, "generators", g)
        m, basis, normal = _affine_frame(g)
        rows, rhs = [], []
        for v in normal.T:
            rows += [v, -v]
            rhs += [v @ m, -(v @ m)]
        r = basis.shape[1]
        y = (g - m) @ basis
        if r == 1:
            v = basis[:, 0]
            rows += [v, -v]
            rhs += [y.max() + v @ m, -(y.min() + v @ m)]
        elif r >= 2:
            hull = ConvexHull(y)
            for eq in hull.equations:
                a = basis @ eq[:-1]
                rows.append(a)
                rhs.append(-eq[-1] + a @ m)
        if rows:
            A, b = _normalize_rows(np.array(rows), np.array(rhs))
        else:
            A, b = np.zeros((0, self.space.ndim)), np.zeros(0)
        object.__setattr__(self, "_A", A)
        object.__setattr__(self, "_b", b)
        object.__setattr__(self, "_frame", (m, basis))

    @property
    def rank(self) -> int:
        return self._frame[1].shape[1]

    def contains_many(self, xs):
        xs = np.atleast_2d(xs)
        if len(self._A) == 0:
            return np.ones(len(xs), dtype=bool)
        return np.all(xs @ self._A.T <= self._b + TOL, axis=-1)

    def bounds(self):
        return self.generators.min(axis=0), self.generators.max(axis=0)

    def halfspaces(self):
        return self._A, self._b

    def vertices(self) -> np.ndarray:
        """Extreme generators (counterclockwise in 2-D)."""
        g = self.generators
        if self.rank < g.shape[1] or self.rank < 2:
            return g
        return g[ConvexHull(g).vertices]

    def analytic_centroid(self):
        m, basis = self._frame
        if self.rank == 0:
            return self.generators[0].copy()
        if self.rank == 1:
            y = (self.generators - m) @ basis[:, 0]
            return m + basis[:, 0] * (y.min() + y.max()) / 2
        return None

    def _draw(self, n, rng):
        # rejection box in the affine frame so low-rank hulls stay samplable
        m, basis = self._frame
        y = (self.generators - m) @ basis
        ys = rng.uniform(y.min(axis=0), y.max(axis=0), size=(n, basis.shape[1]))
        return m + ys @ basis.T


@dataclass(eq=False, frozen=True)
class Intersection(Region):
    """Membership-predicate intersection of arbitrary regions."""

    space: ConceptualSpace
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        for p in self.parts:
            if p.space != self.space:
                raise SpaceMismatchError("intersected regions live in different spaces")

    @property
    def convex(self):
        return all(p.convex for p in self.parts)

    def contains_many(self, xs):
        xs = np.atleast_2d(xs)
        ok = np.ones(len(xs), dtype=bool)
        for p in self.parts:
            ok &= p.contains_many(xs)
        return ok

    def bounds(self):
        bs = [p.bounds() for p in self.parts]
        lo = np.max([b[0] for b in bs], axis=0)
        hi = np.min([b[1] for b in bs], axis=0)
        return lo, hi

    def is_trivially_empty(self) -> bool:
        lo, hi = self.bounds()
        return bool(np.any(lo > hi))


def _check_region(region: Region, p: Point):
    _same_space(region.space, p)


def contains(region: Region, p: Point) -> bool:
    _check_region(region, p)
    return bool(region.contains_many(np.asarray(p.coords))[0])


def sample_region(region: Region, n: int, seed: int = 42) -> np.ndarray:
    """``n`` uniform member points of ``region`` (seeded rejection sampling)."""
    return region.sample(n, np.random.default_rng(seed))


def _centroid_and_samples(region: Region, seed: int, n: int = CENTROID_SAMPLES):
    rng = np.random.default_rng(seed)
    acc = region._sample_batch(n, rng)
    if len(acc) / n < MIN_ACCEPTANCE:
        raise SamplingError(
            f"acceptance rate {len(acc) / n:.2e} below {MIN_ACCEPTANCE:g}: region too thin",
            accepted=len(acc),
        )
    parts, count = [acc], len(acc)
    for _ in range(99):
        if count >= TARGET_MEMBERS:
            break
        more = region._sample_batch(n, rng)
        parts.append(more)
        count += len(more)
    acc = np.concatenate(parts)
    exact = region.analytic_centroid()
    c = np.asarray(exact, dtype=float) if exact is not None else acc.mean(axis=0)
    return c, acc


def centroid(region: Region, seed: int = 42) -> Point:
    """Geometric centroid.

    Box, Ball and low-rank hulls are analytic. Other regions use uniform
    rejection sampling with batches of ``N = 100_000`` draws in their
    bounding box, deterministic for a given seed. Acceptance below 1e-4 in
    the first batch raises :class:`SamplingError`; thin regions draw up to
    100 batches until 10,000 members are collected.
    """
    exact = region.analytic_centroid()
    if exact is not None:
        return Point(tuple(exact), region.space)
    c, _ = _centroid_and_samples(region, seed)
    return Point(tuple(c), region.space)


@dataclass(frozen=True)
class Exemplar:
    label: str
    point: Point


@dataclass(frozen=True, eq=False)
class Concept:
    """A labelled region with its prototype and typicality scale ``sigma``."""

    label: str
    region: Region
    prototype: Point
    sigma: float

    def __post_init__(self):
        _same_space(self.region.space, self.prototype)
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise InvalidSpaceError(f"concept {self.label!r}: sigma must be positive")
        if not contains(self.region, self.prototype):
            raise InvalidSpaceError(f"concept {self.label!r}: prototype outside its region")

    @property
    def space(self) -> ConceptualSpace:
        return self.region.space


def concept_from_region(
    label: str, region: Region, seed: int = 42, sigma: float | None = None
) -> Concept:
    """Concept whose prototype is the region centroid.

    Unless given, ``sigma`` is the RMS distance of sampled member points
    to that centroid.
    """
    c, acc = _centroid_and_samples(region, seed)
    if sigma is None:
        d = region.space.distances(acc, c)
        sigma = max(float(np.sqrt(np.mean(d * d))), 1e-9)
    return Concept(label, region, Point(tuple(c), region.space), sigma)


def typicality(concept: Concept, p: Point) -> float:
    """Gaussian centrality ``exp(-d(p, prototype)^2 / (2 sigma^2))``."""
    _same_space(concept.space, p)
    d = float(concept.space.distances(p.coords, concept.prototype.coords))
    return math.exp(-(d * d) / (2 * concept.sigma ** 2))


def between(space: ConceptualSpace, a: Point, x: Point, b: Point) -> bool:
    """Metric betweenness ``d(a,x) + d(x,b) <= d(a,b) + 1e-9``.

    Only defined when every domain is intra-Euclidean; city-block
    betweenness admits whole boxes of "between" points and is refused.
    """
    if not space.is_euclidean():
        raise UnsupportedMetricError("betweenness requires Euclidean intra-domain metrics")
    _same_space(space, a, x, b)
    d = space.distances
    return bool(d(a.coords, x.coords) + d(x.coords, b.coords) <= d(a.coords, b.coords) + TOL)


def region_from_exemplars(points) -> Hull:
    points = list(points)
    if not points:
        raise InvalidSpaceError("need at least one exemplar point")
    space = points[0].space
    _same_space(space, *points)
    return Hull(space, np.array([p.coords for p in points]))


@dataclass(frozen=True)
class CriterionPReport:
    violations: int
    pairs: int
    seed: int

    @property
    def convex(self) -> bool:
        return self.violations == 0


def check_criterion_p(region, n_samples: int = 10_000, seed: int = 42) -> CriterionPReport:
    """Sampled convexity check.

    Draws ``n_samples`` pairs of member points and tests membership of
    their midpoint and of one random convex combination; a pair failing
    either test counts as one violation. Any :class:`Region` subclass is
    accepted, including non-convex test fixtures.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    pts = region.sample(2 * n_samples, rng)
    a, b = pts[:n_samples], pts[n_samples:]
    mid = (a + b) / 2
    lam = rng.uniform(0.0, 1.0, size=(n_samples, 1))
    mix = np.clip(a + lam * (b - a), np.minimum(a, b), np.maximum(a, b))
    ok = region.contains_many(mid) & region.contains_many(mix)
    return CriterionPReport(int(np.sum(~ok)), n_samples, seed)


def _intersect_regions(ra: Region, rb: Region) -> Region:
    space = ra.space
    if isinstance(ra, Box) and isinstance(rb, Box):
        lo, hi = np.maximum(ra.lo, rb.lo), np.minimum(ra.hi, rb.hi)
        if np.any(lo > hi):
            raise EmptyConjunctionError("empty conjunction: boxes do not overlap")
        return Box(space, lo, hi)
    ha, hb = ra.halfspaces(), rb.halfspaces()
    if ha is not None and hb is not None:
        A = np.vstack([ha[0], hb[0]])
        b = np.concatenate([ha[1], hb[1]])
        if _feasible_point(space, A, b) is None:
            raise EmptyConjunctionError("empty conjunction: polytopes do not overlap")
        return Halfspaces(space, A, b)
    if isinstance(ra, Ball) and isinstance(rb, Ball):
        gap = float(space.distances(ra.center.coords, rb.center.coords))
        if gap > ra.radius + rb.radius + TOL:
            raise EmptyConjunctionError("empty conjunction: balls do not overlap")
    inter = Intersection(space, (ra, rb))
    if inter.is_trivially_empty():
        raise EmptyConjunctionError("empty conjunction: bounding boxes do not overlap")
    return inter


def combine(a: Concept, b: Concept, seed: int = 42, label: str | None = None) -> Concept:
    """Conjunction of two concepts as the intersection of their regions.

    The new prototype is the centroid of the intersection and ``sigma`` the
    RMS sampled distance to it. Raises :class:`EmptyConjunctionError` when
    the regions share no point.
    """
    if a.space != b.space:
        raise SpaceMismatchError("concepts live in different spaces")
    region = _intersect_regions(a.region, b.region)
    try:
        return concept_from_region(label or f"{a.label}&{b.label}", region, seed=seed)
    except SamplingError as exc:
        if exc.accepted == 0:
            raise EmptyConjunctionError("empty conjunction: no common instance found") from exc
        raise
