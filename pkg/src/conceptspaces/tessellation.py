"""Voronoi tessellations induced by prototypes.

Categorization is nearest-prototype under the space metric in any
dimension; explicit cell polygons are built only for 2-D Euclidean
spaces, by clipping the bounding box with one bisector half-plane per
competing prototype.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpaceError, UnsupportedMetricError
from .space import ConceptualSpace, Point, _same_space

__all__ = ["Tessellation", "Cell2D", "categorize", "categorize_many", "categorize_exemplars",
           "tessellate_2d", "clip_polygon", "polygon_area"]


@dataclass(frozen=True, eq=False)
class Tessellation:
    space: ConceptualSpace
    labels: tuple[str, ...]
    prototypes: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "prototypes", tuple(self.prototypes))
        if not self.labels:
            raise InvalidSpaceError("a tessellation needs at least one prototype")
        if len(self.labels) != len(self.prototypes):
            raise InvalidSpaceError("one label per prototype required")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidSpaceError("tessellation labels must be unique")
        _same_space(self.space, *self.prototypes)
        P = self.array
        d = self.space.distance_matrix(P, P)
        np.fill_diagonal(d, np.inf)
        if np.any(d == 0):
            raise InvalidSpaceError("tessellation prototypes must be pairwise distinct")

    @classmethod
    def from_pairs(cls, space, pairs):
        pairs = list(pairs)
        return cls(space, tuple(l for l, _ in pairs), tuple(p for _, p in pairs))

    @classmethod
    def from_concepts(cls, concepts):
        concepts = list(concepts)
        return cls(concepts[0].space, tuple(c.label for c in concepts),
                   tuple(c.prototype for c in concepts))

    @property
    def array(self) -> np.ndarray:
        return np.array([p.coords for p in self.prototypes], dtype=float)

    def with_prototype(self, label: str, point: Point) -> "Tessellation":
        return Tessellation(self.space, self.labels + (label,), self.prototypes + (point,))


def categorize_many(t: Tessellation, xs) -> np.ndarray:
    """Index of the nearest prototype for each row; ties go to the lowest index."""
    xs = np.atleast_2d(np.asarray(xs, dtype=float))
    d = t.space.distance_matrix(xs, t.array)
    return np.argmin(d, axis=1)


def categorize(t: Tessellation, p: Point) -> str:
    _same_space(t.space, p)
    return t.labels[int(categorize_many(t, p.coords)[0])]


def categorize_exemplars(exemplars, p: Point, k: int = 1) -> str:
    """Majority label of the ``k`` nearest stored exemplars.

    Vote ties go to the tied label whose nearest exemplar is closest, then
    to the earliest exemplar. With ``k=1`` this is the Voronoi tessellation
    generated by the exemplars themselves.
    """
    exemplars = list(exemplars)
    if not exemplars:
        raise InvalidSpaceError("no exemplars to compare against")
    if not 1 <= k <= len(exemplars):
        raise ValueError(f"k must be between 1 and {len(exemplars)}")
    space = exemplars[0].point.space
    _same_space(space, p, *(e.point for e in exemplars))
    X = np.array([e.point.coords for e in exemplars], dtype=float)
    d = space.distances(X, p.coords)
    order = np.argsort(d, kind="stable")[:k]
    votes: dict = {}
    for rank, i in enumerate(order):
        votes.setdefault(exemplars[i].label, [0, rank])[0] += 1
    return min(votes, key=lambda lab: (-votes[lab][0], votes[lab][1]))


@dataclass(frozen=True)
class Cell2D:
    """Convex cell polygon, vertices counterclockwise, clipped to a bbox."""

    label: str
    polygon: tuple[tuple[float, float], ...]
    prototype: tuple[float, float]

    @property
    def area(self) -> float:
        return polygon_area(self.polygon)

    def contains(self, x, tol: float = 1e-9) -> bool:
        v = np.asarray(self.polygon)
        if len(v) < 3:
            return False
        e = np.roll(v, -1, axis=0) - v
        r = np.asarray(x, dtype=float) - v
        cross = e[:, 0] * r[:, 1] - e[:, 1] * r[:, 0]
        return bool(np.all(cross >= -tol))


def polygon_area(poly) -> float:
    """Signed shoelace area (positive for counterclockwise)."""
    v = np.asarray(poly, dtype=float)
    if len(v) < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    return float(0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))))


def clip_polygon(poly, normal, offset):
    """Sutherland-Hodgman clip of ``poly`` to the half-plane ``normal . x <= offset``."""
    out = []
    n = len(poly)
    if n == 0:
        return out
    a = np.asarray(normal, dtype=float)
    for i in range(n):
        cur, nxt = poly[i], poly[(i + 1) % n]
        fc = a[0] * cur[0] + a[1] * cur[1] - offset
        fn = a[0] * nxt[0] + a[1] * nxt[1] - offset
        if fc <= 0:
            out.append(cur)
        if (fc < 0 < fn) or (fn < 0 < fc):
            s = fc / (fc - fn)
            out.append((cur[0] + s * (nxt[0] - cur[0]), cur[1] + s * (nxt[1] - cur[1])))
    return out


def _metric_matrix(space: ConceptualSpace) -> np.ndarray:
    if space.ndim != 2 or len(space.domains) != 1:
        raise UnsupportedMetricError("explicit cells need a 2-D single-domain space")
    dom = space.domains[0]
    if dom.p != 2 or np.any(space.circular_mask):
        raise UnsupportedMetricError("explicit cells need a Euclidean space of linear dimensions")
    # domain weight only rescales distances uniformly; bisectors ignore it
    return np.diag([d.weight for d in dom.dimensions])


def tessellate_2d(t: Tessellation, bbox=None) -> list[Cell2D]:
    """Voronoi cells clipped to ``bbox = (xmin, ymin, xmax, ymax)``.

    The space must be 2-D (weighted) Euclidean. Each cell is the bbox cut
    by the bisector half-planes ``|x - p_i|_M <= |x - p_j|_M``; the cells
    tile the bbox. Defaults to the space bounds.
    """
    M = _metric_matrix(t.space)
    if bbox is None:
        lo, hi = t.space.lower, t.space.upper
        bbox = (lo[0], lo[1], hi[0], hi[1])
    x0, y0, x1, y1 = map(float, bbox)
    if not (x0 < x1 and y0 < y1):
        raise InvalidSpaceError("bbox must have positive extent")
    P = t.array
    square = [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]
    cells = []
    for i, (label, p) in enumerate(zip(t.labels, P)):
        poly = square
        for j, q in enumerate(P):
            if j == i:
                continue
            # |x-p|^2_M <= |x-q|^2_M  <=>  2 (q-p)^T M x <= q^T M q - p^T M p
            normal = 2 * M @ (q - p)
            offset = q @ M @ q - p @ M @ p
            poly = clip_polygon(poly, normal, offset)
            if not poly:
                break
        cells.append(Cell2D(label, tuple((float(a), float(b)) for a, b in poly),
                            (float(p[0]), float(p[1]))))
    return cells
