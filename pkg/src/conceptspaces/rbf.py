"""RBF networks read as prototype systems.

Each Gaussian unit is a prototype: its center is a point of the conceptual
space and its activation is a similarity to that point. Training is plain
per-class k-means with a nearest-center width rule, so a trained network
can be exported as a Voronoi tessellation plus one ball-shaped concept per
unit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpaceError
from .regions import Ball, Concept
from .space import ConceptualSpace, Point, _same_space
from .tessellation import Tessellation

__all__ = [
    "RBFUnit",
    "RBFNetwork",
    "kmeans",
    "train_rbf",
    "activate",
    "classify",
    "ChimeraReport",
    "detect_chimera",
    "to_conceptual_space",
    "HALF_ACTIVATION",
]

MAX_ITER = 100
WIDTH_FLOOR = 1e-6
HALF_ACTIVATION = math.sqrt(2 * math.log(2))


@dataclass(frozen=True)
class RBFUnit:
    center: Point
    width: float
    class_label: str

    def __post_init__(self):
        if not (self.width > 0 and math.isfinite(self.width)):
            raise InvalidSpaceError("unit width must be positive")


@dataclass(frozen=True, eq=False)
class RBFNetwork:
    space: ConceptualSpace
    units: tuple[RBFUnit, ...]
    k: int | None = None
    seed: int | None = None
    _C: np.ndarray = field(init=False, repr=False)
    _W: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "units", tuple(self.units))
        if not self.units:
            raise InvalidSpaceError("a network needs at least one unit")
        _same_space(self.space, *(u.center for u in self.units))
        object.__setattr__(self, "_C", np.array([u.center.coords for u in self.units]))
        object.__setattr__(self, "_W", np.array([u.width for u in self.units]))

    @property
    def centers(self) -> np.ndarray:
        return self._C.copy()

    @property
    def widths(self) -> np.ndarray:
        return self._W.copy()

    @property
    def classes(self) -> list[str]:
        return [u.class_label for u in self.units]

    @property
    def unit_names(self) -> list[str]:
        """``label#j`` where ``j`` counts units of that class in order."""
        seen: dict[str, int] = {}
        names = []
        for u in self.units:
            j = seen.get(u.class_label, 0)
            seen[u.class_label] = j + 1
            names.append(f"{u.class_label}#{j}")
        return names

    def log_activations(self, xs) -> np.ndarray:
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        d = self.space.distance_matrix(xs, self._C)
        return -(d * d) / (2 * self._W ** 2)


def kmeans(space: ConceptualSpace, X: np.ndarray, k: int, rng: np.random.Generator):
    """Lloyd's algorithm under the space metric, coordinate-mean updates.

    Initial centers are ``k`` distinct rows drawn by ``rng``; an emptied
    cluster is restarted at a random data point. Assignment ties go to the
    lowest center index. Stops at a fixed point or after 100 iterations.
    """
    n = len(X)
    if not 1 <= k <= n:
        raise InvalidSpaceError(f"k={k} must be between 1 and the exemplar count {n}")
    C = X[rng.choice(n, size=k, replace=False)].copy()
    assign = None
    for _ in range(MAX_ITER):
        new = np.argmin(space.distance_matrix(X, C), axis=1)
        for j in range(k):
            if not np.any(new == j):
                C[j] = X[rng.integers(n)]
                new = np.argmin(space.distance_matrix(X, C), axis=1)
        if assign is not None and np.array_equal(new, assign):
            break
        assign = new
        for j in range(k):
            members = X[assign == j]
            if len(members):
                C[j] = members.mean(axis=0)
    return C, assign


def train_rbf(exemplars, k_per_class: int = 1, seed: int = 42, width: float | None = None):
    """Train units from labelled exemplars.

    ``exemplars`` is an iterable of ``(label, Point)`` or
    :class:`~conceptspaces.regions.Exemplar`. Classes are processed in
    sorted label order, each with its own k-means run. Unless ``width`` is
    given, a unit's width is half the distance to the nearest other center
    (floor 1e-6); a lone unit uses the RMS distance of its members.
    """
    pairs = [(e.label, e.point) if hasattr(e, "point") else tuple(e) for e in exemplars]
    if not pairs:
        raise InvalidSpaceError("no exemplars")
    if k_per_class < 1:
        raise InvalidSpaceError("k_per_class must be >= 1")
    space = pairs[0][1].space
    _same_space(space, *(p for _, p in pairs))
    rng = np.random.default_rng(seed)
    classes = sorted({l for l, _ in pairs})
    centers, labels, spreads = [], [], []
    for c in classes:
        X = np.array([p.coords for l, p in pairs if l == c], dtype=float)
        if k_per_class > len(X):
            raise InvalidSpaceError(
                f"class {c!r} has {len(X)} exemplars, fewer than k={k_per_class}"
            )
        C, assign = kmeans(space, X, k_per_class, rng)
        for j in range(k_per_class):
            d = space.distances(X[assign == j], C[j])
            spreads.append(float(np.sqrt(np.mean(d * d))) if len(d) else 0.0)
        C = space.clamp(C)
        centers.extend(C)
        labels.extend([c] * k_per_class)
    C = np.array(centers)
    if width is not None:
        if not width > 0:
            raise InvalidSpaceError("width must be positive")
        widths = np.full(len(C), float(width))
    elif len(C) == 1:
        widths = np.array([max(spreads[0], WIDTH_FLOOR)])
    else:
        D = space.distance_matrix(C, C)
        np.fill_diagonal(D, np.inf)
        widths = np.maximum(0.5 * D.min(axis=1), WIDTH_FLOOR)
    units = tuple(
        RBFUnit(Point(tuple(c), space), float(w), l) for c, w, l in zip(C, widths, labels)
    )
    return RBFNetwork(space, units, k=k_per_class, seed=seed)


def activate(net: RBFNetwork, x: Point) -> np.ndarray:
    """Unit activations ``exp(-d(x, c_i)^2 / (2 w_i^2))``."""
    _same_space(net.space, x)
    return np.exp(net.log_activations(x.coords)[0])


@dataclass(frozen=True)
class Classification:
    label: str
    confidence: float
    unit: int


def classify_many(net: RBFNetwork, xs) -> np.ndarray:
    """Winning unit index per row, computed in the log domain (no underflow)."""
    return np.argmax(net.log_activations(xs), axis=1)


def classify(net: RBFNetwork, x: Point) -> Classification:
    """Label of the most active unit; ties go to the lowest unit index."""
    _same_space(net.space, x)
    la = net.log_activations(x.coords)[0]
    i = int(np.argmax(la))
    return Classification(net.units[i].class_label, float(np.exp(la[i])), i)


@dataclass(frozen=True)
class ChimeraReport:
    ambiguous: bool
    top_labels: tuple[str, ...]
    ratio: float


def detect_chimera(net: RBFNetwork, x: Point, ratio_threshold: float = 0.95) -> ChimeraReport:
    """Flag inputs that excite two differently-labelled units almost equally.

    Ambiguous iff the second-highest activation is at least
    ``ratio_threshold`` times the highest and the two units carry different
    labels. ``top_labels`` is sorted, so the report does not depend on
    unit order.
    """
    if not 0 < ratio_threshold <= 1:
        raise ValueError("ratio_threshold must lie in (0, 1]")
    if len(net.units) < 2:
        raise InvalidSpaceError("chimera detection needs at least two units")
    _same_space(net.space, x)
    la = net.log_activations(x.coords)[0]
    order = np.argsort(-la, kind="stable")
    i, j = int(order[0]), int(order[1])
    ratio = float(np.exp(la[j] - la[i]))
    li, lj = net.units[i].class_label, net.units[j].class_label
    return ChimeraReport(ratio >= ratio_threshold and li != lj, tuple(sorted({li, lj})), ratio)


def to_conceptual_space(net: RBFNetwork):
    """Read the network as a conceptual space.

    Returns ``(tessellation, concepts)``: one prototype per unit (named as
    in :attr:`RBFNetwork.unit_names`) and one concept per unit whose region
    is the half-activation ball of radius ``w * sqrt(2 ln 2)`` and whose
    typicality scale is ``w``, so concept typicality equals unit activation.
    """
    names = net.unit_names
    protos = tuple(u.center for u in net.units)
    tess = Tessellation(net.space, tuple(names), protos)
    concepts = [
        Concept(name, Ball(net.space, u.center, u.width * HALF_ACTIVATION), u.center, u.width)
        for name, u in zip(names, net.units)
    ]
    return tess, concepts
