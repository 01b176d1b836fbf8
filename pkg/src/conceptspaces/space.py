"""Quality dimensions, domains, points and the conceptual-space metric.

A space is a list of domains; each domain groups integral dimensions under a
weighted Minkowski metric, and domain distances are combined by a second
weighted Minkowski rule (city-block by default). Points are immutable and
validated when built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidSpaceError, SpaceMismatchError

__all__ = [
    "Linear",
    "Circular",
    "Dimension",
    "Domain",
    "ConceptualSpace",
    "Point",
    "build_space",
    "euclidean_space",
    "distance",
    "similarity",
]


@dataclass(frozen=True)
class Linear:
    min: float
    max: float


@dataclass(frozen=True)
class Circular:
    period: float
    units: str = "degrees"


Kind = Union[Linear, Circular]


@dataclass(frozen=True)
class Dimension:
    """One quality dimension with its topology and salience weight."""

    name: str
    kind: Kind
    weight: float = 1.0

    def __post_init__(self):
        if not self.name:
            raise InvalidSpaceError("dimension name must be non-empty")
        if isinstance(self.kind, Linear):
            if not (math.isfinite(self.kind.min) and math.isfinite(self.kind.max)):
                raise InvalidSpaceError(f"dimension {self.name!r}: bounds must be finite")
            if not self.kind.min < self.kind.max:
                raise InvalidSpaceError(
                    f"dimension {self.name!r}: min {self.kind.min} must be < max {self.kind.max}"
                )
        elif isinstance(self.kind, Circular):
            if not (self.kind.period > 0 and math.isfinite(self.kind.period)):
                raise InvalidSpaceError(f"dimension {self.name!r}: period must be positive")
        else:
            raise InvalidSpaceError(f"dimension {self.name!r}: unknown kind {self.kind!r}")
        if not (self.weight > 0 and math.isfinite(self.weight)):
            raise InvalidSpaceError(f"dimension {self.name!r}: weight must be positive")

    @property
    def circular(self) -> bool:
        return isinstance(self.kind, Circular)


@dataclass(frozen=True)
class Domain:
    """A set of integral dimensions sharing one Minkowski exponent ``p``."""

    name: str
    dimensions: tuple[Dimension, ...]
    p: float = 2.0
    weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "dimensions", tuple(self.dimensions))
        if not self.name:
            raise InvalidSpaceError("domain name must be non-empty")
        if not self.dimensions:
            raise InvalidSpaceError(f"domain {self.name!r} has no dimensions")
        names = [d.name for d in self.dimensions]
        if len(set(names)) != len(names):
            raise InvalidSpaceError(f"domain {self.name!r}: duplicate dimension names")
        if not (self.p >= 1 and math.isfinite(self.p)):
            raise InvalidSpaceError(f"domain {self.name!r}: metric exponent must be >= 1")
        if not (self.weight > 0 and math.isfinite(self.weight)):
            raise InvalidSpaceError(f"domain {self.name!r}: weight must be positive")


@dataclass(frozen=True)
class ConceptualSpace:
    """An ordered list of domains plus the rule combining domain distances.

    ``inter_p`` is the Minkowski exponent used across domains; the default
    1.0 gives the weighted city-block sum of domain distances.
    """

    domains: tuple[Domain, ...]
    inter_p: float = 1.0
    _dom_of: np.ndarray = field(init=False, repr=False, compare=False, hash=False)
    _w: np.ndarray = field(init=False, repr=False, compare=False, hash=False)
    _period: np.ndarray = field(init=False, repr=False, compare=False, hash=False)
    _lo: np.ndarray = field(init=False, repr=False, compare=False, hash=False)
    _hi: np.ndarray = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "domains", tuple(self.domains))
        if not self.domains:
            raise InvalidSpaceError("a space needs at least one domain")
        names = [d.name for d in self.domains]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise InvalidSpaceError(f"duplicate domain name(s): {', '.join(dup)}")
        if not (self.inter_p >= 1 and math.isfinite(self.inter_p)):
            raise InvalidSpaceError("inter-domain exponent must be >= 1")
        dims = self.dimensions
        nan = float("nan")
        object.__setattr__(
            self, "_dom_of",
            np.array([i for i, d in enumerate(self.domains) for _ in d.dimensions]),
        )
        object.__setattr__(self, "_w", np.array([d.weight for d in dims], dtype=float))
        object.__setattr__(
            self, "_period",
            np.array([d.kind.period if d.circular else nan for d in dims], dtype=float),
        )
        object.__setattr__(
            self, "_lo",
            np.array([0.0 if d.circular else d.kind.min for d in dims], dtype=float),
        )
        object.__setattr__(
            self, "_hi",
            np.array([d.kind.period if d.circular else d.kind.max for d in dims], dtype=float),
        )

    # -- structure -------------------------------------------------------

    @property
    def dimensions(self) -> tuple[Dimension, ...]:
        return tuple(d for dom in self.domains for d in dom.dimensions)

    @property
    def ndim(self) -> int:
        return len(self._w)

    @property
    def dimension_names(self) -> list[str]:
        return [f"{dom.name}.{d.name}" for dom in self.domains for d in dom.dimensions]

    @property
    def circular_mask(self) -> np.ndarray:
        return ~np.isnan(self._period)

    @property
    def lower(self) -> np.ndarray:
        """Per-dimension lower bound (0 for circular dimensions)."""
        return self._lo.copy()

    @property
    def upper(self) -> np.ndarray:
        """Per-dimension upper bound (the period for circular dimensions)."""
        return self._hi.copy()

    @property
    def periods(self) -> np.ndarray:
        return self._period.copy()

    def is_euclidean(self) -> bool:
        """True when every domain uses p = 2 (intra-domain Euclidean)."""
        return all(dom.p == 2 for dom in self.domains)

    def point(self, *coords) -> Point:
        if len(coords) == 1 and not isinstance(coords[0], (int, float, np.number)):
            coords = tuple(coords[0])
        return Point(tuple(float(c) for c in coords), self)

    # -- vectorised geometry --------------------------------------------

    def normalize(self, x) -> np.ndarray:
        """Wrap circular coordinates into ``[0, period)``."""
        x = np.array(x, dtype=float)
        circ = self.circular_mask
        if circ.any():
            per = self._period[circ]
            w = np.mod(x[..., circ], per)
            w = np.where(w >= per, 0.0, w)
            x[..., circ] = w
        return x

    def clamp(self, x) -> np.ndarray:
        """Normalize circular coordinates and clip linear ones to their bounds."""
        x = self.normalize(x)
        lin = ~self.circular_mask
        x[..., lin] = np.clip(x[..., lin], self._lo[lin], self._hi[lin])
        return x

    def delta(self, a, b) -> np.ndarray:
        """Signed coordinate difference ``b - a``; circular deltas take the shorter arc."""
        d = np.asarray(b, dtype=float) - np.asarray(a, dtype=float)
        circ = self.circular_mask
        if circ.any():
            per = self._period[circ]
            raw = d[..., circ]
            # magnitude from |b - a| keeps delta(a, b) == -delta(b, a) exactly
            m = np.mod(np.abs(raw), per)
            near = m <= per / 2
            c = np.where(near, 1.0, -1.0) * np.sign(raw) * np.where(near, m, per - m)
            d = np.array(d, dtype=float, copy=True)
            d[..., circ] = c
        return d

    def norm(self, delta) -> np.ndarray:
        """Metric length of coordinate displacement(s) along the last axis."""
        delta = np.abs(np.asarray(delta, dtype=float))
        total = None
        for i, dom in enumerate(self.domains):
            sl = self._dom_of == i
            w = self._w[sl]
            part = delta[..., sl]
            if dom.p == 2:
                dd = np.sqrt(np.sum(w * part * part, axis=-1))
            elif dom.p == 1:
                dd = np.sum(w * part, axis=-1)
            else:
                dd = np.sum(w * part ** dom.p, axis=-1) ** (1.0 / dom.p)
            if self.inter_p == 1:
                term = dom.weight * dd
            else:
                term = dom.weight * dd ** self.inter_p
            total = term if total is None else total + term
        if self.inter_p != 1:
            total = total ** (1.0 / self.inter_p)
        return total

    def distances(self, a, b) -> np.ndarray:
        """Broadcast distance between coordinate arrays ``a`` and ``b``."""
        return self.norm(self.delta(a, b))

    def distance_matrix(self, xs, ys) -> np.ndarray:
        xs = np.atleast_2d(np.asarray(xs, dtype=float))
        ys = np.atleast_2d(np.asarray(ys, dtype=float))
        return self.distances(xs[:, None, :], ys[None, :, :])

    def axis_scale(self) -> np.ndarray:
        """Metric length of a unit step along each single dimension."""
        return self.norm(np.eye(self.ndim))

    def check_coords(self, coords) -> np.ndarray:
        x = np.asarray(coords, dtype=float)
        if x.shape[-1] != self.ndim:
            raise InvalidSpaceError(f"expected {self.ndim} coordinates, got {x.shape[-1]}")
        if not np.all(np.isfinite(x)):
            raise InvalidSpaceError("coordinates must be finite")
        x = self.normalize(x)
        lin = ~self.circular_mask
        if np.any(x[..., lin] < self._lo[lin]) or np.any(x[..., lin] > self._hi[lin]):
            raise InvalidSpaceError(f"coordinates {np.asarray(coords).tolist()} out of bounds")
        return x


@dataclass(frozen=True)
class Point:
    """An immutable point; circular coordinates are stored normalized."""

    coords: tuple[float, ...]
    space: ConceptualSpace = field(repr=False)

    def __post_init__(self):
        x = self.space.check_coords(self.coords)
        object.__setattr__(self, "coords", tuple(float(v) for v in x))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype or float)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


def _same_space(space: ConceptualSpace, *points: Point) -> None:
    for p in points:
        if p.space is not space and p.space != space:
            raise SpaceMismatchError("point belongs to a different conceptual space")


def distance(space: ConceptualSpace, p: Point, q: Point) -> float:
    """Weighted metric distance between two points of ``space``."""
    _same_space(space, p, q)
    return float(space.distances(p.coords, q.coords))


def similarity(space: ConceptualSpace, p: Point, q: Point, decay: float = 1.0) -> float:
    """Similarity ``exp(-distance / decay)``, in (0, 1] and 1 only for p == q."""
    if not decay > 0:
        raise ValueError("decay must be positive")
    return math.exp(-distance(space, p, q) / decay)


def euclidean_space(
    n_or_names: int | Sequence[str] = 2,
    lo: float = 0.0,
    hi: float = 10.0,
    domain: str = "d",
) -> ConceptualSpace:
    """Single-domain Euclidean space with identical linear dimensions."""
    names = (
        [f"x{i}" for i in range(n_or_names)]
        if isinstance(n_or_names, int)
        else list(n_or_names)
    )
    dims = tuple(Dimension(n, Linear(lo, hi)) for n in names)
    return ConceptualSpace((Domain(domain, dims),))


def build_space(spec) -> ConceptualSpace:
    """Build a validated space from a parsed ``SpaceSpec``.

    Dimensions are grouped by domain in order of first appearance; domain
    options (exponent, weight) and the inter-domain exponent come from the
    spec's ``domain`` and ``space`` lines.
    """
    order: list[str] = []
    dims: dict[str, list[Dimension]] = {}
    for d in spec.dims:
        if d.domain not in dims:
            order.append(d.domain)
            dims[d.domain] = []
        if d.kind == "linear":
            kind: Kind = Linear(d.params[0], d.params[1])
        else:
            kind = Circular(d.params[0])
        dims[d.domain].append(Dimension(d.name, kind, d.weight))
    options = {}
    for o in spec.domains:
        if o.name in options:
            raise InvalidSpaceError(f"duplicate domain name: {o.name}")
        options[o.name] = o
    for name in options:
        if name not in dims:
            raise InvalidSpaceError(f"domain {name!r} declared without dimensions")
    domains = []
    for name in order:
        opt = options.get(name)
        domains.append(
            Domain(name, tuple(dims[name]),
                   p=opt.p if opt else 2.0,
                   weight=opt.weight if opt else 1.0)
        )
    return ConceptualSpace(tuple(domains), inter_p=spec.inter_p)


def as_array(points: Iterable[Point]) -> np.ndarray:
    return np.array([p.coords for p in points], dtype=float)
