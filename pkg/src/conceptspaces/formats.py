"""The CSPACE text format and CSV ingestion.

CSPACE is line oriented; ``#`` starts a comment and blank lines are
ignored. Coordinates are comma-separated with no spaces, in dimension order
(domains in order of first appearance, dimensions in declaration order)::

    space inter <q>
    domain <name> [p <exp>] [weight <w>]
    dim <domain>.<name> linear <min> <max> [weight <w>]
    dim <domain>.<name> circular <period> [weight <w>]
    point <name> <coords>
    concept <label> box <lo..hi> <lo..hi> ... [sigma <s>]
    concept <label> hull <coords> <coords> ... [sigma <s>]
    concept <label> ball <coords> <radius> [sigma <s>]
    concept <label> halfspaces <n1,n2,...<=b> ... [sigma <s>]
    exemplar <label> <coords>
    rbf <label> <coords> <width>
    isa <child> <parent>
    track pre|post <object_id> <t> <coords>
    seat circular|linear <id> <angle-or-coordinate>
    fuzzy <predicate> <individual> <value>
    conj <predicate> <conjunct> <conjunct> ...

Every parsed element keeps its line and column; equality of specs ignores
them, so ``parse(serialize(spec)) == spec``.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import ConceptSpaceError, CspaceParseError
from .fuzzy import FuzzyAssertion
from .regions import Ball, Box, Concept, Exemplar, Halfspaces, Hull, concept_from_region
from .rbf import RBFNetwork, RBFUnit
from .space import ConceptualSpace, Point, build_space
from .taxonomy import Taxonomy
from .dynamics import SeatingFrame, Trajectory

__all__ = [
    "SpaceSpec",
    "parse_cspace",
    "load_cspace",
    "serialize_cspace",
    "Model",
    "build_model",
    "network_to_cspace",
    "read_exemplars_csv",
    "read_trajectories_csv",
    "trajectories_to_cspace",
]

Coords = tuple[float, ...]


def _loc():
    return field(default=0, compare=False, repr=False)


@dataclass(frozen=True)
class DomainSpec:
    name: str
    p: float = 2.0
    weight: float = 1.0
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class DimSpec:
    domain: str
    name: str
    kind: str
    params: tuple[float, ...]
    weight: float = 1.0
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class PointSpec:
    name: str
    coords: Coords
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class ConceptSpec:
    label: str
    kind: str
    data: tuple
    sigma: Optional[float] = None
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class ExemplarSpec:
    label: str
    coords: Coords
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class RBFSpec:
    label: str
    coords: Coords
    width: float
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class IsaSpec:
    child: str
    parent: str
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class TrackSpec:
    phase: str
    object_id: str
    t: float
    coords: Coords
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class SeatSpec:
    kind: str
    ident: str
    value: float
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class FuzzySpec:
    predicate: str
    individual: str
    value: float
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class ConjSpec:
    predicate: str
    conjuncts: tuple[str, ...]
    line: int = _loc()
    col: int = _loc()


@dataclass(frozen=True)
class SpaceSpec:
    inter_p: float = 1.0
    domains: tuple[DomainSpec, ...] = ()
    dims: tuple[DimSpec, ...] = ()
    points: tuple[PointSpec, ...] = ()
    concepts: tuple[ConceptSpec, ...] = ()
    exemplars: tuple[ExemplarSpec, ...] = ()
    rbf: tuple[RBFSpec, ...] = ()
    isa: tuple[IsaSpec, ...] = ()
    tracks: tuple[TrackSpec, ...] = ()
    seats: tuple[SeatSpec, ...] = ()
    fuzzy: tuple[FuzzySpec, ...] = ()
    conj: tuple[ConjSpec, ...] = ()
    source: str = field(default="<text>", compare=False, repr=False)

    @property
    def ndim(self) -> int:
        return len(self.dims)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_\-]*\Z")
_TOKEN = re.compile(r"\S+")


class _Line:
    def __init__(self, lineno, tokens, source):
        self.lineno = lineno
        self.toks = tokens  # list of (col, text)
        self.source = source

    def err(self, msg, i=None):
        col = self.toks[i][0] if i is not None and i < len(self.toks) else (
            self.toks[-1][0] if self.toks else 1)
        return CspaceParseError(msg, self.lineno, col, self.source)

    def __len__(self):
        return len(self.toks)

    def tok(self, i, what):
        if i >= len(self.toks):
            raise self.err(f"missing {what}")
        return self.toks[i][1]

    def ident(self, i, what="identifier"):
        t = self.tok(i, what)
        if not _IDENT.match(t):
            raise self.err(f"invalid {what} {t!r}", i)
        return t

    def num(self, i, what="number", text=None):
        t = self.tok(i, what) if text is None else text
        try:
            v = float(t)
        except ValueError:
            raise self.err(f"expected {what}, got {t!r}", i) from None
        if not math.isfinite(v):
            raise self.err(f"{what} must be finite", i)
        return v

    def coords(self, i, what="coordinates"):
        t = self.tok(i, what)
        return tuple(self.num(i, what, text=part) for part in t.split(","))

    def options(self, start, allowed):
        out = {}
        i = start
        while i < len(self.toks):
            key = self.tok(i, "option")
            if key not in allowed:
                raise self.err(f"unexpected token {key!r}", i)
            if key in out:
                raise self.err(f"duplicate option {key!r}", i)
            out[key] = self.num(i + 1, f"{key} value")
            i += 2
        return out


def _tokenize(text: str, source: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in _TOKEN.finditer(body)]
        if toks:
            yield _Line(lineno, toks, source)


def _positive(ln, v, i, what):
    if not v > 0:
        raise ln.err(f"{what} must be positive", i)
    return v


def _parse_concept(ln: _Line) -> ConceptSpec:
    label = ln.ident(1, "concept label")
    kind = ln.tok(2, "region kind")
    toks = [t for _, t in ln.toks]
    # trailing "sigma <s>"
    end = len(toks)
    sigma = None
    if end >= 2 and toks[end - 2] == "sigma":
        sigma = _positive(ln, ln.num(end - 1, "sigma"), end - 1, "sigma")
        end -= 2
    args = range(3, end)
    if kind == "box":
        data = []
        for i in args:
            parts = toks[i].split("..")
            if len(parts) != 2:
                raise ln.err(f"expected interval lo..hi, got {toks[i]!r}", i)
            lo, hi = (ln.num(i, "interval bound", text=p) for p in parts)
            if lo > hi:
                raise ln.err("interval with lo > hi", i)
            data.append((lo, hi))
        if not data:
            raise ln.err("box needs one interval per dimension")
    elif kind == "hull":
        data = [ln.coords(i) for i in args]
        if not data:
            raise ln.err("hull needs at least one point")
    elif kind == "ball":
        if len(args) != 2:
            raise ln.err("ball takes a center and a radius")
        center = ln.coords(3)
        r = ln.num(4, "radius")
        if r < 0:
            raise ln.err("radius must be nonnegative", 4)
        data = [center, r]
    elif kind == "halfspaces":
        data = []
        for i in args:
            parts = toks[i].split("<=")
            if len(parts) != 2:
                raise ln.err(f"expected n1,n2,...<=b, got {toks[i]!r}", i)
            normal = tuple(ln.num(i, "normal", text=p) for p in parts[0].split(","))
            data.append((normal, ln.num(i, "offset", text=parts[1])))
        if not data:
            raise ln.err("halfspaces needs at least one inequality")
    else:
        raise ln.err(f"unknown region kind {kind!r}", 2)
    return ConceptSpec(label, kind, tuple(data), sigma, ln.lineno, ln.toks[0][0])


def parse_cspace(text: str, source: str = "<text>") -> SpaceSpec:
    """Parse CSPACE text; every failure is a :class:`CspaceParseError`."""
    try:
        return _parse(text, source)
    except CspaceParseError:
        raise
    except Exception as exc:  # parser must be total
        raise CspaceParseError(f"internal parse failure: {exc}", 0, 0, source) from exc


def _parse(text: str, source: str) -> SpaceSpec:
    if not isinstance(text, str):
        raise CspaceParseError("input must be text", 0, 0, source)
    acc = {k: [] for k in ("domains", "dims", "points", "concepts", "exemplars", "rbf",
                           "isa", "tracks", "seats", "fuzzy", "conj")}
    inter_p = None
    seen: dict[tuple[str, str], int] = {}

    def once(ln, kind, name, i):
        key = (kind, name)
        if key in seen:
            raise ln.err(f"duplicate {kind} {name!r} (first defined on line {seen[key]})", i)
        seen[key] = ln.lineno

    for ln in _tokenize(text, source):
        kw = ln.tok(0, "keyword")
        loc = (ln.lineno, ln.toks[0][0])
        if kw == "space":
            if ln.tok(1, "'inter'") != "inter" or len(ln) != 3:
                raise ln.err("expected: space inter <q>", 1)
            if inter_p is not None:
                raise ln.err("duplicate space line")
            inter_p = ln.num(2, "inter-domain exponent")
            if inter_p < 1:
                raise ln.err("inter-domain exponent must be >= 1", 2)
        elif kw == "domain":
            name = ln.ident(1, "domain name")
            once(ln, "domain", name, 1)
            opts = ln.options(2, ("p", "weight"))
            p = opts.get("p", 2.0)
            if p < 1:
                raise ln.err("metric exponent must be >= 1")
            w = _positive(ln, opts.get("weight", 1.0), None, "weight")
            acc["domains"].append(DomainSpec(name, p, w, *loc))
        elif kw == "dim":
            full = ln.tok(1, "dimension name")
            parts = full.split(".")
            if len(parts) != 2 or not all(_IDENT.match(p) for p in parts):
                raise ln.err(f"dimension must be written <domain>.<name>, got {full!r}", 1)
            once(ln, "dimension", full, 1)
            kind = ln.tok(2, "dimension kind")
            if kind == "linear":
                lo, hi = ln.num(3, "min"), ln.num(4, "max")
                if not lo < hi:
                    raise ln.err("min must be < max", 3)
                params, rest = (lo, hi), 5
            elif kind == "circular":
                params, rest = (_positive(ln, ln.num(3, "period"), 3, "period"),), 4
            else:
                raise ln.err(f"unknown dimension kind {kind!r}", 2)
            opts = ln.options(rest, ("weight",))
            w = _positive(ln, opts.get("weight", 1.0), None, "weight")
            acc["dims"].append(DimSpec(parts[0], parts[1], kind, params, w, *loc))
        elif kw == "point":
            name = ln.ident(1, "point name")
            once(ln, "point", name, 1)
            if len(ln) != 3:
                raise ln.err("expected: point <name> <coords>")
            acc["points"].append(PointSpec(name, ln.coords(2), *loc))
        elif kw == "concept":
            c = _parse_concept(ln)
            once(ln, "concept", c.label, 1)
            acc["concepts"].append(c)
        elif kw == "exemplar":
            if len(ln) != 3:
                raise ln.err("expected: exemplar <label> <coords>")
            acc["exemplars"].append(ExemplarSpec(ln.ident(1, "label"), ln.coords(2), *loc))
        elif kw == "rbf":
            if len(ln) != 4:
                raise ln.err("expected: rbf <label> <coords> <width>")
            w = _positive(ln, ln.num(3, "width"), 3, "width")
            acc["rbf"].append(RBFSpec(ln.ident(1, "label"), ln.coords(2), w, *loc))
        elif kw == "isa":
            if len(ln) != 3:
                raise ln.err("expected: isa <child> <parent>")
            acc["isa"].append(IsaSpec(ln.ident(1, "child"), ln.ident(2, "parent"), *loc))
        elif kw == "track":
            phase = ln.tok(1, "phase")
            if phase not in ("pre", "post"):
                raise ln.err(f"phase must be pre or post, got {phase!r}", 1)
            if len(ln) != 5:
                raise ln.err("expected: track pre|post <object_id> <t> <coords>")
            acc["tracks"].append(
                TrackSpec(phase, ln.ident(2, "object id"), ln.num(3, "time"), ln.coords(4), *loc)
            )
        elif kw == "seat":
            kind = ln.tok(1, "frame kind")
            if kind not in ("circular", "linear"):
                raise ln.err(f"frame kind must be circular or linear, got {kind!r}", 1)
            if len(ln) != 4:
                raise ln.err("expected: seat circular|linear <id> <value>")
            ident = ln.ident(2, "occupant id")
            once(ln, "occupant", ident, 2)
            acc["seats"].append(SeatSpec(kind, ident, ln.num(3, "position"), *loc))
        elif kw == "fuzzy":
            if len(ln) != 4:
                raise ln.err("expected: fuzzy <predicate> <individual> <value>")
            pred, ind = ln.ident(1, "predicate"), ln.ident(2, "individual")
            once(ln, "fuzzy assertion", f"{pred}({ind})", 1)
            v = ln.num(3, "truth value")
            if not 0 <= v <= 1:
                raise ln.err("truth value must lie in [0, 1]", 3)
            acc["fuzzy"].append(FuzzySpec(pred, ind, v, *loc))
        elif kw == "conj":
            if len(ln) < 4:
                raise ln.err("expected: conj <predicate> <conjunct> <conjunct> ...")
            pred = ln.ident(1, "predicate")
            once(ln, "conjunction", pred, 1)
            parts = tuple(ln.ident(i, "conjunct") for i in range(2, len(ln)))
            acc["conj"].append(ConjSpec(pred, parts, *loc))
        else:
            raise ln.err(f"unknown keyword {kw!r}", 0)

    spec = SpaceSpec(
        inter_p=1.0 if inter_p is None else inter_p,
        source=source,
        **{k: tuple(v) for k, v in acc.items()},
    )
    _check_references(spec)
    return spec


def _err(el, msg, source):
    return CspaceParseError(msg, el.line, el.col, source)


def _check_references(spec: SpaceSpec) -> None:
    src = spec.source
    dim_domains = {d.domain for d in spec.dims}
    for d in spec.domains:
        if d.name not in dim_domains:
            raise _err(d, f"domain {d.name!r} has no dimensions", src)
    n = spec.ndim

    def arity(el, coords, what="coordinates"):
        if n == 0:
            raise _err(el, "coordinates given before any dimension is defined", src)
        if len(coords) != n:
            raise _err(el, f"{what}: expected {n} values, got {len(coords)}", src)

    for p in spec.points:
        arity(p, p.coords)
    for c in spec.concepts:
        if c.kind == "box":
            arity(c, c.data, "box intervals")
        elif c.kind == "hull":
            for g in c.data:
                arity(c, g)
        elif c.kind == "ball":
            arity(c, c.data[0])
        else:
            for normal, _ in c.data:
                arity(c, normal, "halfspace normal")
    for e in spec.exemplars:
        arity(e, e.coords)
    for r in spec.rbf:
        arity(r, r.coords)
    labels = {c.label for c in spec.concepts}
    for e in spec.isa:
        for lab in (e.child, e.parent):
            if lab not in labels:
                raise _err(e, f"isa refers to undefined concept {lab!r}", src)
        if e.child == e.parent:
            raise _err(e, "isa edge from a concept to itself", src)
    last: dict = {}
    for t in spec.tracks:
        arity(t, t.coords)
        key = (t.phase, t.object_id)
        if key in last and not t.t > last[key]:
            raise _err(t, f"track {t.object_id!r}: timestamps must increase", src)
        last[key] = t.t
    kinds = {s.kind for s in spec.seats}
    if len(kinds) > 1:
        raise _err(spec.seats[-1], "seats mix circular and linear frames", src)
    preds = {f.predicate for f in spec.fuzzy}
    for c in spec.conj:
        for p in c.conjuncts:
            if p not in preds:
                raise _err(c, f"conjunct {p!r} has no fuzzy assertions", src)


def load_cspace(path) -> SpaceSpec:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise CspaceParseError(f"cannot read file: {exc}", 0, 0, str(path)) from exc
    return parse_cspace(text, str(path))


def _f(v: float) -> str:
    return repr(float(v))


def _c(coords) -> str:
    return ",".join(_f(v) for v in coords)


def serialize_cspace(spec: SpaceSpec) -> str:
    """Canonical CSPACE text for a spec (sections in a fixed order)."""
    out = []
    if spec.inter_p != 1.0:
        out.append(f"space inter {_f(spec.inter_p)}")
    for d in spec.domains:
        opts = ""
        if d.p != 2.0:
            opts += f" p {_f(d.p)}"
        if d.weight != 1.0:
            opts += f" weight {_f(d.weight)}"
        out.append(f"domain {d.name}{opts}")
    for d in spec.dims:
        params = " ".join(_f(v) for v in d.params)
        w = f" weight {_f(d.weight)}" if d.weight != 1.0 else ""
        out.append(f"dim {d.domain}.{d.name} {d.kind} {params}{w}")
    for p in spec.points:
        out.append(f"point {p.name} {_c(p.coords)}")
    for c in spec.concepts:
        if c.kind == "box":
            body = " ".join(f"{_f(lo)}..{_f(hi)}" for lo, hi in c.data)
        elif c.kind == "hull":
            body = " ".join(_c(g) for g in c.data)
        elif c.kind == "ball":
            body = f"{_c(c.data[0])} {_f(c.data[1])}"
        else:
            body = " ".join(f"{_c(n)}<={_f(b)}" for n, b in c.data)
        sig = f" sigma {_f(c.sigma)}" if c.sigma is not None else ""
        out.append(f"concept {c.label} {c.kind} {body}{sig}")
    for e in spec.exemplars:
        out.append(f"exemplar {e.label} {_c(e.coords)}")
    for r in spec.rbf:
        out.append(f"rbf {r.label} {_c(r.coords)} {_f(r.width)}")
    for e in spec.isa:
        out.append(f"isa {e.child} {e.parent}")
    for t in spec.tracks:
        out.append(f"track {t.phase} {t.object_id} {_f(t.t)} {_c(t.coords)}")
    for s in spec.seats:
        out.append(f"seat {s.kind} {s.ident} {_f(s.value)}")
    for f in spec.fuzzy:
        out.append(f"fuzzy {f.predicate} {f.individual} {_f(f.value)}")
    for c in spec.conj:
        out.append(f"conj {c.predicate} {' '.join(c.conjuncts)}")
    return "\n".join(out) + "\n"


@dataclass(eq=False)
class Model:
    """Everything a CSPACE file defines, built into live objects."""

    spec: SpaceSpec
    space: Optional[ConceptualSpace]
    points: dict
    concepts: dict
    exemplars: list
    network: Optional[RBFNetwork]
    taxonomy: Taxonomy
    pre: list
    post: list
    frame: Optional[SeatingFrame]
    fuzzy: list
    conjunctions: dict
    seed: int

    def point(self, name_or_coords) -> Point:
        if isinstance(name_or_coords, str) and name_or_coords in self.points:
            return self.points[name_or_coords]
        if self.space is None:
            raise ConceptSpaceError("the file defines no dimensions")
        return parse_point(self.space, name_or_coords)

    def concept(self, label: str) -> Concept:
        if label not in self.concepts:
            raise ConceptSpaceError(f"unknown concept {label!r}")
        return self.concepts[label]


def parse_point(space: ConceptualSpace, text) -> Point:
    if isinstance(text, str):
        try:
            coords = tuple(float(v) for v in text.split(","))
        except ValueError:
            raise ConceptSpaceError(f"not a point: {text!r}") from None
    else:
        coords = tuple(text)
    return Point(coords, space)


def _region(space, c: ConceptSpec):
    if c.kind == "box":
        lo, hi = zip(*c.data)
        return Box(space, lo, hi)
    if c.kind == "hull":
        return Hull(space, np.array(c.data))
    if c.kind == "ball":
        return Ball(space, Point(c.data[0], space), c.data[1])
    A = np.array([n for n, _ in c.data])
    b = np.array([v for _, v in c.data])
    return Halfspaces(space, A, b)


def _trajectories(space, tracks, phase):
    by_id: dict = {}
    for t in tracks:
        if t.phase == phase:
            by_id.setdefault(t.object_id, []).append((t.t, Point(t.coords, space)))
    return [Trajectory(k, tuple(v)) for k, v in by_id.items()]


def build_model(spec: SpaceSpec, seed: int = 42) -> Model:
    """Instantiate a parsed spec. Semantic failures (e.g. a box outside the
    space bounds) become :class:`CspaceParseError` at the offending line."""
    src = spec.source

    def guarded(el, fn):
        try:
            return fn()
        except CspaceParseError:
            raise
        except (ConceptSpaceError, ValueError) as exc:
            raise _err(el, str(exc), src) from exc

    # fuzzy and seating documents need no dimensions
    space = guarded(spec.dims[0], lambda: build_space(spec)) if spec.dims else None
    points = {p.name: guarded(p, lambda p=p: Point(p.coords, space)) for p in spec.points}
    concepts = {}
    for c in spec.concepts:
        region = guarded(c, lambda c=c: _region(space, c))
        concepts[c.label] = guarded(
            c, lambda c=c, r=region: concept_from_region(c.label, r, seed=seed, sigma=c.sigma)
        )
    exemplars = [guarded(e, lambda e=e: Exemplar(e.label, Point(e.coords, space)))
                 for e in spec.exemplars]
    network = None
    if spec.rbf:
        units = [guarded(r, lambda r=r: RBFUnit(Point(r.coords, space), r.width, r.label))
                 for r in spec.rbf]
        network = RBFNetwork(space, tuple(units))
    taxonomy = Taxonomy(concepts, tuple((e.child, e.parent) for e in spec.isa)) if concepts \
        else Taxonomy({}, ())
    pre = guarded(spec.tracks[0], lambda: _trajectories(space, spec.tracks, "pre")) \
        if spec.tracks else []
    post = guarded(spec.tracks[0], lambda: _trajectories(space, spec.tracks, "post")) \
        if spec.tracks else []
    frame = None
    if spec.seats:
        frame = guarded(spec.seats[0], lambda: SeatingFrame(
            spec.seats[0].kind, tuple((s.ident, s.value) for s in spec.seats)))
    fuzzy = [FuzzyAssertion(f.predicate, f.individual, f.value) for f in spec.fuzzy]
    conj = {c.predicate: c.conjuncts for c in spec.conj}
    return Model(spec, space, points, concepts, exemplars, network, taxonomy,
                 pre, post, frame, fuzzy, conj, seed)


def _space_lines(space: ConceptualSpace) -> list[str]:
    out = []
    if space.inter_p != 1.0:
        out.append(f"space inter {_f(space.inter_p)}")
    for dom in space.domains:
        opts = ""
        if dom.p != 2.0:
            opts += f" p {_f(dom.p)}"
        if dom.weight != 1.0:
            opts += f" weight {_f(dom.weight)}"
        if opts:
            out.append(f"domain {dom.name}{opts}")
    for dom in space.domains:
        for d in dom.dimensions:
            if d.circular:
                params = f"circular {_f(d.kind.period)}"
            else:
                params = f"linear {_f(d.kind.min)} {_f(d.kind.max)}"
            w = f" weight {_f(d.weight)}" if d.weight != 1.0 else ""
            out.append(f"dim {dom.name}.{d.name} {params}{w}")
    return out


def network_to_cspace(net: RBFNetwork, header: str = "") -> str:
    """A self-contained CSPACE document: the space plus one ``rbf`` line per unit."""
    out = [f"# {line}" for line in header.splitlines()] if header else []
    out += _space_lines(net.space)
    out += [f"rbf {u.class_label} {_c(u.center.coords)} {_f(u.width)}" for u in net.units]
    return "\n".join(out) + "\n"


def _read_csv(path, space: ConceptualSpace, n_keys: int, what: str):
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise CspaceParseError(f"{what} CSV is empty (header row required)", 1, 1, str(path))
    header = [h.strip() for h in rows[0]]
    try:
        float(header[-1])
        raise CspaceParseError(f"{what} CSV needs a header row", 1, 1, str(path))
    except ValueError:
        pass
    width = n_keys + space.ndim
    if len(header) != width:
        raise CspaceParseError(
            f"header has {len(header)} columns, expected {width}", 1, 1, str(path))
    out = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != width:
            raise CspaceParseError(f"expected {width} fields, got {len(row)}", lineno, 1,
                                   str(path))
        try:
            nums = [float(v) for v in row[1:]]
        except ValueError as exc:
            raise CspaceParseError(f"bad number: {exc}", lineno, 1, str(path)) from None
        out.append((lineno, row[0].strip(), nums))
    return out


def read_exemplars_csv(path, space: ConceptualSpace) -> list[Exemplar]:
    """Rows ``label, coord...`` after a header row."""
    out = []
    for lineno, label, nums in _read_csv(path, space, 1, "exemplar"):
        try:
            out.append(Exemplar(label, Point(tuple(nums), space)))
        except ConceptSpaceError as exc:
            raise CspaceParseError(str(exc), lineno, 1, str(path)) from exc
    return out


def read_trajectories_csv(path, space: ConceptualSpace) -> list[Trajectory]:
    """Rows ``object_id, t, coord...`` after a header row, grouped by id in
    order of first appearance."""
    by_id: dict = {}
    for lineno, oid, nums in _read_csv(path, space, 2, "trajectory"):
        try:
            by_id.setdefault(oid, []).append((nums[0], Point(tuple(nums[1:]), space)))
        except ConceptSpaceError as exc:
            raise CspaceParseError(str(exc), lineno, 1, str(path)) from exc
    try:
        return [Trajectory(k, tuple(v)) for k, v in by_id.items()]
    except ConceptSpaceError as exc:
        raise CspaceParseError(str(exc), 0, 0, str(path)) from exc


def trajectories_to_cspace(space: ConceptualSpace, pre, post, header: str = "") -> str:
    """CSPACE scenario document with ``track pre``/``track post`` lines."""
    out = [f"# {line}" for line in header.splitlines()] if header else []
    out += _space_lines(space)
    for phase, group in (("pre", pre), ("post", post)):
        for tr in group:
            for t, p in tr.samples:
                out.append(f"track {phase} {tr.object_id} {_f(t)} {_c(p.coords)}")
    return "\n".join(out) + "\n"
