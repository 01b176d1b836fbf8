"""Symbolic taxonomies grounded in region containment.

A concept subsumes another when its region contains the other's region.
Containment is decided exactly for polytopes (Box, Halfspaces, Hull) and
by seeded sampling otherwise; :func:`subsumption` reports which path was
used. :func:`dual_categorize` chains a fast geometric step (nearest
prototype) with a slower symbolic one (ancestor lookup).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .errors import ConceptSpaceError, InvalidSpaceError, SpaceMismatchError
from .regions import TOL, Box, Concept, Hull, _lp, typicality
from .space import Point
from .tessellation import Tessellation, categorize

__all__ = [
    "Taxonomy",
    "Subsumption",
    "subsumption",
    "subsumes",
    "TaxonomyPosition",
    "classify_taxonomy",
    "DualResult",
    "dual_categorize",
    "tessellation_of",
]


@dataclass(frozen=True)
class Subsumption:
    holds: bool
    exact: bool

    def __bool__(self):
        return self.holds


def _max_over(child, a: np.ndarray) -> float:
    """max of ``a . x`` over the child polytope."""
    if isinstance(child, Box):
        return float(np.sum(np.where(a > 0, a * child.hi, a * child.lo)))
    if isinstance(child, Hull):
        return float(np.max(child.generators @ a))
    A, b = child.halfspaces()
    res = _lp(child.space, A, b, -a)
    return float(-res.fun)


def subsumption(parent: Concept, child: Concept, n_samples: int = 10_000,
                seed: int = 42) -> Subsumption:
    """Whether ``parent``'s region contains ``child``'s, and how it was decided."""
    if parent.space != child.space:
        raise SpaceMismatchError("concepts live in different spaces")
    pr, cr = parent.region, child.region
    if isinstance(pr, Box) and isinstance(cr, Box):
        return Subsumption(bool(np.all(pr.lo <= cr.lo) and np.all(cr.hi <= pr.hi)), True)
    hp, hc = pr.halfspaces(), cr.halfspaces()
    if hp is not None and hc is not None:
        A, b = hp
        ok = all(_max_over(cr, a) <= bi + 10 * TOL for a, bi in zip(A, b))
        return Subsumption(ok, True)
    xs = cr.sample(n_samples, np.random.default_rng(seed))
    return Subsumption(bool(np.all(pr.contains_many(xs))), False)


def subsumes(parent: Concept, child: Concept, n_samples: int = 10_000, seed: int = 42) -> bool:
    """Region containment; exact for polytopes, sampled (sound only on the
    sampled points) for balls and mixed kinds."""
    return subsumption(parent, child, n_samples, seed).holds


@dataclass(frozen=True, eq=False)
class Taxonomy:
    """Concepts keyed by label (a dict or a list of concepts) plus asserted
    ``(child, parent)`` edges, which must be acyclic."""

    concepts: dict
    asserted_isa: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if isinstance(self.concepts, dict):
            concepts = dict(self.concepts)
        else:
            concepts = {c.label: c for c in self.concepts}
        object.__setattr__(self, "concepts", concepts)
        object.__setattr__(self, "asserted_isa", tuple(tuple(e) for e in self.asserted_isa))
        for child, parent in self.asserted_isa:
            for lab in (child, parent):
                if lab not in concepts:
                    raise InvalidSpaceError(f"isa refers to unknown concept {lab!r}")
        if _has_cycle(set(concepts), set(self.asserted_isa)):
            raise InvalidSpaceError("asserted isa graph has a cycle")

    @property
    def labels(self) -> list[str]:
        return sorted(self.concepts)


def _reach(edges, start) -> set:
    adj: dict = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
    seen, stack = set(), [start]
    while stack:
        for nxt in adj.get(stack.pop(), ()):
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def _has_cycle(nodes, edges) -> bool:
    return any(n in _reach(edges, n) for n in nodes)


def _topo(nodes, edges) -> list:
    """Kahn's algorithm with lexical tie-break."""
    nodes = set(nodes)
    indeg = {n: 0 for n in nodes}
    adj: dict = {n: [] for n in nodes}
    for a, b in edges:
        if a in nodes and b in nodes:
            adj[a].append(b)
            indeg[b] += 1
    heap = [n for n in nodes if indeg[n] == 0]
    heapq.heapify(heap)
    out = []
    while heap:
        n = heapq.heappop(heap)
        out.append(n)
        for m in adj[n]:
            indeg[m] -= 1
            if indeg[m] == 0:
                heapq.heappush(heap, m)
    return out


def taxonomy_edges(tax: Taxonomy, n_samples: int = 10_000, seed: int = 42):
    """Asserted edges plus acyclic geometric discoveries, as (child, parent).

    Geometric edges are added in lexical order and skipped whenever they
    would close a cycle, so mutually-containing (equal) regions and edges
    contradicting assertions never appear. Discovered edges already implied
    by the others are dropped at the end.
    """
    edges = set(tax.asserted_isa)
    exactness = {}
    labels = tax.labels
    for child in labels:
        for parent in labels:
            if child == parent or parent in _reach(edges, child):
                continue
            s = subsumption(tax.concepts[parent], tax.concepts[child], n_samples, seed)
            if not s.holds or child in _reach(edges, parent):
                continue
            edges.add((child, parent))
            exactness[(child, parent)] = s.exact
    for e in sorted(exactness):
        rest = edges - {e}
        if e[1] in _reach(rest, e[0]):
            edges = rest
            del exactness[e]
    return edges, exactness


@dataclass(frozen=True)
class TaxonomyPosition:
    label: str
    superconcepts: tuple[str, ...]
    subconcepts: tuple[str, ...]
    exact: bool


def classify_taxonomy(tax: Taxonomy, label: str, n_samples: int = 10_000,
                      seed: int = 42) -> TaxonomyPosition:
    """Superconcepts and subconcepts of ``label``.

    Combines the transitive closure of asserted ``isa`` edges with
    geometric subsumption. Superconcepts are listed nearest first
    (topological order, lexical tie-break); subconcepts likewise from the
    other direction. ``exact`` is false if any sampled containment was used.
    """
    if label not in tax.concepts:
        raise ConceptSpaceError(f"unknown concept {label!r}")
    edges, exactness = taxonomy_edges(tax, n_samples, seed)
    ups = _reach(edges, label)
    downs = _reach({(b, a) for a, b in edges}, label)
    sup = [n for n in _topo(ups | {label}, edges) if n != label]
    sub = [n for n in _topo(downs | {label}, {(b, a) for a, b in edges}) if n != label]
    used = [e for e in exactness if e[0] in ups | {label} or e[1] in downs | {label}]
    return TaxonomyPosition(label, tuple(sup), tuple(sub),
                            all(exactness[e] for e in used))


def tessellation_of(tax: Taxonomy, labels=None) -> Tessellation:
    """Tessellation over the prototypes of the given (default: all) concepts."""
    labels = tax.labels if labels is None else list(labels)
    return Tessellation.from_concepts([tax.concepts[l] for l in labels])


@dataclass(frozen=True)
class DualResult:
    type1_label: str
    typicality: float
    type2_ancestors: tuple[str, ...]


def dual_categorize(tax: Taxonomy, tess: Tessellation, observation: Point,
                    n_samples: int = 10_000, seed: int = 42) -> DualResult:
    """Fast nearest-prototype label, then its typicality and symbolic ancestors."""
    missing = [l for l in tess.labels if l not in tax.concepts]
    if missing:
        raise ConceptSpaceError(f"tessellation labels not in taxonomy: {', '.join(missing)}")
    label = categorize(tess, observation)
    concept = tax.concepts[label]
    pos = classify_taxonomy(tax, label, n_samples, seed)
    return DualResult(label, typicality(concept, observation), pos.superconcepts)
