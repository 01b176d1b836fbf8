"""A deliberately small fuzzy-logic evaluator.

It exists to show the conjunction bound: under any t-norm the value of
``A and B`` can never exceed ``min(val(A), val(B))``, so a fuzzy reading
of typicality cannot rate something a good conjunction instance while it
is a poor instance of one conjunct.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

__all__ = [
    "NORMS",
    "FuzzyAssertion",
    "Atom",
    "And",
    "t_norm_and",
    "evaluate",
    "conjunction",
    "WitnessReport",
    "osherson_smith_witness",
]

NORMS = ("min", "product", "lukasiewicz")


def _check_value(v: float, what: str = "value") -> float:
    v = float(v)
    if not 0.0 <= v <= 1.0:
        raise ValueError(f"{what} {v} outside [0, 1]")
    return v


@dataclass(frozen=True)
class FuzzyAssertion:
    predicate: str
    individual: str
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", _check_value(self.value, "truth value"))


@dataclass(frozen=True)
class Atom:
    predicate: str
    individual: str


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


Formula = Union[Atom, And]


def t_norm_and(a: float, b: float, norm: str = "min") -> float:
    a, b = _check_value(a), _check_value(b)
    if norm == "min":
        return min(a, b)
    if norm == "product":
        return a * b
    if norm == "lukasiewicz":
        # this grouping keeps identity, symmetry and the min bound exact in floats
        lo, hi = sorted((a, b))
        return max(0.0, lo - (1.0 - hi))
    raise ValueError(f"unknown t-norm {norm!r}; expected one of {NORMS}")


def _valuation(valuation) -> dict:
    if isinstance(valuation, Mapping):
        return {k: _check_value(v) for k, v in valuation.items()}
    return {(a.predicate, a.individual): a.value for a in valuation}


def evaluate(f: Formula, valuation, norm: str = "min") -> float:
    """Recursive t-norm evaluation.

    ``valuation`` is either an iterable of :class:`FuzzyAssertion` or a
    mapping ``(predicate, individual) -> value``.
    """
    vals = _valuation(valuation)

    def ev(node):
        if isinstance(node, Atom):
            key = (node.predicate, node.individual)
            if key not in vals:
                raise KeyError(f"unassigned atom {node.predicate}({node.individual})")
            return vals[key]
        if isinstance(node, And):
            return t_norm_and(ev(node.left), ev(node.right), norm)
        raise TypeError(f"not a formula: {node!r}")

    return ev(f)


def conjunction(predicates: Iterable[str], individual: str) -> Formula:
    """Left-nested ``And`` over the predicates applied to one individual."""
    atoms = [Atom(p, individual) for p in predicates]
    if not atoms:
        raise ValueError("empty conjunction")
    f = atoms[0]
    for a in atoms[1:]:
        f = And(f, a)
    return f


@dataclass(frozen=True)
class WitnessReport:
    asserted: FuzzyAssertion
    violated: bool
    bound: float
    by_norm: dict

    def line(self) -> str:
        state = "violated" if self.violated else "consistent"
        return f"{state} bound={self.bound!r}"


def osherson_smith_witness(
    asserted_conjunction: FuzzyAssertion,
    conjunct_assertions: Iterable[FuzzyAssertion],
) -> WitnessReport:
    """Check an asserted conjunction value against its conjuncts.

    ``violated`` is true when the asserted value exceeds the minimum of the
    conjunct values (by more than 1e-12); ``by_norm`` holds the value each
    t-norm actually assigns to the conjunction, all of them <= ``bound``.
    """
    conj = list(conjunct_assertions)
    if not conj:
        raise ValueError("need at least one conjunct")
    bound = min(a.value for a in conj)
    f = conjunction([a.predicate for a in conj], "_")
    vals = {(a.predicate, "_"): a.value for a in conj}
    by_norm = {n: evaluate(f, vals, n) for n in NORMS}
    return WitnessReport(
        asserted_conjunction,
        asserted_conjunction.value > bound + 1e-12,
        bound,
        by_norm,
    )
