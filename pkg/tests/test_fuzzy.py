import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conceptspaces.fuzzy import (
    NORMS,
    And,
    Atom,
    FuzzyAssertion,
    conjunction,
    evaluate,
    osherson_smith_witness,
    t_norm_and,
)

unit = st.floats(0.0, 1.0, allow_nan=False)
norms = st.sampled_from(NORMS)


class TestTNorm:
    def test_identity(self):
        assert t_norm_and(1, 1, "min") == 1

    def test_min_example(self):
        assert t_norm_and(0.97, 0.2, "min") == 0.2

    def test_lukasiewicz_example(self):
        assert t_norm_and(0.5, 0.5, "lukasiewicz") == 0

    @pytest.mark.parametrize("a, b", [(-0.1, 0.5), (0.5, 1.01), (float("nan"), 0.5)])
    def test_out_of_range(self, a, b):
        with pytest.raises(ValueError):
            t_norm_and(a, b)

    def test_unknown_norm(self):
        with pytest.raises(ValueError):
            t_norm_and(0.5, 0.5, "drastic")


@settings(max_examples=500, deadline=None)
@given(unit, unit, norms)
def test_bounded_by_min(a, b, norm):
    assert t_norm_and(a, b, norm) <= min(a, b)


@settings(max_examples=500, deadline=None)
@given(unit, unit, norms)
def test_commutative(a, b, norm):
    assert t_norm_and(a, b, norm) == t_norm_and(b, a, norm)


@settings(max_examples=500, deadline=None)
@given(unit, unit, unit, norms)
def test_monotone(a, b, c, norm):
    lo, hi = sorted((b, c))
    assert t_norm_and(a, lo, norm) <= t_norm_and(a, hi, norm)


@settings(max_examples=500, deadline=None)
@given(unit, norms)
def test_one_is_identity(a, norm):
    assert t_norm_and(a, 1.0, norm) == a


class TestEvaluate:
    def test_atom(self):
        assert evaluate(Atom("zebra", "Pina"), {("zebra", "Pina"): 0.2}) == 0.2

    def test_and_min(self):
        vals = [FuzzyAssertion("zebra", "Pina", 0.2), FuzzyAssertion("polka_dot_thing", "Pina", 0.95)]
        f = And(Atom("zebra", "Pina"), Atom("polka_dot_thing", "Pina"))
        assert evaluate(f, vals, "min") == 0.2

    def test_nested_min_is_global_minimum(self):
        vals = {("p", "x"): 0.7, ("q", "x"): 0.4, ("r", "x"): 0.9}
        f = And(Atom("p", "x"), And(Atom("q", "x"), Atom("r", "x")))
        assert evaluate(f, vals, "min") == 0.4
        assert evaluate(conjunction("pqr", "x"), vals, "min") == 0.4

    def test_unassigned_atom(self):
        with pytest.raises(KeyError):
            evaluate(Atom("zebra", "Pina"), {})


class TestWitness:
    conj = [FuzzyAssertion("zebra", "Pina", 0.2), FuzzyAssertion("polka_dot_thing", "Pina", 0.95)]

    def test_violated(self):
        r = osherson_smith_witness(FuzzyAssertion("polka_dot_zebra", "Pina", 0.97), self.conj)
        assert r.violated and r.bound == 0.2
        assert r.line() == "violated bound=0.2"
        assert all(v <= 0.2 for v in r.by_norm.values())

    def test_below_bound(self):
        r = osherson_smith_witness(FuzzyAssertion("polka_dot_zebra", "Pina", 0.15), self.conj)
        assert not r.violated

    def test_equal_to_bound(self):
        r = osherson_smith_witness(FuzzyAssertion("polka_dot_zebra", "Pina", 0.2), self.conj)
        assert not r.violated

    def test_assertion_range(self):
        with pytest.raises(ValueError):
            FuzzyAssertion("p", "x", 1.5)
