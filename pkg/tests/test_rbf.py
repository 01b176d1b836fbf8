import math
from itertools import permutations

import numpy as np
import pytest

from conceptspaces import (
    Exemplar,
    InvalidSpaceError,
    RBFNetwork,
    RBFUnit,
    activate,
    categorize,
    classify,
    detect_chimera,
    euclidean_space,
    tessellate_2d,
    to_conceptual_space,
    train_rbf,
    typicality,
)
from conceptspaces.rbf import classify_many
from conceptspaces.tessellation import categorize_many

from conftest import model


def net_of(S, specs):
    return RBFNetwork(S, tuple(RBFUnit(S.point(*c), w, l) for c, w, l in specs))


def lloyd_outcomes(X):
    """Oracle: every k=2 partition Lloyd's algorithm can reach from any
    ordered pair of distinct starting points (ties to the lower index)."""
    outcomes = set()
    for i, j in permutations(range(len(X)), 2):
        C = X[[i, j]].astype(float)
        assign = None
        for _ in range(100):
            d = np.array([[np.sum((x - c) ** 2) for c in C] for x in X])
            new = np.argmin(d, axis=1)
            if assign is not None and np.array_equal(new, assign):
                break
            assign = new
            for k in range(2):
                if np.any(assign == k):
                    C[k] = X[assign == k].mean(axis=0)
        outcomes.add(frozenset(frozenset(np.flatnonzero(assign == k)) for k in range(2)))
    return outcomes


class TestTraining:
    def test_one_exemplar_per_class(self):
        S = euclidean_space(2)
        ex = [Exemplar("a", S.point(1, 2)), Exemplar("b", S.point(7, 3))]
        net = train_rbf(ex, 1)
        assert [u.center.coords for u in net.units] == [(1.0, 2.0), (7.0, 3.0)]

    def test_blob_means(self):
        S = euclidean_space(2, -20, 20)
        rng = np.random.default_rng(0)
        blobs = {"a": rng.normal((-5, 0), 0.5, (200, 2)), "b": rng.normal((5, 3), 0.5, (200, 2))}
        ex = [Exemplar(l, S.point(*x)) for l, X in blobs.items() for x in X]
        net = train_rbf(ex, 1)
        for u in net.units:
            assert np.linalg.norm(np.array(u.center.coords) - blobs[u.class_label].mean(axis=0)) <= 0.05

    def test_square_k2_partitions(self):
        S = euclidean_space(2, -1, 2)
        X = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float)
        reachable = lloyd_outcomes(X)
        for seed in range(10):
            net = train_rbf([Exemplar("s", S.point(*x)) for x in X], 2, seed=seed)
            C = net.centers
            assign = np.argmin(S.distance_matrix(X, C), axis=1)
            part = frozenset(frozenset(np.flatnonzero(assign == k)) for k in range(2))
            assert part in reachable
            again = train_rbf([Exemplar("s", S.point(*x)) for x in X], 2, seed=seed)
            assert np.array_equal(again.centers, C)

    def test_determinism_bit_identical(self):
        S = euclidean_space(3)
        rng = np.random.default_rng(1)
        ex = [Exemplar(f"c{i % 3}", S.point(*rng.uniform(0, 10, 3))) for i in range(60)]
        a, b = train_rbf(ex, 3, seed=7), train_rbf(ex, 3, seed=7)
        assert a.centers.tobytes() == b.centers.tobytes()
        assert a.widths.tobytes() == b.widths.tobytes()

    def test_errors(self):
        S = euclidean_space(2)
        with pytest.raises(InvalidSpaceError):
            train_rbf([], 1)
        with pytest.raises(InvalidSpaceError):
            train_rbf([Exemplar("a", S.point(0, 0))], 2)

    def test_width_rule(self):
        S = euclidean_space(2)
        ex = [Exemplar("a", S.point(0, 0)), Exemplar("b", S.point(4, 0)), Exemplar("c", S.point(4, 6))]
        net = train_rbf(ex, 1)
        assert list(net.widths) == [2.0, 2.0, 3.0]


class TestActivation:
    def test_center_and_width(self):
        S = euclidean_space(2)
        net = net_of(S, [((2, 2), 1.5, "a")])
        assert activate(net, S.point(2, 2))[0] == 1.0
        assert activate(net, S.point(3.5, 2))[0] == pytest.approx(math.exp(-0.5), abs=1e-12)

    def test_classify_at_center(self):
        S = euclidean_space(2)
        net = net_of(S, [((2, 2), 1, "a"), ((8, 8), 1, "b")])
        c = classify(net, S.point(8, 8))
        assert c.label == "b" and c.confidence == 1.0

    def test_unequal_widths_flip(self):
        S = euclidean_space(1, -5, 15)
        net = net_of(S, [((0,), 3.0, "wide"), ((10,), 1.0, "narrow")])
        x = S.point(6)
        t, _ = to_conceptual_space(net)
        assert categorize(t, x) == "narrow#0"
        assert classify(net, x).label == "wide"

    def test_no_underflow_far_away(self):
        S = euclidean_space(2, -1e6, 1e6)
        net = net_of(S, [((0, 0), 0.01, "a"), ((1, 0), 0.01, "b")])
        assert classify(net, S.point(1e5, 0)).label == "b"


class TestChimera:
    def test_fixture_ambiguous(self):
        m = model("chimera.cspace")
        r = detect_chimera(m.network, m.points["chimera"], 0.95)
        assert r.ambiguous and set(r.top_labels) == {"lion", "goat"}

    def test_at_center_not_ambiguous(self):
        m = model("chimera.cspace")
        assert not detect_chimera(m.network, m.network.units[0].center).ambiguous

    def test_threshold_one_strict(self):
        m = model("chimera.cspace")
        S = m.space
        assert not detect_chimera(m.network, S.point(5.001, 5), 1.0).ambiguous
        assert detect_chimera(m.network, S.point(5, 5), 1.0).ambiguous

    def test_unit_order_symmetry(self):
        m = model("chimera.cspace")
        rev = RBFNetwork(m.space, tuple(reversed(m.network.units)))
        x = m.points["chimera"]
        assert detect_chimera(m.network, x) == detect_chimera(rev, x)


class TestExport:
    def test_single_unit(self):
        S = euclidean_space(2)
        net = net_of(S, [((3, 4), 1.0, "a")])
        t, concepts = to_conceptual_space(net)
        assert t.labels == ("a#0",)
        (cell,) = tessellate_2d(t, (0, 0, 10, 10))
        assert cell.area == pytest.approx(100.0)

    def test_typicality_equals_activation(self):
        S = euclidean_space(2)
        net = net_of(S, [((3, 4), 1.3, "a"), ((6, 4), 0.7, "b")])
        _, concepts = to_conceptual_space(net)
        x = S.point(4, 5)
        assert [typicality(c, x) for c in concepts] == pytest.approx(list(activate(net, x)))

    def test_equal_width_equivalence(self):
        S = euclidean_space(2)
        rng = np.random.default_rng(3)
        ex = [Exemplar(f"c{i % 4}", S.point(*rng.uniform(0, 10, 2))) for i in range(80)]
        net = train_rbf(ex, 2, seed=1, width=0.8)
        t, _ = to_conceptual_space(net)
        xs = rng.uniform(0, 10, size=(5000, 2))
        assert np.array_equal(classify_many(net, xs), categorize_many(t, xs))
