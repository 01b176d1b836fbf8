import itertools

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from conceptspaces import (
    Circular,
    ConceptSpaceError,
    ConceptualSpace,
    Dimension,
    Domain,
    InvalidSpaceError,
    Linear,
    SeatingFrame,
    Trajectory,
    between,
    euclidean_space,
    extrapolate,
    interpolate_gap,
    reidentify,
    right_of,
    smoothness,
    transitivity_check,
)
from conceptspaces.dynamics import crossing_scenario, reid_costs


def traj(S, oid, samples):
    return Trajectory.from_arrays(oid, S, [t for t, _ in samples], [x for _, x in samples])


@pytest.fixture
def S():
    return euclidean_space(["x", "y"], -100, 100)


class TestExtrapolate:
    def test_constant_velocity(self, S):
        tr = traj(S, "a", [(0, (0, 0)), (1, (1, 0))])
        assert extrapolate(tr, 2).coords == (2.0, 0.0)

    def test_stationary(self, S):
        tr = traj(S, "a", [(0, (3, 4)), (1, (3, 4)), (2, (3, 4))])
        assert extrapolate(tr, 17.5).coords == (3.0, 4.0)

    def test_quadratic(self):
        S = euclidean_space(1, -100, 100)
        tr = traj(S, "a", [(0, (0,)), (1, (1,)), (2, (4,))])
        assert extrapolate(tr, 3, quadratic=True).coords[0] == pytest.approx(9.0, abs=1e-9)

    def test_affine_exact(self, S):
        rng = np.random.default_rng(0)
        for _ in range(50):
            x0, v = rng.uniform(-10, 10, 2), rng.uniform(-3, 3, 2)
            ts = np.sort(rng.uniform(0, 5, 4))
            tr = Trajectory.from_arrays("a", S, ts, [x0 + v * t for t in ts])
            t = ts[-1] + rng.uniform(0.1, 5)
            assert np.allclose(extrapolate(tr, t).coords, x0 + v * t, atol=1e-9)

    def test_errors(self, S):
        with pytest.raises(InvalidSpaceError):
            extrapolate(traj(S, "a", [(0, (0, 0))]), 1)
        with pytest.raises(InvalidSpaceError):
            extrapolate(traj(S, "a", [(0, (0, 0)), (1, (1, 1))]), 0.5)

    def test_circular_wrap(self):
        S = ConceptualSpace((Domain("c", (Dimension("hue", Circular(360)),)),))
        tr = traj(S, "a", [(0, (340,)), (1, (350,))])
        assert extrapolate(tr, 3).coords[0] == pytest.approx(10.0)


class TestInterpolate:
    def test_midpoint(self, S):
        tr = traj(S, "a", [(0, (0, 0)), (2, (2, 2))])
        assert interpolate_gap(tr, 1).coords == (1.0, 1.0)

    def test_hue_short_arc(self):
        S = ConceptualSpace((Domain("c", (Dimension("hue", Circular(360)),)),))
        tr = traj(S, "a", [(0, (350,)), (2, (10,))])
        assert interpolate_gap(tr, 1).coords[0] == pytest.approx(0.0, abs=1e-12)

    def test_at_sample(self, S):
        tr = traj(S, "a", [(0, (0, 0)), (1, (5, 1)), (2, (2, 2))])
        assert interpolate_gap(tr, 1).coords == (5.0, 1.0)

    def test_on_segment(self, S):
        tr = traj(S, "a", [(0, (0, 0)), (3, (6, -3))])
        a, b = tr.samples[0][1], tr.samples[1][1]
        for t in np.linspace(0, 3, 13):
            assert between(S, a, interpolate_gap(tr, t), b)

    def test_outside(self, S):
        with pytest.raises(InvalidSpaceError):
            interpolate_gap(traj(S, "a", [(0, (0, 0)), (2, (2, 2))]), 3)


class TestSmoothness:
    def test_collinear(self, S):
        assert smoothness(traj(S, "a", [(t, (t, 2 * t)) for t in range(5)])) == 0.0

    def test_zigzag(self, S):
        assert smoothness(traj(S, "a", [(0, (0, 0)), (1, (1, 1)), (2, (2, 0))])) > 0

    def test_noisier_scores_higher(self, S):
        rng = np.random.default_rng(4)
        ts = np.arange(20.0)
        base = np.stack([ts, 0.5 * ts], axis=1)
        calm = Trajectory.from_arrays("a", S, ts, base + rng.normal(0, 0.05, base.shape))
        rough = Trajectory.from_arrays("b", S, ts, base + rng.normal(0, 0.5, base.shape))
        assert smoothness(rough) > smoothness(calm)

    def test_too_short(self, S):
        with pytest.raises(InvalidSpaceError):
            smoothness(traj(S, "a", [(0, (0, 0)), (1, (1, 1))]))


def exhaustive_optimum(cost):
    """Oracle: smallest total over every injective pairing."""
    n, m = cost.shape
    if n <= m:
        return min(sum(cost[i, p[i]] for i in range(n)) for p in itertools.permutations(range(m), n))
    return min(sum(cost[p[j], j] for j in range(m)) for p in itertools.permutations(range(n), m))


class TestReidentify:
    def test_single_continuation(self, S):
        r = reidentify([traj(S, "a", [(0, (0, 0)), (1, (1, 1))])],
                       [traj(S, "b", [(3, (3, 3)), (4, (4, 4))])])
        assert r.as_dict() == {"a": "b"} and r.matches[0].cost == pytest.approx(0, abs=1e-12)

    def test_velocity_beats_proximity(self, S):
        # a heads right, b heads left; after the gap the nearest point to a's
        # last position belongs to b
        a = traj(S, "a", [(0, (-4, 0)), (1, (-2, 0))])
        b = traj(S, "b", [(0, (4, 0.5)), (1, (2, 0.5))])
        x = traj(S, "x", [(3, (-2, 0.5)), (4, (-4, 0.5))])
        y = traj(S, "y", [(3, (2, 0)), (4, (4, 0))])
        r = reidentify([a, b], [x, y])
        assert r.as_dict() == {"a": "y", "b": "x"}
        c = r.cost_matrix
        assert c[0, 1] + c[1, 0] < c[0, 0] + c[1, 1]

    @pytest.mark.parametrize("n, m", [(3, 3), (2, 4), (5, 3), (8, 8)])
    def test_matches_oracles(self, S, n, m):
        rng = np.random.default_rng(n * 10 + m)
        trials = 3 if max(n, m) == 8 else 30
        for _ in range(trials):
            pre = [traj(S, f"p{i}", [(0, rng.uniform(-20, 20, 2)), (1, rng.uniform(-20, 20, 2))])
                   for i in range(n)]
            post = [traj(S, f"q{j}", [(4, rng.uniform(-20, 20, 2)), (5, rng.uniform(-20, 20, 2))])
                    for j in range(m)]
            r = reidentify(pre, post)
            cost = reid_costs(pre, post)
            rows, cols = linear_sum_assignment(cost)
            assert r.exhaustive
            assert r.total_cost == pytest.approx(cost[rows, cols].sum(), abs=1e-9)
            if max(n, m) <= 5:
                assert r.total_cost == pytest.approx(exhaustive_optimum(cost), abs=1e-9)
            assert len(r.unmatched_pre) == max(0, n - m)
            assert len(r.unmatched_post) == max(0, m - n)

    def test_greedy_beyond_limit(self, S):
        pre, post, truth = crossing_scenario(S, 9, seed=1)
        r = reidentify(pre, post)
        assert not r.exhaustive and len(r.matches) == 9

    @pytest.mark.parametrize("n", [2, 3])
    def test_crossing_truth(self, S, n):
        for seed in range(20):
            pre, post, truth = crossing_scenario(S, n, seed=seed, noise=0.01)
            assert reidentify(pre, post).as_dict() == truth

    def test_errors(self, S):
        with pytest.raises(InvalidSpaceError):
            reidentify([], [traj(S, "q", [(0, (0, 0))])])
        with pytest.raises(InvalidSpaceError):
            reidentify([traj(S, "p", [(0, (0, 0))])], [traj(S, "q", [(2, (0, 0))])])


class TestSeating:
    def test_round_table(self):
        f = SeatingFrame.circular({"A": 0, "B": 120, "C": 240})
        assert right_of(f, "C", "B") and right_of(f, "B", "A") and not right_of(f, "C", "A")
        rep = transitivity_check(f)
        assert not rep.transitive and ("C", "B", "A") in rep.counterexamples

    def test_linear_three(self):
        f = SeatingFrame.linear({"A": 0, "B": 1, "C": 2})
        assert right_of(f, "C", "B") and right_of(f, "B", "A") and right_of(f, "C", "A")

    def test_irreflexive(self):
        f = SeatingFrame.circular({"A": 0, "B": 120, "C": 240})
        assert not right_of(f, "A", "A")

    def test_linear_five_transitive(self):
        f = SeatingFrame.linear({k: i for i, k in enumerate("ABCDE")})
        rep = transitivity_check(f)
        assert rep.transitive and rep.counterexamples == ()

    def test_linear_strict_total_order(self):
        rng = np.random.default_rng(2)
        f = SeatingFrame.linear({f"o{i}": float(v) for i, v in enumerate(rng.permutation(7))})
        ids = f.ids
        for x, y in itertools.product(ids, ids):
            if x == y:
                assert not right_of(f, x, y)
            else:
                assert right_of(f, x, y) != right_of(f, y, x)
        assert transitivity_check(f).transitive

    def test_padded_pair_transitive(self):
        f = SeatingFrame.circular({"A": 0, "B": 90, "C": 91})
        assert transitivity_check(f).transitive

    def test_errors(self):
        f = SeatingFrame.circular({"A": 0, "B": 120})
        with pytest.raises(ConceptSpaceError):
            right_of(f, "A", "Z")
        with pytest.raises(InvalidSpaceError):
            transitivity_check(f)
