"""Tests for the exact solvers."""

import itertools
import unittest

import pytest

from incflow.errors import HorizonTooShort, TooLarge
from incflow import exact
from incflow.exact import brute_force_permutations, certified_lower_bound, exact_subset_dp
from incflow.heur import METHODS, evaluate_schedule
from incflow.instgen import X3CInstance, cover_bound, gen_x3c
from incflow.netcore import Network


class TestExactSolvers(unittest.TestCase):
    """Test cases for the subset DP and the brute-force oracle."""

    def setUp(self):
        """Set up test fixtures."""
        self.p2 = Network.build(2, 0, 1, [(0, 1, 1, 'E'), (0, 1, 1, 'P'), (0, 1, 2, 'P')])
        self.diamond = Network.build(3, 0, 2, [(0, 1, 1, 'E'), (1, 2, 1, 'P')])

    def test_p2(self):
        """Test the optimum and its schedule on the parallel arcs."""
        for solver in (exact_subset_dp, brute_force_permutations):
            with self.subTest(solver=solver.__name__):
                result = solver(self.p2, 3)
                self.assertEqual(result.optimum, 8)
                self.assertEqual(result.schedule.order, (2, 1))
                self.assertEqual(evaluate_schedule(self.p2, 3, result.schedule).total, 8)

    def test_diamond(self):
        """Test the single-arc network."""
        result = exact_subset_dp(self.diamond, 2)
        self.assertEqual(result.optimum, 1)
        self.assertEqual(result.schedule.order, (1,))

    def test_longer_horizon_adds_ultimate_flow(self):
        """Test that every extra period runs at the ultimate flow."""
        self.assertEqual(exact_subset_dp(self.p2, 5).optimum, 8 + 2 * 4)

    def test_no_potential_arcs(self):
        """Test an instance with nothing to build."""
        net = Network.build(2, 0, 1, [(0, 1, 3, 'E')])
        result = exact_subset_dp(net, 2)
        self.assertEqual(result.optimum, 6)
        self.assertEqual(result.schedule.order, ())

    def test_size_and_horizon_errors(self):
        """Test the cap and the horizon check."""
        with self.assertRaises(TooLarge):
            exact_subset_dp(self.p2, 3, cap=1)
        with self.assertRaises(TooLarge):
            brute_force_permutations(self.p2, 3, cap=1)
        with self.assertRaises(HorizonTooShort):
            exact_subset_dp(self.p2, 2)

    def test_certified_lower_bound(self):
        """Test that a feasible schedule bounds the optimum from below."""
        self.assertEqual(certified_lower_bound(self.p2, 3, [1, 2]), 7)
        self.assertLessEqual(certified_lower_bound(self.p2, 3, [1, 2]), exact_subset_dp(self.p2, 3).optimum)


def test_dp_matches_brute_force(mixed_corpus):
    """Test the subset DP against full enumeration of build orders."""
    for inst in mixed_corpus:
        dp = exact_subset_dp(inst.network, inst.horizon)
        brute = brute_force_permutations(inst.network, inst.horizon)
        assert dp.optimum == brute.optimum, inst.name
        assert evaluate_schedule(inst.network, inst.horizon, dp.schedule).total == dp.optimum


def test_heuristics_never_beat_the_optimum(mixed_corpus):
    """Test that every heuristic total is a lower bound."""
    for inst in mixed_corpus[:60]:
        optimum = exact_subset_dp(inst.network, inst.horizon).optimum
        for method in METHODS.values():
            assert method(inst.network, inst.horizon).total <= optimum


@pytest.mark.parametrize("n,sets,horizon", [
    (1, [(1, 2, 3)], None),
    (2, [(1, 2, 3), (4, 5, 6)], None),
    (2, [(1, 2, 3), (4, 5, 6), (1, 2, 4)], 4),
    (3, [(1, 2, 3), (4, 5, 6), (7, 8, 9)], 4),
    (3, [(1, 2, 4), (1, 2, 3), (3, 5, 7), (4, 5, 6), (7, 8, 9)], 6),
])
def test_exact_cover_reaches_bound(n, sets, horizon):
    """Test that a coverable collection attains the reduction bound."""
    x = X3CInstance.parse(n, sets)
    inst = gen_x3c(x, horizon)
    assert exact_subset_dp(inst.network, inst.horizon).optimum == cover_bound(x, inst.horizon)


@pytest.mark.parametrize("n,sets", [
    (2, [(1, 2, 3), (3, 4, 5)]),
    (2, [(1, 2, 3), (2, 3, 4), (3, 4, 5)]),
    (3, [(1, 2, 3), (3, 4, 5), (5, 6, 7), (7, 8, 9)]),
    (2, [(1, 2, 4), (1, 3, 5), (2, 3, 6)]),
    (2, [(1, 5, 6), (2, 5, 6), (3, 5, 6)]),
])
def test_no_exact_cover_stays_below_bound(n, sets):
    """Test that a collection without exact cover falls short of the bound."""
    x = X3CInstance.parse(n, sets)
    inst = gen_x3c(x)
    assert exact_subset_dp(inst.network, inst.horizon).optimum < cover_bound(x, inst.horizon)


def test_single_set_reduction(x3c_single):
    """Test the smallest reduction network."""
    result = exact_subset_dp(x3c_single.network, x3c_single.horizon)
    assert result.optimum == 3
    assert len(result.schedule) == 1


def test_brute_force_matches_every_order(mixed_corpus):
    """Test brute force against scoring each permutation directly."""
    small = [inst for inst in mixed_corpus if len(inst.network.potential_ids) <= 5][:40]
    assert small
    for inst in small:
        net = inst.network
        scored = [(evaluate_schedule(net, inst.horizon, order).total, order)
                  for order in itertools.permutations(net.potential_ids)]
        optimum = max(total for total, _ in scored)
        first = next(order for total, order in scored if total == optimum)
        result = brute_force_permutations(net, inst.horizon)
        assert result.optimum == optimum, inst.name
        assert result.schedule.order == first, inst.name


def test_brute_force_scores_orders_with_evaluate_schedule(p2, mocker):
    """Test that brute force scores complete orders without the subset memo."""
    mocker.patch.object(exact, '_SubsetFlows', side_effect=AssertionError("subset memo used"))
    scorer = mocker.patch.object(exact, 'evaluate_schedule', wraps=evaluate_schedule)
    result = brute_force_permutations(p2, 3)
    assert result.optimum == 8
    assert result.schedule.order == (2, 1)
    assert scorer.call_count == 2
