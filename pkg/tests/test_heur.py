"""Tests for schedule evaluation and the build-order heuristics."""

import unittest

import pytest

from incflow.errors import BadTargets, HorizonTooShort, InvalidSchedule
from incflow.heur import (
    METHODS, BuildSchedule, SolveReport, default_targets, evaluate_schedule, level_counts, quickest_increment,
    quickest_increment_poly, quickest_to_target, quickest_to_ultimate,
)
from incflow.instgen import gen_family
from incflow.netcore import Network, flow_bounds


class TestEvaluateSchedule(unittest.TestCase):
    """Test cases for evaluate_schedule."""

    def setUp(self):
        """Set up test fixtures."""
        self.p2 = Network.build(2, 0, 1, [(0, 1, 1, 'E'), (0, 1, 1, 'P'), (0, 1, 2, 'P')])
        self.diamond = Network.build(3, 0, 2, [(0, 1, 1, 'E'), (1, 2, 1, 'P')])

    def test_p2(self):
        """Test period flows when the wide arc goes first."""
        report = evaluate_schedule(self.p2, 3, [2, 1])
        self.assertEqual(report.period_flows, (1, 3, 4))
        self.assertEqual(report.total, 8)
        self.assertEqual(report.trace, ((1, 1), (3, 1), (4, 1)))
        self.assertEqual(evaluate_schedule(self.p2, 3, [1, 2]).total, 7)

    def test_diamond(self):
        """Test that a built arc only counts from the next period."""
        report = evaluate_schedule(self.diamond, 2, BuildSchedule((1,)))
        self.assertEqual(report.period_flows, (0, 1))
        self.assertEqual(report.total, 1)

    def test_partial_schedule(self):
        """Test that unbuilt arcs never contribute."""
        report = evaluate_schedule(self.p2, 4, [1])
        self.assertEqual(report.period_flows, (1, 2, 2, 2))

    def test_errors(self):
        """Test invalid schedules and horizons."""
        with self.assertRaises(InvalidSchedule):
            evaluate_schedule(self.p2, 3, [0])
        with self.assertRaises(InvalidSchedule):
            evaluate_schedule(self.p2, 3, [1, 1])
        with self.assertRaises(HorizonTooShort):
            evaluate_schedule(self.p2, 2, [2, 1])

    def test_level_counts(self):
        """Test periods per flow level."""
        report = evaluate_schedule(self.p2, 3, [2, 1])
        self.assertEqual(level_counts(report, 1, 3), [1, 0, 1, 1])

    def test_to_dict(self):
        """Test the serializable form of a report."""
        data = evaluate_schedule(self.p2, 3, [2, 1], method="manual").to_dict()
        self.assertEqual(data['method'], "manual")
        self.assertEqual(data['schedule'], [2, 1])
        self.assertEqual(data['trace'], [[1, 1], [3, 1], [4, 1]])


class TestHeuristics(unittest.TestCase):
    """Test cases for the heuristics on small networks."""

    def setUp(self):
        """Set up test fixtures."""
        self.p2 = Network.build(2, 0, 1, [(0, 1, 1, 'E'), (0, 1, 1, 'P'), (0, 1, 2, 'P')])

    def test_p2_all_methods(self):
        """Test that every heuristic builds the wide arc first."""
        for name, method in METHODS.items():
            with self.subTest(method=name):
                report = method(self.p2, 3)
                self.assertIsInstance(report, SolveReport)
                self.assertEqual(report.method, name)
                self.assertEqual(report.schedule.order, (2, 1))
                self.assertEqual(report.total, 8)
                self.assertGreaterEqual(report.elapsed, 0.0)

    def test_quickest_increment_allowed(self):
        """Test that arcs outside the allowed set are never built."""
        report = quickest_increment(self.p2, 3, allowed=[1])
        self.assertEqual(report.schedule.order, (1,))
        self.assertEqual(report.period_flows, (1, 2, 2))

    def test_no_potential_arcs(self):
        """Test heuristics when nothing can be built."""
        net = Network.build(2, 0, 1, [(0, 1, 1, 'E')])
        for name, method in METHODS.items():
            with self.subTest(method=name):
                report = method(net, 2)
                self.assertEqual(report.schedule.order, ())
                self.assertEqual(report.total, 2)

    def test_lower_arc_first_on_wide_gadget(self):
        """Test that the widest augmenting path is not the best single arc."""
        for k in (1, 2, 5):
            inst, predicted = gen_family('F1', k)
            with self.subTest(k=k):
                qip = quickest_increment_poly(inst.network, inst.horizon)
                self.assertEqual(qip.schedule.order[0], predicted.extra['lower_arc'])
                self.assertEqual(qip.total, 4 * k + 6)
                qi = quickest_increment(inst.network, inst.horizon)
                self.assertEqual(qi.schedule.order[0], predicted.extra['upper_arc'])
                self.assertEqual(qi.total, 5 * k + 6)


class TestTargets(unittest.TestCase):
    """Test cases for target sequences."""

    def setUp(self):
        """Set up test fixtures."""
        self.p2 = Network.build(2, 0, 1, [(0, 1, 1, 'E'), (0, 1, 1, 'P'), (0, 1, 2, 'P')])

    def test_default_targets(self):
        """Test the halfway-then-ultimate default."""
        self.assertEqual(default_targets(0), [])
        self.assertEqual(default_targets(1), [1])
        self.assertEqual(default_targets(3), [1, 3])
        self.assertEqual(default_targets(4), [2, 4])

    def test_bad_targets(self):
        """Test rejected target sequences."""
        for targets in ([], [2, 1], [1, 2], [1, 1, 3], [0, 3], [3, 4]):
            with self.subTest(targets=targets):
                with self.assertRaises(BadTargets):
                    quickest_to_target(self.p2, 3, targets)

    def test_targets_without_increment(self):
        """Test that targets are rejected when r is zero."""
        net = Network.build(2, 0, 1, [(0, 1, 1, 'E')])
        with self.assertRaises(BadTargets):
            quickest_to_target(net, 1, [1])
        self.assertEqual(quickest_to_target(net, 1).total, 1)

    def test_single_target_is_quickest_to_ultimate(self):
        """Test that the single target r matches quickest to ultimate."""
        report = quickest_to_target(self.p2, 3, [3])
        self.assertEqual(report.total, quickest_to_ultimate(self.p2, 3).total)


@pytest.mark.parametrize("method", sorted(METHODS))
def test_schedules_are_valid_and_reach_the_ceiling(method, mixed_corpus):
    """Test every heuristic yields a valid schedule reaching the ultimate flow."""
    for inst in mixed_corpus[:40]:
        net = inst.network
        report = METHODS[method](net, inst.horizon)
        report.schedule.validate(net)
        _, ultimate = flow_bounds(net)
        assert report.period_flows[-1] == ultimate
        assert list(report.period_flows) == sorted(report.period_flows)
        assert report.total == sum(report.period_flows)


def _increment_batches(report):
    """Split a quickest-increment schedule where the period flow rises"""
    flows = report.period_flows
    batches, current = [], []
    for i, arc_id in enumerate(report.schedule.order):
        current.append(arc_id)
        if flows[i + 1] > flows[i]:
            batches.append(current)
            current = []
    return batches, current


def test_order_within_an_increment_is_irrelevant(mixed_corpus):
    """Test that reversing each increment's arcs keeps the period flows."""
    for inst in mixed_corpus[:120]:
        net = inst.network
        report = quickest_increment(net, inst.horizon)
        batches, rest = _increment_batches(report)
        assert rest == [], inst.name
        reordered = [arc_id for batch in batches for arc_id in reversed(batch)]
        assert evaluate_schedule(net, inst.horizon, reordered).period_flows == report.period_flows, inst.name


def test_unit_targets_reproduce_quickest_increment(unit_corpus):
    """Test that targets 1..r give the quickest increment schedule on unit networks."""
    for inst in unit_corpus[:100]:
        net = inst.network
        initial, ultimate = flow_bounds(net)
        targets = list(range(1, ultimate - initial + 1))
        stepped = quickest_to_target(net, inst.horizon, targets)
        assert stepped.schedule.order == quickest_increment(net, inst.horizon).schedule.order, inst.name
