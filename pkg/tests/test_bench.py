"""Tests for the benchmark harness."""

import csv
import io
import json
import unittest

import pytest

from incflow.bench import (
    BenchConfig, BenchRow, bench_run, cell_name, config_from_dict, generate_instances, ranking_observation,
)

CELL = {'n': 5, 'd': 0.5, 'p': 0.5, 'u_max': 3}


def small_config(**overrides) -> BenchConfig:
    values = dict(family='general', cells=[CELL], count=3, include_timing=False, workers=2)
    values.update(overrides)
    return BenchConfig(**values)


class TestBenchConfig(unittest.TestCase):
    """Test cases for BenchConfig validation."""

    def test_rejected_settings(self):
        """Test invalid configurations."""
        bad = [
            {'family': 'planar'},
            {'methods': []},
            {'methods': ['qi', 'exact']},
            {'count': 0},
            {'cells': []},
            {'workers': 0},
        ]
        for overrides in bad:
            with self.subTest(overrides=overrides):
                with self.assertRaises(ValueError):
                    small_config(**overrides)

    def test_from_dict(self):
        """Test building a config from a JSON mapping."""
        cfg = config_from_dict({'family': 'layered', 'cells': [{'layers': 2, 'n': 2, 'd': 0.5, 'p': 0.5, 'u_max': 2}],
                                'csv_path': 'out/rows.csv'})
        self.assertEqual(cfg.family, 'layered')
        self.assertEqual(cfg.csv_path.name, 'rows.csv')
        with self.assertRaises(ValueError):
            config_from_dict({'family': 'general', 'timeout': 5})

    def test_cell_name(self):
        """Test the readable cell label."""
        self.assertEqual(cell_name('general', CELL), "general-n5-d0.5-p0.5-u_max3")


class TestBenchRun(unittest.TestCase):
    """Test cases for bench_run."""

    def test_instances_are_seeded(self):
        """Test that instance generation depends only on the seed."""
        first = generate_instances(small_config())
        second = generate_instances(small_config())
        self.assertEqual(first, second)
        name = cell_name('general', CELL)
        self.assertEqual(sorted(first[name]), [f"{name}-000", f"{name}-001", f"{name}-002"])
        self.assertNotEqual(generate_instances(small_config(seed=1)), first)

    def test_rows(self):
        """Test one row per instance and method with deltas in [0, 1]."""
        report = bench_run(small_config())
        self.assertEqual(len(report.rows), 3 * 4)
        for row in report.rows:
            self.assertIn(row.status, ("ok", "skipped"))
            if row.status == "ok":
                self.assertTrue(0.0 <= float(row.delta) <= 1.0)
                self.assertEqual(row.elapsed, "0.000000")
        exact = [r for r in report.rows if r.method == "exact" and r.status == "ok"]
        for row in exact:
            self.assertEqual(row.delta, "0.000000")

    def test_single_method_has_zero_gap(self):
        """Test that a lone method is its own best."""
        report = bench_run(small_config(methods=['qi'], include_exact=False))
        self.assertTrue(all(r.delta == "0.000000" for r in report.rows))
        self.assertIsNone(report.observation)

    def test_deterministic_output(self):
        """Test byte-identical CSV and JSON without timing."""
        first = bench_run(small_config())
        second = bench_run(small_config(workers=1))
        self.assertEqual(first.to_csv(), second.to_csv())
        self.assertEqual(first.to_json(), second.to_json())

    def test_summary(self):
        """Test per-cell means and the ranking observation."""
        report = bench_run(small_config())
        data = json.loads(report.to_json())
        methods = {entry['method'] for entry in data['cells']}
        self.assertTrue({'qi', 'qtu', 'qtt'} <= methods)
        observation = data['observation']
        self.assertEqual(observation['qtt_not_worse'], observation['qtt_mean_delta'] <= observation['qi_mean_delta'])


def test_files_written(temp_dir):
    """Test that CSV and JSON land where configured."""
    cfg = small_config(csv_path=temp_dir / "rows.csv", json_path=temp_dir / "summary.json", count=2)
    report = bench_run(cfg)
    rows = list(csv.DictReader(io.StringIO((temp_dir / "rows.csv").read_text(encoding="utf-8"))))
    assert len(rows) == len(report.rows)
    assert list(rows[0]) == ['cell', 'instance_id', 'gap', 'method', 'status', 'flow', 'delta', 'elapsed', 'error']
    assert json.loads((temp_dir / "summary.json").read_text(encoding="utf-8")) == json.loads(report.to_json())


@pytest.mark.parametrize("qtt,qi,expected", [("0.1", "0.2", True), ("0.2", "0.2", True), ("0.3", "0.2", False)])
def test_ranking_observation(qtt, qi, expected):
    """Test the qtt-versus-qi observation."""
    rows = [
        BenchRow("c", "i", 1, "qtt", "ok", "5", qtt, "0.0", ""),
        BenchRow("c", "i", 1, "qi", "ok", "5", qi, "0.0", ""),
        BenchRow("c", "i", 1, "qtu", "ok", "5", "0.9", "0.0", ""),
    ]
    assert ranking_observation(rows)['qtt_not_worse'] is expected


def test_progress_reported():
    """Test that the progress callback sees every job."""
    seen = []
    bench_run(small_config(count=1), progress_callback=lambda done, total, label: seen.append((done, total)))
    assert len(seen) == 4
    assert {total for _, total in seen} == {4}
