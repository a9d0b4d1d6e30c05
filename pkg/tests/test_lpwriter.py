"""Tests for the LP-file emitters."""

import unittest

from incflow.lpwriter import emit_imfp1, emit_imfp2, lp_stats, write_lp, x_name, y_name
from incflow.netcore import Instance, Network


class TestPeriodModel(unittest.TestCase):
    """Test cases for the period model."""

    def setUp(self):
        """Set up test fixtures."""
        self.diamond = Network.build(3, 0, 2, [(0, 1, 1, 'E'), (1, 2, 1, 'P')])

    def test_sizes(self):
        """Test variable, binary and row counts on the diamond."""
        stats = lp_stats(emit_imfp1(self.diamond, 2, "diamond"))
        self.assertEqual(stats, {'variables': 6, 'binaries': 2, 'constraints': 9})

    def test_rows(self):
        """Test the objective and the rows specific to the period model."""
        text = emit_imfp1(self.diamond, 2, "diamond")
        lines = text.splitlines()
        self.assertEqual(lines[0], "\\* incflow period model name=diamond T=2 *\\")
        self.assertIn("Maximize", lines)
        self.assertIn(" obj: + x_a0_k1 + x_a0_k2", lines)
        self.assertIn(" link_a1_k1: + x_a1_k1 - y_a1_k1 <= 0", lines)
        self.assertIn(" cap_a0_k2: + x_a0_k2 <= 1", lines)
        self.assertIn(" flow_v1_k1: - x_a0_k1 + x_a1_k1 = 0", lines)
        self.assertIn(" mono_a1_k1: + y_a1_k1 - y_a1_k2 <= 0", lines)
        self.assertIn(" init_a1: + y_a1_k1 = 0", lines)
        self.assertIn(" once_k2: + y_a1_k2 - y_a1_k1 <= 1", lines)
        self.assertEqual(lines[-1], "End")

    def test_deterministic(self):
        """Test that emitting twice gives identical text."""
        self.assertEqual(emit_imfp1(self.diamond, 3), emit_imfp1(self.diamond, 3))

    def test_names(self):
        """Test the variable naming scheme."""
        self.assertEqual(x_name(4, 2), "x_a4_k2")
        self.assertEqual(y_name(0, 11), "y_a0_k11")


class TestLevelModel(unittest.TestCase):
    """Test cases for the level model."""

    def setUp(self):
        """Set up test fixtures."""
        self.p2 = Network.build(2, 0, 1, [(0, 1, 1, 'E'), (0, 1, 1, 'P'), (0, 1, 2, 'P')])

    def test_sizes(self):
        """Test one flow copy per increment level."""
        stats = lp_stats(emit_imfp2(self.p2, 3, "p2"))
        self.assertEqual(stats, {'variables': 15, 'binaries': 6, 'constraints': 16})

    def test_rows(self):
        """Test the value rows and the objective."""
        lines = emit_imfp2(self.p2, 3, "p2").splitlines()
        self.assertEqual(lines[0], "\\* incflow level model name=p2 T=3 f=1 F=4 r=3 *\\")
        self.assertEqual(lines[1], "\\* total = TF - objective, TF = 12 *\\")
        self.assertIn("Minimize", lines)
        self.assertIn(" value_k3: + x_a0_k3 + x_a1_k3 + x_a2_k3 = 4", lines)
        self.assertIn(" link_a2_k1: + x_a2_k1 - 2 y_a2_k1 <= 0", lines)
        self.assertIn(" obj: + y_a1_k1 + y_a1_k2 + y_a1_k3 + y_a2_k1 + y_a2_k2 + y_a2_k3", lines)

    def test_nothing_to_build(self):
        """Test the trivial model when no increment is possible."""
        net = Network.build(2, 0, 1, [(0, 1, 2, 'E')])
        text = emit_imfp2(net, 3)
        self.assertIn("total = T*F = 6", text)
        self.assertEqual(lp_stats(text), {'variables': 0, 'binaries': 0, 'constraints': 0})


def test_write_lp(temp_dir):
    """Test writing both models of an instance to disk."""
    inst = Instance(Network.build(3, 0, 2, [(0, 1, 1, 'E'), (1, 2, 1, 'P')]), 2, "diamond")
    for model, emit in (("imfp1", emit_imfp1), ("imfp2", emit_imfp2)):
        path = write_lp(inst, model, temp_dir / f"{model}.lp")
        assert path.read_text(encoding="utf-8") == emit(inst.network, inst.horizon, inst.name)


def test_period_model_snapshot(diamond, golden_dir):
    """Test the diamond period model against its reference file."""
    expected = (golden_dir / "diamond_period_T2.lp").read_bytes()
    assert emit_imfp1(diamond, 2, "diamond").encode("utf-8") == expected


def test_level_model_snapshot(p2, golden_dir):
    """Test the parallel-arc level model against its reference file."""
    expected = (golden_dir / "p2_level_T3.lp").read_bytes()
    assert emit_imfp2(p2, 3, "p2").encode("utf-8") == expected
