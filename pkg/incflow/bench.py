"""
Benchmark harness

Generates seeded random instances per parameter cell, solves each with the
configured methods (plus the exact solver when the instance is small
enough) and reports, per instance and method, the cumulative flow and its
relative gap to the best known value. Rows are written as CSV, per-cell
means and a method-ranking observation as JSON.
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from .core import BatchSolver, Method, MethodRegistry, SolveOutcome
from .instgen.prng import derive_seed
from .instgen.random_graphs import GeneralParams, LayeredParams, gen_general, gen_layered
from .netcore import Instance, flow_bounds
from .utils import format_fraction, write_text_lf

logger = logging.getLogger(__name__)

FAMILIES = {
    'general': (GeneralParams, gen_general),
    'layered': (LayeredParams, gen_layered),
}

DEFAULT_METHODS = ('qi', 'qtu', 'qtt')


@dataclass
class BenchConfig:
    """
    One benchmark run

    cells holds generator parameters without the seed; each instance gets
    derive_seed(seed, running index) so runs are reproducible.
    """
    family: str = 'general'
    cells: List[Dict[str, Any]] = field(default_factory=lambda: [{'n': 10, 'd': 0.3, 'p': 0.7, 'u_max': 10}])
    count: int = 10
    methods: Sequence[str] = DEFAULT_METHODS
    include_exact: bool = True
    exact_cap: int = 12
    seed: int = 0
    csv_path: Optional[Path] = None
    json_path: Optional[Path] = None
    include_timing: bool = True
    workers: int = 4

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if not self.methods:
            raise ValueError("at least one method is required")
        for name in self.methods:
            if name not in {m.value for m in Method} - {'exact'}:
                raise ValueError(f"unknown heuristic {name!r}")
        if self.count < 1:
            raise ValueError(f"count must be positive, got {self.count}")
        if not self.cells:
            raise ValueError("at least one parameter cell is required")
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")


@dataclass(frozen=True)
class BenchRow:
    """One method on one instance; flow and delta are empty unless status is ok"""
    cell: str
    instance_id: str
    gap: int
    method: str
    status: str
    flow: str
    delta: str
    elapsed: str
    error: str


@dataclass
class BenchReport:
    rows: List[BenchRow]
    cells: List[Dict[str, Any]]
    observation: Optional[Dict[str, Any]]

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow([f.name for f in fields(BenchRow)])
        for row in self.rows:
            writer.writerow(_row_values(row))
        return buffer.getvalue()

    def to_json(self) -> str:
        return json.dumps({'cells': self.cells, 'observation': self.observation}, indent=2, sort_keys=True) + "\n"


def _row_values(row: BenchRow) -> List[Any]:
    return [getattr(row, f.name) for f in fields(BenchRow)]


def cell_name(family: str, cell: Dict[str, Any]) -> str:
    return "-".join([family] + [f"{key}{value}" for key, value in cell.items()])


def generate_instances(cfg: BenchConfig) -> Dict[str, Dict[str, Instance]]:
    """Instances per cell, keyed by instance id"""
    params_type, generator = FAMILIES[cfg.family]
    grid: Dict[str, Dict[str, Instance]] = {}
    index = 0
    for cell in cfg.cells:
        name = cell_name(cfg.family, cell)
        grid[name] = {}
        for i in range(cfg.count):
            params = params_type(seed=derive_seed(cfg.seed, index), **cell)
            index += 1
            grid[name][f"{name}-{i:03d}"] = generator(params)
    return grid


def _delta(best: int, value: int) -> Fraction:
    if best == 0:
        return Fraction(0)
    return Fraction(best - value, best)


def _rows_for_instance(cell: str, instance_id: str, gap: int, outcomes: List[SolveOutcome],
                       include_timing: bool) -> List[BenchRow]:
    totals = [o.report.total for o in outcomes if o.success]
    best = max(totals) if totals else 0
    rows = []
    for o in outcomes:
        method = o.job.method.value
        if o.success:
            elapsed = o.report.elapsed if include_timing else 0.0
            rows.append(BenchRow(cell, instance_id, gap, method, "ok", str(o.report.total),
                                 format_fraction(_delta(best, o.report.total)), f"{elapsed:.6f}", ""))
        else:
            status = "skipped" if o.skipped else "error"
            rows.append(BenchRow(cell, instance_id, gap, method, status, "", "", f"{0.0:.6f}", o.message))
    return rows


def _cell_means(rows: List[BenchRow]) -> List[Dict[str, Any]]:
    groups: Dict[tuple, List[BenchRow]] = {}
    for row in rows:
        if row.status == "ok":
            groups.setdefault((row.cell, row.method), []).append(row)
    summary = []
    for (cell, method), members in groups.items():
        summary.append({
            'cell': cell,
            'method': method,
            'instances': len(members),
            'mean_flow': round(float(np.mean([int(r.flow) for r in members])), 6),
            'mean_delta': round(float(np.mean([float(r.delta) for r in members])), 6),
            'mean_elapsed': round(float(np.mean([float(r.elapsed) for r in members])), 6),
        })
    return summary


def ranking_observation(rows: List[BenchRow]) -> Optional[Dict[str, Any]]:
    """Whether target-driven building did no worse on average than plain increments"""
    deltas: Dict[str, List[float]] = {'qtt': [], 'qi': []}
    for row in rows:
        if row.status == "ok" and row.method in deltas:
            deltas[row.method].append(float(row.delta))
    if not deltas['qtt'] or not deltas['qi']:
        return None
    qtt = round(float(np.mean(deltas['qtt'])), 6)
    qi = round(float(np.mean(deltas['qi'])), 6)
    return {'qtt_mean_delta': qtt, 'qi_mean_delta': qi, 'qtt_not_worse': qtt <= qi}


def bench_run(cfg: BenchConfig, progress_callback=None) -> BenchReport:
    """Run a benchmark; failures are recorded in their rows and the run continues"""
    grid = generate_instances(cfg)
    methods = [Method(m) for m in cfg.methods]
    if cfg.include_exact:
        methods.append(Method.EXACT)

    batch = BatchSolver(cfg.workers, MethodRegistry(cfg.exact_cap))
    if progress_callback:
        batch.set_progress_callback(progress_callback)
    for instances in grid.values():
        batch.add_jobs(instances, methods)
    outcomes = batch.process_all()

    by_instance: Dict[str, List[SolveOutcome]] = {}
    for outcome in outcomes:
        by_instance.setdefault(outcome.job.instance_id, []).append(outcome)

    rows: List[BenchRow] = []
    for cell, instances in grid.items():
        for instance_id, inst in instances.items():
            initial, ultimate = flow_bounds(inst.network)
            rows.extend(_rows_for_instance(cell, instance_id, ultimate - initial,
                                           by_instance.get(instance_id, []), cfg.include_timing))
        logger.info(f"Cell {cell}: {len(instances)} instances done")

    observation = ranking_observation(rows)
    if observation is not None:
        logger.info(f"Mean delta qtt {observation['qtt_mean_delta']} vs qi {observation['qi_mean_delta']}")
    report = BenchReport(rows, _cell_means(rows), observation)

    if cfg.csv_path is not None:
        write_text_lf(cfg.csv_path, report.to_csv())
    if cfg.json_path is not None:
        write_text_lf(cfg.json_path, report.to_json())
    return report


def config_from_dict(data: Dict[str, Any]) -> BenchConfig:
    """BenchConfig from a JSON-style mapping; paths become Path objects"""
    values = dict(data)
    for key in ('csv_path', 'json_path'):
        if values.get(key) is not None:
            values[key] = Path(values[key])
    known = {f.name for f in fields(BenchConfig)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown bench settings: {', '.join(sorted(unknown))}")
    return BenchConfig(**values)
