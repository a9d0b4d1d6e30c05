"""
Solve engine for incflow

Routes instances to solution methods and runs batches of solve jobs in
parallel, collecting one outcome per job.
"""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional

from .errors import IncflowError, TooLarge
from .exact import DEFAULT_EXACT_CAP, exact_subset_dp
from .heur import METHODS, SolveReport, evaluate_schedule
from .netcore import Instance
from .utils import stopwatch

logger = logging.getLogger(__name__)


class Method(Enum):
    """Solution methods"""
    QI = "qi"
    QIP = "qip"
    QTU = "qtu"
    QTT = "qtt"
    EXACT = "exact"


def get_method_names() -> List[str]:
    return [m.value for m in Method]


@dataclass
class SolveJob:
    """One instance to solve with one method"""
    instance_id: str
    instance: Instance
    method: Method
    options: Dict[str, Any] = field(default_factory=dict)


class SolveOutcome:
    """Result of a solve job; report is None when the job failed or was skipped"""
    def __init__(self, job: SolveJob, report: Optional[SolveReport] = None,
                 message: str = "", error: Optional[Exception] = None, skipped: bool = False):
        self.job = job
        self.report = report
        self.message = message
        self.error = error
        self.skipped = skipped

    @property
    def success(self) -> bool:
        return self.report is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'instance': self.job.instance_id,
            'method': self.job.method.value,
            'success': self.success,
            'skipped': self.skipped,
            'message': self.message,
            'report': self.report.to_dict() if self.report else None,
        }


def solve_exact(inst: Instance, cap: int = DEFAULT_EXACT_CAP) -> SolveReport:
    """Optimal schedule of an instance as a SolveReport"""
    with stopwatch() as elapsed:
        result = exact_subset_dp(inst.network, inst.horizon, cap=cap)
        report = evaluate_schedule(inst.network, inst.horizon, result.schedule, method="exact")
    if report.total != result.optimum:
        raise IncflowError(f"exact schedule evaluates to {report.total}, expected {result.optimum}")
    return SolveReport(report.method, report.schedule, report.period_flows, report.total,
                       report.trace, elapsed[0])


class MethodRegistry:
    """Maps method names to solver callables taking (instance, options)"""

    def __init__(self, exact_cap: int = DEFAULT_EXACT_CAP):
        self.exact_cap = exact_cap
        self.solvers: Dict[Method, Callable[[Instance, Dict[str, Any]], SolveReport]] = {}
        self._register_methods()

    def _register_methods(self):
        for name, heuristic in METHODS.items():
            self.solvers[Method(name)] = self._wrap(heuristic)
        self.solvers[Method.EXACT] = lambda inst, options: solve_exact(inst, options.get('cap', self.exact_cap))

    @staticmethod
    def _wrap(heuristic):
        def run(inst: Instance, options: Dict[str, Any]) -> SolveReport:
            return heuristic(inst.network, inst.horizon, **options)
        return run

    def solve(self, job: SolveJob) -> SolveOutcome:
        """Run a single job, turning library errors into failed outcomes"""
        solver = self.solvers.get(job.method)
        if solver is None:
            return SolveOutcome(job, message=f"No solver registered for {job.method.value}")
        try:
            report = solver(job.instance, job.options)
            return SolveOutcome(job, report, f"{job.method.value}: total {report.total}")
        except TooLarge as e:
            logger.warning(f"Skipping {job.method.value} on {job.instance_id}: {e}")
            return SolveOutcome(job, message=str(e), error=e, skipped=True)
        except IncflowError as e:
            logger.error(f"{job.method.value} failed on {job.instance_id}: {e}")
            return SolveOutcome(job, message=str(e), error=e)


class BatchSolver:
    """Runs solve jobs in a thread pool"""

    def __init__(self, max_workers: int = 4, registry: Optional[MethodRegistry] = None):
        self.max_workers = max_workers
        self.registry = registry or MethodRegistry()
        self.jobs: List[SolveJob] = []
        self.progress_callback: Optional[Callable[[int, int, str], None]] = None
        self.cancel_event = threading.Event()

    def set_progress_callback(self, callback: Callable[[int, int, str], None]):
        """Set callback for progress updates: callback(completed, total, job_label)"""
        self.progress_callback = callback

    def add_jobs(self, instances: Dict[str, Instance], methods: Iterable[Method],
                 options: Optional[Dict[Method, Dict[str, Any]]] = None):
        """Queue every method on every instance"""
        options = options or {}
        methods = list(methods)
        for instance_id, inst in instances.items():
            for method in methods:
                self.jobs.append(SolveJob(instance_id, inst, method, dict(options.get(method, {}))))

    def process_all(self) -> List[SolveOutcome]:
        """Process queued jobs; outcomes come back ordered by instance id then method"""
        jobs, self.jobs = self.jobs, []
        if not jobs:
            return []

        results = []
        completed = 0
        total = len(jobs)
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_job = {executor.submit(self.registry.solve, job): job for job in jobs}
            for future in as_completed(future_to_job):
                if self.cancel_event.is_set():
                    break
                job = future_to_job[future]
                try:
                    results.append(future.result())
                except Exception as e:
                    logger.error(f"Job failed: {e}")
                    results.append(SolveOutcome(job, message=f"Processing error: {e}", error=e))
                completed += 1
                if self.progress_callback:
                    self.progress_callback(completed, total, f"{job.instance_id}/{job.method.value}")

        order = {m: i for i, m in enumerate(Method)}
        results.sort(key=lambda o: (o.job.instance_id, order[o.job.method]))
        return results

    def cancel(self):
        """Cancel the current batch"""
        self.cancel_event.set()


class SolveEngine:
    """High-level interface for solving instances"""

    def __init__(self, max_workers: int = 4, exact_cap: int = DEFAULT_EXACT_CAP):
        self.registry = MethodRegistry(exact_cap)
        self.max_workers = max_workers

    def solve_single(self, inst: Instance, method: str, **options) -> SolveOutcome:
        """Solve one instance with one method"""
        job = SolveJob(inst.name or "instance", inst, Method(method), options)
        return self.registry.solve(job)

    def solve_batch(self, instances: Dict[str, Instance], methods: Iterable[str]) -> Dict[str, Any]:
        """Solve every instance with every method"""
        batch = BatchSolver(self.max_workers, self.registry)
        batch.add_jobs(instances, [Method(m) for m in methods])
        results = batch.process_all()

        successful = sum(1 for r in results if r.success)
        return {
            'total': len(results),
            'successful': successful,
            'failed': len(results) - successful,
            'results': results,
        }
