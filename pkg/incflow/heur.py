"""
Build-order heuristics and schedule evaluation

A schedule builds one potential arc per period; an arc built in period k is
usable from period k+1 on. The objective is the sum of the per-period
maximum flows over the horizon.
"""

import dataclasses
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import BadTargets, HorizonTooShort, InvalidSchedule
from .netcore import IncrementalFlow, Network, augment, flow_bounds, max_flow, residual_labels
from .subprob import max_val, min_arcs
from .utils import format_elapsed, stopwatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BuildSchedule:
    """Potential arcs in build order; position i is built in period i+1"""
    order: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'order', tuple(self.order))

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def validate(self, net: Network):
        potential = set(net.potential_ids)
        seen = set()
        for a in self.order:
            if a not in potential:
                raise InvalidSchedule(f"arc {a} is not a potential arc")
            if a in seen:
                raise InvalidSchedule(f"arc {a} is scheduled twice")
            seen.add(a)


@dataclass(frozen=True)
class SolveReport:
    """Outcome of evaluating one build schedule"""
    method: str
    schedule: BuildSchedule
    period_flows: Tuple[int, ...]
    total: int
    trace: Tuple[Tuple[int, int], ...]
    elapsed: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'method': self.method,
            'schedule': list(self.schedule.order),
            'period_flows': list(self.period_flows),
            'total': self.total,
            'trace': [list(item) for item in self.trace],
            'elapsed': self.elapsed,
        }


def _run_lengths(values: Sequence[int]) -> Tuple[Tuple[int, int], ...]:
    runs: List[List[int]] = []
    for v in values:
        if runs and runs[-1][0] == v:
            runs[-1][1] += 1
        else:
            runs.append([v, 1])
    return tuple((level, count) for level, count in runs)


def evaluate_schedule(net: Network, horizon: int,
                      schedule: Union[BuildSchedule, Sequence[int]],
                      method: str = "schedule") -> SolveReport:
    """
    Period flows and cumulative flow of a build schedule

    Raises:
        HorizonTooShort: if horizon does not exceed the number of potential arcs
        InvalidSchedule: if the schedule repeats or names a non-potential arc
    """
    if not isinstance(schedule, BuildSchedule):
        schedule = BuildSchedule(tuple(schedule))
    schedule.validate(net)
    if horizon <= len(net.potential_ids):
        raise HorizonTooShort(horizon, len(net.potential_ids))

    tracker = IncrementalFlow(net, net.existing_ids)
    prefix = [tracker.value]
    for a in schedule.order:
        prefix.append(tracker.add(a))
    built = len(schedule)
    period_flows = tuple(prefix[min(k - 1, built)] for k in range(1, horizon + 1))
    return SolveReport(method, schedule, period_flows, sum(period_flows), _run_lengths(period_flows))


def level_counts(report: SolveReport, initial: int, r: int) -> List[int]:
    """Periods spent at each flow level initial+i, i = 0..r"""
    counts = [0] * (r + 1)
    for level, count in report.trace:
        counts[level - initial] += count
    return counts


def _timed(method: str, run: Callable[[], SolveReport]) -> SolveReport:
    with stopwatch() as elapsed:
        report = run()
    report = dataclasses.replace(report, method=method, elapsed=elapsed[0])
    logger.info(f"{method}: total {report.total} after {len(report.schedule)} builds in {format_elapsed(elapsed[0])}")
    return report


def _increment_order(net: Network, allowed: Optional[Iterable[int]]) -> List[int]:
    pool: FrozenSet[int] = frozenset(net.potential_ids)
    if allowed is not None:
        pool = pool & frozenset(allowed)
    ceiling = max_flow(net, net.usable(pool)).value
    current = max_flow(net, net.existing_ids).value
    built: FrozenSet[int] = frozenset()
    order: List[int] = []
    while current < ceiling:
        found = min_arcs(net, built, current + 1, candidates=pool)
        if found is None:
            break
        xi, chosen = max_val(net, built, found.z_star, candidates=pool)
        logger.debug(f"increment: {found.z_star} arcs lift flow {current} -> {xi}")
        order.extend(sorted(chosen))
        built = built | chosen
        current = xi
    return order


def quickest_increment(net: Network, horizon: int, allowed: Optional[Iterable[int]] = None) -> SolveReport:
    """Repeatedly build the fewest arcs raising the flow, maximizing the raise"""
    return _timed("qi", lambda: evaluate_schedule(net, horizon, _increment_order(net, allowed)))


def _poly_order(net: Network) -> List[int]:
    built = set()
    order: List[int] = []
    flow = max_flow(net, net.existing_ids)
    while True:
        labels = residual_labels(net, built, flow)
        if not labels.reachable(net.sink):
            return order
        path = labels.path_to(net, net.sink)
        for step in path:
            arc = net.arcs[step.arc_id]
            if arc.is_potential and arc.id not in built:
                built.add(arc.id)
                order.append(arc.id)
        flow = augment(net, flow, path, int(labels.delta[net.sink]))


def quickest_increment_poly(net: Network, horizon: int) -> SolveReport:
    """Augment along paths with the fewest new arcs, widest first, building as they appear"""
    return _timed("qip", lambda: evaluate_schedule(net, horizon, _poly_order(net)))


def quickest_to_ultimate(net: Network, horizon: int) -> SolveReport:
    """Quickest increment restricted to a minimum arc set reaching the ultimate flow"""
    def run() -> SolveReport:
        _, ultimate = flow_bounds(net)
        target = min_arcs(net, (), ultimate)
        return evaluate_schedule(net, horizon, _increment_order(net, target.witness))
    return _timed("qtu", run)


def default_targets(r: int) -> List[int]:
    """Halfway target then the ultimate flow, zero and repeated entries dropped"""
    targets: List[int] = []
    for value in (r // 2, r):
        if value > 0 and value not in targets:
            targets.append(value)
    return targets


def _check_targets(targets: Sequence[int], r: int):
    if r == 0:
        if targets:
            raise BadTargets(f"no increment is possible but targets {list(targets)} were given")
        return
    if not targets:
        raise BadTargets("at least one target is required")
    previous = 0
    for value in targets:
        if not isinstance(value, int) or value <= previous:
            raise BadTargets(f"targets must strictly increase from 0, got {list(targets)}")
        previous = value
    if previous != r:
        raise BadTargets(f"last target must equal r = {r}, got {previous}")


def quickest_to_target(net: Network, horizon: int, targets: Optional[Sequence[int]] = None) -> SolveReport:
    """
    Grow the allowed arc set target by target, ordering it by quickest increment

    Args:
        net: the network
        horizon: planning horizon
        targets: flow increments over the initial flow, strictly increasing
            and ending at r; defaults to default_targets(r)

    Raises:
        BadTargets: if the sequence is invalid
    """
    initial, ultimate = flow_bounds(net)
    r = ultimate - initial
    targets = default_targets(r) if targets is None else list(targets)
    _check_targets(targets, r)

    def run() -> SolveReport:
        built: FrozenSet[int] = frozenset()
        report = evaluate_schedule(net, horizon, ())
        for value in targets:
            found = min_arcs(net, built, initial + value)
            _, chosen = max_val(net, built, found.z_star)
            built = built | chosen
            report = evaluate_schedule(net, horizon, _increment_order(net, built))
        return report
    return _timed("qtt", run)


METHODS: Dict[str, Callable[[Network, int], SolveReport]] = {
    'qi': quickest_increment,
    'qip': quickest_increment_poly,
    'qtu': quickest_to_ultimate,
    'qtt': quickest_to_target,
}
