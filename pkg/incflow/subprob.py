"""
Fixed-charge subproblems behind the increment heuristics

min_arcs finds the fewest new potential arcs reaching a flow target and
max_val the best flow reachable with an exact number of new arcs. Both break
ties toward the lexicographically smallest sorted arc-id tuple. Unit-capacity
networks are handled through min-cost flow, general capacities by
branch-and-bound over candidate arcs in id order.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidBudget, UnitCapacityRequired
from .netcore import (
    FlowResult, Network, UNREACHABLE, flow_bounds, max_flow, min_cost_flow_unit, residual_labels,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinArcsResult:
    """Minimum set of new arcs and a flow that reaches the target with them"""
    z_star: int
    witness: FrozenSet[int]
    flow: FlowResult


@dataclass(frozen=True)
class CValues:
    """c[j]: fewest potential arcs needed for flow f+j, j = 0..r"""
    c: Tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.c) - 1

    def total(self) -> int:
        return sum(self.c[1:])


def candidate_pool(net: Network, built: Iterable[int], candidates: Optional[Iterable[int]] = None) -> List[int]:
    """Sorted potential arcs that may still be built"""
    potential = set(net.potential_ids)
    if candidates is not None:
        potential &= set(candidates)
    return sorted(potential - set(built))


class _MinArcsSearch:
    """Depth-first subset search in lexicographic order with three prunes"""

    def __init__(self, net: Network, built: FrozenSet[int], target: int, pool: Sequence[int]):
        self.net = net
        self.built = built
        self.target = target
        self.pool = list(pool)
        self.best: Optional[List[int]] = None
        self.best_flow: Optional[FlowResult] = None
        self.best_size = len(self.pool) + 1
        self.nodes = 0

    def run(self) -> Optional[MinArcsResult]:
        self._visit(0, [])
        logger.debug(f"min_arcs search: target {self.target}, {self.nodes} nodes")
        if self.best is None:
            return None
        return MinArcsResult(len(self.best), frozenset(self.best), self.best_flow)

    def _visit(self, start: int, chosen: List[int]):
        self.nodes += 1
        current = max_flow(self.net, self.net.usable(self.built.union(chosen)))
        if current.value >= self.target:
            if len(chosen) < self.best_size:
                self.best = list(chosen)
                self.best_flow = current
                self.best_size = len(chosen)
            return
        remaining = self.pool[start:]
        if not remaining or len(chosen) + 1 >= self.best_size:
            return
        everything = self.net.usable(self.built.union(chosen, remaining))
        if max_flow(self.net, everything).value < self.target:
            return
        labels = residual_labels(self.net, self.built.union(chosen), current, candidates=remaining)
        distance = labels.d[self.net.sink]
        if distance == UNREACHABLE or len(chosen) + distance >= self.best_size:
            return
        for pos in range(start, len(self.pool)):
            chosen.append(self.pool[pos])
            self._visit(pos + 1, chosen)
            chosen.pop()


def min_arcs(net: Network, built: Iterable[int], target_value: int,
             candidates: Optional[Iterable[int]] = None) -> Optional[MinArcsResult]:
    """
    Fewest new potential arcs permitting a flow of at least target_value

    Args:
        net: the network
        built: potential arcs already built
        target_value: flow value to reach
        candidates: restrict new arcs to this subset of the potential arcs

    Returns:
        MinArcsResult with the lexicographically smallest minimum witness,
        or None when the target is out of reach
    """
    built = frozenset(built)
    pool = candidate_pool(net, built, candidates)
    base = max_flow(net, net.usable(built))
    if target_value <= base.value:
        return MinArcsResult(0, frozenset(), base)

    if net.is_unit_capacity:
        found = min_cost_flow_unit(net, built, target_value, candidates=pool, prefer_low_ids=True)
        if found is None:
            return None
        cost, flow = found
        witness = frozenset(a for a in pool if flow.flow[a] > 0)
        return MinArcsResult(cost, witness, flow)

    return _MinArcsSearch(net, built, target_value, pool).run()


def _max_val_unit(net: Network, built: FrozenSet[int], budget: int, pool: List[int]) -> Tuple[int, FrozenSet[int]]:
    xi = max_flow(net, net.usable(built)).value
    while True:
        found = min_cost_flow_unit(net, built, xi + 1, candidates=pool)
        if found is None or found[0] > budget:
            break
        xi += 1

    # Greedy in id order: keep an arc whenever some completion from the
    # later ids still reaches xi with exactly `budget` arcs.
    chosen: List[int] = []
    for pos, a in enumerate(pool):
        need = budget - len(chosen)
        if need == 0:
            break
        later = pool[pos + 1:]
        found = min_cost_flow_unit(net, built.union(chosen, [a]), xi, candidates=later)
        if found is not None and found[0] <= need - 1:
            chosen.append(a)
    return xi, frozenset(chosen)


class _MaxValSearch:
    """Enumerates budget-sized subsets in lexicographic order, pruning by optimistic flow"""

    def __init__(self, net: Network, built: FrozenSet[int], budget: int, pool: Sequence[int]):
        self.net = net
        self.built = built
        self.budget = budget
        self.pool = list(pool)
        self.best_value = -1
        self.best: List[int] = []
        self.nodes = 0

    def run(self) -> Tuple[int, FrozenSet[int]]:
        self._visit(0, [])
        logger.debug(f"max_val search: budget {self.budget}, {self.nodes} nodes")
        return self.best_value, frozenset(self.best)

    def _visit(self, start: int, chosen: List[int]):
        self.nodes += 1
        if len(chosen) == self.budget:
            value = max_flow(self.net, self.net.usable(self.built.union(chosen))).value
            if value > self.best_value:
                self.best_value = value
                self.best = list(chosen)
            return
        missing = self.budget - len(chosen)
        if len(self.pool) - start < missing:
            return
        optimistic = max_flow(self.net, self.net.usable(self.built.union(chosen, self.pool[start:]))).value
        if optimistic <= self.best_value:
            return
        for pos in range(start, len(self.pool) - missing + 1):
            chosen.append(self.pool[pos])
            self._visit(pos + 1, chosen)
            chosen.pop()


def max_val(net: Network, built: Iterable[int], z_star: int,
            candidates: Optional[Iterable[int]] = None) -> Tuple[int, FrozenSet[int]]:
    """
    Best flow value reachable by building exactly z_star new arcs

    Returns:
        (xi, chosen): the flow value and the lexicographically smallest
        arc set of size z_star attaining it

    Raises:
        InvalidBudget: if fewer than z_star candidate arcs remain
    """
    built = frozenset(built)
    pool = candidate_pool(net, built, candidates)
    if z_star < 0 or z_star > len(pool):
        raise InvalidBudget(f"cannot build {z_star} arcs from {len(pool)} candidates")
    if z_star == 0:
        return max_flow(net, net.usable(built)).value, frozenset()
    if net.is_unit_capacity:
        return _max_val_unit(net, built, z_star, pool)
    return _MaxValSearch(net, built, z_star, pool).run()


def c_values(net: Network) -> CValues:
    """Fewest potential arcs needed for each flow level f+j on a unit-capacity network"""
    if not net.is_unit_capacity:
        raise UnitCapacityRequired(next(a.id for a in net.arcs if a.capacity != 1))
    initial, ultimate = flow_bounds(net)
    c = [0]
    for j in range(1, ultimate - initial + 1):
        cost, _ = min_cost_flow_unit(net, (), initial + j)
        c.append(cost)
    return CValues(tuple(c))


def upper_bound_opt(net: Network, horizon: int) -> Tuple[int, int]:
    """
    Upper bounds on the optimal cumulative flow

    Returns:
        (T*F - sum of c_j, T*F - r(r-1)/2 - c_r); the first is never larger
    """
    values = c_values(net)
    _, ultimate = flow_bounds(net)
    r = values.r
    ceiling = horizon * ultimate
    return ceiling - values.total(), ceiling - r * (r - 1) // 2 - values.c[r]
