"""
Exact solvers for small instances

Because building an arc never lowers the maximum flow, some optimal
schedule builds every potential arc, one per period, and the value of a
schedule prefix only depends on which arcs it contains. exact_subset_dp
exploits this with a dynamic program over subsets. brute_force_permutations
scores build orders with evaluate_schedule and serves as an oracle for it.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence

from .errors import HorizonTooShort, TooLarge
from .heur import BuildSchedule, evaluate_schedule
from .netcore import Network, max_flow
from .utils import members

logger = logging.getLogger(__name__)

DEFAULT_EXACT_CAP = 22
DEFAULT_BRUTE_CAP = 8


@dataclass(frozen=True)
class ExactResult:
    """Optimal cumulative flow, a schedule attaining it and the search effort"""
    optimum: int
    schedule: BuildSchedule
    explored: int


class _SubsetFlows:
    """Maximum flow per built subset, memoized by bitmask"""

    def __init__(self, net: Network, universe: Sequence[int]):
        self.net = net
        self.universe = list(universe)
        self._cache: Dict[int, int] = {}

    def __call__(self, mask: int) -> int:
        value = self._cache.get(mask)
        if value is None:
            value = max_flow(self.net, self.net.usable(members(mask, self.universe))).value
            self._cache[mask] = value
        return value

    def __len__(self) -> int:
        return len(self._cache)


def _check_size(net: Network, horizon: int, cap: int):
    size = len(net.potential_ids)
    if size > cap:
        raise TooLarge(size, cap)
    if horizon <= size:
        raise HorizonTooShort(horizon, size)


def exact_subset_dp(net: Network, horizon: int, cap: int = DEFAULT_EXACT_CAP) -> ExactResult:
    """
    Optimal cumulative flow by dynamic programming over built subsets

    value(S) is the best flow collected during the |S| periods in which
    exactly the arcs of S get built; the remaining periods run at the
    ultimate flow.

    Raises:
        TooLarge: if there are more than cap potential arcs
    """
    _check_size(net, horizon, cap)
    universe = list(net.potential_ids)
    m = len(universe)
    flows = _SubsetFlows(net, universe)

    full = (1 << m) - 1
    value = [0] * (full + 1)
    last = [-1] * (full + 1)
    for mask in range(1, full + 1):
        best = -1
        for i in range(m):
            bit = 1 << i
            if mask & bit:
                rest = mask ^ bit
                candidate = value[rest] + flows(rest)
                if candidate > best:
                    best = candidate
                    last[mask] = i
        value[mask] = best

    order: List[int] = []
    mask = full
    while mask:
        i = last[mask]
        order.append(universe[i])
        mask ^= 1 << i
    order.reverse()

    optimum = value[full] + (horizon - m) * flows(full)
    logger.debug(f"subset DP: {m} potential arcs, {len(flows)} subset flows")
    return ExactResult(optimum, BuildSchedule(tuple(order)), full + 1)


def brute_force_permutations(net: Network, horizon: int, cap: int = DEFAULT_BRUTE_CAP) -> ExactResult:
    """
    Optimal cumulative flow by trying every build order

    Every complete order is scored by evaluate_schedule. Orders are walked
    as a prefix tree in lexicographic order; a prefix is cut off when even
    the ultimate flow in all of its remaining periods cannot beat the best
    order found so far, so the first best order is the one returned.

    Raises:
        TooLarge: if there are more than cap potential arcs
    """
    _check_size(net, horizon, cap)
    universe = list(net.potential_ids)
    ultimate = max_flow(net, net.usable(universe)).value

    best = [-1, ()]
    explored = [0]
    prefix: List[int] = []

    def walk(remaining: List[int], collected: int):
        explored[0] += 1
        if not remaining:
            total = evaluate_schedule(net, horizon, prefix).total
            if total > best[0]:
                best[0], best[1] = total, tuple(prefix)
            return
        collected += max_flow(net, net.usable(prefix)).value
        if collected + (horizon - len(prefix) - 1) * ultimate <= best[0]:
            return
        for i, a in enumerate(remaining):
            prefix.append(a)
            walk(remaining[:i] + remaining[i + 1:], collected)
            prefix.pop()

    walk(universe, 0)
    logger.debug(f"brute force: {len(universe)} potential arcs, {explored[0]} prefixes")
    return ExactResult(best[0], BuildSchedule(best[1]), explored[0])


def certified_lower_bound(net: Network, horizon: int, schedule) -> int:
    """Cumulative flow of a feasible schedule, hence a lower bound on the optimum"""
    return evaluate_schedule(net, horizon, schedule).total
