"""
Network model and flow primitives for incflow

Holds the immutable network representation, Dinic maximum flow, unit-cost
minimum cost flow by successive shortest paths, and the residual labeling
used by the polynomial increment heuristic.
"""

import heapq
import logging
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import networkx as nx

from .errors import UnitCapacityRequired

logger = logging.getLogger(__name__)

UNREACHABLE = math.inf
UNBOUNDED = math.inf


class ArcKind(Enum):
    """Whether an arc is usable from the start or has to be built"""
    EXISTING = "E"
    POTENTIAL = "P"


@dataclass(frozen=True)
class Arc:
    """A directed arc with integer capacity"""
    id: int
    tail: int
    head: int
    capacity: int
    kind: ArcKind

    @property
    def is_potential(self) -> bool:
        return self.kind is ArcKind.POTENTIAL


@dataclass(frozen=True)
class Network:
    """Directed network with one source and one sink; immutable once built"""
    node_count: int
    source: int
    sink: int
    arcs: Tuple[Arc, ...]

    def __post_init__(self):
        object.__setattr__(self, 'arcs', tuple(self.arcs))

    @classmethod
    def build(cls, node_count: int, source: int, sink: int,
              arcs: Iterable[Tuple[int, int, int, Union[str, ArcKind]]]) -> 'Network':
        """Create a network from (tail, head, capacity, kind) tuples, numbering arcs in order"""
        built = []
        for i, (tail, head, capacity, kind) in enumerate(arcs):
            built.append(Arc(i, tail, head, capacity, ArcKind(kind)))
        return cls(node_count, source, sink, tuple(built))

    @cached_property
    def existing_ids(self) -> FrozenSet[int]:
        return frozenset(a.id for a in self.arcs if not a.is_potential)

    @cached_property
    def potential_ids(self) -> Tuple[int, ...]:
        return tuple(a.id for a in self.arcs if a.is_potential)

    @cached_property
    def is_unit_capacity(self) -> bool:
        return all(a.capacity == 1 for a in self.arcs)

    def usable(self, built: Iterable[int] = ()) -> FrozenSet[int]:
        """Arcs usable once `built` has been added to the existing arcs"""
        return self.existing_ids | frozenset(built)


@dataclass(frozen=True)
class FlowResult:
    """Integral s-t flow: its value and the flow on every arc"""
    value: int
    flow: Tuple[int, ...]

    @classmethod
    def zero(cls, net: Network) -> 'FlowResult':
        return cls(0, (0,) * len(net.arcs))

    def support(self) -> List[int]:
        return [a for a, x in enumerate(self.flow) if x > 0]


@dataclass(frozen=True)
class Instance:
    """A network together with its planning horizon"""
    network: Network
    horizon: int
    name: str = ""


class ResidualStep(NamedTuple):
    """One residual arc: the network arc and whether it is traversed forward"""
    arc_id: int
    forward: bool


def _step_key(step: ResidualStep) -> Tuple[int, int]:
    return (step.arc_id, 0 if step.forward else 1)


@dataclass(frozen=True)
class ResidualLabels:
    """Per-node labels (d, delta, p) over the residual graph"""
    d: Tuple[float, ...]
    delta: Tuple[float, ...]
    pred: Tuple[Optional[ResidualStep], ...]
    source: int
    sink: int

    def reachable(self, node: int) -> bool:
        return self.d[node] != UNREACHABLE

    def path_to(self, net: Network, node: int) -> List[ResidualStep]:
        """Residual steps from the source to node along the p-links"""
        if not self.reachable(node):
            return []
        steps = []
        v = node
        while v != self.source:
            step = self.pred[v]
            steps.append(step)
            arc = net.arcs[step.arc_id]
            v = arc.tail if step.forward else arc.head
        steps.reverse()
        return steps


def validate_network(net: Network) -> List[str]:
    """Return every invariant violation; an empty list means the network is valid"""
    violations = []
    n = net.node_count
    if not isinstance(n, int) or n < 1:
        violations.append(f"node_count must be a positive integer, got {n!r}")
        n = 0
    for label, node in (("source", net.source), ("sink", net.sink)):
        if not isinstance(node, int) or not 0 <= node < n:
            violations.append(f"{label} {node!r} is not a node")
    if net.source == net.sink:
        violations.append("source equals sink")

    seen: Dict[int, int] = {}
    for position, arc in enumerate(net.arcs):
        if arc.id in seen:
            violations.append(f"duplicate arc id {arc.id}")
        seen[arc.id] = position
        if arc.id != position:
            violations.append(f"arc ids must be dense 0..{len(net.arcs) - 1}: position {position} holds id {arc.id}")
        for label, node in (("tail", arc.tail), ("head", arc.head)):
            if not isinstance(node, int) or not 0 <= node < n:
                violations.append(f"arc {arc.id}: {label} {node!r} is not a node")
        if arc.tail == arc.head:
            violations.append(f"arc {arc.id}: self-loop")
        if not isinstance(arc.capacity, int) or isinstance(arc.capacity, bool) or arc.capacity < 1:
            violations.append(f"arc {arc.id}: capacity < 1")
        if not isinstance(arc.kind, ArcKind):
            violations.append(f"arc {arc.id}: unknown kind {arc.kind!r}")
    return violations


class _ResidualGraph:
    """Edge-list residual graph; edge 2i is a forward copy, 2i+1 its reverse"""

    def __init__(self, node_count: int):
        self.adj: List[List[int]] = [[] for _ in range(node_count)]
        self.to: List[int] = []
        self.cap: List[int] = []
        self.origin: List[int] = []

    def add_arc(self, arc: Arc) -> int:
        e = len(self.to)
        self.to.extend((arc.head, arc.tail))
        self.cap.extend((arc.capacity, 0))
        self.origin.extend((arc.id, arc.id))
        self.adj[arc.tail].append(e)
        self.adj[arc.head].append(e + 1)
        return e

    def flow_vector(self, arc_count: int) -> Tuple[int, ...]:
        flow = [0] * arc_count
        for e in range(0, len(self.to), 2):
            flow[self.origin[e]] = self.cap[e + 1]
        return tuple(flow)

    def push_limit(self) -> int:
        return sum(self.cap) + 1


def _levels(graph: _ResidualGraph, source: int, sink: int) -> List[int]:
    level = [-1] * len(graph.adj)
    level[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == sink:
            break
        for e in graph.adj[u]:
            v = graph.to[e]
            if graph.cap[e] > 0 and level[v] < 0:
                level[v] = level[u] + 1
                queue.append(v)
    return level


def _blocking_push(graph: _ResidualGraph, u: int, sink: int, pushed: int,
                   level: List[int], cursor: List[int]) -> int:
    if u == sink:
        return pushed
    edges = graph.adj[u]
    while cursor[u] < len(edges):
        e = edges[cursor[u]]
        v = graph.to[e]
        if graph.cap[e] > 0 and level[v] == level[u] + 1:
            sent = _blocking_push(graph, v, sink, min(pushed, graph.cap[e]), level, cursor)
            if sent > 0:
                graph.cap[e] -= sent
                graph.cap[e ^ 1] += sent
                return sent
        cursor[u] += 1
    return 0


def _dinic(graph: _ResidualGraph, source: int, sink: int) -> int:
    """Augment the residual graph to a maximum flow; returns the added value"""
    total = 0
    limit = graph.push_limit()
    while True:
        level = _levels(graph, source, sink)
        if level[sink] < 0:
            return total
        cursor = [0] * len(graph.adj)
        while True:
            sent = _blocking_push(graph, source, sink, limit, level, cursor)
            if sent == 0:
                break
            total += sent


def max_flow(net: Network, usable: Iterable[int]) -> FlowResult:
    """Maximum s-t flow using only the usable arcs"""
    graph = _ResidualGraph(net.node_count)
    for a in sorted(set(usable)):
        graph.add_arc(net.arcs[a])
    value = _dinic(graph, net.source, net.sink)
    return FlowResult(value, graph.flow_vector(len(net.arcs)))


def flow_bounds(net: Network) -> Tuple[int, int]:
    """Initial flow f on existing arcs and ultimate flow F on all arcs"""
    initial = max_flow(net, net.existing_ids).value
    ultimate = max_flow(net, range(len(net.arcs))).value
    return initial, ultimate


class IncrementalFlow:
    """Maximum flow kept current while arcs are switched on one at a time"""

    def __init__(self, net: Network, usable: Iterable[int] = ()):
        self.net = net
        self._graph = _ResidualGraph(net.node_count)
        self._active: set = set()
        for a in sorted(set(usable)):
            self._graph.add_arc(net.arcs[a])
            self._active.add(a)
        self.value = _dinic(self._graph, net.source, net.sink)

    def add(self, arc_id: int) -> int:
        """Make arc_id usable and return the new maximum flow value"""
        if arc_id not in self._active:
            self._active.add(arc_id)
            self._graph.add_arc(self.net.arcs[arc_id])
            self.value += _dinic(self._graph, self.net.source, self.net.sink)
        return self.value

    def result(self) -> FlowResult:
        return FlowResult(self.value, self._graph.flow_vector(len(self.net.arcs)))


def _require_unit(net: Network):
    for arc in net.arcs:
        if arc.capacity != 1:
            raise UnitCapacityRequired(arc.id)


def _shortest_path_tree(graph: _ResidualGraph, cost: Sequence[int], source: int):
    """Queue-based Bellman-Ford labels over edges with residual capacity"""
    n = len(graph.adj)
    dist: List[Optional[int]] = [None] * n
    pred = [-1] * n
    queued = [False] * n
    dist[source] = 0
    queue = deque([source])
    queued[source] = True
    while queue:
        u = queue.popleft()
        queued[u] = False
        du = dist[u]
        for e in graph.adj[u]:
            if graph.cap[e] <= 0:
                continue
            v = graph.to[e]
            candidate = du + cost[e]
            if dist[v] is None or candidate < dist[v]:
                dist[v] = candidate
                pred[v] = e
                if not queued[v]:
                    queue.append(v)
                    queued[v] = True
    return dist, pred


def min_cost_flow_unit(net: Network, built: Iterable[int], target: int,
                       candidates: Optional[Iterable[int]] = None,
                       prefer_low_ids: bool = False) -> Optional[Tuple[int, FlowResult]]:
    """
    Flow of value target using the fewest potential arcs outside built

    Existing and built arcs are free, every other potential arc (restricted
    to candidates when given) costs one. With prefer_low_ids the optimum is
    additionally the lexicographically smallest arc set of minimum size.

    Args:
        net: network with all capacities equal to 1
        built: potential arcs already available
        target: required flow value
        candidates: potential arcs that may be added (default: all)
        prefer_low_ids: break ties toward smaller arc ids

    Returns:
        (number of new arcs used, flow), or None when target is unreachable

    Raises:
        UnitCapacityRequired: if some arc has capacity above 1
    """
    _require_unit(net)
    built = frozenset(built)
    if target <= 0:
        return 0, FlowResult.zero(net)

    pool = set(net.potential_ids) if candidates is None else set(candidates) & set(net.potential_ids)
    new_arcs = sorted(pool - built)
    weights: Dict[int, int] = {a: 0 for a in net.usable(built)}
    size = len(new_arcs)
    for rank, a in enumerate(new_arcs):
        weights[a] = (1 << size) - (1 << (size - 1 - rank)) if prefer_low_ids else 1

    graph = _ResidualGraph(net.node_count)
    cost: List[int] = []
    for a in sorted(weights):
        graph.add_arc(net.arcs[a])
        cost.extend((weights[a], -weights[a]))

    value = 0
    while value < target:
        dist, pred = _shortest_path_tree(graph, cost, net.source)
        if dist[net.sink] is None:
            logger.debug(f"Target {target} unreachable, stopped at {value}")
            return None
        v = net.sink
        while v != net.source:
            e = pred[v]
            graph.cap[e] -= 1
            graph.cap[e ^ 1] += 1
            v = graph.to[e ^ 1]
        value += 1

    flow = graph.flow_vector(len(net.arcs))
    used = sum(1 for a in new_arcs if flow[a] > 0)
    return used, FlowResult(value, flow)


def residual_labels(net: Network, built: Iterable[int], base_flow: FlowResult,
                    candidates: Optional[Iterable[int]] = None) -> ResidualLabels:
    """
    Label every node with (d, delta, p) relative to base_flow

    d(v) is the fewest unbuilt potential arcs on an augmenting s-v path,
    delta(v) the largest augmentation among paths attaining d(v), and p(v)
    the last residual step of such a path. Unbuilt potential arcs carry
    weight 1 and their full capacity; usable arcs carry weight 0.
    """
    built = frozenset(built)
    usable = net.usable(built)
    pool = set(net.potential_ids) if candidates is None else set(candidates)
    unbuilt = pool - built

    out: List[List[Tuple[int, int, int, ResidualStep]]] = [[] for _ in range(net.node_count)]
    for arc in net.arcs:
        if arc.id in usable:
            x = base_flow.flow[arc.id]
            if arc.capacity - x > 0:
                out[arc.tail].append((arc.head, arc.capacity - x, 0, ResidualStep(arc.id, True)))
            if x > 0:
                out[arc.head].append((arc.tail, x, 0, ResidualStep(arc.id, False)))
        elif arc.id in unbuilt:
            out[arc.tail].append((arc.head, arc.capacity, 1, ResidualStep(arc.id, True)))

    n = net.node_count
    s = net.source
    dist: List[float] = [UNREACHABLE] * n
    dist[s] = 0
    deq = deque([s])
    while deq:
        u = deq.popleft()
        for v, _, weight, _ in out[u]:
            candidate = dist[u] + weight
            if candidate < dist[v]:
                dist[v] = candidate
                if weight == 0:
                    deq.appendleft(v)
                else:
                    deq.append(v)

    delta: List[float] = [0] * n
    delta[s] = UNBOUNDED
    done = [False] * n
    heap = [(-UNBOUNDED, s)]
    while heap:
        _, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v, capacity, _, _ in _tight_steps(out[u], dist, dist[u]):
            width = min(delta[u], capacity)
            if not done[v] and width > delta[v]:
                delta[v] = width
                heapq.heappush(heap, (-width, v))

    # Nodes attach in (d, -delta) order; within a tie the smallest step wins,
    # including steps from nodes whose width was settled later.
    pred: List[Optional[ResidualStep]] = [None] * n
    attached = [False] * n
    attached[s] = True
    offers: List[Tuple[float, float, Tuple[int, int], int, ResidualStep]] = []

    def offer(u: int):
        for v, capacity, _, step in _tight_steps(out[u], dist, dist[u]):
            if not attached[v] and min(delta[u], capacity) == delta[v]:
                heapq.heappush(offers, (dist[v], -delta[v], _step_key(step), v, step))

    offer(s)
    while offers:
        *_, v, step = heapq.heappop(offers)
        if attached[v]:
            continue
        attached[v] = True
        pred[v] = step
        offer(v)

    return ResidualLabels(tuple(dist), tuple(delta), tuple(pred), s, net.sink)


def _tight_steps(steps, dist: Sequence[float], d_tail: float):
    """Residual steps out of a node that lie on a fewest-arc path"""
    return [entry for entry in steps if dist[entry[0]] == d_tail + entry[2]]


def augment(net: Network, flow: FlowResult, path: Sequence[ResidualStep], amount: int) -> FlowResult:
    """Push amount units along a residual path"""
    values = list(flow.flow)
    for step in path:
        if step.forward:
            values[step.arc_id] += amount
        else:
            values[step.arc_id] -= amount
    return FlowResult(flow.value + amount, tuple(values))


def to_networkx(net: Network, usable: Optional[Iterable[int]] = None) -> nx.DiGraph:
    """Export as a networkx DiGraph; parallel arcs are merged by summed capacity"""
    keep = set(range(len(net.arcs))) if usable is None else set(usable)
    graph = nx.DiGraph(source=net.source, sink=net.sink)
    graph.add_nodes_from(range(net.node_count))
    for arc in net.arcs:
        if arc.id not in keep:
            continue
        if graph.has_edge(arc.tail, arc.head):
            data = graph[arc.tail][arc.head]
            data['capacity'] += arc.capacity
            data['arc_ids'].append(arc.id)
        else:
            graph.add_edge(arc.tail, arc.head, capacity=arc.capacity,
                           kind=arc.kind.value, arc_ids=[arc.id])
    return graph


def min_cut(net: Network, usable: Optional[Iterable[int]] = None) -> Tuple[int, FrozenSet[int]]:
    """Minimum s-t cut of the usable arcs computed by networkx: (value, source-side nodes)"""
    graph = to_networkx(net, usable)
    value, (source_side, _) = nx.minimum_cut(graph, net.source, net.sink)
    return int(value), frozenset(source_side)
