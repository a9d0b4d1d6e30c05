"""
Seeded random instance generators

Every generator is a pure function of its parameters: arcs are drawn pair by
pair in row-major order, each included pair consuming a kind draw and then a
capacity draw. Source and sink are the first and last node.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

from ..errors import InvalidInstance
from ..netcore import Arc, ArcKind, Instance, Network
from .prng import SplitMix64, derive_seed

logger = logging.getLogger(__name__)


def _check_probability(name: str, value: float, allow_zero: bool = True):
    low_ok = value >= 0 if allow_zero else value > 0
    if not (low_ok and value <= 1):
        raise InvalidInstance(f"{name} must lie in {'[0' if allow_zero else '(0'}, 1], got {value}")


@dataclass(frozen=True)
class GeneralParams:
    """Random digraph: arc probability d, potential probability p, capacities 1..u_max"""
    n: int
    d: float
    p: float
    u_max: int
    seed: int
    slack: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInstance(f"n must be at least 2, got {self.n}")
        _check_probability("d", self.d)
        _check_probability("p", self.p)
        if self.u_max < 1:
            raise InvalidInstance(f"u_max must be at least 1, got {self.u_max}")
        if self.slack < 1:
            raise InvalidInstance(f"slack must be at least 1, got {self.slack}")

    @property
    def label(self) -> str:
        return f"general-n{self.n}-d{self.d}-p{self.p}-u{self.u_max}-s{self.seed}"


@dataclass(frozen=True)
class LayeredParams:
    """Layered digraph: source, `layers` layers of `n` nodes each, sink"""
    layers: int
    n: int
    d: float
    p: float
    u_max: int
    seed: int
    slack: int = 1

    def __post_init__(self):
        if self.layers < 2:
            raise InvalidInstance(f"layers must be at least 2, got {self.layers}")
        if self.n < 1:
            raise InvalidInstance(f"n must be at least 1, got {self.n}")
        _check_probability("d", self.d)
        _check_probability("p", self.p)
        if self.u_max < 1:
            raise InvalidInstance(f"u_max must be at least 1, got {self.u_max}")
        if self.slack < 1:
            raise InvalidInstance(f"slack must be at least 1, got {self.slack}")

    @property
    def label(self) -> str:
        return f"layered-l{self.layers}-n{self.n}-d{self.d}-p{self.p}-u{self.u_max}-s{self.seed}"


@dataclass(frozen=True)
class BipartiteParams:
    """Matching network: source to every left node, right nodes to sink, random middle arcs"""
    left: int
    right: int
    d: float
    p: float
    seed: int
    slack: int = 1

    def __post_init__(self):
        if self.left < 1 or self.right < 1:
            raise InvalidInstance("both sides need at least one node")
        _check_probability("d", self.d)
        _check_probability("p", self.p)
        if self.slack < 1:
            raise InvalidInstance(f"slack must be at least 1, got {self.slack}")

    @property
    def label(self) -> str:
        return f"bipartite-{self.left}x{self.right}-d{self.d}-p{self.p}-s{self.seed}"


def _draw_arc(rng: SplitMix64, arcs: List[Arc], tail: int, head: int, d: float, p: float, u_max: int):
    if rng.random() < d:
        kind = ArcKind.POTENTIAL if rng.random() < p else ArcKind.EXISTING
        capacity = rng.randint(1, u_max)
        arcs.append(Arc(len(arcs), tail, head, capacity, kind))


def _finish(node_count: int, source: int, sink: int, arcs: List[Arc], slack: int, name: str) -> Instance:
    net = Network(node_count, source, sink, tuple(arcs))
    horizon = len(net.potential_ids) + slack
    logger.debug(f"Generated {name}: {len(arcs)} arcs, {len(net.potential_ids)} potential")
    return Instance(net, horizon, name)


def gen_general(params: GeneralParams) -> Instance:
    """Random digraph on n nodes with source 0 and sink n-1"""
    rng = SplitMix64(params.seed)
    arcs: List[Arc] = []
    for i in range(params.n):
        for j in range(params.n):
            if i != j:
                _draw_arc(rng, arcs, i, j, params.d, params.p, params.u_max)
    return _finish(params.n, 0, params.n - 1, arcs, params.slack, params.label)


def layer_node(params: LayeredParams, layer: int, index: int) -> int:
    return 1 + layer * params.n + index


def gen_layered(params: LayeredParams) -> Instance:
    """
    Layered digraph with arcs only between consecutive layers

    The source feeds every first-layer node and every last-layer node feeds
    the sink through existing arcs of capacity u_max; only inter-layer arcs
    are random.
    """
    rng = SplitMix64(params.seed)
    sink = params.layers * params.n + 1
    arcs: List[Arc] = []
    for i in range(params.n):
        arcs.append(Arc(len(arcs), 0, layer_node(params, 0, i), params.u_max, ArcKind.EXISTING))
    for layer in range(params.layers - 1):
        for i in range(params.n):
            for j in range(params.n):
                _draw_arc(rng, arcs, layer_node(params, layer, i), layer_node(params, layer + 1, j),
                          params.d, params.p, params.u_max)
    for i in range(params.n):
        arcs.append(Arc(len(arcs), layer_node(params, params.layers - 1, i), sink,
                        params.u_max, ArcKind.EXISTING))
    return _finish(sink + 1, 0, sink, arcs, params.slack, params.label)


def gen_bipartite(params: BipartiteParams) -> Instance:
    """Unit-capacity matching network; left nodes 1..left, right nodes after them"""
    rng = SplitMix64(params.seed)
    sink = params.left + params.right + 1
    left = [1 + i for i in range(params.left)]
    right = [1 + params.left + j for j in range(params.right)]
    arcs: List[Arc] = []
    for v in left:
        arcs.append(Arc(len(arcs), 0, v, 1, ArcKind.EXISTING))
    for w in right:
        arcs.append(Arc(len(arcs), w, sink, 1, ArcKind.EXISTING))
    for v in left:
        for w in right:
            _draw_arc(rng, arcs, v, w, params.d, params.p, 1)
    return _finish(sink + 1, 0, sink, arcs, params.slack, params.label)


def bipartite_sides(net: Network) -> Tuple[List[int], List[int]]:
    """Left nodes fed by the source and right nodes draining into the sink"""
    left = sorted({a.head for a in net.arcs if a.tail == net.source})
    right = sorted({a.tail for a in net.arcs if a.head == net.sink})
    return left, right


CORPUS_KINDS = ('mixed', 'unit-capacity', 'matching')
_DENSITIES = (0.3, 0.5, 0.7)


def random_corpus(kind: str, count: int, seed: int, max_potential: int = 8) -> List[Instance]:
    """
    Small seeded instances for oracle and property suites

    'mixed' alternates general and layered networks with capacities up to
    1, 3 or 10; 'unit-capacity' does the same with unit capacities;
    'matching' draws bipartite matching networks. Draws with more than
    max_potential potential arcs are rejected and redrawn.
    """
    if kind not in CORPUS_KINDS:
        raise InvalidInstance(f"unknown corpus kind {kind!r}; choose from {', '.join(CORPUS_KINDS)}")

    corpus: List[Instance] = []
    for index in range(count):
        rng = SplitMix64(derive_seed(seed, index))
        while True:
            d = _DENSITIES[rng.randint(0, 2)]
            p = _DENSITIES[rng.randint(0, 2)]
            inst_seed = rng.next_u64()
            if kind == 'matching':
                inst = gen_bipartite(BipartiteParams(rng.randint(1, 6), rng.randint(1, 6), d, p, inst_seed))
            else:
                u_max = 1 if kind == 'unit-capacity' else (1, 3, 10)[rng.randint(0, 2)]
                if index % 2 == 0:
                    inst = gen_general(GeneralParams(rng.randint(4, 7), d, p, u_max, inst_seed))
                else:
                    inst = gen_layered(LayeredParams(rng.randint(2, 3), 2, d, p, u_max, inst_seed))
            if len(inst.network.potential_ids) <= max_potential:
                corpus.append(inst)
                break
    return corpus
