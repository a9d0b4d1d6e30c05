"""
Adversarial families and small matching instances

Each constructor returns the instance together with the totals the
heuristics are known to reach on it. F1 uses general capacities, everything
else unit capacities. The families F2 to F4 are assembled from one gadget:
two fresh nodes x and y, existing arcs s->x and y->t, a potential middle
path x~>y and two potential side paths x~>t and s~>y. One unit of flow needs
the middle path or one side path; two units need both side paths, and the
middle path is then useless.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..errors import KTooSmall
from ..netcore import Arc, ArcKind, Instance, Network

logger = logging.getLogger(__name__)

SOURCE = 0
SINK = 1

FAMILY_K_MIN = {'F1': 1, 'F2': 3, 'F3': 3, 'F4': 3, 'F5': 2}
MATCHING_INSTANCES = ('M1', 'M2')


@dataclass(frozen=True)
class PredictedValues:
    """Known totals for a constructed instance"""
    qtu_total: Optional[int]
    qi_total: Optional[int]
    best_total: int
    best_is_optimal: bool
    best_schedule: Tuple[int, ...]
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'qtu_total': self.qtu_total,
            'qi_total': self.qi_total,
            'best_total': self.best_total,
            'best_is_optimal': self.best_is_optimal,
            'best_schedule': list(self.best_schedule),
            'extra': dict(self.extra),
        }


class _Builder:
    """Collects nodes and arcs; node 0 is the source, node 1 the sink"""

    def __init__(self):
        self.node_count = 2
        self.arcs: List[Arc] = []

    def node(self) -> int:
        self.node_count += 1
        return self.node_count - 1

    def arc(self, tail: int, head: int, kind: ArcKind, capacity: int = 1) -> int:
        self.arcs.append(Arc(len(self.arcs), tail, head, capacity, kind))
        return self.arcs[-1].id

    def existing(self, tail: int, head: int, capacity: int = 1) -> int:
        return self.arc(tail, head, ArcKind.EXISTING, capacity)

    def path(self, tail: int, head: int, length: int) -> List[int]:
        """Potential unit path of `length` arcs through fresh inner nodes"""
        ids = []
        current = tail
        for step in range(length):
            nxt = head if step == length - 1 else self.node()
            ids.append(self.arc(current, nxt, ArcKind.POTENTIAL))
            current = nxt
        return ids

    def gadget(self, middle: int, side: int) -> Dict[str, List[int]]:
        x = self.node()
        y = self.node()
        self.existing(SOURCE, x)
        self.existing(y, SINK)
        return {
            'middle': self.path(x, y, middle),
            'up': self.path(x, SINK, side),
            'down': self.path(SOURCE, y, side),
        }

    def instance(self, horizon: int, name: str) -> Instance:
        return Instance(Network(self.node_count, SOURCE, SINK, tuple(self.arcs)), horizon, name)


def _family_f1(k: int) -> Tuple[Instance, PredictedValues]:
    # Widest single arc first is better here than the widest augmenting path.
    b = _Builder()
    x = b.node()
    w = b.node()
    b.existing(x, SINK, k + 1)
    b.existing(x, w, k + 1)
    b.existing(w, SINK, k + 1)
    upper = b.arc(SOURCE, x, ArcKind.POTENTIAL, 2 * k + 2)
    lower = b.arc(SOURCE, SINK, ArcKind.POTENTIAL, k + 2)
    predicted = PredictedValues(
        qtu_total=5 * k + 6,
        qi_total=5 * k + 6,
        best_total=5 * k + 6,
        best_is_optimal=True,
        best_schedule=(upper, lower),
        extra={'qip_total': 4 * k + 6, 'qtt_total': 5 * k + 6, 'upper_arc': upper, 'lower_arc': lower},
    )
    return b.instance(3, f"F1-k{k}"), predicted


def _family_f2(k: int) -> Tuple[Instance, PredictedValues]:
    b = _Builder()
    g = b.gadget(1, k)
    predicted = PredictedValues(
        qtu_total=k + 4,
        qi_total=2 * k + 2,
        best_total=2 * k + 2,
        best_is_optimal=True,
        best_schedule=tuple(g['middle'] + g['up'] + g['down']),
    )
    return b.instance(2 * k + 2, f"F2-k{k}"), predicted


def _family_f3(k: int) -> Tuple[Instance, PredictedValues]:
    b = _Builder()
    g = b.gadget(k - 1, k)
    predicted = PredictedValues(
        qtu_total=3 * k,
        qi_total=2 * k + 2,
        best_total=3 * k,
        best_is_optimal=True,
        best_schedule=tuple(g['up'] + g['down']),
    )
    return b.instance(3 * k, f"F3-k{k}"), predicted


def _family_f4(k: int) -> Tuple[Instance, PredictedValues]:
    b = _Builder()
    short = b.gadget(1, k)
    long = b.gadget(k - 1, k)
    predicted = PredictedValues(
        qtu_total=10 * k + 4,
        qi_total=11 * k + 3,
        best_total=13 * k,
        best_is_optimal=False,
        best_schedule=tuple(short['middle'] + long['up'] + long['down'] + short['up'] + short['down']),
        extra={'qtt_targets': [1, 3, 4], 'qtt_total': 13 * k},
    )
    return b.instance(5 * k + 1, f"F4-k{k}"), predicted


def _family_f5(k: int) -> Tuple[Instance, PredictedValues]:
    b = _Builder()
    a0, b0, p0 = b.node(), b.node(), b.node()
    a, bb, p = b.node(), b.node(), b.node()
    for start in (a0, b0, p0):
        b.existing(SOURCE, start)
    for end in (a, bb, p):
        b.existing(end, SINK)
    route_a = b.path(a0, a, k + 1)
    route_b = b.path(b0, bb, k + 1)
    route_p = b.path(p0, p, 2 * k + 1)
    b.path(a0, bb, k - 1)
    b.path(a0, p, k)
    b.path(p0, bb, k)
    predicted = PredictedValues(
        qtu_total=14 * k + 3,
        qi_total=10 * k + 9,
        best_total=14 * k + 3,
        best_is_optimal=False,
        best_schedule=tuple(route_a + route_b + route_p),
    )
    return b.instance(7 * k + 3, f"F5-k{k}"), predicted


_FAMILIES = {
    'F1': _family_f1,
    'F2': _family_f2,
    'F3': _family_f3,
    'F4': _family_f4,
    'F5': _family_f5,
}


def gen_family(which: str, k: int) -> Tuple[Instance, PredictedValues]:
    """
    Instance of an adversarial family and its predicted totals

    Raises:
        KeyError: for an unknown family name
        KTooSmall: if k is below the family's minimum
    """
    which = which.upper()
    if which not in _FAMILIES:
        raise KeyError(f"unknown family {which!r}; choose from {', '.join(_FAMILIES)}")
    if k < FAMILY_K_MIN[which]:
        raise KTooSmall(which, k, FAMILY_K_MIN[which])
    return _FAMILIES[which](k)


# Matching instances use the labels 1..2m of the drawings: odd labels on the
# left, even labels on the right; label l becomes node l + 1.
_MATCHING_DATA = {
    'M1': {
        'left': range(1, 16, 2),
        'right': range(2, 17, 2),
        'existing': [(9, 2), (11, 10), (13, 12), (7, 16), (5, 8), (3, 6)],
        'potential': [(1, 2), (3, 4), (5, 6), (7, 8), (9, 10), (11, 12), (13, 14), (15, 16), (9, 4)],
        'horizon': 10,
    },
    'M2': {
        'left': range(1, 14, 2),
        'right': range(2, 15, 2),
        'existing': [(7, 8), (1, 6), (3, 2), (13, 12), (9, 14)],
        'potential': [(1, 2), (3, 4), (5, 6), (9, 10), (11, 12), (13, 14), (5, 8), (7, 10)],
        'horizon': 9,
    },
}


def gen_matching(which: str) -> Tuple[Instance, PredictedValues]:
    """Bipartite instance on which one heuristic is strictly suboptimal"""
    which = which.upper()
    if which not in _MATCHING_DATA:
        raise KeyError(f"unknown matching instance {which!r}; choose from {', '.join(MATCHING_INSTANCES)}")
    data = _MATCHING_DATA[which]
    b = _Builder()
    b.node_count = 2 + max(data['right'])
    for v in data['left']:
        b.existing(SOURCE, v + 1)
    for w in data['right']:
        b.existing(w + 1, SINK)
    for v, w in data['existing']:
        b.existing(v + 1, w + 1)
    potential = {pair: b.arc(pair[0] + 1, pair[1] + 1, ArcKind.POTENTIAL) for pair in data['potential']}

    if which == 'M1':
        first = [potential[(1, 2)], potential[(9, 4)]]
        rest = [a for pair, a in potential.items() if a not in first]
        predicted = PredictedValues(
            qtu_total=68,
            qi_total=69,
            best_total=69,
            best_is_optimal=True,
            best_schedule=tuple(first + rest),
        )
    else:
        order = [(5, 6), (1, 2), (3, 4), (11, 12), (13, 14), (9, 10)]
        predicted = PredictedValues(
            qtu_total=54,
            qi_total=53,
            best_total=54,
            best_is_optimal=True,
            best_schedule=tuple(potential[pair] for pair in order),
        )
    return b.instance(data['horizon'], which), predicted
