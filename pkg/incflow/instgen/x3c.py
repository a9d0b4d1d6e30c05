"""Exact cover by 3-sets reduced to incremental maximum flow."""

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

from ..errors import HorizonTooShort, InvalidX3C
from ..netcore import Arc, ArcKind, Instance, Network


@dataclass(frozen=True)
class X3CInstance:
    """Universe {1..3n} and a collection of 3-element subsets"""
    n: int
    sets: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidX3C(f"n must be a positive integer, got {self.n!r}")
        normalized = []
        for subset in self.sets:
            members = tuple(sorted(subset))
            if len(members) != 3 or len(set(members)) != 3:
                raise InvalidX3C(f"{subset} does not have exactly 3 distinct elements")
            if members[0] < 1 or members[-1] > 3 * self.n:
                raise InvalidX3C(f"{subset} leaves the universe 1..{3 * self.n}")
            normalized.append(members)
        object.__setattr__(self, 'sets', tuple(normalized))

    @classmethod
    def parse(cls, n: int, sets: Iterable[Iterable[int]]) -> 'X3CInstance':
        return cls(n, tuple(tuple(s) for s in sets))


def cover_bound(x: X3CInstance, horizon: int) -> int:
    """Cumulative flow reachable exactly when an exact cover exists"""
    return 3 * x.n * (x.n - 1) // 2 + 3 * x.n * (horizon - x.n)


def gen_x3c(x: X3CInstance, horizon: Optional[int] = None) -> Instance:
    """
    Reduction network: one potential capacity-3 arc s->v_S per set, existing
    unit arcs v_S->w_i for i in S and w_i->t

    Raises:
        HorizonTooShort: if horizon does not exceed the number of sets
    """
    m = len(x.sets)
    if horizon is None:
        horizon = m + 1
    if horizon <= m:
        raise HorizonTooShort(horizon, m)

    source, sink = 0, 1
    set_node = [2 + i for i in range(m)]
    element_node = {e: 2 + m + e - 1 for e in range(1, 3 * x.n + 1)}

    arcs = []
    for i in range(m):
        arcs.append(Arc(len(arcs), source, set_node[i], 3, ArcKind.POTENTIAL))
    for i, members in enumerate(x.sets):
        for e in members:
            arcs.append(Arc(len(arcs), set_node[i], element_node[e], 1, ArcKind.EXISTING))
    for e in range(1, 3 * x.n + 1):
        arcs.append(Arc(len(arcs), element_node[e], sink, 1, ArcKind.EXISTING))

    net = Network(2 + m + 3 * x.n, source, sink, tuple(arcs))
    return Instance(net, horizon, f"x3c-n{x.n}-m{m}")
