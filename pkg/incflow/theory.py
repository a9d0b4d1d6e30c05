"""
Checks of the approximation bounds on concrete instances

witness_y builds, in exact rational arithmetic, the dual point that proves
the 3/2 ratio of quickest increment for a given r. check_instance and
check_matching_instance run the heuristics and the exact solver on one
instance and report every bound as a Verdict.
"""

import json
import logging
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .errors import ConstraintViolated, NotMatchingStructure
from .exact import DEFAULT_EXACT_CAP, exact_subset_dp
from .heur import level_counts, quickest_increment, quickest_to_ultimate
from .instgen.random_graphs import bipartite_sides, random_corpus
from .netcore import Network, flow_bounds
from .subprob import CValues, c_values

logger = logging.getLogger(__name__)

THREE_HALVES = Fraction(3, 2)

Pair = Tuple[int, int]


@dataclass(frozen=True)
class WitnessY:
    """Point (x, y, z) of the dual system for ratio gamma; y is stored sparsely"""
    r: int
    gamma: Fraction
    x: Tuple[Fraction, ...]
    y: Dict[Pair, Fraction]
    z: Fraction

    def y_at(self, i: int, j: int) -> Fraction:
        return self.y.get((i, j), Fraction(0))

    def x_at(self, i: int) -> Fraction:
        if i < 0 or i >= self.r - 1:
            return Fraction(0)
        return self.x[i]


def _block(r: int) -> int:
    return (r + 2) // 3


@lru_cache(maxsize=None)
def _initial_segment(r: int) -> Tuple[Tuple[Pair, Fraction], ...]:
    """Nonzero y_ij for rows i <= s; each row i covers r - 3i/2 and each column sum stays <= 1"""
    if r == 2:
        y = {(0, 1): Fraction(1), (0, 2): Fraction(1, 2), (1, 2): Fraction(1, 2)}
    elif r == 4:
        y = {
            (0, 1): Fraction(1), (0, 2): Fraction(1), (0, 3): Fraction(1, 3),
            (1, 3): Fraction(2, 3), (1, 4): Fraction(7, 18),
            (2, 4): Fraction(1, 2),
        }
    elif r == 7:
        # The three-column extension below overfills column 6 at r = 7.
        y = {
            (0, 1): Fraction(1), (0, 2): Fraction(1), (0, 3): Fraction(1), (0, 4): Fraction(1, 2),
            (1, 4): Fraction(1, 2), (1, 5): Fraction(1),
            (2, 6): Fraction(1),
            (3, 7): Fraction(5, 8),
        }
    elif r % 3 in (0, 2):
        y = dict(_initial_segment(r - 1))
        for i in range(_block(r) + 1):
            y[(i, r)] = Fraction(1, r - i)
    else:
        s = _block(r)
        y = dict(_initial_segment(r - 3))
        i0 = (r - 5) // 4
        for i in range(i0 + 1):
            y[(i, r - 2)] = Fraction(3, (r - 2) - i)
        for i in range(i0 + 1, s):
            y[(i, r - 1)] = Fraction(3, (r - 1) - i)
        y[(s, r)] = Fraction(3 * (r - 2), 4 * (r - 1))
    return tuple(sorted(y.items()))


def verify_witness(w: WitnessY):
    """Raise ConstraintViolated naming the first constraint the point breaks"""
    r = w.r
    if len(w.x) != r - 1:
        raise ConstraintViolated("boundary")
    column = [Fraction(0)] * (r + 1)
    row = [Fraction(0)] * (r + 1)
    for (i, j), value in w.y.items():
        if not 0 <= i < j <= r:
            raise ConstraintViolated("y_index", (i, j))
        if value < 0:
            raise ConstraintViolated("y_nonnegative", (i, j))
        column[j] += value
        row[i] += (j - i) * value
    for j in range(1, r + 1):
        if column[j] > 1:
            raise ConstraintViolated("column_sum", j)
    for i in range(r):
        if w.z + row[i] + w.x_at(i) - w.x_at(i - 1) < w.gamma * (r - i):
            raise ConstraintViolated("coverage", i)
    if w.z > r * (w.gamma - 1):
        raise ConstraintViolated("z_cap")
    if w.z < 0:
        raise ConstraintViolated("z_nonnegative")
    for i, value in enumerate(w.x):
        if value < 0:
            raise ConstraintViolated("x_nonnegative", i)


def witness_y(r: int) -> WitnessY:
    """
    Exact point of the dual system for gamma = 3/2

    Raises:
        ValueError: if r < 2
        ConstraintViolated: if the constructed point breaks a constraint
    """
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    s = _block(r)
    y = dict(_initial_segment(r))
    x = []
    for i in range(r - 1):
        if i <= s:
            x.append(Fraction(0))
        else:
            x.append((i - s) * (r - THREE_HALVES * s - Fraction(3, 4) * (i - s + 1)))
    witness = WitnessY(r, THREE_HALVES, tuple(x), y, Fraction(r, 2))
    verify_witness(witness)
    return witness


@dataclass(frozen=True)
class Verdict:
    """One checked bound"""
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class RatioRecord:
    """Values measured on one instance"""
    instance_id: str
    z_star: int
    z1: int
    z2: int
    r: int
    f: int
    F: int
    T: int
    c: CValues
    extra: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['c'] = list(self.c.c)
        return data


def _nondecreasing(values: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(values, values[1:]))


def _measure(net: Network, horizon: int, instance_id: str, exact_cap: int):
    values = c_values(net)
    initial, ultimate = flow_bounds(net)
    qtu = quickest_to_ultimate(net, horizon)
    qi = quickest_increment(net, horizon)
    best = exact_subset_dp(net, horizon, cap=exact_cap)
    record = RatioRecord(instance_id, best.optimum, qtu.total, qi.total,
                         ultimate - initial, initial, ultimate, horizon, values)
    lam = level_counts(qtu, initial, record.r)
    mu = level_counts(qi, initial, record.r)
    return record, lam, mu


def check_instance(net: Network, horizon: int, instance_id: str = "",
                   exact_cap: int = DEFAULT_EXACT_CAP) -> Tuple[RatioRecord, List[Verdict]]:
    """
    Run both heuristics and the exact solver and check every bound

    Raises:
        UnitCapacityRequired: on capacities above 1
        TooLarge: if the exact solver's cap is exceeded
    """
    record, lam, mu = _measure(net, horizon, instance_id, exact_cap)
    r, c = record.r, record.c.c
    ceiling = record.T * record.F
    zs, z1, z2 = record.z_star, record.z1, record.z2

    verdicts = []

    def add(name: str, passed: bool, detail: str):
        verdicts.append(Verdict(name, bool(passed), detail))

    bound = ceiling - record.c.total()
    add("upper_bound", zs <= bound, f"z*={zs} <= TF - sum c = {bound}")
    weak = ceiling - r * (r - 1) // 2 - c[r]
    add("weak_upper_bound", zs <= weak, f"z*={zs} <= TF - r(r-1)/2 - c_r = {weak}")
    add("c_monotone", c[0] == 0 and _nondecreasing(c), f"c={list(c)}")
    add("c_at_least_j", all(c[j] >= j for j in range(r + 1)), f"c={list(c)}")

    for name, total, counts in (("qtu", z1, lam), ("qi", z2, mu)):
        identity = ceiling - sum(counts[i] * (r - i) for i in range(r))
        add(f"trace_identity_{name}", identity == total, f"{name} total {total}, from trace {identity}")
    add("monotone_lambda", _nondecreasing(lam[:r]), f"lambda={lam[:r]}")
    add("monotone_mu", _nondecreasing(mu[:r]), f"mu={mu[:r]}")

    broken = [(i, j) for i in range(r) for j in range(i + 1, r + 1) if mu[i] * (j - i) > c[j]]
    add("mu_bound", not broken, f"mu_i*(j-i) <= c_j fails at {broken}" if broken else "mu_i*(j-i) <= c_j")

    add("heuristics_below_optimum", z1 <= zs and z2 <= zs, f"z1={z1}, z2={z2}, z*={zs}")
    add("qtu_within_2", zs <= 2 * z1, f"z*={zs} <= 2*z1 = {2 * z1}")
    sharp = Fraction(4 * z1 - r * (r - 1), 2)
    add("qtu_within_2_sharp", zs <= sharp, f"z*={zs} <= 2*z1 - r(r-1)/2 = {sharp}")
    add("qi_within_3_2", 2 * zs <= 3 * z2, f"z*={zs} <= 3/2*z2 = {Fraction(3 * z2, 2)}")
    return record, verdicts


def validate_matching_structure(net: Network) -> Tuple[List[int], List[int]]:
    """
    Left and right node lists of a matching network

    Raises:
        NotMatchingStructure: unless every arc is an existing unit arc s->v,
            an existing unit arc w->t or a unit arc v->w
    """
    left, right = bipartite_sides(net)
    if not left or not right:
        raise NotMatchingStructure("source or sink has no arcs")
    if set(left) & set(right):
        raise NotMatchingStructure("a node is adjacent to both source and sink")
    left_set, right_set = set(left), set(right)
    for arc in net.arcs:
        if arc.capacity != 1:
            raise NotMatchingStructure(f"arc {arc.id} has capacity {arc.capacity}")
        if arc.tail == net.source or arc.head == net.sink:
            if arc.is_potential:
                raise NotMatchingStructure(f"boundary arc {arc.id} must be existing")
            if arc.tail == net.source and arc.head == net.sink:
                raise NotMatchingStructure(f"arc {arc.id} joins source and sink")
            continue
        if arc.tail not in left_set or arc.head not in right_set:
            raise NotMatchingStructure(f"arc {arc.id} does not run from the left side to the right side")
    return left, right


def check_matching_instance(net: Network, horizon: int, instance_id: str = "",
                            exact_cap: int = DEFAULT_EXACT_CAP) -> Tuple[RatioRecord, List[Verdict]]:
    """Bounds specific to incremental matching, plus the 3/2 ratio of quickest increment"""
    validate_matching_structure(net)
    record, lam, mu = _measure(net, horizon, instance_id, exact_cap)
    r, f, F = record.r, record.f, record.F
    c_r = record.c.c[r]
    ceiling = record.T * F
    zs, z1, z2 = record.z_star, record.z1, record.z2

    verdicts = [Verdict("qtu_within_4_3", 3 * zs <= 4 * z1, f"z*={zs} <= 4/3*z1 = {Fraction(4 * z1, 3)}")]
    if f >= r:
        bound = ceiling - Fraction(c_r * (r + 1), 2)
    else:
        bound = ceiling - Fraction(c_r * F + r * (r - f) + 2 * c_r, 4)
    verdicts.append(Verdict("qtu_lower_bound", z1 >= bound, f"z1={z1} >= {bound} (f={f}, r={r})"))

    alpha = [r - i for i in range(r)]
    beta = lam[:r]
    left_side = r * sum(a * b for a, b in zip(alpha, beta))
    right_side = sum(beta) * sum(alpha)
    verdicts.append(Verdict("averaging", left_side <= right_side,
                            f"r*sum(alpha*beta)={left_side} <= sum(beta)*sum(alpha)={right_side}"))
    verdicts.append(Verdict("qi_within_3_2", 2 * zs <= 3 * z2, f"z*={zs} <= 3/2*z2 = {Fraction(3 * z2, 2)}"))
    return record, verdicts


SUITES = ('unit-capacity', 'matching')


def run_suite(suite: str, count: int, seed: int,
              exact_cap: int = DEFAULT_EXACT_CAP) -> List[Tuple[RatioRecord, List[Verdict]]]:
    """Check every instance of a seeded random corpus"""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    check = check_matching_instance if suite == 'matching' else check_instance
    results = []
    for index, inst in enumerate(random_corpus(suite, count, seed)):
        record, verdicts = check(inst.network, inst.horizon, f"{suite}-{index:04d}", exact_cap)
        failed = [v.name for v in verdicts if not v.passed]
        if failed:
            logger.error(f"{record.instance_id} ({inst.name}) failed: {', '.join(failed)}")
        results.append((record, verdicts))
    logger.info(f"Suite {suite}: {count} instances checked")
    return results


def all_passed(results: Sequence[Tuple[RatioRecord, List[Verdict]]]) -> bool:
    return all(v.passed for _, verdicts in results for v in verdicts)


def verdicts_to_jsonl(results: Sequence[Tuple[RatioRecord, List[Verdict]]]) -> str:
    """One JSON object per instance: its record, its verdicts and an overall flag"""
    lines = []
    for record, verdicts in results:
        lines.append(json.dumps({
            'instance': record.instance_id,
            'passed': all(v.passed for v in verdicts),
            'record': record.to_dict(),
            'verdicts': [asdict(v) for v in verdicts],
        }, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")
