"""
LP-file emitters for the two mixed-integer formulations

Both models are written in the CPLEX LP text dialect with deterministic
names: x_a{id}_k{k} is the flow on arc id in period (or level) k and
y_a{id}_k{k} says whether the potential arc is available. Emitting the same
instance twice gives identical text.

The period model maximizes cumulative flow over k = 1..T. The level model
minimizes the number of (arc, level) availabilities needed to lift the flow
through f+1..F; the cumulative flow equals T*F minus its optimum.
"""

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

from .netcore import Arc, Instance, Network, flow_bounds
from .utils import write_text_lf

logger = logging.getLogger(__name__)

Term = Tuple[int, str]


def x_name(arc_id: int, k: int) -> str:
    return f"x_a{arc_id}_k{k}"


def y_name(arc_id: int, k: int) -> str:
    return f"y_a{arc_id}_k{k}"


def _expression(terms: Sequence[Term]) -> str:
    if not terms:
        return "0"
    parts = []
    for coef, name in terms:
        sign = "-" if coef < 0 else "+"
        size = abs(coef)
        parts.append(f"{sign} {name}" if size == 1 else f"{sign} {size} {name}")
    return " ".join(parts)


@dataclass
class _LPModel:
    """Rows collected in emission order and rendered once at the end"""
    sense: str
    comment: List[str]
    objective: List[Term] = field(default_factory=list)
    rows: List[Tuple[str, List[Term], str, int]] = field(default_factory=list)
    continuous: List[str] = field(default_factory=list)
    binaries: List[str] = field(default_factory=list)

    def row(self, name: str, terms: List[Term], op: str, rhs: int):
        if terms:
            self.rows.append((name, terms, op, rhs))

    def render(self) -> str:
        out = [f"\\* {line} *\\" for line in self.comment]
        out.append("")
        out.append(self.sense)
        out.append(f" obj: {_expression(self.objective)}")
        out.append("Subject To")
        for name, terms, op, rhs in self.rows:
            out.append(f" {name}: {_expression(terms)} {op} {rhs}")
        if self.continuous:
            out.append("Bounds")
            for name in self.continuous:
                out.append(f" {name} >= 0")
        if self.binaries:
            out.append("Binaries")
            for name in self.binaries:
                out.append(f" {name}")
        out.append("End")
        return "\n".join(out) + "\n"


def _source_terms(net: Network, k: int) -> List[Term]:
    """Net outflow of the source in period k"""
    terms: List[Term] = []
    for arc in net.arcs:
        if arc.tail == net.source:
            terms.append((1, x_name(arc.id, k)))
        elif arc.head == net.source:
            terms.append((-1, x_name(arc.id, k)))
    return terms


def _conservation(model: _LPModel, net: Network, k: int):
    for v in range(net.node_count):
        if v in (net.source, net.sink):
            continue
        terms: List[Term] = []
        for arc in net.arcs:
            if arc.tail == v:
                terms.append((1, x_name(arc.id, k)))
            elif arc.head == v:
                terms.append((-1, x_name(arc.id, k)))
        model.row(f"flow_v{v}_k{k}", terms, "=", 0)


def _capacity(model: _LPModel, arc: Arc, k: int):
    if arc.is_potential:
        model.row(f"link_a{arc.id}_k{k}", [(1, x_name(arc.id, k)), (-arc.capacity, y_name(arc.id, k))], "<=", 0)
    else:
        model.row(f"cap_a{arc.id}_k{k}", [(1, x_name(arc.id, k))], "<=", arc.capacity)


def emit_imfp1(net: Network, horizon: int, name: str = "") -> str:
    """Period model: one flow copy per period, build variables monotone in k, one build per period"""
    potential = net.potential_ids
    model = _LPModel("Maximize", [f"incflow period model name={name or 'instance'} T={horizon}"])

    for k in range(1, horizon + 1):
        model.objective.extend(_source_terms(net, k))
    for k in range(1, horizon + 1):
        _conservation(model, net, k)
        for arc in net.arcs:
            _capacity(model, arc, k)
    for a in potential:
        for k in range(1, horizon):
            model.row(f"mono_a{a}_k{k}", [(1, y_name(a, k)), (-1, y_name(a, k + 1))], "<=", 0)
    for a in potential:
        model.row(f"init_a{a}", [(1, y_name(a, 1))], "=", 0)
    for k in range(2, horizon + 1):
        terms: List[Term] = []
        for a in potential:
            terms.append((1, y_name(a, k)))
            terms.append((-1, y_name(a, k - 1)))
        model.row(f"once_k{k}", terms, "<=", 1)

    model.continuous = [x_name(arc.id, k) for k in range(1, horizon + 1) for arc in net.arcs]
    model.binaries = [y_name(a, k) for a in potential for k in range(1, horizon + 1)]
    return model.render()


def emit_imfp2(net: Network, horizon: int, name: str = "") -> str:
    """Level model: one flow copy per increment level, availability monotone upward in k"""
    initial, ultimate = flow_bounds(net)
    r = ultimate - initial
    ceiling = horizon * ultimate
    comment = [f"incflow level model name={name or 'instance'} T={horizon} f={initial} F={ultimate} r={r}"]
    if r == 0:
        comment.append(f"total = T*F = {ceiling}")
    else:
        comment.append(f"total = TF - objective, TF = {ceiling}")
    model = _LPModel("Minimize", comment)
    if r == 0:
        return model.render()

    potential = net.potential_ids
    for a in potential:
        for k in range(1, r + 1):
            model.objective.append((1, y_name(a, k)))
    for k in range(1, r + 1):
        model.row(f"value_k{k}", _source_terms(net, k), "=", initial + k)
        _conservation(model, net, k)
        for arc in net.arcs:
            _capacity(model, arc, k)
    for a in potential:
        for k in range(1, r):
            model.row(f"mono_a{a}_k{k}", [(1, y_name(a, k)), (-1, y_name(a, k + 1))], "<=", 0)

    model.continuous = [x_name(arc.id, k) for k in range(1, r + 1) for arc in net.arcs]
    model.binaries = [y_name(a, k) for a in potential for k in range(1, r + 1)]
    return model.render()


EMITTERS = {
    'imfp1': emit_imfp1,
    'imfp2': emit_imfp2,
}


def write_lp(inst: Instance, model: str, path: Union[str, Path]) -> Path:
    """Emit one model of an instance to path"""
    text = EMITTERS[model](inst.network, inst.horizon, inst.name)
    path = write_text_lf(path, text)
    logger.info(f"Wrote {model} model of {inst.name or 'instance'} to {path}")
    return path


_VARIABLE = re.compile(r"\b[xy]_a\d+_k\d+\b")
_SECTIONS = ("Maximize", "Minimize", "Subject To", "Bounds", "Binaries", "End")


def lp_stats(text: str) -> Dict[str, int]:
    """Variables, binaries and constraints of an emitted model"""
    section = None
    constraints = 0
    binaries = 0
    for line in text.splitlines():
        stripped = line.strip()
        if stripped in _SECTIONS:
            section = stripped
            continue
        if not stripped or stripped.startswith("\\*"):
            continue
        if section == "Subject To":
            constraints += 1
        elif section == "Binaries":
            binaries += len(stripped.split())
    return {
        'variables': len(set(_VARIABLE.findall(text))),
        'binaries': binaries,
        'constraints': constraints,
    }
