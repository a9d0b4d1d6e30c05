"""
Instance file reading and writing

Format (UTF-8, LF, single spaces)::

    incflow v1
    nodes <n> source <s> sink <t> horizon <T>
    arc <id> <tail> <head> <capacity> <E|P>
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from ..errors import InstanceParseError
from ..netcore import Arc, ArcKind, Instance, Network, flow_bounds, validate_network
from ..utils import write_text_lf

logger = logging.getLogger(__name__)

HEADER = "incflow v1"


def format_instance(inst: Instance) -> str:
    net = inst.network
    lines = [
        HEADER,
        f"nodes {net.node_count} source {net.source} sink {net.sink} horizon {inst.horizon}",
    ]
    for arc in net.arcs:
        lines.append(f"arc {arc.id} {arc.tail} {arc.head} {arc.capacity} {arc.kind.value}")
    return "\n".join(lines) + "\n"


def write_instance(inst: Instance, path: Union[str, Path]) -> Path:
    """Write an instance file; the bytes depend only on the instance"""
    path = write_text_lf(path, format_instance(inst))
    logger.debug(f"Wrote {inst.name or 'instance'} to {path}")
    return path


def _integer(text: str, line: int, field: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise InstanceParseError(line, field, f"expected an integer, got {text!r}")


def parse_instance(text: str, name: str = "") -> Instance:
    """Parse instance text, reporting the first bad line and field"""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0].strip() != HEADER:
        raise InstanceParseError(1, "header", f"expected '{HEADER}'")
    if len(lines) < 2:
        raise InstanceParseError(2, "nodes", "missing nodes line")

    tokens = lines[1].split()
    if len(tokens) != 8 or tokens[0::2] != ["nodes", "source", "sink", "horizon"]:
        raise InstanceParseError(2, "nodes", "expected 'nodes <n> source <s> sink <t> horizon <T>'")
    node_count = _integer(tokens[1], 2, "nodes")
    source = _integer(tokens[3], 2, "source")
    sink = _integer(tokens[5], 2, "sink")
    horizon = _integer(tokens[7], 2, "horizon")

    arcs: List[Arc] = []
    for number, raw in enumerate(lines[2:], start=3):
        if not raw.strip():
            continue
        fields = raw.split()
        if fields[0] != "arc" or len(fields) != 6:
            raise InstanceParseError(number, "arc", "expected 'arc <id> <tail> <head> <cap> <E|P>'")
        arc_id = _integer(fields[1], number, "id")
        if arc_id != len(arcs):
            raise InstanceParseError(number, "id", f"arc ids must be dense, expected {len(arcs)}")
        tail = _integer(fields[2], number, "tail")
        head = _integer(fields[3], number, "head")
        capacity = _integer(fields[4], number, "capacity")
        if capacity < 1:
            raise InstanceParseError(number, "capacity", "capacity < 1")
        if fields[5] not in ("E", "P"):
            raise InstanceParseError(number, "kind", f"kind must be E or P, got {fields[5]!r}")
        arcs.append(Arc(arc_id, tail, head, capacity, ArcKind(fields[5])))

    net = Network(node_count, source, sink, tuple(arcs))
    violations = validate_network(net)
    if violations:
        raise InstanceParseError(2, "network", "; ".join(violations))
    if horizon <= len(net.potential_ids):
        raise InstanceParseError(2, "horizon", f"horizon {horizon} must exceed {len(net.potential_ids)} potential arcs")
    return Instance(net, horizon, name)


def read_instance(path: Union[str, Path]) -> Instance:
    path = Path(path)
    with open(path, "r", encoding="utf-8", newline="") as fh:
        text = fh.read()
    return parse_instance(text, path.stem)


def describe_instance(inst: Instance) -> Dict[str, Any]:
    """Size and flow statistics of an instance"""
    net = inst.network
    initial, ultimate = flow_bounds(net)
    return {
        'name': inst.name,
        'nodes': net.node_count,
        'arcs': len(net.arcs),
        'existing': len(net.existing_ids),
        'potential': len(net.potential_ids),
        'horizon': inst.horizon,
        'f': initial,
        'F': ultimate,
        'r': ultimate - initial,
        'unit_capacity': net.is_unit_capacity,
    }
