"""Exception hierarchy for incflow."""

from typing import Optional


class IncflowError(Exception):
    """Base class for every error raised by incflow"""


class InvalidNetwork(IncflowError):
    """Network violates a structural invariant"""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid network")


class InvalidInstance(IncflowError, ValueError):
    """Generator parameters describe no valid instance"""


class UnitCapacityRequired(IncflowError):
    """Operation is only defined when every capacity equals 1"""

    def __init__(self, arc_id: Optional[int] = None):
        self.arc_id = arc_id
        detail = f" (arc {arc_id} has capacity > 1)" if arc_id is not None else ""
        super().__init__(f"unit capacities required{detail}")


class InvalidBudget(IncflowError):
    """No arc set of the requested size exists"""


class HorizonTooShort(IncflowError):
    """Horizon does not exceed the number of potential arcs"""

    def __init__(self, horizon: int, potential: int):
        self.horizon = horizon
        self.potential = potential
        super().__init__(f"horizon {horizon} must exceed the {potential} potential arcs")


class InvalidSchedule(IncflowError):
    """Build schedule repeats an arc or names a non-potential arc"""


class BadTargets(IncflowError):
    """Target sequence is not strictly increasing up to r"""


class TooLarge(IncflowError):
    """Instance exceeds the size cap of an exact solver"""

    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{size} potential arcs exceed the cap of {cap}")


class KTooSmall(IncflowError):
    """Family parameter below the family's minimum"""

    def __init__(self, which: str, k: int, k_min: int):
        self.which = which
        self.k = k
        self.k_min = k_min
        super().__init__(f"family {which} needs k >= {k_min}, got {k}")


class ConstraintViolated(IncflowError):
    """Witness point fails one of its defining constraints"""

    def __init__(self, constraint: str, index=None):
        self.constraint = constraint
        self.index = index
        where = f" at {index}" if index is not None else ""
        super().__init__(f"constraint {constraint} violated{where}")


class NotMatchingStructure(IncflowError):
    """Network is not a source/bipartite/sink matching network"""


class InstanceParseError(IncflowError):
    """Instance file could not be parsed"""

    def __init__(self, line: int, field: str, message: str):
        self.line = line
        self.field = field
        super().__init__(f"line {line}, field {field}: {message}")


class InvalidX3C(IncflowError):
    """Exact-cover input is malformed"""


class ConfigError(IncflowError):
    """Settings file or environment holds a bad value"""
