"""Utility functions for incflow."""

import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path
from typing import Iterator, List, Sequence, Union


def ensure_directory(dir_path: Union[str, Path]) -> bool:
    """Ensure directory exists, create if necessary."""
    try:
        Path(dir_path).mkdir(parents=True, exist_ok=True)
        return True
    except OSError:
        return False


def write_text_lf(path: Union[str, Path], text: str) -> Path:
    """Write UTF-8 text with LF line endings on every platform."""
    path = Path(path)
    if path.parent != Path(''):
        ensure_directory(path.parent)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    return path


def format_elapsed(seconds: float) -> str:
    """Format a duration in human readable form."""
    if seconds < 1e-3:
        return f"{seconds * 1e6:.0f} us"
    if seconds < 1.0:
        return f"{seconds * 1e3:.1f} ms"
    if seconds < 60.0:
        return f"{seconds:.2f} s"
    minutes, rest = divmod(seconds, 60.0)
    return f"{int(minutes)} min {rest:.0f} s"


def format_fraction(value: Fraction, digits: int = 6) -> str:
    """Render an exact ratio as a fixed-point decimal string."""
    return f"{float(value):.{digits}f}"


@contextmanager
def stopwatch() -> Iterator[List[float]]:
    """Measure wall-clock time; the yielded list holds the elapsed seconds on exit."""
    box = [0.0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = time.perf_counter() - start


def members(mask: int, universe: Sequence[int]) -> List[int]:
    """Decode a bitmask back into universe elements in position order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(universe[i])
        mask >>= 1
        i += 1
    return out
