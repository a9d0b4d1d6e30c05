"""
SplitMix64 pseudo-random generator

Instance files must be reproducible bit for bit on any platform, so the
generators draw from this fixed 64-bit generator instead of `random`.
"""

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """Counter-based 64-bit generator with an xor-shift-multiply finalizer"""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits"""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def randint(self, lo: int, hi: int) -> int:
        """Integer in [lo, hi], both ends included"""
        return lo + self.next_u64() % (hi - lo + 1)


def derive_seed(seed: int, index: int) -> int:
    """Independent seed for the index-th instance of a run"""
    return SplitMix64((seed + index * GOLDEN_GAMMA) & MASK64).next_u64()
