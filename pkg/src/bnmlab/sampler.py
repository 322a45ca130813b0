"""Seeded, platform-independent random machine generation.

The generator is SplitMix64, implemented here rather than taken from
``random``/numpy so the draw sequence is a documented bit-exact contract:
identical seeds give identical machines on every platform, Python version,
and worker count.  Reproducibility rules:

* ``RngStream(seed)`` yields ``mix64(seed + k * GAMMA)`` for k = 1, 2, ...
* ``derive_seed(master, t)`` is output t of the stream seeded at ``master``,
  so every trial of a batch owns an independent stream and results never
  depend on execution order.
* ``sample_bnm`` draws, per node in index order: truth table, then input 0,
  then input 1 (exactly three draws per node).  The output node is index 0,
  which costs no draw; by node-relabeling symmetry the behavior distribution
  is the same as drawing it.
"""

from .core import Bnm, NodeSpec

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """SplitMix64 finalizer; the bit mixer behind every stream here."""
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """Seed for substream ``index`` of a master seed (output ``index`` of its stream)."""
    return mix64((master_seed + (index + 1) * _GAMMA) & _MASK64)


class RngStream:
    """Single-owner SplitMix64 stream. Do not share across workers; derive instead."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def below(self, n: int) -> int:
        """Exactly uniform integer in [0, n).

        Powers of two mask a single draw; anything else rejects draws at or
        above the largest multiple of n, so there is no modulo bias.
        """
        if n <= 0:
            raise ValueError("n must be positive")
        if n & (n - 1) == 0:
            return self.next64() & (n - 1)
        limit = 2**64 - (2**64 % n)
        while True:
            x = self.next64()
            if x < limit:
                return x % n

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates using this stream."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def sample_bnm(size: int, rng: RngStream) -> Bnm:
    """Uniform random machine of ``size`` nodes (see module docstring for draw order)."""
    if size < 1:
        raise ValueError("size must be >= 1")
    nodes = []
    for _ in range(size):
        tt = rng.below(16)
        in0 = rng.below(size)
        in1 = rng.below(size)
        nodes.append(NodeSpec(tt, in0, in1))
    return Bnm(tuple(nodes), output=0)


def iter_batch(size: int, count: int, master_seed: int):
    """Machines for trials 0..count-1, each from its own derived stream."""
    for t in range(count):
        yield sample_bnm(size, RngStream(derive_seed(master_seed, t)))


def sample_batch(size: int, count: int, master_seed: int) -> list[Bnm]:
    """Reproducible batch; prefixes are stable because seeding is per trial."""
    return list(iter_batch(size, count, master_seed))
