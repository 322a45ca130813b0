"""Boolean network machines: representation, exact simulation, output strings.

A machine is a fixed list of 2-input boolean nodes wired to each other (no
external inputs) plus one designated output node.  Every node holds one bit;
all nodes update simultaneously each tick.  Started from the all-zero state,
the machine is deterministic over at most 2**N states, so it always falls
into a state cycle.  Its "output" is the bit sequence the output node emits
over one full period of that cycle, reduced to canonical form: shrink to the
primitive period, then take the lexicographically least rotation.

Bit conventions (these are the file-format and test contract, do not change):

* A truth table is an int in [0, 15].  The output bit for input bits (a, b)
  is bit index 2*a + b, i.e. ``(tt >> (2*a + b)) & 1``.
* A state is an int bitmask with bit i holding node i's bit.

All values here are immutable after construction and safe to share across
workers.
"""

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class NodeSpec(NamedTuple):
    """One node: 4-bit truth table plus the indices of its two input nodes."""

    tt: int
    in0: int
    in1: int


class CycleSummary(NamedTuple):
    """Transient length and period of the trajectory from the all-zero state."""

    transient_len: int
    cycle_len: int


@dataclass(frozen=True)
class Bnm:
    """A zero-input, single-output boolean network of 2-input nodes.

    Self-loops and duplicated inputs are legal wiring.  ``nodes`` may be given
    as any iterable of (tt, in0, in1) triples; it is stored as a tuple of
    NodeSpec.
    """

    nodes: tuple[NodeSpec, ...]
    output: int = 0

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(NodeSpec(*n) for n in self.nodes))

    @property
    def size(self) -> int:
        return len(self.nodes)


def eval_node(tt: int, a: int, b: int) -> int:
    """Output bit of truth table ``tt`` for input bits (a, b)."""
    return (tt >> ((a << 1) | b)) & 1


def pack_state(bits: Iterable[int]) -> int:
    """[b0, b1, ...] -> int state with bit i = node i."""
    s = 0
    for i, b in enumerate(bits):
        if b:
            s |= 1 << i
    return s


def unpack_state(state: int, size: int) -> tuple[int, ...]:
    """Int state -> per-node bit tuple (node 0 first)."""
    return tuple((state >> i) & 1 for i in range(size))


def step(m: Bnm, state: int) -> int:
    """One synchronous tick: every node reads the old state, writes the new."""
    new = 0
    for i, (tt, i0, i1) in enumerate(m.nodes):
        if (tt >> ((((state >> i0) & 1) << 1) | ((state >> i1) & 1))) & 1:
            new |= 1 << i
    return new


def _stepper(m: Bnm):
    """Bind the node list once; cycle search calls the result millions of times."""
    specs = tuple((n.tt, n.in0, n.in1, 1 << i) for i, n in enumerate(m.nodes))

    def f(s: int) -> int:
        new = 0
        for tt, i0, i1, bit in specs:
            if (tt >> ((((s >> i0) & 1) << 1) | ((s >> i1) & 1))) & 1:
                new |= bit
        return new

    return f


def find_cycle(m: Bnm) -> CycleSummary:
    """Exact (transient, period) of the trajectory from the all-zero state.

    Brent probing: the anchor is re-pinned at power-of-two step counts until
    the runner meets it again, which yields the minimal period; the transient
    then falls out of two pointers advanced in lockstep one period apart.
    Memory stays O(1) in the number of visited states.
    """
    f = _stepper(m)
    power = lam = 1
    anchor = 0
    runner = f(0)
    while anchor != runner:
        if power == lam:
            anchor = runner
            power <<= 1
            lam = 0
        runner = f(runner)
        lam += 1
    ahead = 0
    for _ in range(lam):
        ahead = f(ahead)
    behind = 0
    mu = 0
    while behind != ahead:
        behind = f(behind)
        ahead = f(ahead)
        mu += 1
    return CycleSummary(mu, lam)


def cycle_output_bits(m: Bnm) -> tuple[CycleSummary, str]:
    """Cycle summary plus the raw output-node bits over one full period.

    The string starts at cycle entry and is *not* canonicalized.
    """
    summary = find_cycle(m)
    f = _stepper(m)
    s = 0
    for _ in range(summary.transient_len):
        s = f(s)
    o = m.output
    bits = []
    for _ in range(summary.cycle_len):
        bits.append("1" if (s >> o) & 1 else "0")
        s = f(s)
    return summary, "".join(bits)


def output_cstring(m: Bnm) -> str:
    """Canonical output string: primitive period of the cycle output, least rotation."""
    return canonicalize(cycle_output_bits(m)[1])


def primitive_root(s: str) -> str:
    """Shortest prefix whose repetition reproduces ``s``."""
    p = (s + s).find(s, 1)
    if p < len(s) and len(s) % p == 0:
        return s[:p]
    return s


def least_rotation(s: str) -> int:
    """Start index of the lexicographically least rotation (Booth's algorithm)."""
    n = len(s)
    doubled = s + s
    fail = [-1] * (2 * n)
    k = 0
    for j in range(1, 2 * n):
        c = doubled[j]
        i = fail[j - k - 1]
        while i != -1 and c != doubled[k + i + 1]:
            if c < doubled[k + i + 1]:
                k = j - i - 1
            i = fail[i]
        if c != doubled[k + i + 1]:
            if c < doubled[k]:
                k = j
            fail[j - k] = -1
        else:
            fail[j - k] = i + 1
    return k


def canonicalize(raw: str) -> str:
    """Canonical form of a bit string under rotation.

    Reduce to the primitive period, then rotate to the lexicographically
    least position ('0' < '1').  Idempotent, and identical for every rotation
    of the same string.
    """
    if not raw:
        raise ValueError("empty string")
    if raw.strip("01"):
        raise ValueError(f"not a bit string: {raw!r}")
    root = primitive_root(raw)
    k = least_rotation(root)
    return root[k:] + root[:k]


def efficiency_ratio(size: int, out_len: int) -> float:
    """log2(output length) / size; 1.0 marks a maximal-period machine."""
    if size < 1:
        raise ValueError("size must be >= 1")
    if out_len < 1:
        raise ValueError("out_len must be >= 1")
    return math.log2(out_len) / size


def validate(m: Bnm) -> list[str]:
    """Every invariant violation in a machine description; empty means well formed."""
    problems = []
    n = len(m.nodes)
    if n < 1:
        problems.append("size must be >= 1")
    if not 0 <= m.output < n:
        problems.append(f"output out of range: {m.output}")
    for i, node in enumerate(m.nodes):
        if not 0 <= node.tt <= 15:
            problems.append(f"node {i}: truth table out of range: {node.tt}")
        for port, target in ((0, node.in0), (1, node.in1)):
            if not 0 <= target < n:
                problems.append(f"node {i} port {port}: edge target out of range: {target}")
    return problems
