"""The bag of kept machines and three ways to fill it.

Recombination repeatedly glues random pairs drawn from the bag, keeping
candidates that score well; random search and hill climbing are the
baselines it is measured against.  All runs derive one stream per trial
from the master seed, so results are reproducible and independent of any
batching.
"""

from dataclasses import dataclass, field

from .core import Bnm, efficiency_ratio, output_cstring
from .gluing import glue, random_slot
from .sampler import RngStream, derive_seed, sample_bnm


@dataclass(frozen=True)
class BagEntry:
    """A machine plus its evaluated output and provenance."""

    machine: Bnm
    out: str
    out_len: int
    ratio: float
    lineage: tuple[int, int] | None = None
    trial: int = 0

    @property
    def key(self) -> tuple[int, str]:
        return (self.machine.size, self.out)


def evaluate(machine: Bnm, lineage=None, trial: int = 0) -> BagEntry:
    """Run the machine and wrap it with its output metadata."""
    out = output_cstring(machine)
    ratio = efficiency_ratio(machine.size, len(out))
    return BagEntry(machine, out, len(out), ratio, lineage, trial)


class Bag:
    """Insertion-ordered collection of entries, deduplicated by (size, output).

    An entry's identifier is its insertion index; lineage fields reference
    those indices, so the order is part of the persisted format.
    """

    def __init__(self, entries=()):
        self.entries: list[BagEntry] = []
        self._keys: set[tuple[int, str]] = set()
        for e in entries:
            self.add(e)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> BagEntry:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def contains_key(self, size: int, out: str) -> bool:
        return (size, out) in self._keys

    def add(self, entry: BagEntry) -> int | None:
        """Append unless (size, output) is already present; return the new index."""
        if entry.key in self._keys:
            return None
        self._keys.add(entry.key)
        self.entries.append(entry)
        return len(self.entries) - 1

    def copy(self) -> "Bag":
        dup = Bag.__new__(Bag)
        dup.entries = list(self.entries)
        dup._keys = set(self._keys)
        return dup

    def best(self) -> BagEntry | None:
        """Highest-ratio entry (earliest wins ties); None when empty."""
        best = None
        for e in self.entries:
            if best is None or e.ratio > best.ratio:
                best = e
        return best


@dataclass(frozen=True)
class AcceptRule:
    """When a candidate is worth keeping: ratio floor plus optional size cap."""

    min_ratio: float = 0.8
    max_size: int | None = None

    def admits(self, entry: BagEntry) -> bool:
        if entry.ratio < self.min_ratio:
            return False
        return self.max_size is None or entry.machine.size <= self.max_size


@dataclass
class SearchStats:
    """Per-trial candidate measurements from one run."""

    sizes: list[int] = field(default_factory=list)
    out_lens: list[int] = field(default_factory=list)
    accepted: list[bool] = field(default_factory=list)

    def record(self, entry: BagEntry, ok: bool) -> None:
        self.sizes.append(entry.machine.size)
        self.out_lens.append(entry.out_len)
        self.accepted.append(ok)

    @property
    def trials(self) -> int:
        return len(self.sizes)

    @property
    def n_accepted(self) -> int:
        return sum(self.accepted)


def seed_bag(size: int, allowed_lengths, budget: int, seed: int) -> Bag:
    """Random-search a starter bag, keeping machines whose output length is allowed."""
    allowed = set(allowed_lengths)
    bag = Bag()
    for t in range(budget):
        entry = evaluate(sample_bnm(size, RngStream(derive_seed(seed, t))), trial=t)
        if entry.out_len in allowed:
            bag.add(entry)
    return bag


def recombine_step(bag: Bag, rng: RngStream, rule: AcceptRule, trial: int = 0):
    """One recombination trial: pick two, glue, evaluate, keep if good.

    Draw order: feeder index, receiver index, slot node, slot port (picks are
    with replacement, so both may be the same entry).  Returns the candidate
    and whether it was added; duplicates of an existing (size, output) are
    never added.
    """
    if len(bag) == 0:
        raise ValueError("bag is empty")
    i = rng.below(len(bag))
    j = rng.below(len(bag))
    receiver = bag[j].machine
    slot = random_slot(receiver, rng)
    candidate = evaluate(glue(bag[i].machine, receiver, slot), lineage=(i, j), trial=trial)
    ok = rule.admits(candidate) and not bag.contains_key(*candidate.key)
    if ok:
        bag.add(candidate)
    return candidate, ok


def run_recombination(initial: Bag, budget: int, rule: AcceptRule, seed: int):
    """``budget`` recombine steps on a copy of ``initial``; one derived stream per trial."""
    if len(initial) == 0:
        raise ValueError("bag is empty")
    bag = initial.copy()
    stats = SearchStats()
    for t in range(budget):
        candidate, ok = recombine_step(bag, RngStream(derive_seed(seed, t)), rule, trial=t)
        stats.record(candidate, ok)
    return bag, stats


def run_random_search(size: int, budget: int, rule: AcceptRule, seed: int):
    """``budget`` independent uniform machines, kept or dropped by the rule."""
    bag = Bag()
    stats = SearchStats()
    for t in range(budget):
        entry = evaluate(sample_bnm(size, RngStream(derive_seed(seed, t))), trial=t)
        ok = rule.admits(entry) and not bag.contains_key(*entry.key)
        if ok:
            bag.add(entry)
        stats.record(entry, ok)
    return bag, stats


def neighborhood(m: Bnm) -> list[tuple]:
    """Move descriptors: every single truth-table bit flip and single-port rewire.

    4N flips plus 2N(N-1) rewires (a rewire must change the port's target).
    """
    moves = []
    n = m.size
    for i in range(n):
        for k in range(4):
            moves.append(("flip", i, k))
    for i, node in enumerate(m.nodes):
        for port, current in ((0, node.in0), (1, node.in1)):
            for target in range(n):
                if target != current:
                    moves.append(("rewire", i, port, target))
    return moves


def apply_move(m: Bnm, move: tuple) -> Bnm:
    """A copy of ``m`` with one neighborhood move applied."""
    nodes = list(m.nodes)
    if move[0] == "flip":
        _, i, k = move
        nodes[i] = nodes[i]._replace(tt=nodes[i].tt ^ (1 << k))
    else:
        _, i, port, target = move
        nodes[i] = nodes[i]._replace(in0=target) if port == 0 else nodes[i]._replace(in1=target)
    return Bnm(tuple(nodes), output=m.output)


def hill_climb(start: Bnm, budget: int, rng: RngStream):
    """Greedy ascent on output length from ``start``.

    Each round shuffles the full neighborhood and moves to the first strict
    improvement; a round that exhausts the neighborhood without improving is
    a local optimum and the climb stops.  ``budget`` caps neighbor
    evaluations (the start's own evaluation is free).  Returns the best entry
    and the nondecreasing trajectory of output lengths, starting with the
    start's.
    """
    current = evaluate(start, trial=0)
    trajectory = [current.out_len]
    evals = 0
    while evals < budget:
        moves = neighborhood(current.machine)
        rng.shuffle(moves)
        improved = False
        for move in moves:
            if evals >= budget:
                return current, trajectory
            evals += 1
            candidate = evaluate(apply_move(current.machine, move), trial=evals)
            if candidate.out_len > current.out_len:
                current = candidate
                trajectory.append(candidate.out_len)
                improved = True
                break
        if not improved:
            break
    return current, trajectory
