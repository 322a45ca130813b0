"""Ensemble harnesses: output-length distributions at configurable scale.

Two stock experiments ship as presets:

* ``fig3``: output lengths of uniform random machines, one histogram per
  size.
* ``fig4``: output lengths of size-6 machines built by gluing random pairs
  from a bag of size-3 machines (output length 6 or 7), against uniform
  random size-6 machines.

Trials are independent and per-trial seeded, and histograms merge
commutatively, so reports are identical for any worker count or chunking.
Emitting files lives in ``fileio``.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import output_cstring
from .gluing import glue, random_slot
from .sampler import RngStream, derive_seed, sample_bnm
from .search import AcceptRule, Bag, hill_climb, run_recombination, seed_bag


class Histogram:
    """Counts keyed by output length (lengths are >= 1)."""

    def __init__(self, bins=None):
        self.bins: dict[int, int] = {}
        if bins:
            for length, count in bins.items():
                if count:
                    self.add(int(length), count)

    def add(self, length: int, count: int = 1) -> None:
        if length < 1:
            raise ValueError("length must be >= 1")
        if count < 1:
            raise ValueError("count must be >= 1")
        self.bins[length] = self.bins.get(length, 0) + count

    @property
    def total(self) -> int:
        return sum(self.bins.values())

    def mean(self) -> float:
        """Average length (0.0 for an empty histogram)."""
        total = self.total
        if total == 0:
            return 0.0
        return sum(length * count for length, count in sorted(self.bins.items())) / total

    def tail_mass(self, threshold: int) -> float:
        """Fraction of samples with length >= threshold."""
        total = self.total
        if total == 0:
            return 0.0
        return sum(c for length, c in self.bins.items() if length >= threshold) / total

    def loglog_slope(self):
        """Least-squares slope of log(count) vs log(length) over nonzero bins.

        None when fewer than two nonzero bins exist.  Negative values are the
        signature of the heavy-tailed, power-law-like length distributions
        random machines produce.
        """
        points = sorted(self.bins.items())
        if len(points) < 2:
            return None
        xs = np.log([length for length, _ in points])
        ys = np.log([count for _, count in points])
        return float(np.polyfit(xs, ys, 1)[0])

    def octave_counts(self) -> list[int]:
        """Counts pooled into doubling windows [1,2), [2,4), [4,8), ..."""
        if not self.bins:
            return []
        out = [0] * max(self.bins).bit_length()
        for length, count in self.bins.items():
            out[length.bit_length() - 1] += count
        return out

    def to_dict(self) -> dict:
        return {
            "bins": {str(length): count for length, count in sorted(self.bins.items())},
            "total": self.total,
        }

    def __eq__(self, other):
        return isinstance(other, Histogram) and self.bins == other.bins

    def __repr__(self):
        return f"Histogram({self.bins!r})"


def merge_histograms(a: Histogram, b: Histogram) -> Histogram:
    """Binwise sum; commutative and associative, with the empty histogram as identity."""
    merged = Histogram(a.bins)
    for length, count in b.bins.items():
        merged.add(length, count)
    return merged


@dataclass
class ExperimentReport:
    """Named histograms plus the summary statistics derived from them."""

    histograms: dict[str, Histogram]
    means: dict[str, float]
    tail_mass: dict[str, float]
    loglog_slope: dict[str, float | None]
    config: dict

    @classmethod
    def build(cls, histograms: dict[str, Histogram], config: dict) -> "ExperimentReport":
        threshold = config["tail_threshold"]
        return cls(
            histograms=histograms,
            means={name: h.mean() for name, h in histograms.items()},
            tail_mass={name: h.tail_mass(threshold) for name, h in histograms.items()},
            loglog_slope={name: h.loglog_slope() for name, h in histograms.items()},
            config=config,
        )

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "histograms": {name: h.to_dict() for name, h in self.histograms.items()},
            "means": self.means,
            "tail_mass": self.tail_mass,
            "loglog_slope": self.loglog_slope,
        }


def _random_length_bins(payload, start: int, stop: int) -> dict[int, int]:
    size, sub_master = payload
    bins: dict[int, int] = {}
    for t in range(start, stop):
        machine = sample_bnm(size, RngStream(derive_seed(sub_master, t)))
        length = len(output_cstring(machine))
        bins[length] = bins.get(length, 0) + 1
    return bins


def _glued_length_bins(payload, start: int, stop: int) -> dict[int, int]:
    machines, sub_master = payload
    n = len(machines)
    bins: dict[int, int] = {}
    for t in range(start, stop):
        rng = RngStream(derive_seed(sub_master, t))
        feeder = machines[rng.below(n)]
        receiver = machines[rng.below(n)]
        glued = glue(feeder, receiver, random_slot(receiver, rng))
        length = len(output_cstring(glued))
        bins[length] = bins.get(length, 0) + 1
    return bins


def _pooled_bins(worker, payload, trials: int, threads: int) -> dict[int, int]:
    """Run per-trial-seeded workers over [0, trials), in chunks when threads > 1.

    Chunking cannot change the result: every trial seeds its own stream and
    the binwise merge commutes.
    """
    if threads <= 1 or trials < 2 * threads:
        return worker(payload, 0, trials)
    chunk = -(-trials // (threads * 4))
    starts = list(range(0, trials, chunk))
    stops = [min(s + chunk, trials) for s in starts]
    bins: dict[int, int] = {}
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(worker, [payload] * len(starts), starts, stops):
            for length, count in part.items():
                bins[length] = bins.get(length, 0) + count
    return bins


def fig3(sizes, trials: int, master_seed: int, tail_threshold: int = 16,
         threads: int = 1) -> ExperimentReport:
    """Output-length distribution of uniform random machines, per size.

    Each size draws its trials from a substream keyed by the size value, so
    adding or reordering sizes never changes another size's histogram.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    histograms = {}
    for size in sizes:
        sub_master = derive_seed(master_seed, size)
        bins = _pooled_bins(_random_length_bins, (size, sub_master), trials, threads)
        histograms[f"size{size}"] = Histogram(bins)
    config = {
        "experiment": "fig3",
        "sizes": list(sizes),
        "trials": trials,
        "master_seed": master_seed,
        "tail_threshold": tail_threshold,
    }
    return ExperimentReport.build(histograms, config)


_SEED_SIZE = 3
_SEED_LENGTHS = (6, 7)
_RANDOM_SIZE = 6


def fig4(trials: int, master_seed: int, seed_bag_budget: int,
         tail_threshold: int = 16, threads: int = 1) -> ExperimentReport:
    """Glued pairs versus same-size random machines.

    "glued" is the raw candidate stream: size-6 machines made by gluing two
    entries drawn with replacement from a bag of size-3 machines with output
    length 6 or 7, with no acceptance filtering.  "random" is uniform random
    size-6 machines.  Substreams: 0 seeds the bag, 1 the glued trials, 2 the
    random trials.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    bag = seed_bag(_SEED_SIZE, _SEED_LENGTHS, seed_bag_budget, derive_seed(master_seed, 0))
    if len(bag) == 0:
        raise ValueError("seed bag empty; increase budget")
    machines = [entry.machine for entry in bag]
    glued_bins = _pooled_bins(
        _glued_length_bins, (machines, derive_seed(master_seed, 1)), trials, threads)
    random_bins = _pooled_bins(
        _random_length_bins, (_RANDOM_SIZE, derive_seed(master_seed, 2)), trials, threads)
    histograms = {
        "glued": Histogram(glued_bins),
        "random": Histogram(random_bins),
    }
    config = {
        "experiment": "fig4",
        "trials": trials,
        "master_seed": master_seed,
        "seed_bag_budget": seed_bag_budget,
        "seed_size": _SEED_SIZE,
        "seed_lengths": list(_SEED_LENGTHS),
        "bag_size": len(bag),
        "glued_size": 2 * _SEED_SIZE,
        "random_size": _RANDOM_SIZE,
        "tail_threshold": tail_threshold,
    }
    return ExperimentReport.build(histograms, config)


@dataclass
class HillclimbComparison:
    """JSON-ready comparison report plus the raw material it was computed from."""

    report: dict
    starts: list
    climb_bests: list
    trajectories: list
    initial_bag: Bag
    final_bag: Bag


def compare_hillclimb_recombination(n_starts: int, budget_per_start: int,
                                    master_seed: int, size: int = 6,
                                    min_ratio: float = 0.8,
                                    seed_bag_budget: int = 10_000) -> HillclimbComparison:
    """Hill climbing from many random starts versus an equal-budget recombination run.

    Both methods are allowed the same nominal number of candidate
    evaluations: n_starts * budget_per_start.  Recombination spends
    ``seed_bag_budget`` of that allowance on its random-search starter bag
    (size-3 machines, output length 6 or 7) and the rest on glue steps capped
    at ``size``.  The report presents both sides without declaring a winner.
    """
    total_budget = n_starts * budget_per_start
    if total_budget <= seed_bag_budget:
        raise ValueError("total budget must exceed the seed bag budget")

    climb_master = derive_seed(master_seed, 0)
    best_climb = None
    starts = []
    climb_bests = []
    trajectories = []
    for s in range(n_starts):
        sub = derive_seed(climb_master, s)
        start = sample_bnm(size, RngStream(derive_seed(sub, 0)))
        entry, trajectory = hill_climb(start, budget_per_start, RngStream(derive_seed(sub, 1)))
        starts.append(start)
        climb_bests.append(entry)
        trajectories.append(trajectory)
        if best_climb is None or entry.ratio > best_climb.ratio:
            best_climb = entry

    recomb_master = derive_seed(master_seed, 1)
    rule = AcceptRule(min_ratio=min_ratio, max_size=size)
    bag = seed_bag(_SEED_SIZE, _SEED_LENGTHS, seed_bag_budget, derive_seed(recomb_master, 0))
    if len(bag) == 0:
        raise ValueError("seed bag empty; increase budget")
    steps = total_budget - seed_bag_budget
    final_bag, stats = run_recombination(bag, steps, rule, derive_seed(recomb_master, 1))
    made = [e for e in final_bag if e.lineage is not None]
    best_made = max(made, key=lambda e: e.ratio, default=None)
    best_in_bag = final_bag.best()

    def _entry_dict(entry):
        if entry is None:
            return None
        return {"size": entry.machine.size, "out_len": entry.out_len, "ratio": entry.ratio}

    final_lens = [t[-1] for t in trajectories]
    report = {
        "config": {
            "n_starts": n_starts,
            "budget_per_start": budget_per_start,
            "total_budget": total_budget,
            "master_seed": master_seed,
            "size": size,
            "min_ratio": min_ratio,
            "seed_bag_budget": seed_bag_budget,
        },
        "hillclimb": {
            "best": _entry_dict(best_climb),
            "mean_final_out_len": sum(final_lens) / len(final_lens),
            "max_final_out_len": max(final_lens),
        },
        "recombination": {
            "steps": steps,
            "seed_bag_size": len(bag),
            "final_bag_size": len(final_bag),
            "n_accepted": stats.n_accepted,
            "best_candidate": _entry_dict(best_made),
            "best_in_bag": _entry_dict(best_in_bag),
        },
    }
    return HillclimbComparison(report, starts, climb_bests, trajectories, bag, final_bag)
