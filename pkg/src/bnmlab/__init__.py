"""Boolean network machines: exact output analysis, gluing, and recombination search."""

from .core import (
    Bnm,
    CycleSummary,
    NodeSpec,
    canonicalize,
    cycle_output_bits,
    efficiency_ratio,
    eval_node,
    find_cycle,
    output_cstring,
    pack_state,
    step,
    unpack_state,
    validate,
)
from .experiments import (
    ExperimentReport,
    Histogram,
    HillclimbComparison,
    compare_hillclimb_recombination,
    fig3,
    fig4,
    merge_histograms,
)
from .fileio import (
    FileFormatError,
    emit_histogram,
    parse_bag,
    parse_bnm,
    parse_histogram,
    serialize_bag,
    serialize_bnm,
)
from .gluing import GlueSlot, glue, random_slot
from .sampler import RngStream, derive_seed, mix64, sample_batch, sample_bnm
from .search import (
    AcceptRule,
    Bag,
    BagEntry,
    SearchStats,
    evaluate,
    hill_climb,
    recombine_step,
    run_random_search,
    run_recombination,
    seed_bag,
)

__version__ = "0.1.0"

__all__ = [
    "AcceptRule",
    "Bag",
    "BagEntry",
    "Bnm",
    "CycleSummary",
    "ExperimentReport",
    "FileFormatError",
    "GlueSlot",
    "Histogram",
    "HillclimbComparison",
    "NodeSpec",
    "RngStream",
    "SearchStats",
    "canonicalize",
    "compare_hillclimb_recombination",
    "cycle_output_bits",
    "derive_seed",
    "efficiency_ratio",
    "emit_histogram",
    "eval_node",
    "evaluate",
    "fig3",
    "fig4",
    "find_cycle",
    "glue",
    "hill_climb",
    "merge_histograms",
    "mix64",
    "output_cstring",
    "pack_state",
    "parse_bag",
    "parse_bnm",
    "parse_histogram",
    "random_slot",
    "recombine_step",
    "run_random_search",
    "run_recombination",
    "sample_batch",
    "sample_bnm",
    "seed_bag",
    "serialize_bag",
    "serialize_bnm",
    "step",
    "unpack_state",
    "validate",
]
