"""Versioned JSON formats for machines and bags, plus histogram emitters.

Machine file (version 1)::

    {"version": 1, "size": 2, "output": 0,
     "nodes": [{"tt": 1, "in": [1, 1]}, {"tt": 8, "in": [0, 0]}]}

Bag file (version 1)::

    {"version": 1, "entries": [
        {"bnm": {"size": ..., "output": ..., "nodes": [...]},
         "out": "0011", "out_len": 4, "ratio": 0.5, "trial": 0,
         "lineage": [0, 1]}]}        # lineage absent for non-glued entries

Lineage identifiers are insertion indices into the same file.  Parsing
validates every machine invariant; strict bag parsing additionally re-runs
each machine and rejects entries whose stored output disagrees.  All
serializers end with a newline and use LF line endings.
"""

import json

from .core import Bnm, NodeSpec, efficiency_ratio, output_cstring, validate
from .experiments import Histogram
from .search import Bag, BagEntry

BNM_FORMAT_VERSION = 1
BAG_FORMAT_VERSION = 1

_RATIO_TOLERANCE = 1e-9


class FileFormatError(ValueError):
    """Malformed text or an invariant violation in a machine/bag file."""


def _require(mapping, key, kind, where):
    if not isinstance(mapping, dict):
        raise FileFormatError(f"{where}: expected an object, got {type(mapping).__name__}")
    if key not in mapping:
        raise FileFormatError(f"{where}: missing field '{key}'")
    value = mapping[key]
    if kind is int and isinstance(value, bool):
        raise FileFormatError(f"{where}: field '{key}' must be an integer")
    if not isinstance(value, kind):
        raise FileFormatError(f"{where}: field '{key}' has wrong type")
    return value


def _loads(text, where):
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise FileFormatError(f"{where}: invalid JSON at line {err.lineno} column {err.colno}: "
                              f"{err.msg}") from err


def bnm_to_dict(m: Bnm) -> dict:
    return {
        "size": m.size,
        "output": m.output,
        "nodes": [{"tt": n.tt, "in": [n.in0, n.in1]} for n in m.nodes],
    }


def bnm_from_dict(doc: dict, where: str = "machine") -> Bnm:
    size = _require(doc, "size", int, where)
    output = _require(doc, "output", int, where)
    nodes_doc = _require(doc, "nodes", list, where)
    if size != len(nodes_doc):
        raise FileFormatError(f"{where}: size {size} does not match {len(nodes_doc)} nodes")
    nodes = []
    for i, node_doc in enumerate(nodes_doc):
        node_where = f"{where}: node {i}"
        tt = _require(node_doc, "tt", int, node_where)
        pair = _require(node_doc, "in", list, node_where)
        if len(pair) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair):
            raise FileFormatError(f"{node_where}: field 'in' must be a pair of integers")
        nodes.append(NodeSpec(tt, pair[0], pair[1]))
    machine = Bnm(tuple(nodes), output=output)
    problems = validate(machine)
    if problems:
        raise FileFormatError(f"{where}: {problems[0]}")
    return machine


def serialize_bnm(m: Bnm) -> str:
    doc = {"version": BNM_FORMAT_VERSION}
    doc.update(bnm_to_dict(m))
    return json.dumps(doc, indent=2) + "\n"


def parse_bnm(text: str) -> Bnm:
    doc = _loads(text, "machine file")
    version = _require(doc, "version", int, "machine file")
    if version != BNM_FORMAT_VERSION:
        raise FileFormatError(f"machine file: unknown version {version}")
    return bnm_from_dict(doc, "machine file")


def entry_to_dict(entry: BagEntry) -> dict:
    doc = {
        "bnm": bnm_to_dict(entry.machine),
        "out": entry.out,
        "out_len": entry.out_len,
        "ratio": entry.ratio,
        "trial": entry.trial,
    }
    if entry.lineage is not None:
        doc["lineage"] = list(entry.lineage)
    return doc


def serialize_bag(bag: Bag) -> str:
    doc = {
        "version": BAG_FORMAT_VERSION,
        "entries": [entry_to_dict(e) for e in bag],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_bag(text: str, strict: bool = True) -> Bag:
    """Load a bag, checking every invariant.

    Strict mode re-runs each machine and rejects the file when a stored
    output disagrees with recomputation.
    """
    doc = _loads(text, "bag file")
    version = _require(doc, "version", int, "bag file")
    if version != BAG_FORMAT_VERSION:
        raise FileFormatError(f"bag file: unknown version {version}")
    entries_doc = _require(doc, "entries", list, "bag file")
    bag = Bag()
    for index, entry_doc in enumerate(entries_doc):
        where = f"bag file: entry {index}"
        machine = bnm_from_dict(_require(entry_doc, "bnm", dict, where), where)
        out = _require(entry_doc, "out", str, where)
        out_len = _require(entry_doc, "out_len", int, where)
        ratio = _require(entry_doc, "ratio", (int, float), where)
        trial = _require(entry_doc, "trial", int, where)
        lineage = None
        if "lineage" in entry_doc:
            pair = _require(entry_doc, "lineage", list, where)
            if len(pair) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair):
                raise FileFormatError(f"{where}: lineage must be a pair of integers")
            if not all(0 <= x < index for x in pair):
                raise FileFormatError(f"{where}: lineage {pair} must reference earlier entries")
            lineage = (pair[0], pair[1])
        if not out or out.strip("01"):
            raise FileFormatError(f"{where}: 'out' is not a bit string")
        if out_len != len(out):
            raise FileFormatError(f"{where}: out_len {out_len} does not match output '{out}'")
        if strict:
            recomputed = output_cstring(machine)
            if recomputed != out:
                raise FileFormatError(
                    f"{where}: stored output '{out}' but machine produces '{recomputed}'")
            if abs(ratio - efficiency_ratio(machine.size, out_len)) > _RATIO_TOLERANCE:
                raise FileFormatError(f"{where}: stored ratio {ratio} disagrees with recomputation")
        entry = BagEntry(machine, out, out_len, float(ratio), lineage, trial)
        if bag.add(entry) is None:
            raise FileFormatError(f"{where}: duplicate (size, output) pair "
                                  f"({machine.size}, '{out}')")
    return bag


def emit_histogram(h: Histogram, fmt: str = "csv") -> str:
    """Histogram as text: CSV with a `length,count` header, or the JSON form."""
    if fmt == "csv":
        lines = ["length,count"]
        lines.extend(f"{length},{count}" for length, count in sorted(h.bins.items()))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps(h.to_dict(), indent=2) + "\n"
    raise ValueError(f"unknown histogram format: {fmt!r}")


def parse_histogram(text: str) -> Histogram:
    """Inverse of the JSON form of emit_histogram."""
    doc = _loads(text, "histogram file")
    bins_doc = _require(doc, "bins", dict, "histogram file")
    bins = {}
    for key, count in bins_doc.items():
        try:
            length = int(key)
        except ValueError:
            raise FileFormatError(f"histogram file: bad length key {key!r}") from None
        if not isinstance(count, int) or isinstance(count, bool) or count < 0:
            raise FileFormatError(f"histogram file: bad count for length {key}")
        bins[length] = count
    return Histogram(bins)


def report_to_json(report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"
