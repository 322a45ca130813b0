"""Combining two machines into one by rewiring a single input port.

The rule is asymmetric: the feeder's output node is wired into one chosen
input port of the receiver, and the combined machine reports the receiver's
output.  The feeder gains no in-edges, so its dynamics inside the glued
machine are exactly its own.
"""

from typing import NamedTuple

from .core import Bnm, NodeSpec
from .sampler import RngStream


class GlueSlot(NamedTuple):
    """An input port of the receiver: node index plus port 0 or 1."""

    node: int
    port: int


def glue(feeder: Bnm, receiver: Bnm, slot: GlueSlot) -> Bnm:
    """One machine from two: feeder's output drives ``slot`` of the receiver.

    The result lists the feeder's nodes first, unchanged, then the receiver's
    nodes with all input indices offset by the feeder's size; only the chosen
    slot is rewired, to the feeder's output node.  Sizes add.  Both operands
    are copied, so gluing a machine to itself is well defined.
    """
    if not (0 <= slot.node < receiver.size) or slot.port not in (0, 1):
        raise ValueError(f"invalid slot {tuple(slot)!r} for machine of size {receiver.size}")
    offset = feeder.size
    nodes = list(feeder.nodes)
    for i, (tt, i0, i1) in enumerate(receiver.nodes):
        i0 += offset
        i1 += offset
        if i == slot.node:
            if slot.port == 0:
                i0 = feeder.output
            else:
                i1 = feeder.output
        nodes.append(NodeSpec(tt, i0, i1))
    return Bnm(tuple(nodes), output=receiver.output + offset)


def random_slot(receiver: Bnm, rng: RngStream) -> GlueSlot:
    """Uniform over all 2*size slots; draws node first, then port."""
    return GlueSlot(rng.below(receiver.size), rng.below(2))
