"""
Machines and their outputs
==========================

Builds a tiny machine by hand, walks its state trajectory, and reads off
the canonical output string it emits.
"""

from bnmlab.core import (
    Bnm,
    canonicalize,
    cycle_output_bits,
    efficiency_ratio,
    find_cycle,
    output_cstring,
    step,
    unpack_state,
)

# A machine is a tuple of nodes plus an output node index.  Each node is
# (truth_table, input_a, input_b): the table is a 4-bit integer whose bit
# 2a + b gives the node's next value when its inputs read (a, b).

# Table 1 is NOR, table 6 is XOR.  Node 0 reads node 1 twice, node 1 reads
# both nodes.  The output node defaults to node 0.
m = Bnm(((1, 1, 1), (6, 0, 1)))

# Walk the trajectory from the all-zero state.  States are packed integers;
# unpack_state turns them back into per-node bit tuples for display.
state = 0
seen = []
for t in range(8):
    seen.append(state)
    state = step(m, state)

print("trajectory:", [unpack_state(s, m.size) for s in seen])

# find_cycle reports how long the trajectory wanders before entering the
# cycle, and the cycle's period.
summary = find_cycle(m)
print("transient", summary.transient_len, "cycle length", summary.cycle_len)

# The output is the bit sequence the output node produces over one cycle,
# canonicalized: reduced to its primitive period, then rotated to the
# lexicographically least form.  That makes it a name for the cycle itself,
# independent of where sampling happened to enter it.
_, raw = cycle_output_bits(m)
print("cycle bits ", raw)
print("canonical  ", output_cstring(m))

# Canonicalization on its own:
for s in ("110", "0101", "1001011"):
    print(f"canonicalize({s!r}) = {canonicalize(s)!r}")

# A two-node machine can emit at most a length-4 output (2^N states).  This
# one manages length 3, and the efficiency ratio log2(out_len)/size scores
# how close it gets.
print("output length", len(output_cstring(m)), "of a possible", 2 ** m.size)
print("efficiency   ", round(efficiency_ratio(m.size, len(output_cstring(m))), 4))
