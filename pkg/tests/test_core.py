"""Core semantics: truth tables, synchronous stepping, cycles, canonical output."""

import dataclasses
import math

import pytest

import oracles
from bnmlab.core import (
    Bnm,
    CycleSummary,
    NodeSpec,
    canonicalize,
    cycle_output_bits,
    efficiency_ratio,
    eval_node,
    find_cycle,
    least_rotation,
    output_cstring,
    pack_state,
    primitive_root,
    step,
    unpack_state,
    validate,
)
from bnmlab.sampler import RngStream, sample_bnm

# Three tiny reference machines used throughout: a one-node oscillator,
# a one-node fixed point, and a two-node pair whose trajectory from zero
# walks all four states.
OSC1 = Bnm(((1, 0, 0),), output=0)
FIX0 = Bnm(((0, 0, 0),), output=0)
PAIR = Bnm(((1, 1, 1), (8, 0, 0)), output=0)


def random_machines(sizes, per_size, seed):
    rng = RngStream(seed)
    for size in sizes:
        for _ in range(per_size):
            yield sample_bnm(size, rng)


def test_eval_node_examples():
    assert eval_node(12, 1, 0) == 1  # copy of first input
    assert eval_node(1, 0, 0) == 1
    assert eval_node(6, 1, 1) == 0  # xor


def test_eval_node_matches_table_oracle():
    for tt in range(16):
        for a in (0, 1):
            for b in (0, 1):
                assert eval_node(tt, a, b) == oracles.table_output(tt, a, b)


def test_pack_unpack_state():
    assert pack_state([1, 0, 1]) == 5
    assert unpack_state(5, 3) == (1, 0, 1)
    assert unpack_state(5, 4) == (1, 0, 1, 0)
    for s in range(32):
        assert pack_state(unpack_state(s, 5)) == s


def test_step_examples():
    assert step(OSC1, 0) == 1
    assert step(OSC1, 1) == 0
    assert step(FIX0, 1) == 0
    assert step(PAIR, pack_state([0, 0])) == pack_state([1, 0])


def test_step_is_deterministic():
    m = sample_bnm(5, RngStream(3))
    for s in range(8):
        assert step(m, s) == step(m, s)


def test_step_matches_naive_oracle():
    rng = RngStream(17)
    for m in random_machines(range(1, 9), 40, 7):
        s = rng.below(1 << m.size)
        packed = step(m, s)
        assert unpack_state(packed, m.size) == oracles.naive_step(m, unpack_state(s, m.size))


def test_find_cycle_examples():
    assert find_cycle(OSC1) == CycleSummary(0, 2)
    assert find_cycle(FIX0) == CycleSummary(0, 1)
    assert find_cycle(PAIR) == CycleSummary(0, 4)


def test_pair_walks_all_four_states():
    states = [0]
    for _ in range(4):
        states.append(step(PAIR, states[-1]))
    assert states == [0b00, 0b01, 0b11, 0b10, 0b00]


def test_find_cycle_transient():
    # n0 copies n1, n1 is constant 1: zero state takes one step to reach the
    # fixed point (1, 1).
    m = Bnm(((12, 1, 1), (15, 0, 0)), output=0)
    assert find_cycle(m) == CycleSummary(2, 1)
    assert output_cstring(m) == "1"


def test_find_cycle_matches_naive_oracle():
    for m in random_machines(range(1, 11), 60, 11):
        assert tuple(find_cycle(m)) == oracles.naive_cycle(m)


def test_cycle_bound_on_random_sample():
    for m in random_machines(range(1, 11), 60, 13):
        mu, lam = find_cycle(m)
        assert mu + lam <= 2 ** m.size


def test_output_examples():
    assert output_cstring(OSC1) == "01"
    assert output_cstring(FIX0) == "0"
    assert output_cstring(PAIR) == "0011"


def test_cycle_output_bits_is_raw():
    summary, raw = cycle_output_bits(PAIR)
    assert summary == CycleSummary(0, 4)
    assert raw == "0110"  # cycle order, not rotated
    assert canonicalize(raw) == "0011"


def test_output_length_divides_cycle_length():
    for m in random_machines(range(1, 9), 50, 19):
        summary, raw = cycle_output_bits(m)
        assert len(raw) == summary.cycle_len
        assert summary.cycle_len % len(canonicalize(raw)) == 0


def test_output_matches_naive_oracle():
    for m in random_machines(range(1, 9), 50, 23):
        assert output_cstring(m) == oracles.naive_output_cstring(m)


def test_primitive_root():
    assert primitive_root("0101") == "01"
    assert primitive_root("0110") == "0110"
    assert primitive_root("111") == "1"
    assert primitive_root("0") == "0"
    rng = RngStream(29)
    for _ in range(500):
        n = 1 + rng.below(24)
        s = format(rng.next64() & ((1 << n) - 1), f"0{n}b")
        assert primitive_root(s) == oracles.brute_primitive_root(s)


def test_least_rotation_known_strings():
    assert least_rotation("110") == 2
    assert least_rotation("0") == 0
    assert least_rotation("10") == 1
    rng = RngStream(31)
    for _ in range(500):
        n = 1 + rng.below(24)
        s = format(rng.next64() & ((1 << n) - 1), f"0{n}b")
        k = least_rotation(s)
        assert s[k:] + s[:k] == min(oracles.rotations(s))


def test_canonicalize_examples():
    assert canonicalize("110") == "011"
    assert canonicalize("0101") == "01"
    assert canonicalize("1001011") == "0010111"


def test_canonicalize_rejects_bad_input():
    with pytest.raises(ValueError):
        canonicalize("")
    with pytest.raises(ValueError):
        canonicalize("01x0")


def test_canonicalize_properties_random():
    rng = RngStream(37)
    for _ in range(2000):
        n = 1 + rng.below(32)
        s = format(rng.next64() & ((1 << n) - 1), f"0{n}b")
        c = canonicalize(s)
        assert c == oracles.brute_canonical(s)
        assert canonicalize(c) == c
        for r in oracles.rotations(s):
            assert canonicalize(r) == c


def test_efficiency_ratio():
    assert math.isclose(efficiency_ratio(3, 6), 0.8617, abs_tol=5e-5)
    assert efficiency_ratio(6, 64) == 1.0
    assert efficiency_ratio(6, 1) == 0.0
    with pytest.raises(ValueError):
        efficiency_ratio(0, 4)
    with pytest.raises(ValueError):
        efficiency_ratio(3, 0)


def test_validate():
    good = Bnm(((5, 0, 3), (9, 2, 2), (0, 1, 1), (15, 3, 0)), output=2)
    assert validate(good) == []

    bad_output = Bnm(good.nodes, output=4)
    assert any("output out of range" in p for p in validate(bad_output))

    bad_edge = Bnm(((5, 6, 0), (9, 1, 1), (0, 1, 1), (15, 3, 0)), output=0)
    assert any("edge target out of range" in p for p in validate(bad_edge))

    bad_tt = Bnm(((16, 0, 0),), output=0)
    assert any("truth table out of range" in p for p in validate(bad_tt))

    assert validate(Bnm((), output=0))  # empty machine is not well formed


def test_bnm_construction():
    m = Bnm([(1, 0, 0)])  # plain tuples are coerced
    assert m.nodes == (NodeSpec(1, 0, 0),)
    assert m.size == 1
    assert m.output == 0
    with pytest.raises(dataclasses.FrozenInstanceError):
        m.output = 1
    assert m == Bnm(((1, 0, 0),), output=0)
