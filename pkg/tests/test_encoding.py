from itertools import permutations
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from permcirc.encoding import (
    COMPACT,
    ONEHOT,
    EncodingSpec,
    Infeasible,
    all_bitstrings,
    decode,
    encode,
    format_bits,
    is_feasible,
    subregister_swap,
)
from permcirc.perms import all_perms, compose, identity
from permcirc.sequences import binary_insertion_sequence, bubble_sequence


def test_spec_widths():
    assert EncodingSpec(4, ONEHOT).num_bits == 16
    assert EncodingSpec(4, COMPACT).num_bits == 8
    assert EncodingSpec(9, COMPACT, reduced=True).num_bits == 24
    assert EncodingSpec(9, ONEHOT, reduced=True).num_bits == 64
    assert EncodingSpec(9, COMPACT, reduced=True).degree == 8


def test_encode_identity_onehot():
    spec = EncodingSpec(2, ONEHOT)
    assert encode(identity(2), spec) == (1, 0, 0, 1)


def test_encode_identity_compact_holds_slot_index():
    spec = EncodingSpec(3, COMPACT)
    # slot t holds bin(t) over 2 bits, MSB first
    assert encode(identity(3), spec) == (0, 0, 0, 1, 1, 0)
    assert format_bits(encode(identity(3), spec), spec) == "00|01|10"


def test_encode_swap_compact_n2():
    spec = EncodingSpec(2, COMPACT)
    assert encode((1, 0), spec) == (1, 0)


def test_roundtrip_s4_both_kinds():
    for kind in (ONEHOT, COMPACT):
        spec = EncodingSpec(4, kind)
        for p in all_perms(4):
            assert decode(encode(p, spec), spec) == p


def test_roundtrip_reduced_and_degenerate():
    for n in range(1, 6):
        for kind in (ONEHOT, COMPACT):
            for reduced in (False, True):
                if reduced and n < 2:
                    continue
                spec = EncodingSpec(n, kind, reduced)
                for p in all_perms(spec.degree):
                    assert decode(encode(p, spec), spec) == p


def test_infeasible_strings():
    spec = EncodingSpec(3, ONEHOT)
    with pytest.raises(Infeasible):
        decode((0,) * 9, spec)
    two_in_a_slot = (1, 1, 0) + (0, 1, 0) + (0, 0, 1)
    with pytest.raises(Infeasible):
        decode(two_in_a_slot, spec)
    repeated_city = (1, 0, 0) + (1, 0, 0) + (0, 0, 1)
    with pytest.raises(Infeasible):
        decode(repeated_city, spec)
    compact = EncodingSpec(3, COMPACT)
    with pytest.raises(Infeasible):
        decode((1, 1, 0, 0, 0, 1), compact)  # slot value 3 out of range


def test_feasible_counts_exhaustive():
    cases = [
        (EncodingSpec(3, ONEHOT), 6),
        (EncodingSpec(4, COMPACT), 24),
        (EncodingSpec(3, COMPACT), 6),
        (EncodingSpec(2, ONEHOT), 2),
        (EncodingSpec(4, ONEHOT), 24),  # m = 16, the exhaustive-scan cap
    ]
    for spec, expected in cases:
        count = sum(is_feasible(b, spec) for b in all_bitstrings(spec.num_bits))
        assert count == expected == factorial(spec.degree)


def test_encode_is_always_feasible():
    spec = EncodingSpec(5, COMPACT)
    for p in all_perms(5):
        assert is_feasible(encode(p, spec), spec)


def test_subregister_swap_is_involution_on_all_strings():
    rng = np.random.default_rng(5)
    for n in (3, 4):
        elements = set(bubble_sequence(n).elements) | set(
            binary_insertion_sequence(n).elements
        )
        for kind in (ONEHOT, COMPACT):
            spec = EncodingSpec(n, kind)
            for element in elements:
                images = set()
                for _ in range(1000):
                    bits = tuple(rng.integers(0, 2, spec.num_bits).tolist())
                    swapped = subregister_swap(bits, element, spec)
                    assert subregister_swap(swapped, element, spec) == bits
                    images.add(swapped)
                # bijection witnessed on the sampled strings
                assert len(images) == len(
                    {subregister_swap(b, element, spec) for b in images}
                )


def test_subregister_swap_matches_right_action():
    for n in (3, 4):
        elements = set(bubble_sequence(n).elements) | set(
            binary_insertion_sequence(n).elements
        )
        for kind in (ONEHOT, COMPACT):
            spec = EncodingSpec(n, kind)
            for element in elements:
                for p in all_perms(n):
                    swapped = subregister_swap(encode(p, spec), element, spec)
                    assert is_feasible(swapped, spec)
                    assert decode(swapped, spec) == compose(p, element)


def test_subregister_swap_block_example():
    # S_4 insertion block at level 2 swaps slots 0<->2 and 1<->3
    spec = EncodingSpec(4, COMPACT)
    element = binary_insertion_sequence(4).elements[-1]
    assert element == (2, 3, 0, 1)
    swapped = subregister_swap(encode(identity(4), spec), element, spec)
    assert decode(swapped, spec) == (2, 3, 0, 1)


def test_subregister_swap_rejects_non_involution():
    spec = EncodingSpec(3, COMPACT)
    with pytest.raises(ValueError):
        subregister_swap(encode(identity(3), spec), (1, 2, 0), spec)


@settings(max_examples=150)
@given(st.permutations(tuple(range(5))), st.booleans(), st.booleans())
def test_roundtrip_property(p, compact, reduced):
    p = tuple(p)
    n = len(p) + 1 if reduced else len(p)
    spec = EncodingSpec(n, COMPACT if compact else ONEHOT, reduced)
    assert decode(encode(p, spec), spec) == p
