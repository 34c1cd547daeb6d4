"""Bit-level tour encodings: the n^2 twofold one-hot form and the
compact form with one log2(n)-bit subregister per time slot.

Bit strings are tuples of 0/1, grouped by time slot: slot t (0-based)
occupies positions t*r .. (t+1)*r - 1, where r is the subregister width.
One-hot slots hold the visited city as a one-hot row; compact slots hold
its binary value, most significant bit first.  Feasible strings are
exactly the encodings of permutations (slot t holds the city visited at
time t), and swapping whole subregisters realises the right self-action
of the symmetric group on tours.
"""

from dataclasses import dataclass
from math import ceil, log2

from .perms import Perm, check_perm, is_involution

ONEHOT = "onehot"
COMPACT = "compact"

Bits = tuple[int, ...]


class Infeasible(ValueError):
    """Bit string does not encode a tour permutation."""


@dataclass(frozen=True)
class EncodingSpec:
    """City count, encoding kind, and the reduced flag.

    Reduced instances fix city n as the tour start: the encoding then
    covers permutations of the remaining n-1 cities, and every width
    below is computed from the effective degree n-1.
    """

    n: int
    kind: str = COMPACT
    reduced: bool = False

    def __post_init__(self):
        if self.kind not in (ONEHOT, COMPACT):
            raise ValueError(f"unknown encoding kind {self.kind!r}")
        if self.n < 1 or (self.reduced and self.n < 2):
            raise ValueError(f"bad city count {self.n} for reduced={self.reduced}")

    @property
    def degree(self) -> int:
        """Effective permutation degree: n, or n-1 when reduced."""
        return self.n - 1 if self.reduced else self.n

    @property
    def subregister_width(self) -> int:
        if self.kind == ONEHOT:
            return self.degree
        return max(1, ceil(log2(self.degree)))

    @property
    def num_bits(self) -> int:
        return self.degree * self.subregister_width


def encode(p: Perm, spec: EncodingSpec) -> Bits:
    """The feasible bit string of a tour permutation (degree = spec.degree)."""
    check_perm(p)
    if len(p) != spec.degree:
        raise ValueError(f"degree mismatch: perm {len(p)}, encoding {spec.degree}")
    r = spec.subregister_width
    bits = [0] * spec.num_bits
    for t, city in enumerate(p):
        if spec.kind == ONEHOT:
            bits[t * r + city] = 1
        else:
            for k in range(r):
                bits[t * r + k] = (city >> (r - 1 - k)) & 1
    return tuple(bits)


def decode(bits: Bits, spec: EncodingSpec) -> Perm:
    """Inverse of `encode`; raises Infeasible on any constraint violation."""
    if len(bits) != spec.num_bits:
        raise Infeasible(f"expected {spec.num_bits} bits, got {len(bits)}")
    r = spec.subregister_width
    image = []
    for t in range(spec.degree):
        sub = bits[t * r:(t + 1) * r]
        if spec.kind == ONEHOT:
            if sum(sub) != 1:
                raise Infeasible(f"slot {t + 1} is not one-hot: {sub}")
            city = sub.index(1)
        else:
            city = 0
            for b in sub:
                city = (city << 1) | b
            if city >= spec.degree:
                raise Infeasible(f"slot {t + 1} holds out-of-range value {city}")
        image.append(city)
    if len(set(image)) != spec.degree:
        raise Infeasible("a city is visited more than once")
    return tuple(image)


def is_feasible(bits: Bits, spec: EncodingSpec) -> bool:
    try:
        decode(bits, spec)
    except Infeasible:
        return False
    return True


def subregister_swap(bits: Bits, element: Perm, spec: EncodingSpec) -> Bits:
    """Permute whole subregisters by an involution of time slots.

    Defined on all of bit^m (the unitary extension used throughout):
    slot t of the result holds slot element(t) of the input.  On feasible
    strings this is exactly the right action p -> p . element through the
    encoding.
    """
    if len(element) != spec.degree:
        raise ValueError(f"element degree {len(element)} != {spec.degree}")
    if not is_involution(element):
        raise ValueError("slot element must be an involution")
    if len(bits) != spec.num_bits:
        raise ValueError(f"expected {spec.num_bits} bits, got {len(bits)}")
    r = spec.subregister_width
    out = [0] * spec.num_bits
    for t in range(spec.degree):
        src = element[t]
        out[t * r:(t + 1) * r] = bits[src * r:(src + 1) * r]
    return tuple(out)


def format_bits(bits: Bits, spec: EncodingSpec) -> str:
    """MSB-first 0/1 characters grouped by subregister, e.g. "01|10|00"."""
    r = spec.subregister_width
    groups = (
        "".join(str(b) for b in bits[t * r:(t + 1) * r])
        for t in range(spec.degree)
    )
    return "|".join(groups)


def all_bitstrings(m: int):
    """All m-bit tuples, for exhaustive scans at small m."""
    for value in range(1 << m):
        yield tuple((value >> (m - 1 - k)) & 1 for k in range(m))
