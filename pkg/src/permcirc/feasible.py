"""Exact simulation in the feasible subspace.

States are complex amplitude vectors over all n! tour permutations,
indexed by Lehmer rank; infeasible bit strings simply do not exist in
this representation.  Exponentials of involutory permutation operators
reduce to cos(theta) * amps - i sin(theta) * gathered amps, so a gate is
one vectorised gather-and-mix pass over a precomputed index table.
"""

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .perms import Perm, check_perm, compose, inverse, is_involution, perm_table, rank, rank_rows, unrank
from .sequences import GeneratingSequence, decompose
from .tsp import TourCost

# 16 bytes per amplitude: degree 11 already needs ~640 MB.
SIM_MAX_DEGREE = 11


class StateTooLarge(Exception):
    """Feasible-subspace state refused above the degree cap."""


@dataclass
class FeasibleState:
    """Amplitudes over S_n in Lehmer-rank order; norm 1."""

    n: int
    amps: np.ndarray

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def copy(self) -> "FeasibleState":
        return FeasibleState(self.n, self.amps.copy())


def _check_degree(n: int) -> None:
    if n > SIM_MAX_DEGREE:
        raise StateTooLarge(
            f"degree {n} needs {16 * factorial(n) / 2**30:.1f} GiB of amplitudes; "
            f"cap is {SIM_MAX_DEGREE}"
        )


def basis_state(p: Perm) -> FeasibleState:
    """Unit amplitude on one tour."""
    check_perm(p)
    _check_degree(len(p))
    amps = np.zeros(factorial(len(p)), dtype=complex)
    amps[rank(p)] = 1.0
    return FeasibleState(len(p), amps)


def uniform_feasible_state(n: int) -> FeasibleState:
    """Every tour at amplitude 1/sqrt(n!)."""
    _check_degree(n)
    size = factorial(n)
    amps = np.full(size, 1.0 / np.sqrt(size), dtype=complex)
    return FeasibleState(n, amps)


@lru_cache(maxsize=None)
def involution_action(element: Perm, side: str = "right") -> np.ndarray:
    """Rank-index table of one involution acting on all of S_n.

    side "right" maps rank(p) -> rank(p . element) (slot semantics);
    side "left" maps rank(p) -> rank(element . p).  The table is itself
    an involution on 0..n!-1.
    """
    if not is_involution(element):
        raise ValueError(f"element is not an involution: {element}")
    if side not in ("left", "right"):
        raise ValueError(f"bad action side {side!r}")
    n = len(element)
    _check_degree(n)
    table = perm_table(n)
    h = np.asarray(element, dtype=np.int8)
    rows = table[:, h] if side == "right" else h[table]
    out = rank_rows(rows)
    out.setflags(write=False)
    return out


def apply_involution_exp(state: FeasibleState, action: np.ndarray, theta: float) -> FeasibleState:
    """exp(-i theta H) for the involutory permutation operator H given by
    an index table: amps'[r] = cos(theta) amps[r] - i sin(theta) amps[a(r)].

    Orbit pairs {r, a(r)} are independent, so the whole update is one
    gather; fixed points of the action pick up the phase exp(-i theta).
    """
    amps = np.cos(theta) * state.amps - 1j * np.sin(theta) * state.amps[action]
    return FeasibleState(state.n, amps)


def apply_phase(state: FeasibleState, gamma: float, cost) -> FeasibleState:
    """Diagonal phase exp(-i gamma * cost) per tour; probabilities untouched.

    `cost` is a TourCost or a precomputed rank-indexed cost vector.
    """
    vec = cost.vector() if isinstance(cost, TourCost) else np.asarray(cost)
    return FeasibleState(state.n, np.exp(-1j * gamma * vec) * state.amps)


def run_exhaustive_circuit(seq: GeneratingSequence, thetas, start: Perm) -> FeasibleState:
    """Apply the parametrised exponential of every sequence element in
    order to the basis state of `start`."""
    thetas = np.asarray(thetas, dtype=float)
    if thetas.shape != (len(seq.elements),):
        raise ValueError(f"need {len(seq.elements)} angles, got shape {thetas.shape}")
    state = basis_state(start)
    for h, theta in zip(seq.elements, thetas):
        state = apply_involution_exp(state, involution_action(h, seq.action_side), theta)
    return state


def reachability_params(seq: GeneratingSequence, start: Perm, target: Perm) -> np.ndarray:
    """Angles pi/2 * mask that drive `start` exactly onto `target`.

    The element carrying start to target on the declared action side is
    decomposed over the sequence; at angle pi/2 each selected factor acts
    as -i times its permutation operator, so the final state is `target`
    up to a global phase.
    """
    check_perm(start)
    check_perm(target)
    if seq.action_side == "right":
        g = compose(inverse(target), start)
    else:
        g = compose(target, inverse(start))
    mask = decompose(seq, g)
    return np.pi / 2 * np.asarray(mask, dtype=float)


def expectation(state: FeasibleState, cost) -> float:
    """Sum of |amp|^2 times tour cost; lies between min and max cost."""
    vec = cost.vector() if isinstance(cost, TourCost) else np.asarray(cost)
    return float(np.real(np.vdot(state.amps, vec * state.amps)))


def probabilities(state: FeasibleState) -> np.ndarray:
    return np.abs(state.amps) ** 2


def sample(state: FeasibleState, seed: int, k: int) -> list[Perm]:
    """k tours drawn per |amp|^2, reproducible for a fixed seed."""
    rng = np.random.default_rng(seed)
    probs = probabilities(state)
    probs = probs / probs.sum()
    ranks = rng.choice(len(probs), size=k, p=probs)
    return [unrank(int(r), state.n) for r in ranks]


def fidelity(state: FeasibleState, target: Perm) -> float:
    """|<target|state>| for a basis target."""
    return float(np.abs(state.amps[rank(target)]))
