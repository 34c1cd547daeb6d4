"""TSP instances on complete weighted digraphs, tour costs, and the
brute-force optimum.

Tours are permutations in one-line notation: position t holds the city
visited at time t (0-based).  The reduced cost fixes the last city as
tour start, so reduced tours are permutations of the remaining n-1
cities with the two boundary edges added implicitly.
"""

from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

import numpy as np

from .perms import Perm, check_perm, perm_table, unrank

# Exhaustive enumeration bound; 12! tours is already hours of work.
OPTIMUM_MAX_DEGREE = 12
# Below this the cost vector over all ranks is built in one vectorised pass.
_VECTOR_MAX_DEGREE = 10


class TooLarge(Exception):
    """Exhaustive enumeration refused above the degree cap."""


@dataclass(frozen=True)
class TspInstance:
    """Complete weighted digraph without self-loops; w[u, v] > 0 for u != v."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"weight matrix must be square, got {w.shape}")
        off = ~np.eye(w.shape[0], dtype=bool)
        if w.shape[0] > 1 and not (w[off] > 0).all():
            raise ValueError("off-diagonal weights must be positive")
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]


def tour_cost(inst: TspInstance, p: Perm, reduced: bool = False) -> float:
    """Total weight of the cyclic tour p; with reduced=True, p permutes
    the first n-1 cities and city n is the implicit start and end."""
    check_perm(p)
    w = inst.w
    if reduced:
        if len(p) != inst.n - 1:
            raise ValueError(f"reduced tour degree {len(p)} != n-1 = {inst.n - 1}")
        last = inst.n - 1
        total = w[last, p[0]]
        for t in range(len(p) - 1):
            total += w[p[t], p[t + 1]]
        total += w[p[-1], last]
        return float(total)
    if len(p) != inst.n:
        raise ValueError(f"tour degree {len(p)} != n = {inst.n}")
    if len(p) == 1:
        return 0.0
    total = w[p[0], p[1]]
    for t in range(1, len(p) - 1):
        total += w[p[t], p[t + 1]]
    total += w[p[-1], p[0]]
    return float(total)


class TourCost:
    """Callable tour-cost function for one instance, with a cached cost
    vector over all Lehmer ranks of the effective degree."""

    def __init__(self, instance: TspInstance, reduced: bool = False):
        self.instance = instance
        self.reduced = reduced
        self.degree = instance.n - 1 if reduced else instance.n
        self._vector: np.ndarray | None = None

    def __call__(self, p: Perm) -> float:
        return tour_cost(self.instance, p, self.reduced)

    def vector(self) -> np.ndarray:
        """Costs of all degree! tours, indexed by Lehmer rank."""
        if self._vector is None:
            if self.degree > _VECTOR_MAX_DEGREE:
                raise TooLarge(f"cost vector capped at degree {_VECTOR_MAX_DEGREE}")
            table = perm_table(self.degree)
            w = self.instance.w
            if self.degree == 1:
                costs = np.zeros(1)
                if self.reduced:
                    costs += w[1, 0] + w[0, 1]
            elif self.reduced:
                last = self.instance.n - 1
                costs = w[last, table[:, 0]].copy()
                for t in range(self.degree - 1):
                    costs += w[table[:, t], table[:, t + 1]]
                costs += w[table[:, -1], last]
            else:
                costs = w[table[:, 0], table[:, 1]].copy()
                for t in range(1, self.degree - 1):
                    costs += w[table[:, t], table[:, t + 1]]
                costs += w[table[:, -1], table[:, 0]]
            self._vector = costs
        return self._vector


def optimum(inst: TspInstance, reduced: bool = False) -> tuple[Perm, float]:
    """Globally cheapest tour by exhaustive enumeration; ties broken by
    smallest Lehmer rank."""
    degree = inst.n - 1 if reduced else inst.n
    if degree > OPTIMUM_MAX_DEGREE:
        raise TooLarge(f"brute force capped at effective degree {OPTIMUM_MAX_DEGREE}")
    if degree <= _VECTOR_MAX_DEGREE:
        costs = TourCost(inst, reduced).vector()
        best = int(np.argmin(costs))
        return unrank(best, degree), float(costs[best])
    best_p, best_c = None, np.inf
    for p in permutations(range(degree)):
        c = tour_cost(inst, p, reduced)
        if c < best_c:
            best_p, best_c = p, c
    return best_p, best_c


def random_instance(n: int, seed: int, lo: float = 1.0, hi: float = 10.0) -> TspInstance:
    """Weights drawn i.i.d. uniform from [lo, hi); same seed, same matrix."""
    if not 0 < lo <= hi:
        raise ValueError(f"need 0 < lo <= hi, got lo={lo}, hi={hi}")
    rng = np.random.default_rng(seed)
    w = rng.uniform(lo, hi, size=(n, n))
    np.fill_diagonal(w, 0.0)
    return TspInstance(w)


def save_instance(inst: TspInstance, path) -> None:
    """Plain-text format: n, directed flag, then one weight row per line.

    Weights are written as shortest round-tripping decimal literals, so
    save/load is value-exact.
    """
    lines = [f"n {inst.n}", "directed 1"]
    for row in inst.w:
        lines.append(" ".join(repr(float(v)) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def load_instance(path) -> TspInstance:
    """Parse the `save_instance` format with line/field diagnostics."""
    lines = [
        (i + 1, ln.strip())
        for i, ln in enumerate(Path(path).read_text().splitlines())
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if len(lines) < 2:
        raise ValueError(f"{path}: expected header lines 'n ...' and 'directed ...'")

    def header(index, key):
        lineno, text = lines[index]
        parts = text.split()
        if len(parts) != 2 or parts[0] != key:
            raise ValueError(f"{path}:{lineno}: expected '{key} <value>', got {text!r}")
        return parts[1]

    try:
        n = int(header(0, "n"))
    except ValueError as e:
        raise ValueError(f"{path}: bad city count: {e}") from None
    header(1, "directed")
    rows = lines[2:]
    if len(rows) != n:
        raise ValueError(f"{path}: expected {n} weight rows, found {len(rows)}")
    w = np.zeros((n, n))
    for u, (lineno, text) in enumerate(rows):
        fields = text.split()
        if len(fields) != n:
            raise ValueError(f"{path}:{lineno}: expected {n} weights, got {len(fields)}")
        for v, tok in enumerate(fields):
            try:
                w[u, v] = float(tok)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: field {v + 1}: bad weight {tok!r}") from None
            if u != v and w[u, v] <= 0:
                raise ValueError(f"{path}:{lineno}: field {v + 1}: weight must be positive")
    return TspInstance(w)
