"""Corpus generation: grids plus seeded random fork-insertion histories.

Every slim planar semimodular lattice arises from a planar distributive
lattice by fork insertions, so grids plus random forks reach all the
structural cases the verification harness needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InvalidStep, Unsatisfiable
from .fork import ForkTrace, insert_fork
from .lattice import CoveringSquare, Lattice, build


def grid(p: int, q: int) -> Lattice:
    """Direct product of two chains with p and q elements; the p-chain
    runs up-left in the diagram."""
    if p < 1 or q < 1:
        raise ValueError("grid dimensions must be positive")
    coords = sorted(((a, b) for a in range(p) for b in range(q)),
                    key=lambda ab: (ab[0] + ab[1], ab[1]))
    index = {ab: k for k, ab in enumerate(coords)}
    covers = []
    left_order = []
    down_order = []
    for a, b in coords:
        ups = []
        if a + 1 < p:
            ups.append(index[(a + 1, b)])
        if b + 1 < q:
            ups.append(index[(a, b + 1)])
        downs = []
        if b > 0:
            downs.append(index[(a, b - 1)])
        if a > 0:
            downs.append(index[(a - 1, b)])
        left_order.append(tuple(ups))
        down_order.append(tuple(downs))
        covers.extend((index[(a, b)], u) for u in ups)
    return build(p * q, covers, left_order=left_order, down_order=down_order)


@dataclass
class History:
    """Reproducible construction record: base grid dimensions, RNG seed,
    and the covering squares chosen for successive fork insertions (each
    in the indexing of the lattice at its step)."""

    base: tuple[int, int]
    seed: int
    steps: list[tuple[int, int, int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"base": list(self.base), "seed": self.seed,
                "steps": [list(s) for s in self.steps]}

    @classmethod
    def from_dict(cls, d: dict) -> "History":
        return cls(base=tuple(d["base"]), seed=d["seed"],
                   steps=[tuple(s) for s in d["steps"]])


def replay(history: History) -> Lattice:
    """Re-run a history from its base grid."""
    L = grid(*history.base)
    for step in history.steps:
        S = CoveringSquare(*step)
        if not L.is_covering_square(S):
            raise InvalidStep(f"{S} is not a covering square at this step")
        L, _ = insert_fork(L, S)
    return L


def replay_with_traces(history: History) -> list[tuple[Lattice, ForkTrace, Lattice]]:
    """Like :func:`replay` but returns (before, trace, after) per step."""
    L = grid(*history.base)
    out = []
    for step in history.steps:
        S = CoveringSquare(*step)
        if not L.is_covering_square(S):
            raise InvalidStep(f"{S} is not a covering square at this step")
        LS, trace = insert_fork(L, S)
        out.append((L, trace, LS))
        L = LS
    return out


def random_sps(seed: int, max_base: int = 4, k: int = 2,
               size_cap: int = 60, base=None) -> tuple[Lattice, History]:
    """Deterministic-per-seed SPS lattice built by k fork insertions at
    uniformly chosen covering squares of a random grid.  A step that would
    exceed ``size_cap`` is skipped."""
    rng = random.Random(seed)
    if base is None:
        base = (rng.randint(2, max_base), rng.randint(2, max_base))
    history = History(base=base, seed=seed)
    L = grid(*base)
    for _ in range(k):
        squares = L.covering_squares()
        if not squares:
            raise Unsatisfiable("no covering square available")
        S = rng.choice(squares)
        LS, _ = insert_fork(L, S)
        if LS.n > size_cap:
            continue
        history.steps.append(S.elements())
        L = LS
    return L, history


def default_corpus(count: int = 200, max_base: int = 4, size_cap: int = 60):
    """The standard verification corpus: ``count`` seeded lattices with
    varying fork depth.  Yields (Lattice, History)."""
    for seed in range(count):
        yield random_sps(seed, max_base=max_base, k=seed % 4, size_cap=size_cap)


def small_corpus(count: int = 50, size_cap: int = 25):
    """Corpus of small lattices for the dual-route congruence cross-check."""
    for seed in range(count):
        yield random_sps(seed, max_base=3, k=seed % 3, size_cap=size_cap)
