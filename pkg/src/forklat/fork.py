"""Fork insertion into a slim semimodular lattice.

Inserting a fork at a covering square first replaces the square by a
7-element fork sublattice (a new tip below the square's top and one new
element inside each coatom edge), then propagates further new elements
down-left and down-right as long as the next covering square of the host
lattice is available.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import congruence as cg
from .errors import NotACoveringSquare, NotSPS
from .lattice import CoveringSquare, Interval, Lattice, build


@dataclass(frozen=True)
class SquareKind:
    """Tight/wide classification plus distributivity of the ideal below
    the square's top."""

    tight: bool
    distributive: bool

    @property
    def wide(self) -> bool:
        return not self.tight


@dataclass(frozen=True)
class ForkTrace:
    """Complete bookkeeping of one fork insertion.

    ``square`` lives in the source lattice's indexing; all other element
    fields live in the extension's indexing.  ``left_chain`` holds the new
    elements descending to the lower left, ``left_upper[k]`` the existing
    element covering ``left_chain[k]`` (``left_upper[0]`` is the square's
    left coatom), and ``left_lower[k]`` the existing element it covers
    (``left_lower[0]`` is the square's bottom); symmetrically on the right.
    """

    square: CoveringSquare
    old_to_new: tuple[int, ...]
    tip: int
    left_chain: tuple[int, ...]
    right_chain: tuple[int, ...]
    left_upper: tuple[int, ...]
    left_lower: tuple[int, ...]
    right_upper: tuple[int, ...]
    right_lower: tuple[int, ...]

    @property
    def n_left(self) -> int:
        return len(self.left_chain)

    @property
    def n_right(self) -> int:
        return len(self.right_chain)

    def new_elements(self) -> tuple[int, ...]:
        return (self.tip,) + self.left_chain + self.right_chain

    def new_to_old(self) -> dict[int, int]:
        return {nw: old for old, nw in enumerate(self.old_to_new)}

    def to_dict(self) -> dict:
        return {
            "square": list(self.square.elements()),
            "old_to_new": list(self.old_to_new),
            "tip": self.tip,
            "left_chain": list(self.left_chain),
            "right_chain": list(self.right_chain),
            "left_upper": list(self.left_upper),
            "left_lower": list(self.left_lower),
            "right_upper": list(self.right_upper),
            "right_lower": list(self.right_lower),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ForkTrace":
        return cls(
            square=CoveringSquare(*d["square"]),
            old_to_new=tuple(d["old_to_new"]),
            tip=d["tip"],
            left_chain=tuple(d["left_chain"]),
            right_chain=tuple(d["right_chain"]),
            left_upper=tuple(d["left_upper"]),
            left_lower=tuple(d["left_lower"]),
            right_upper=tuple(d["right_upper"]),
            right_lower=tuple(d["right_lower"]),
        )


def classify_square(L: Lattice, S: CoveringSquare) -> SquareKind:
    if not L.is_covering_square(S):
        raise NotACoveringSquare(f"{S} is not a covering square")
    return SquareKind(
        tight=len(L.down_covers[S.i]) == 2,
        distributive=L.is_distributive_interval(Interval(0, S.i)),
    )


class _Diagram:
    """Mutable cover lists with left-to-right order, used while a fork is
    being inserted."""

    def __init__(self, L: Lattice):
        self.up = {x: list(L.up_covers[x]) for x in range(L.n)}
        self.down = {x: list(L.down_covers[x]) for x in range(L.n)}
        self.next_id = L.n

    def fresh(self) -> int:
        x = self.next_id
        self.next_id += 1
        self.up[x] = []
        self.down[x] = []
        return x

    def replace(self, lst: list, old: int, new: int):
        lst[lst.index(old)] = new

    def split_edge(self, lo: int, hi: int, mid: int):
        """Replace the cover lo ≺ hi by lo ≺ mid ≺ hi, in place."""
        self.replace(self.up[lo], hi, mid)
        self.replace(self.down[hi], lo, mid)
        self.up[mid].append(hi)
        self.down[mid].append(lo)


def insert_fork(L: Lattice, S: CoveringSquare) -> tuple[Lattice, ForkTrace]:
    """Insert a fork at the covering square S of the SPS lattice L.

    Returns the extension and a trace; the extension is re-indexed to a
    linear extension and fully re-validated.
    """
    if not (L.is_slim() and L.is_semimodular()):
        raise NotSPS("fork insertion requires a slim semimodular lattice")
    if not L.is_covering_square(S):
        raise NotACoveringSquare(f"{S} is not a covering square")

    d = _Diagram(L)
    tip = d.fresh()
    # tip sits between the coatoms in the top's lower-cover order
    pos = d.down[S.i].index(S.al) + 1
    d.down[S.i].insert(pos, tip)
    d.up[tip].append(S.i)

    z_left = _grow_track(L, d, S, tip, side="l")
    z_right = _grow_track(L, d, S, tip, side="r")

    # left-to-right order inside the tip's lower covers
    d.down[tip] = [z_left[0], z_right[0]]

    new_order = _linear_extension(L, d)
    index = {e: k for k, e in enumerate(new_order)}
    n2 = len(new_order)
    covers = []
    left_order = [None] * n2
    down_order = [None] * n2
    for e in new_order:
        left_order[index[e]] = tuple(index[u] for u in d.up[e])
        down_order[index[e]] = tuple(index[u] for u in d.down[e])
        for u in d.up[e]:
            covers.append((index[e], index[u]))
    LS = build(n2, covers, left_order=left_order, down_order=down_order)
    if not (LS.is_slim() and LS.is_semimodular()):
        raise NotSPS("fork insertion produced a non-SPS lattice")

    uppers = {"l": [S.al], "r": [S.ar]}
    lowers = {"l": [S.o], "r": [S.o]}
    for side, chain in (("l", z_left), ("r", z_right)):
        for k in range(1, len(chain)):
            x_prev = uppers[side][k - 1]
            y_prev = lowers[side][k - 1]
            dl = L.down_covers[x_prev]
            if side == "l":
                x_next = dl[dl.index(y_prev) - 1]
            else:
                x_next = dl[dl.index(y_prev) + 1]
            uppers[side].append(x_next)
            lowers[side].append(L.meet(x_next, y_prev))

    def m(xs):
        return tuple(index[x] for x in xs)

    trace = ForkTrace(
        square=S,
        old_to_new=tuple(index[x] for x in range(L.n)),
        tip=index[tip],
        left_chain=m(z_left),
        right_chain=m(z_right),
        left_upper=m(uppers["l"]),
        left_lower=m(lowers["l"]),
        right_upper=m(uppers["r"]),
        right_lower=m(lowers["r"]),
    )
    return LS, trace


def _grow_track(L: Lattice, d: _Diagram, S: CoveringSquare, tip: int, side: str):
    """Insert the descending chain of new elements on one side; returns it."""
    x, y = (S.al, S.o) if side == "l" else (S.ar, S.o)
    z = d.fresh()
    d.split_edge(y, x, z)
    if side == "l":
        d.up[z].append(tip)       # covers left-to-right: x then tip
    else:
        d.up[z].insert(0, tip)    # tip then x
    d.down[tip].append(z)
    chain = [z]
    while True:
        dl = L.down_covers[x]
        pos = dl.index(y)
        if side == "l":
            if pos == 0:
                break
            x_next = dl[pos - 1]
        else:
            if pos == len(dl) - 1:
                break
            x_next = dl[pos + 1]
        y_next = L.meet(x_next, y)
        # the next covering square must exist in the original lattice
        if not (L.is_cover(y_next, x_next) and L.is_cover(y_next, y)
                and L.join(x_next, y) == x):
            break
        # and the edge below it must still be intact at the present stage
        if x_next not in d.up[y_next]:
            break
        z_next = d.fresh()
        d.split_edge(y_next, x_next, z_next)
        if side == "l":
            d.up[z_next].append(chain[-1])
            d.down[chain[-1]].insert(0, z_next)
        else:
            d.up[z_next].insert(0, chain[-1])
            d.down[chain[-1]].append(z_next)
        chain.append(z_next)
        x, y = x_next, y_next
    return chain


def _linear_extension(L: Lattice, d: _Diagram):
    """Deterministic topological order: old elements keep their relative
    order, each new element slots in just below the element it splits."""
    import heapq
    keys = {}
    for e in d.up:
        if e < L.n:
            keys[e] = (e, 0)
        else:
            above = min(d.up[e])
            keys[e] = (keys.get(above, (above, 0))[0], 1, e)
    indeg = {e: len(d.down[e]) for e in d.up}
    ready = [(keys[e], e) for e in d.up if indeg[e] == 0]
    heapq.heapify(ready)
    out = []
    while ready:
        _, e = heapq.heappop(ready)
        out.append(e)
        for u in d.up[e]:
            indeg[u] -= 1
            if indeg[u] == 0:
                heapq.heappush(ready, (keys[u], u))
    return out


def associated_s7(trace: ForkTrace) -> tuple[int, ...]:
    """The 7-element fork sublattice created by the insertion, in role
    order (o, zl, zr, al, tip, ar, unit), in the extension's indexing."""
    o2n = trace.old_to_new
    S = trace.square
    return (o2n[S.o], trace.left_chain[0], trace.right_chain[0],
            o2n[S.al], trace.tip, o2n[S.ar], o2n[S.i])


@dataclass(frozen=True)
class SquareCongruences:
    """The five named principal congruences of a fork insertion: the two
    coatom congruences con(coatom, top) in the base and in the extension,
    and the fork congruence con(tip, top) of the extension."""

    left_base: cg.Partition
    right_base: cg.Partition
    left_ext: cg.Partition
    right_ext: cg.Partition
    fork: cg.Partition


def named_congruences(L: Lattice, LS: Lattice, trace: ForkTrace) -> SquareCongruences:
    S = trace.square
    o2n = trace.old_to_new
    return SquareCongruences(
        left_base=cg.principal_congruence_fixpoint(L, S.al, S.i),
        right_base=cg.principal_congruence_fixpoint(L, S.ar, S.i),
        left_ext=cg.principal_congruence_fixpoint(LS, o2n[S.al], o2n[S.i]),
        right_ext=cg.principal_congruence_fixpoint(LS, o2n[S.ar], o2n[S.i]),
        fork=cg.principal_congruence_fixpoint(LS, trace.tip, o2n[S.i]),
    )


def track_prime_lists(trace: ForkTrace) -> dict[str, list[tuple[int, int]]]:
    """The five listed families of new prime intervals: below-chain
    ([z, x]) and above-floor ([y, z]) on each side, plus the tip edge."""
    o2n = trace.old_to_new
    out = {"tip": [(trace.tip, o2n[trace.square.i])]}
    for side, chain, upper, lower in (
            ("left", trace.left_chain, trace.left_upper, trace.left_lower),
            ("right", trace.right_chain, trace.right_upper, trace.right_lower)):
        out[f"{side}_zx"] = [(z, upper[k]) for k, z in enumerate(chain)]
        out[f"{side}_yz"] = [(lower[k], z) for k, z in enumerate(chain)]
    return out


def new_prime_intervals(LS: Lattice, trace: ForkTrace) -> set[tuple[int, int]]:
    """All prime intervals of the extension that are not (images of) prime
    intervals of the base: the five listed families plus the cover edges
    inside the new chains themselves."""
    out = set()
    for lst in track_prime_lists(trace).values():
        out.update(lst)
    for chain in (trace.left_chain, trace.right_chain):
        out.add((chain[0], trace.tip))
        out.update(zip(chain[1:], chain))
    return out
