"""Finite lattices with a planar diagram order.

Elements are integers 0..n-1 indexed by a linear extension (0 is the
bottom, n-1 the top).  Besides the cover relation, every element stores
its upper and lower covers in left-to-right diagram order; that order is
the source of truth for "left of" everywhere else in the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InconsistentLeftOrder, NotALattice, NotTransitiveReduction


@dataclass(frozen=True, order=True)
class Interval:
    """An interval [bottom, top] of a lattice."""

    bottom: int
    top: int


@dataclass(frozen=True)
class CoveringSquare:
    """A covering square {o, al, ar, i}: o is the bottom, i the top,
    al the left coatom, ar the right one."""

    o: int
    al: int
    ar: int
    i: int

    def elements(self):
        return (self.o, self.al, self.ar, self.i)


@dataclass(frozen=True)
class S7Sublattice:
    """A cover-preserving 7-element fork sublattice.

    ``elements`` is (o, zl, zr, al, mid, ar, unit) in role order; ``unit``
    covers al, mid and ar.  ``minimal`` means no other such sublattice has
    a unit below or equal to this one.
    """

    elements: tuple[int, ...]
    unit: int
    minimal: bool


# cover pairs of the 7-element fork lattice, in role indices
# roles: 0=o, 1=zl, 2=zr, 3=al, 4=mid, 5=ar, 6=unit
_S7_COVERS = (
    (0, 1), (0, 2),
    (1, 3), (1, 4),
    (2, 4), (2, 5),
    (3, 6), (4, 6), (5, 6),
)


class Lattice:
    """Immutable finite lattice with dense meet/join tables.

    Use :func:`build` to construct one from a cover list; the constructor
    itself trusts its arguments.
    """

    __slots__ = (
        "n", "up_covers", "down_covers", "_down", "_up",
        "meet_table", "join_table", "_height", "_cache",
    )

    def __init__(self, up_covers, down_covers, down_sets, up_sets,
                 meet_table, join_table, height):
        self.n = len(up_covers)
        self.up_covers = up_covers      # tuple of tuples, leftmost first
        self.down_covers = down_covers
        self._down = down_sets          # per element, bitmask of {x : x <= e}
        self._up = up_sets
        self.meet_table = meet_table
        self.join_table = join_table
        self._height = height
        self._cache = {}                # memo for derived data (read-only use)

    # -- order primitives -------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        return bool(self._down[b] >> a & 1)

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def is_cover(self, a: int, b: int) -> bool:
        """True iff b covers a."""
        return a in self.down_covers[b]

    def height(self, a: int) -> int:
        return self._height[a]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n - 1

    def downset(self, a: int) -> int:
        """Bitmask of the principal ideal of a."""
        return self._down[a]

    def upset(self, a: int) -> int:
        return self._up[a]

    def interval_elements(self, iv: Interval) -> list[int]:
        mask = self._down[iv.top] & self._up[iv.bottom]
        return _bits(mask)

    def cover_pairs(self):
        for b in range(self.n):
            for a in self.down_covers[b]:
                yield (a, b)

    def prime_intervals(self) -> list[Interval]:
        return [Interval(a, b) for a, b in self.cover_pairs()]

    # -- predicates -------------------------------------------------------

    def is_semimodular(self) -> bool:
        """Upper covering condition: a∧b ≺ a implies b ≺ a∨b."""
        for a in range(self.n):
            for b in range(self.n):
                if self.is_cover(self.meet(a, b), a):
                    if not self.is_cover(b, self.join(a, b)):
                        return False
        return True

    def join_irreducibles(self) -> list[int]:
        return [x for x in range(self.n) if len(self.down_covers[x]) == 1]

    def is_slim(self) -> bool:
        """True iff the join-irreducibles contain no 3-element antichain."""
        ji = self.join_irreducibles()
        for x, y, z in combinations(ji, 3):
            if not (self.leq(x, y) or self.leq(y, x)
                    or self.leq(x, z) or self.leq(z, x)
                    or self.leq(y, z) or self.leq(z, y)):
                return False
        return True

    def is_distributive_interval(self, iv: Interval) -> bool:
        """Triple-law check on the sublattice [iv.bottom, iv.top]."""
        elems = self.interval_elements(iv)
        mt, jt = self.meet_table, self.join_table
        for x in elems:
            for y in elems:
                xy = mt[x][y]
                for z in elems:
                    if mt[x][jt[y][z]] != jt[xy][mt[x][z]]:
                        return False
        return True

    def is_distributive(self) -> bool:
        return self.is_distributive_interval(Interval(0, self.n - 1))

    # -- diagram structure ------------------------------------------------

    def covering_squares(self) -> list[CoveringSquare]:
        """All covering squares, coatoms in diagram left-to-right order."""
        out = []
        for o in range(self.n):
            ups = self.up_covers[o]
            for k1 in range(len(ups)):
                for k2 in range(k1 + 1, len(ups)):
                    al, ar = ups[k1], ups[k2]
                    i = self.join(al, ar)
                    if self.is_cover(al, i) and self.is_cover(ar, i):
                        out.append(CoveringSquare(o, al, ar, i))
        return out

    def is_covering_square(self, sq: CoveringSquare) -> bool:
        o, al, ar, i = sq.elements()
        if al == ar:
            return False
        ups = self.up_covers[o]
        if al not in ups or ar not in ups:
            return False
        if ups.index(al) > ups.index(ar):
            return False
        return (self.meet(al, ar) == o and self.join(al, ar) == i
                and self.is_cover(al, i) and self.is_cover(ar, i))

    def sublattice_closure(self, seed) -> frozenset[int]:
        """Closure of a set of elements under meet and join."""
        cur = set(seed)
        while True:
            new = set()
            lst = sorted(cur)
            for a in lst:
                for b in lst:
                    m, j = self.meet(a, b), self.join(a, b)
                    if m not in cur:
                        new.add(m)
                    if j not in cur:
                        new.add(j)
            if not new:
                return frozenset(cur)
            cur |= new

    def s7_sublattices(self) -> list[S7Sublattice]:
        """All cover-preserving S7 sublattices, minimality tagged."""
        found = {}
        for unit in range(self.n):
            downs = self.down_covers[unit]
            if len(downs) < 3:
                continue
            for triple in combinations(downs, 3):
                for mid_pos in range(3):
                    mid = triple[mid_pos]
                    al, ar = (t for k, t in enumerate(triple) if k != mid_pos)
                    roles = self._s7_roles(al, mid, ar, unit)
                    if roles is not None:
                        found[frozenset(roles)] = roles
        subs = list(found.values())
        out = []
        for roles in subs:
            unit = roles[6]
            minimal = not any(frozenset(other) != frozenset(roles)
                              and self.leq(other[6], unit)
                              for other in subs)
            out.append(S7Sublattice(roles, unit, minimal))
        out.sort(key=lambda s: s.elements)
        return out

    def _s7_roles(self, al, mid, ar, unit):
        zl = self.meet(al, mid)
        zr = self.meet(mid, ar)
        o = self.meet(zl, zr)
        roles = (o, zl, zr, al, mid, ar, unit)
        if len(set(roles)) != 7:
            return None
        for a, b in _S7_COVERS:
            if not self.is_cover(roles[a], roles[b]):
                return None
        # sublattice closure: all pairwise meets and joins stay inside
        rset = set(roles)
        for a in roles:
            for b in roles:
                if self.meet(a, b) not in rset or self.join(a, b) not in rset:
                    return None
        # the induced order must have no extra comparabilities beyond S7
        s7leq = _s7_leq()
        for x in range(7):
            for y in range(7):
                if self.leq(roles[x], roles[y]) != s7leq[x][y]:
                    return None
        return roles

    def mirror(self) -> "Lattice":
        """Left-right reflection of the diagram (same order, covers reversed)."""
        up = tuple(tuple(reversed(u)) for u in self.up_covers)
        down = tuple(tuple(reversed(d)) for d in self.down_covers)
        return Lattice(up, down, self._down, self._up,
                       self.meet_table, self.join_table, self._height)

    # -- serialization ----------------------------------------------------

    def to_dict(self) -> dict:
        covers = sorted((a, b) for a, b in self.cover_pairs())
        return {
            "n": self.n,
            "covers": [list(c) for c in covers],
            "left_order": [list(u) for u in self.up_covers],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Lattice":
        n = d["n"]
        covers = [tuple(c) for c in d["covers"]]
        left = [tuple(u) for u in d["left_order"]]
        return build(n, covers, left_order=left)

    def __eq__(self, other):
        return (isinstance(other, Lattice)
                and self.up_covers == other.up_covers
                and self.down_covers == other.down_covers)

    def __hash__(self):
        return hash((self.up_covers, self.down_covers))

    def __repr__(self):
        return f"Lattice(n={self.n})"


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _s7_leq():
    n = 7
    leq = [[x == y for y in range(n)] for x in range(n)]
    changed = True
    while changed:
        changed = False
        for a, b in _S7_COVERS:
            for x in range(n):
                if leq[x][a] and not leq[x][b]:
                    leq[x][b] = True
                    changed = True
    return leq


def build(n, covers, left_order=None, down_order=None) -> Lattice:
    """Validate a cover list and construct a :class:`Lattice`.

    ``covers`` are (lower, upper) pairs with lower < upper (the indexing
    must be a linear extension).  ``left_order`` gives, per element, its
    upper covers leftmost first; ``down_order`` likewise for lower covers.
    A missing ``down_order`` is derived from ``left_order`` by a leftmost
    depth-first sweep of the diagram; a missing ``left_order`` falls back
    to index order.
    """
    if n < 1:
        raise NotALattice("a lattice needs at least one element")
    up_sets = {x: set() for x in range(n)}
    down_sets = {x: set() for x in range(n)}
    for a, b in covers:
        if not (0 <= a < n and 0 <= b < n):
            raise NotALattice(f"cover pair {(a, b)} out of range")
        if a >= b:
            raise NotALattice(
                f"cover pair {(a, b)} violates the linear-extension indexing")
        up_sets[a].add(b)
        down_sets[b].add(a)

    # order relation by transitive closure, as down-set bitmasks
    down = [0] * n
    for b in range(n):
        m = 1 << b
        for a in down_sets[b]:
            m |= down[a]
        down[b] = m
    up = [0] * n
    for a in range(n - 1, -1, -1):
        m = 1 << a
        for b in up_sets[a]:
            m |= up[b]
        up[a] = m

    # the cover list must be the transitive reduction of the order
    for b in range(n):
        for a in down_sets[b]:
            for c in down_sets[b]:
                if c != a and down[c] >> a & 1:
                    raise NotTransitiveReduction(
                        f"cover {(a, b)} is implied via {c}")

    # meet and join by bound search over down/up sets
    meet_table = [[0] * n for _ in range(n)]
    join_table = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            common = down[a] & down[b]
            if not common:
                raise NotALattice(f"elements {a}, {b} have no lower bound")
            m = common.bit_length() - 1
            if common & ~down[m]:
                raise NotALattice(f"elements {a}, {b} have no meet")
            meet_table[a][b] = meet_table[b][a] = m
            commonu = up[a] & up[b]
            if not commonu:
                raise NotALattice(f"elements {a}, {b} have no upper bound")
            j = (commonu & -commonu).bit_length() - 1
            if commonu & ~up[j]:
                raise NotALattice(f"elements {a}, {b} have no join")
            join_table[a][b] = join_table[b][a] = j

    height = [0] * n
    for b in range(n):
        height[b] = max((height[a] + 1 for a in down_sets[b]), default=0)

    up_covers = _ordered(n, up_sets, left_order, "left_order")
    if down_order is not None:
        down_covers = _ordered(n, down_sets, down_order, "down_order")
    else:
        down_covers = _derive_down_order(n, up_covers, down_sets)
    return Lattice(up_covers, down_covers, down, up,
                   meet_table, join_table, height)


def _ordered(n, cover_sets, order, what):
    if order is None:
        return tuple(tuple(sorted(cover_sets[x])) for x in range(n))
    if len(order) != n:
        raise InconsistentLeftOrder(f"{what} must list all {n} elements")
    out = []
    for x in range(n):
        lst = tuple(order[x])
        if set(lst) != cover_sets[x] or len(lst) != len(cover_sets[x]):
            raise InconsistentLeftOrder(
                f"{what}[{x}] = {lst} does not match covers {sorted(cover_sets[x])}")
        out.append(lst)
    return tuple(out)


def _derive_down_order(n, up_covers, down_sets):
    # Leftmost depth-first discovery from the bottom orders a planar
    # diagram's elements left to right within each level, which in turn
    # orders every element's lower covers.
    disc = [-1] * n
    clock = 0
    stack = [0]
    while stack:
        x = stack.pop()
        if disc[x] >= 0:
            continue
        disc[x] = clock
        clock += 1
        stack.extend(reversed(up_covers[x]))
    # disc[x] == -1 can only happen for elements unreachable from 0;
    # build() rejects those later (no common lower bound with 0)
    return tuple(
        tuple(sorted(down_sets[x], key=lambda c: disc[c])) for x in range(n))
