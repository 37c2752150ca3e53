"""Congruences of finite lattices.

Two independent routes compute principal congruences: a fixpoint closure
over the cover-condition rules, and a reachability search over
congruence-perspective intervals.  They cross-validate each other in the
test suite.  The full congruence lattice is enumerated through its
join-irreducible members (the principal congruences of prime intervals).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeBound
from .lattice import Interval, Lattice


class Partition:
    """A partition of 0..n-1 in canonical form (blocks numbered by least
    element, in increasing order).  Hashable and comparable by structure."""

    __slots__ = ("n", "block_of", "_blocks")

    def __init__(self, block_of):
        block_of = _canonical(block_of)
        self.n = len(block_of)
        self.block_of = block_of
        self._blocks = None

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls(tuple(range(n)))

    @classmethod
    def full(cls, n: int) -> "Partition":
        return cls((0,) * n)

    @classmethod
    def from_blocks(cls, n: int, blocks) -> "Partition":
        block_of = list(range(n))
        for blk in blocks:
            blk = sorted(blk)
            for x in blk[1:]:
                block_of[x] = block_of[blk[0]]
        # merging through least elements only is safe because from_blocks
        # expects disjoint blocks; from_pairs handles the general case
        return cls(tuple(block_of))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Partition":
        uf = _UnionFind(n)
        for a, b in pairs:
            uf.union(a, b)
        return cls(uf.block_of())

    def blocks(self) -> list[tuple[int, ...]]:
        if self._blocks is None:
            out = {}
            for x, b in enumerate(self.block_of):
                out.setdefault(b, []).append(x)
            self._blocks = [tuple(out[k]) for k in sorted(out)]
        return self._blocks

    def nontrivial_blocks(self) -> list[tuple[int, ...]]:
        return [b for b in self.blocks() if len(b) > 1]

    def same(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    def block(self, a: int) -> tuple[int, ...]:
        return self.blocks()[_block_index(self, a)]

    def refines(self, other: "Partition") -> bool:
        """True iff every block of self lies inside a block of other."""
        seen = {}
        for x in range(self.n):
            b = self.block_of[x]
            o = other.block_of[x]
            if seen.setdefault(b, o) != o:
                return False
        return True

    def join(self, other: "Partition") -> "Partition":
        uf = _UnionFind(self.n)
        for part in (self, other):
            for blk in part.blocks():
                for x in blk[1:]:
                    uf.union(blk[0], x)
        return Partition(uf.block_of())

    def meet(self, other: "Partition") -> "Partition":
        pairs = {}
        out = [0] * self.n
        for x in range(self.n):
            key = (self.block_of[x], other.block_of[x])
            out[x] = pairs.setdefault(key, x)
        return Partition(tuple(out))

    def is_identity(self) -> bool:
        return all(b == x for x, b in enumerate(self.block_of))

    def to_dict(self) -> dict:
        return {"blocks": [list(b) for b in self.blocks()]}

    @classmethod
    def from_dict(cls, n: int, d: dict) -> "Partition":
        return cls.from_blocks(n, d["blocks"])

    def __eq__(self, other):
        return isinstance(other, Partition) and self.block_of == other.block_of

    def __hash__(self):
        return hash(self.block_of)

    def __repr__(self):
        nb = self.nontrivial_blocks()
        return f"Partition(n={self.n}, nontrivial={nb})"


def _block_index(p: Partition, a: int) -> int:
    target = p.block_of[a]
    for k, blk in enumerate(p.blocks()):
        if p.block_of[blk[0]] == target:
            return k
    raise AssertionError


def _canonical(block_of) -> tuple[int, ...]:
    relabel = {}
    out = []
    for b in block_of:
        out.append(relabel.setdefault(b, len(relabel)))
    return tuple(out)


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def block_of(self):
        return tuple(self.find(x) for x in range(len(self.parent)))


# -- congruence test ------------------------------------------------------

def congruence_violation(L: Lattice, p: Partition):
    """None if p is a congruence of L, else a witness tuple.

    Witness forms: ("class", block) for a non-interval class,
    ("cover-join", x, y, z) / ("cover-meet", x, y, z) for a failure of the
    cover condition or its dual.
    """
    for blk in p.nontrivial_blocks():
        lo, hi = blk[0], blk[0]
        for x in blk[1:]:
            lo = L.meet(lo, x)
            hi = L.join(hi, x)
        if tuple(L.interval_elements(Interval(lo, hi))) != blk:
            return ("class", blk)
    for x in range(L.n):
        for y in L.up_covers[x]:
            if not p.same(x, y):
                continue
            for z in L.up_covers[x]:
                if z != y and not p.same(z, L.join(y, z)):
                    return ("cover-join", x, y, z)
        for y in L.down_covers[x]:
            if not p.same(x, y):
                continue
            for z in L.down_covers[x]:
                if z != y and not p.same(z, L.meet(y, z)):
                    return ("cover-meet", x, y, z)
    return None


def is_congruence(L: Lattice, p: Partition) -> bool:
    return congruence_violation(L, p) is None


# -- principal congruences: fixpoint route --------------------------------

def generated_congruence(L: Lattice, pairs) -> Partition:
    """Smallest congruence of L collapsing all given pairs.

    Fixpoint closure of three rules: classes are intervals, the cover
    condition, and its dual.
    """
    n = L.n
    uf = _UnionFind(n)
    dirty = []
    for a, b in pairs:
        if uf.union(a, b):
            dirty.append(uf.find(a))
    while dirty:
        # interval closure per dirty block
        changed_roots = set()
        while dirty:
            root = uf.find(dirty.pop())
            blk = [x for x in range(n) if uf.find(x) == root]
            lo = hi = blk[0]
            for x in blk[1:]:
                lo = L.meet(lo, x)
                hi = L.join(hi, x)
            for x in L.interval_elements(Interval(lo, hi)):
                if uf.union(root, x):
                    changed_roots.add(uf.find(root))
        # cover condition and dual, one full sweep
        for x in range(n):
            ups = L.up_covers[x]
            for y in ups:
                if uf.find(x) != uf.find(y):
                    continue
                for z in ups:
                    if z != y and uf.union(z, L.join(y, z)):
                        changed_roots.add(uf.find(z))
            downs = L.down_covers[x]
            for y in downs:
                if uf.find(x) != uf.find(y):
                    continue
                for z in downs:
                    if z != y and uf.union(z, L.meet(y, z)):
                        changed_roots.add(uf.find(z))
        dirty = list(changed_roots)
    return Partition(uf.block_of())


def principal_congruence_fixpoint(L: Lattice, a: int, b: int) -> Partition:
    """con(a, b) via the fixpoint closure."""
    return generated_congruence(L, [(a, b)])


# -- principal congruences: perspectivity route ---------------------------

def cpersp_up(L: Lattice, iv1: Interval, iv2: Interval) -> bool:
    """[a,b] is up congruence-perspective to [c,d]: a <= c and d = b∨c."""
    return L.leq(iv1.bottom, iv2.bottom) and \
        L.join(iv1.top, iv2.bottom) == iv2.top


def cpersp_dn(L: Lattice, iv1: Interval, iv2: Interval) -> bool:
    """[a,b] is down congruence-perspective to [c,d]: d <= b and c = a∧d."""
    return L.leq(iv2.top, iv1.top) and \
        L.meet(iv1.bottom, iv2.top) == iv2.bottom


def cpersp(L: Lattice, iv1: Interval, iv2: Interval) -> bool:
    return cpersp_up(L, iv1, iv2) or cpersp_dn(L, iv1, iv2)


def _cpersp_successors(L: Lattice, lo: int, hi: int):
    for c in range(L.n):
        if L.leq(lo, c):
            yield (c, L.join(hi, c))
    for d in range(L.n):
        if L.leq(d, hi):
            yield (L.meet(lo, d), d)


def cproj(L: Lattice, iv1: Interval, iv2: Interval) -> bool:
    """Congruence-projectivity: a chain of perspectivity steps, possibly
    through non-prime intervals."""
    start = (iv1.bottom, iv1.top)
    target = (iv2.bottom, iv2.top)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for lo, hi in frontier:
            if (lo, hi) == target:
                return True
            for s in _cpersp_successors(L, lo, hi):
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    return target in seen


def prime_projectivity(L: Lattice) -> dict[tuple[int, int], frozenset]:
    """For each prime interval p, the set of prime intervals reachable by
    congruence-projectivity (through arbitrary intervals).  Memoized on L."""
    cached = L._cache.get("prime_projectivity")
    if cached is not None:
        return cached
    primes = set(L.cover_pairs())
    out = {}
    for p in primes:
        seen = {p}
        frontier = [p]
        reached = set()
        while frontier:
            nxt = []
            for lo, hi in frontier:
                if (lo, hi) in primes:
                    reached.add((lo, hi))
                for s in _cpersp_successors(L, lo, hi):
                    if s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        out[p] = frozenset(reached)
    L._cache["prime_projectivity"] = out
    return out


def principal_congruence_projective(L: Lattice, a: int, b: int) -> Partition:
    """con(a, b) via the collapsed-prime-interval description: a prime is
    collapsed iff it is congruence-projective from a prime inside [a, b].
    An unordered pair is replaced by its meet and join, which generate the
    same congruence."""
    a, b = L.meet(a, b), L.join(a, b)
    reach = prime_projectivity(L)
    collapsed = set()
    for p in L.cover_pairs():
        lo, hi = p
        if L.leq(a, lo) and L.leq(hi, b):
            collapsed |= reach[p]
    return Partition.from_pairs(L.n, collapsed)


# -- the congruence lattice -----------------------------------------------

@dataclass
class ConLattice:
    """All congruences of a lattice, ordered by refinement.

    ``congruences[k]`` corresponds bijectively to the down-set ``masks[k]``
    of the join-irreducible congruences ``ji`` (indices into
    ``congruences``); refinement order is down-set inclusion.
    """

    lattice: Lattice
    congruences: list[Partition]
    masks: list[int]
    ji: list[int]
    principal_of: dict[tuple[int, int], int]

    _index: dict = None

    def __post_init__(self):
        self._index = {p: k for k, p in enumerate(self.congruences)}

    def __len__(self):
        return len(self.congruences)

    def index_of(self, p: Partition):
        return self._index.get(p)

    def leq(self, i: int, j: int) -> bool:
        return self.masks[i] & ~self.masks[j] == 0

    def ji_covers_of(self, k: int) -> list[int]:
        """Covers of congruences[k] inside the poset of join-irreducible
        congruences (k itself need not be join-irreducible)."""
        above = [j for j in self.ji
                 if self.leq(k, j) and j != k
                 and self.congruences[j] != self.congruences[k]]
        return [j for j in above
                if not any(o != j and self.leq(o, j) for o in above)]

    def refinement_cover_edges(self) -> list[tuple[int, int]]:
        edges = []
        for i in range(len(self.congruences)):
            for j in range(len(self.congruences)):
                if i == j or not self.leq(i, j):
                    continue
                if not any(k != i and k != j and self.leq(i, k) and self.leq(k, j)
                           for k in range(len(self.congruences))):
                    edges.append((i, j))
        return edges

    def to_dict(self) -> dict:
        return {
            "count": len(self.congruences),
            "congruences": [p.to_dict() for p in self.congruences],
            "refinement_edges": [list(e) for e in self.refinement_cover_edges()],
            "join_irreducible": list(self.ji),
            "principal": {f"{u},{v}": k for (u, v), k in
                          sorted(self.principal_of.items())},
        }


def _perspectivity_classes(L: Lattice):
    """Connected components of prime intervals under square transposition;
    con() is constant on each component."""
    primes = list(L.cover_pairs())
    pos = {p: k for k, p in enumerate(primes)}
    uf = _UnionFind(len(primes))
    for sq in L.covering_squares():
        uf.union(pos[(sq.o, sq.al)], pos[(sq.ar, sq.i)])
        uf.union(pos[(sq.o, sq.ar)], pos[(sq.al, sq.i)])
    comps = {}
    for p in primes:
        comps.setdefault(uf.find(pos[p]), []).append(p)
    return list(comps.values())


def prime_principal_congruences(L: Lattice) -> dict[tuple[int, int], Partition]:
    """con(p) for every prime interval p, computed once per perspectivity
    class.  Memoized on L."""
    cached = L._cache.get("prime_principals")
    if cached is not None:
        return cached
    out = {}
    for comp in _perspectivity_classes(L):
        a, b = comp[0]
        con = principal_congruence_fixpoint(L, a, b)
        for p in comp:
            out[p] = con
    L._cache["prime_principals"] = out
    return out


def congruence_lattice(L: Lattice, max_n: int = 64) -> ConLattice:
    """Enumerate Con L as joins of down-sets of its join-irreducible
    congruences.  Memoized on L."""
    cached = L._cache.get("con_lattice")
    if cached is not None:
        return cached
    if L.n > max_n:
        raise SizeBound(f"lattice has {L.n} > {max_n} elements")
    by_prime = prime_principal_congruences(L)
    gens = []
    for p in sorted(by_prime):
        con = by_prime[p]
        if con not in gens:
            gens.append(con)
    k = len(gens)
    # refinement order among generators, as bitmask of strictly-below gens
    below = [0] * k
    for i in range(k):
        for j in range(k):
            if i != j and gens[i].refines(gens[j]):
                below[j] |= 1 << i
    congruences = [Partition.identity(L.n)]
    masks = [0]
    seen = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            base = congruences[seen[mask]]
            for g in range(k):
                bit = 1 << g
                if mask & bit or below[g] & ~mask:
                    continue
                mask2 = mask | bit
                if mask2 in seen:
                    continue
                seen[mask2] = len(congruences)
                congruences.append(base.join(gens[g]))
                masks.append(mask2)
                nxt.append(mask2)
        frontier = nxt
    index = {p: i for i, p in enumerate(congruences)}
    ji = [index[g] for g in gens]
    principal_of = {p: index[con] for p, con in by_prime.items()}
    con = ConLattice(L, congruences, masks, ji, principal_of)
    L._cache["con_lattice"] = con
    return con


# -- restriction and extension --------------------------------------------

def restrict(p: Partition, elements) -> Partition:
    """Partition induced on a subset; position k of the result stands for
    ``elements[k]``."""
    elements = list(elements)
    return Partition(tuple(p.block_of[e] for e in elements))


def minimal_extension(sub_elements, K: Lattice, alpha: Partition) -> Partition:
    """Smallest congruence of K collapsing the image of alpha, where
    ``sub_elements[k]`` is the element of K representing k."""
    sub = list(sub_elements)
    pairs = []
    for blk in alpha.nontrivial_blocks():
        for x, y in zip(blk, blk[1:]):
            pairs.append((sub[x], sub[y]))
    return generated_congruence(K, pairs)


def is_congruence_preserving(L: Lattice, K: Lattice, embedding) -> bool:
    """Condition (P): every prime interval of K not in the image of L has
    the same principal congruence (in K) as some prime interval of L."""
    emb = list(embedding)
    image_primes = {(emb[u], emb[v]) for u, v in L.cover_pairs()}
    by_prime = prime_principal_congruences(K)
    witnesses = {generated_congruence(K, [pq]) for pq in image_primes}
    return all(by_prime[p] in witnesses
               for p in K.cover_pairs() if p not in image_primes)
