"""Protrusions and the direct description of the fork congruence.

The fork congruence of an insertion is con(tip, top-of-square) in the
extension.  For distributive and for tight squares it admits an explicit
class-by-class description; those descriptions are built here and are
treated as claims under test — the congruence engine's value is always
the ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import congruence as cg
from .errors import ClassClash
from .fork import ForkTrace
from .lattice import Lattice


@dataclass(frozen=True)
class Protrusion:
    """A track element (1-based ``index`` into the upper track of one
    side) covering three or more elements of the base lattice.

    ``extensions`` are the later track indices j whose companion element
    ``companions[j]`` shares a fork-congruence class with track position j;
    companions are base-lattice elements given in extension indexing.
    """

    side: str                       # "l" or "r"
    index: int
    extensions: tuple[int, ...]
    companions: dict[int, int] = field(hash=False)


@dataclass
class ProtrusionReport:
    left: list[Protrusion]
    right: list[Protrusion]

    @property
    def empty(self) -> bool:
        return not self.left and not self.right

    def all(self) -> list[Protrusion]:
        return self.left + self.right

    def to_dict(self) -> dict:
        def enc(p):
            return {"side": p.side, "index": p.index,
                    "extensions": list(p.extensions),
                    "companions": {str(j): a for j, a in
                                   sorted(p.companions.items())}}
        return {"left": [enc(p) for p in self.left],
                "right": [enc(p) for p in self.right]}


def _side_track(trace: ForkTrace, side: str):
    if side == "l":
        return trace.left_upper, trace.left_lower, trace.left_chain
    return trace.right_upper, trace.right_lower, trace.right_chain


def find_protrusions(L: Lattice, trace: ForkTrace) -> ProtrusionReport:
    """Locate the protrusions of a (tight-square) fork trace and their
    extension companions.

    The first companion sits among the lower covers of the protrusion,
    immediately inward of the next track element; later companions are the
    second upper covers of their track elements, as long as those exist.
    """
    new_to_old = trace.new_to_old()
    report = ProtrusionReport([], [])
    for side in ("l", "r"):
        upper, lower, chain = _side_track(trace, side)
        n = len(chain)
        uppers_old = [new_to_old[x] for x in upper]
        for k in range(1, n + 1):           # 1-based track index
            x_old = uppers_old[k - 1]
            if len(L.down_covers[x_old]) < 3:
                continue
            companions: dict[int, int] = {}
            if k + 1 <= n:
                dl = L.down_covers[x_old]
                pos = dl.index(uppers_old[k])
                inward = pos - 1 if side == "l" else pos + 1
                if 0 <= inward < len(dl):
                    companions[k + 2] = trace.old_to_new[dl[inward]]
            j = k + 3
            while j <= n and (k + 2) in companions:
                ups = L.up_covers[uppers_old[j - 1]]
                others = [u for u in ups if u != uppers_old[j - 2]]
                if len(ups) != 2 or not others:
                    break
                companions[j] = trace.old_to_new[others[0]]
                j += 1
            exts = tuple(sorted(j for j in companions if j <= n))
            report_side = report.left if side == "l" else report.right
            report_side.append(Protrusion(side, k, exts, companions))
    return report


@dataclass
class ProtrusionCongruences:
    """The protrusion congruence and its parts.

    ``per_protrusion`` maps (side, index) to the principal congruence of
    the base collapsing the two floor elements below the protrusion;
    ``lifted`` holds the corresponding principal congruences of the
    extension.  ``pi`` / ``pi_lifted`` are their joins.
    """

    pi: cg.Partition
    per_protrusion: dict[tuple[str, int], cg.Partition]
    lifted: dict[tuple[str, int], cg.Partition]
    pi_lifted: cg.Partition


def protrusion_congruence(L: Lattice, LS: Lattice, trace: ForkTrace,
                          report: ProtrusionReport) -> ProtrusionCongruences:
    new_to_old = trace.new_to_old()
    per = {}
    lifted = {}
    pi = cg.Partition.identity(L.n)
    pi_lift = cg.Partition.identity(LS.n)
    for p in report.all():
        upper, lower, chain = _side_track(trace, p.side)
        y1, y2 = lower[p.index - 1], lower[p.index]
        part = cg.principal_congruence_fixpoint(L, new_to_old[y1], new_to_old[y2])
        per[(p.side, p.index)] = part
        part_l = cg.principal_congruence_fixpoint(LS, y1, y2)
        lifted[(p.side, p.index)] = part_l
        pi = pi.join(part)
        pi_lift = pi_lift.join(part_l)
    return ProtrusionCongruences(pi, per, lifted, pi_lift)


class _ClassBuilder:
    def __init__(self, n):
        self.n = n
        self.assigned: dict[int, frozenset] = {}

    def claim(self, cls, rule: str):
        cls = frozenset(cls)
        for e in cls:
            prev = self.assigned.get(e)
            if prev is not None and prev != cls:
                raise ClassClash(
                    f"element {e} claimed by {rule} as {sorted(cls)} but "
                    f"already in {sorted(prev)}")
        for e in cls:
            self.assigned[e] = cls

    def partition(self) -> cg.Partition:
        blocks = list({v: None for v in self.assigned.values()})
        blocks.extend((e,) for e in range(self.n) if e not in self.assigned)
        return cg.Partition.from_blocks(self.n, blocks)


def distributive_fork_congruence(LS: Lattice, trace: ForkTrace) -> cg.Partition:
    """Explicit fork congruence for a distributive square: doubleton
    classes along both chains and at the tip, singletons elsewhere."""
    o2n = trace.old_to_new
    blocks = [(trace.tip, o2n[trace.square.i])]
    for side in ("l", "r"):
        upper, lower, chain = _side_track(trace, side)
        blocks.extend((z, upper[k]) for k, z in enumerate(chain))
    used = {e for b in blocks for e in b}
    blocks.extend((e,) for e in range(LS.n) if e not in used)
    return cg.Partition.from_blocks(LS.n, blocks)


def tight_fork_congruence(LS: Lattice, trace: ForkTrace,
                          report: ProtrusionReport,
                          pi: cg.Partition) -> cg.Partition:
    """Explicit fork congruence for a tight square, assembled from the
    class rules: tip class, chain doubletons away from protrusions,
    four-element and floor classes at each protrusion, companion triples
    at each extension, and protrusion-congruence classes elsewhere.

    ``pi`` is the protrusion congruence of the base lattice.  Raises
    :class:`ClassClash` when two rules disagree.
    """
    o2n = trace.old_to_new
    b = _ClassBuilder(LS.n)
    b.claim({trace.tip, o2n[trace.square.i]}, "tip")
    by_side = {"l": report.left, "r": report.right}
    for side in ("l", "r"):
        upper, lower, chain = _side_track(trace, side)
        n = len(chain)
        prot = {p.index: p for p in by_side[side]}
        ext = {}
        for p in by_side[side]:
            for j in p.extensions:
                ext[j] = p.companions[j]
        for k in range(1, n + 1):
            if k in prot:
                if k + 1 <= n:
                    b.claim({upper[k - 1], upper[k], chain[k - 1], chain[k]},
                            f"protrusion {side}{k}")
                    b.claim({lower[k - 1], lower[k]},
                            f"protrusion floor {side}{k}")
                else:
                    b.claim({upper[k - 1], chain[k - 1]},
                            f"protrusion {side}{k} (truncated)")
            elif k in ext:
                b.claim({ext[k], upper[k - 1], chain[k - 1]},
                        f"extension {side}{k}")
            elif (k - 1) not in prot:
                b.claim({upper[k - 1], chain[k - 1]}, f"chain {side}{k}")
    # everything else follows the protrusion congruence of the base; the
    # protrusion congruence lies below the fork congruence, so overlapping
    # classes merge rather than clash
    mapped_pi = cg.Partition.from_pairs(
        LS.n, ((o2n[x], o2n[y]) for blk in pi.nontrivial_blocks()
               for x, y in zip(blk, blk[1:])))
    return b.partition().join(mapped_pi)
