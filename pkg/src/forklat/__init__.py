"""Slim planar semimodular lattices, fork extensions, and their
congruence lattices.

Public surface: finite lattices with diagram order (:mod:`.lattice`),
congruence machinery (:mod:`.congruence`), fork insertion at a covering
square (:mod:`.fork`), the direct fork-congruence constructions
(:mod:`.fork_congruence`), seeded generation (:mod:`.generate`), the
verification harness (:mod:`.verify`), and diagram export
(:mod:`.diagram`).
"""

from .congruence import (
    ConLattice,
    Partition,
    congruence_lattice,
    generated_congruence,
    is_congruence,
    is_congruence_preserving,
    minimal_extension,
    prime_principal_congruences,
    principal_congruence_fixpoint,
    principal_congruence_projective,
    restrict,
)
from .errors import (
    ClassClash,
    ForklatError,
    InconsistentLeftOrder,
    InvalidStep,
    NotACoveringSquare,
    NotALattice,
    NotSPS,
    NotTransitiveReduction,
    SizeBound,
    Unsatisfiable,
)
from .fork import (
    ForkTrace,
    SquareKind,
    associated_s7,
    classify_square,
    insert_fork,
    named_congruences,
    new_prime_intervals,
    track_prime_lists,
)
from .fork_congruence import (
    Protrusion,
    ProtrusionCongruences,
    distributive_fork_congruence,
    find_protrusions,
    protrusion_congruence,
    tight_fork_congruence,
)
from .generate import (
    History,
    default_corpus,
    grid,
    random_sps,
    replay,
    replay_with_traces,
    small_corpus,
)
from .lattice import CoveringSquare, Interval, Lattice, S7Sublattice, build
from .verify import Check, SquareReport, verify_lattice, verify_square

__version__ = "0.1.0"

__all__ = [
    "Check", "ClassClash", "ConLattice", "CoveringSquare", "ForkTrace",
    "ForklatError", "History", "InconsistentLeftOrder", "Interval",
    "InvalidStep", "Lattice", "NotACoveringSquare", "NotALattice", "NotSPS",
    "NotTransitiveReduction", "Partition", "Protrusion",
    "ProtrusionCongruences", "S7Sublattice", "SizeBound", "SquareKind",
    "SquareReport", "Unsatisfiable", "associated_s7", "build",
    "classify_square", "congruence_lattice", "default_corpus",
    "distributive_fork_congruence", "find_protrusions",
    "generated_congruence", "grid", "insert_fork", "is_congruence",
    "is_congruence_preserving", "minimal_extension", "named_congruences",
    "new_prime_intervals", "prime_principal_congruences",
    "principal_congruence_fixpoint", "principal_congruence_projective",
    "protrusion_congruence",
    "random_sps", "replay", "replay_with_traces", "restrict",
    "small_corpus", "tight_fork_congruence", "track_prime_lists",
    "verify_lattice", "verify_square",
]
