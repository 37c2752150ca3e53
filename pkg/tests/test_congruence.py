import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forklat import (
    Partition,
    congruence_lattice,
    generated_congruence,
    grid,
    insert_fork,
    is_congruence,
    prime_principal_congruences,
    principal_congruence_fixpoint,
    principal_congruence_projective,
    random_sps,
    restrict,
)
from forklat.congruence import congruence_violation


def s7_lattice():
    L = grid(2, 2)
    LS, _ = insert_fork(L, L.covering_squares()[0])
    return LS


# -- partitions -----------------------------------------------------------

def test_partition_identity_and_full():
    assert Partition.identity(4).blocks() == [(0,), (1,), (2,), (3,)]
    assert Partition.full(4).blocks() == [(0, 1, 2, 3)]
    assert Partition.identity(4).is_identity()
    assert not Partition.full(4).is_identity()


def test_partition_join_meet_lattice_laws():
    a = Partition.from_pairs(5, [(0, 1), (2, 3)])
    b = Partition.from_pairs(5, [(1, 2)])
    assert a.join(b).same(0, 3)
    assert a.meet(b) == Partition.identity(5)
    assert a.meet(a) == a and a.join(a) == a
    assert a.refines(a.join(b)) and a.meet(b).refines(a)


def test_partition_from_blocks_round_trip():
    p = Partition.from_blocks(6, [[0, 2, 4], [1, 3]])
    assert p == Partition.from_dict(6, p.to_dict())
    assert p.nontrivial_blocks() == [(0, 2, 4), (1, 3)]


# -- congruence predicates ------------------------------------------------

def test_identity_and_full_are_congruences():
    L = s7_lattice()
    assert is_congruence(L, Partition.identity(L.n))
    assert is_congruence(L, Partition.full(L.n))


def test_non_congruence_detected():
    L = grid(2, 2)
    p = Partition.from_pairs(4, [(1, 2)])  # collapses coatoms, not 0 or 3
    assert not is_congruence(L, p)
    assert congruence_violation(L, p) is not None


def test_principal_congruence_is_smallest():
    L = s7_lattice()
    con_l = congruence_lattice(L)
    for a in range(L.n):
        for b in range(a + 1, L.n):
            p = principal_congruence_fixpoint(L, a, b)
            assert is_congruence(L, p) and p.same(a, b)
            for q in con_l.congruences:
                if q.same(a, b):
                    assert p.refines(q)


def test_generated_congruence_of_pairs():
    L = s7_lattice()
    pairs = [(0, 1), (2, 3)]
    g = generated_congruence(L, pairs)
    assert is_congruence(L, g)
    singles = [principal_congruence_fixpoint(L, a, b) for a, b in pairs]
    joined = singles[0].join(singles[1])
    assert g == joined


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 60), st.data())
def test_join_of_congruences_is_congruence(seed, data):
    """The partition join of two congruences is again a congruence."""
    L, _ = random_sps(seed, max_base=3, k=seed % 2, size_cap=20)
    n = L.n
    pair = lambda: (data.draw(st.integers(0, n - 1)),
                    data.draw(st.integers(0, n - 1)))
    a = principal_congruence_fixpoint(L, *pair())
    b = principal_congruence_fixpoint(L, *pair())
    assert is_congruence(L, a.join(b))


def test_two_oracles_agree_on_s7():
    L = s7_lattice()
    for a in range(L.n):
        for b in range(L.n):
            assert (principal_congruence_fixpoint(L, a, b)
                    == principal_congruence_projective(L, a, b))


# -- the congruence lattice ----------------------------------------------

def test_grid_congruence_count():
    # a distributive p×q grid has one congruence per down-set of its
    # (p-1) + (q-1) prime-interval classes: 2^(p+q-2)
    assert len(congruence_lattice(grid(2, 2))) == 4
    assert len(congruence_lattice(grid(3, 3))) == 16


def test_s7_congruence_lattice():
    L = s7_lattice()
    con = congruence_lattice(L)
    assert Partition.identity(L.n) in con.congruences
    assert Partition.full(L.n) in con.congruences
    for p in con.congruences:
        assert is_congruence(L, p)
    # refinement order is reflected by the down-set masks
    for i, p in enumerate(con.congruences):
        for j, q in enumerate(con.congruences):
            assert con.leq(i, j) == p.refines(q)


def test_ji_congruences_are_join_irreducible():
    L = s7_lattice()
    con = congruence_lattice(L)
    for j in con.ji:
        below = [k for k in range(len(con))
                 if con.leq(k, j) and k != j]
        # join of everything strictly below stays strictly below
        acc = Partition.identity(L.n)
        for k in below:
            acc = acc.join(con.congruences[k])
        assert acc != con.congruences[j]


def test_prime_principal_congruences_consistent():
    L = s7_lattice()
    primes = prime_principal_congruences(L)
    assert set(primes) == set(L.cover_pairs())
    for (a, b), c in primes.items():
        assert c == principal_congruence_fixpoint(L, a, b)


def test_restrict():
    p = Partition.from_blocks(6, [[0, 1, 2], [3, 4]])
    r = restrict(p, [0, 2, 4, 5])
    assert r.same(0, 1)          # images of 0 and 2
    assert not r.same(2, 3)      # images of 4 and 5
