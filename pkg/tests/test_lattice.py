import pytest

from forklat import (
    CoveringSquare,
    Interval,
    Lattice,
    NotALattice,
    NotTransitiveReduction,
    build,
    grid,
)


def test_grid_2x2_shape():
    L = grid(2, 2)
    assert L.n == 4
    assert L.bottom == 0 and L.top == 3
    assert sorted(L.cover_pairs()) == [(0, 1), (0, 2), (1, 3), (2, 3)]


def test_grid_meets_and_joins():
    L = grid(3, 4)
    assert L.n == 12
    for a in range(L.n):
        for b in range(L.n):
            m, j = L.meet(a, b), L.join(a, b)
            assert L.leq(m, a) and L.leq(m, b)
            assert L.leq(a, j) and L.leq(b, j)
            assert L.meet(a, L.join(a, b)) == a


def test_grid_is_sps_and_distributive():
    L = grid(3, 3)
    assert L.is_slim()
    assert L.is_semimodular()
    assert L.is_distributive_interval(Interval(L.bottom, L.top))


def test_covering_squares_of_grid():
    L = grid(2, 3)
    squares = L.covering_squares()
    assert len(squares) == 2
    for S in squares:
        assert L.is_covering_square(S)
        assert L.meet(S.al, S.ar) == S.o
        assert L.join(S.al, S.ar) == S.i


def test_is_covering_square_rejects_non_squares():
    L = grid(2, 3)
    assert not L.is_covering_square(CoveringSquare(0, 1, 2, 5))


def test_build_rejects_non_lattice():
    # two maximal elements: the pair (1, 2) has no join
    with pytest.raises(NotALattice):
        build(3, [(0, 1), (0, 2)], left_order=[(1, 2), (), ()])


def test_build_rejects_transitive_edge():
    with pytest.raises(NotTransitiveReduction):
        build(3, [(0, 1), (1, 2), (0, 2)], left_order=[(1, 2), (2,), ()])


def test_diamond_m3_is_not_slim():
    covers = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
    L = build(5, covers, left_order=[(1, 2, 3), (4,), (4,), (4,), ()])
    assert not L.is_slim()


def test_pentagon_not_semimodular():
    covers = [(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)]
    L = build(5, covers, left_order=[(1, 2), (4,), (3,), (4,), ()])
    assert not L.is_semimodular()


def test_height_and_order():
    L = grid(3, 3)
    for a, b in L.cover_pairs():
        assert L.height(b) == L.height(a) + 1
        assert L.leq(a, b) and not L.leq(b, a)


def test_mirror_involution():
    L = grid(2, 4)
    assert L.mirror().mirror() == L
    assert L.mirror().n == L.n


def test_json_round_trip():
    L = grid(3, 4)
    assert Lattice.from_dict(L.to_dict()) == L


def test_sublattice_closure():
    L = grid(2, 2)
    assert L.sublattice_closure([1, 2]) == frozenset({0, 1, 2, 3})
    assert L.sublattice_closure([3]) == frozenset({3})


def test_no_s7_in_distributive_grid():
    assert grid(4, 4).s7_sublattices() == []
