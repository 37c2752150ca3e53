import pytest

from forklat import (
    CoveringSquare,
    ForkTrace,
    NotACoveringSquare,
    associated_s7,
    classify_square,
    grid,
    insert_fork,
    named_congruences,
    new_prime_intervals,
    random_sps,
    replay_with_traces,
    track_prime_lists,
)


def test_classify_square_grid():
    L, S = grid(2, 2), CoveringSquare(0, 1, 2, 3)
    kind = classify_square(L, S)
    assert kind.tight and kind.distributive and not kind.wide


def test_classify_rejects_non_square():
    L = grid(2, 3)
    with pytest.raises(NotACoveringSquare):
        classify_square(L, CoveringSquare(0, 1, 2, 5))


def test_s7_base_case(square_2x2):
    L, S = square_2x2
    LS, trace = insert_fork(L, S)
    assert LS.n == 7
    assert LS.is_slim() and LS.is_semimodular()
    assert trace.n_left == 1 and trace.n_right == 1
    assert len(trace.new_elements()) == 3
    # the tip sits between the two coatoms and under the unit
    assert LS.is_cover(trace.tip, LS.top)
    assert len(LS.down_covers[LS.top]) == 3
    # the extension contains exactly one fork sublattice, and it is the
    # whole lattice
    s7s = LS.s7_sublattices()
    assert len(s7s) == 1
    assert set(s7s[0].elements) == set(range(7))


def test_trace_geometry(s7):
    LS, trace = s7
    # chain tops are covered by the original coatoms' images
    o2n = trace.old_to_new
    assert trace.left_upper[0] == o2n[trace.square.al]
    assert trace.right_upper[0] == o2n[trace.square.ar]
    assert trace.left_lower[0] == o2n[trace.square.o]
    for zl in trace.left_chain:
        assert any(LS.is_cover(zl, u) for u in LS.up_covers[zl])


def test_embedding_preserved_on_corpus():
    for seed in range(12):
        L, _ = random_sps(seed, k=1 + seed % 2, size_cap=40)
        for S in L.covering_squares()[:3]:
            LS, trace = insert_fork(L, S)
            o2n = trace.old_to_new
            assert LS.n == L.n + 1 + trace.n_left + trace.n_right
            for a in range(L.n):
                for b in range(L.n):
                    assert o2n[L.meet(a, b)] == LS.meet(o2n[a], o2n[b])
                    assert o2n[L.join(a, b)] == LS.join(o2n[a], o2n[b])


def test_extension_stays_sps_on_corpus():
    for seed in range(20):
        L, _ = random_sps(seed, k=seed % 3, size_cap=40)
        for S in L.covering_squares():
            LS, _ = insert_fork(L, S)
            assert LS.is_slim() and LS.is_semimodular()


def test_new_prime_intervals_exact(s7):
    LS, trace = s7
    o2n = trace.old_to_new
    old = {(o2n[a], o2n[b]) for a, b in ((0, 1), (0, 2), (1, 3), (2, 3))}
    assert {p for p in LS.cover_pairs()} - old == new_prime_intervals(LS, trace)


def test_track_prime_lists_keys(s7):
    _, trace = s7
    lists = track_prime_lists(trace)
    assert set(lists) == {"tip", "left_zx", "left_yz", "right_zx", "right_yz"}
    assert len(lists["tip"]) == 1


def test_associated_s7_matches_sublattice(s7):
    LS, trace = s7
    s7_elems = associated_s7(trace)
    assert s7_elems in [s.elements for s in LS.s7_sublattices()]


def test_named_congruences_shapes(square_2x2):
    L, S = square_2x2
    LS, trace = insert_fork(L, S)
    nc = named_congruences(L, LS, trace)
    # base coatom congruences collapse their defining prime intervals
    assert nc.left_base.same(S.al, S.i)
    assert nc.right_base.same(S.ar, S.i)
    assert nc.fork.same(trace.tip, LS.top)
    # the fork congruence is new: it restricts no base coatom congruence
    assert nc.fork != nc.left_ext and nc.fork != nc.right_ext


def test_fork_trace_round_trip(s7):
    _, trace = s7
    assert ForkTrace.from_dict(trace.to_dict()) == trace


def test_long_track_propagation():
    # a 2x4 grid forked at its top-right square propagates down the long
    # side: the right track keeps length 1, the left track grows
    L = grid(2, 4)
    top_sq = next(S for S in L.covering_squares() if S.i == L.top)
    LS, trace = insert_fork(L, top_sq)
    assert trace.n_left + trace.n_right > 2
    assert LS.is_slim() and LS.is_semimodular()


def test_replay_with_traces_consistent():
    for seed in (5, 17, 23):
        _, history = random_sps(seed, k=3, size_cap=50)
        steps = replay_with_traces(history)
        assert len(steps) == len(history.steps)
        for before, trace, after in steps:
            assert after.n == before.n + 1 + trace.n_left + trace.n_right
