from forklat import grid, random_sps, verify_lattice, verify_square
from forklat.verify import SCHEMA_VERSION


def _statuses(rep):
    return {c.name: c.status for c in rep.checks}


def test_s7_square_all_pass(square_2x2):
    L, S = square_2x2
    rep = verify_square(L, S)
    assert rep.kind == "tight-distributive"
    assert rep.ok and not rep.flagged
    assert all(c.status == "pass" for c in rep.checks
               if c.status != "skip")


def test_report_serialization(square_2x2):
    L, S = square_2x2
    d = verify_square(L, S).to_dict()
    assert d["schema"] == SCHEMA_VERSION
    assert d["square"] == [0, 1, 2, 3]
    assert d["ok"] is True
    assert all({"name", "status"} <= set(c) for c in d["checks"])


def test_verify_lattice_covers_all_squares():
    L = grid(3, 3)
    reps = verify_lattice(L)
    assert len(reps) == len(L.covering_squares())
    assert all(r.ok for r in reps)


def test_wide_square_checks_present():
    # forking a square, then re-forking the same square in the extension,
    # makes that square wide
    L = grid(2, 2)
    from forklat import CoveringSquare, insert_fork
    LS, trace = insert_fork(L, CoveringSquare(0, 1, 2, 3))
    o2n = trace.old_to_new
    S2 = CoveringSquare(o2n[0], o2n[1], o2n[2], o2n[3])
    wide = next(S for S in LS.covering_squares()
                if len(LS.down_covers[S.i]) > 2 and S.al in (o2n[1], S2.al))
    rep = verify_square(LS, wide)
    assert rep.kind == "wide"
    names = _statuses(rep)
    assert "wide-congruence-preserving" in names
    assert "wide-fork-congruence-identity" in names
    assert rep.ok


def test_counterexample_square_is_flagged_not_failed(no_extension_lattice):
    L, S = no_extension_lattice
    rep = verify_square(L, S)
    statuses = _statuses(rep)
    assert statuses["congruence-extension"] == "flagged"
    assert rep.ok          # flagged, never a hard failure
    assert rep.flagged


def test_no_hard_failures_on_corpus_sample():
    for seed in range(40):
        L, history = random_sps(seed, k=seed % 4)
        for rep in verify_lattice(L):
            bad = [c for c in rep.checks if c.status == "fail"]
            assert not bad, (seed, rep.square, bad)
