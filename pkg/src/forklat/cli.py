"""Command-line interface.

Every subcommand is pure file-in/file-out and deterministic: randomness
only enters through an explicit ``--seed``.  On any error or failed check
the process exits nonzero after writing a machine-readable error JSON to
stdout.
"""

import csv
import json
import sys
from pathlib import Path

import click

from . import congruence as cg
from . import diagram, verify
from .errors import ForklatError
from .fork import ForkTrace, insert_fork
from .generate import random_sps
from .lattice import CoveringSquare, Lattice


def _fail(code: str, message: str, exit_code: int = 1):
    click.echo(json.dumps({"error": code, "message": message}))
    sys.exit(exit_code)


def _load_lattice(path: str) -> Lattice:
    try:
        with open(path, encoding="utf-8") as f:
            return Lattice.from_dict(json.load(f))
    except FileNotFoundError:
        _fail("io", f"no such file: {path}")
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        _fail("malformed-input", f"{path}: {e}")


def _write_json(path: str, payload: dict):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def _parse_ints(text: str, count: int, what: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != count or not all(p.strip().lstrip("-").isdigit()
                                      for p in parts):
        _fail("malformed-input",
              f"expected {count} comma-separated integers for {what}: {text!r}")
    return tuple(int(p) for p in parts)


@click.group()
def main():
    """Slim planar semimodular lattices: fork insertion, congruence
    lattices, structure verification, and diagram export."""


@main.command()
@click.option("--seed", type=int, required=True, help="RNG seed.")
@click.option("--base", default=None,
              help="Grid dimensions p,q (random from the seed if omitted).")
@click.option("--forks", "-k", type=int, default=2, show_default=True,
              help="Number of fork insertions to attempt.")
@click.option("--cap", type=int, default=60, show_default=True,
              help="Skip any step that would exceed this element count.")
@click.option("-o", "--output", required=True, type=click.Path())
def generate(seed, base, forks, cap, output):
    """Build a seeded lattice by fork insertions on a random grid."""
    base_pq = _parse_ints(base, 2, "--base") if base else None
    try:
        L, history = random_sps(seed, k=forks, size_cap=cap, base=base_pq)
    except ForklatError as e:
        _fail(e.code, str(e))
    payload = L.to_dict()
    payload["history"] = history.to_dict()
    _write_json(output, payload)
    click.echo(f"wrote {output}: {L.n} elements, "
               f"{len(history.steps)} fork(s)")


@main.command()
@click.option("-i", "--input", "input_", required=True, type=click.Path())
@click.option("--square", required=True,
              help="Covering square o,al,ar,i (element indices).")
@click.option("-o", "--output", required=True, type=click.Path())
@click.option("--trace", "trace_path", type=click.Path(), default=None,
              help="Also write the old-to-new element map and new-element "
                   "roles to this JSON file.")
def fork(input_, square, output, trace_path):
    """Insert a fork at a covering square of the input lattice."""
    L = _load_lattice(input_)
    S = CoveringSquare(*_parse_ints(square, 4, "--square"))
    try:
        LS, trace = insert_fork(L, S)
    except ForklatError as e:
        _fail(e.code, str(e))
    _write_json(output, LS.to_dict())
    if trace_path:
        _write_json(trace_path, trace.to_dict())
    click.echo(f"wrote {output}: {L.n} -> {LS.n} elements")


@main.command()
@click.option("-i", "--input", "input_", required=True, type=click.Path())
@click.option("--principal", default=None,
              help="Only the principal congruence of the pair a,b.")
@click.option("--full", is_flag=True,
              help="Include the refinement order and join-irreducible "
                   "congruences, not just the partitions.")
@click.option("-o", "--output", required=True, type=click.Path())
def con(input_, principal, full, output):
    """Compute congruences of the input lattice."""
    L = _load_lattice(input_)
    if principal is not None:
        a, b = _parse_ints(principal, 2, "--principal")
        if not (0 <= a < L.n and 0 <= b < L.n):
            _fail("malformed-input", f"element out of range: {principal}")
        p = cg.principal_congruence_fixpoint(L, a, b)
        _write_json(output, {"principal_of": [a, b], **p.to_dict()})
        click.echo(f"wrote {output}: principal congruence of ({a}, {b})")
        return
    try:
        con_l = cg.congruence_lattice(L)
    except ForklatError as e:
        _fail(e.code, str(e))
    payload = con_l.to_dict()
    if not full:
        payload = {"count": payload["count"],
                   "congruences": payload["congruences"]}
    _write_json(output, payload)
    click.echo(f"wrote {output}: {len(con_l)} congruences")


def _report_rows(reports):
    for rep in reports:
        for check in rep.checks:
            yield {"square": " ".join(map(str, rep.square.elements())),
                   "kind": rep.kind,
                   "base_size": rep.base_size,
                   "extension_size": rep.extension_size,
                   "check": check.name,
                   "status": check.status,
                   "witness": check.witness}


def _emit_report(output, label_reports, figures):
    """Write report JSON plus a flat CSV, optionally rendering figures."""
    all_reports = [r for _, _, reps in label_reports for r in reps]
    statuses = [c.status for r in all_reports for c in r.checks]
    summary = {s: statuses.count(s) for s in ("pass", "flagged", "skip", "fail")}
    payload = {
        "schema": verify.SCHEMA_VERSION,
        "summary": summary,
        "lattices": [{"label": label, "n": L.n,
                      "squares": [r.to_dict() for r in reps]}
                     for label, L, reps in label_reports],
    }
    _write_json(output, payload)
    csv_path = Path(output).with_suffix(".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=["square", "kind", "base_size",
                                               "extension_size", "check",
                                               "status", "witness"])
        writer.writeheader()
        for _, _, reps in label_reports:
            writer.writerows(_report_rows(reps))
    if figures:
        fig_dir = Path(figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        for label, L, reps in label_reports:
            marked = {e for rep in reps if rep.flagged or not rep.ok
                      for e in rep.square.elements()}
            diagram.render_png(L, fig_dir / f"{label}.png", highlight=marked,
                               title=f"{label} ({L.n} elements)")
    ok = summary["fail"] == 0
    click.echo(f"wrote {output} and {csv_path}: "
               + " ".join(f"{k}={v}" for k, v in summary.items()))
    if not ok:
        _fail("checks-failed", f"{summary['fail']} check(s) failed")


@main.command(name="verify")
@click.option("-i", "--input", "input_", type=click.Path(), default=None)
@click.option("--square", default=None,
              help="Verify only the fork at this covering square o,al,ar,i.")
@click.option("--all-squares", is_flag=True,
              help="Verify the fork at every covering square of the input.")
@click.option("--corpus", default=None,
              help="Verify seeded lattices instead of a file, e.g. 0..49.")
@click.option("--con-bound", type=int, default=64, show_default=True,
              help="Skip congruence checks on lattices larger than this.")
@click.option("--figures", type=click.Path(), default=None,
              help="Directory for rendered diagrams of verified lattices.")
@click.option("-o", "--output", required=True, type=click.Path())
def verify_cmd(input_, square, all_squares, corpus, con_bound, figures,
               output):
    """Run the structure and congruence checks; write JSON + CSV report."""
    label_reports = []
    try:
        if corpus is not None:
            if ".." not in corpus:
                _fail("malformed-input",
                      f"expected a seed range like 0..49: {corpus!r}")
            lo, hi = corpus.split("..", 1)
            if not (lo.isdigit() and hi.isdigit()):
                _fail("malformed-input", f"bad seed range: {corpus!r}")
            for seed in range(int(lo), int(hi) + 1):
                L, history = random_sps(seed, k=seed % 4)
                reps = []
                cur = _replay_verify(history, con_bound, reps)
                label_reports.append((f"seed-{seed}", cur, reps))
        elif input_ is not None:
            L = _load_lattice(input_)
            if square is not None:
                S = CoveringSquare(*_parse_ints(square, 4, "--square"))
                reps = [verify.verify_square(L, S, con_bound=con_bound)]
            elif all_squares:
                reps = verify.verify_lattice(L, con_bound=con_bound)
            else:
                _fail("malformed-input",
                      "pass --square, --all-squares, or --corpus")
            label_reports.append((Path(input_).stem, L, reps))
        else:
            _fail("malformed-input", "pass --input or --corpus")
    except ForklatError as e:
        _fail(e.code, str(e))
    _emit_report(output, label_reports, figures)


def _replay_verify(history, con_bound, reps):
    from .generate import grid
    L = grid(*history.base)
    for step in history.steps:
        S = CoveringSquare(*step)
        reps.append(verify.verify_square(L, S, con_bound=con_bound))
        L, _ = insert_fork(L, S)
    return L


@main.command()
@click.option("-i", "--input", "input_", required=True, type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["dot", "tikz", "png"]),
              required=True)
@click.option("--trace", "trace_path", type=click.Path(), default=None,
              help="Fork trace JSON; its new elements are drawn black-filled.")
@click.option("-o", "--output", required=True, type=click.Path())
def export(input_, fmt, trace_path, output):
    """Render the Hasse diagram in the stored left-to-right order."""
    L = _load_lattice(input_)
    highlight = ()
    if trace_path:
        try:
            with open(trace_path, encoding="utf-8") as f:
                highlight = ForkTrace.from_dict(json.load(f)).new_elements()
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as e:
            _fail("malformed-input", f"{trace_path}: {e}")
    if fmt == "dot":
        text = diagram.to_dot(L, highlight=highlight)
    elif fmt == "tikz":
        text = diagram.to_tikz(L, highlight=highlight)
    else:
        diagram.render_png(L, output, highlight=highlight)
        click.echo(f"wrote {output}")
        return
    with open(output, "w", encoding="utf-8") as f:
        f.write(text)
    click.echo(f"wrote {output}")


if __name__ == "__main__":
    main()
