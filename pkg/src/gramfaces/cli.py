"""Command line entry point: ``gramfaces <subcommand> ...``.

Exit status: 0 success, 1 usage or parse error, 2 incomplete (time budget),
3 mismatch or counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

EXIT_OK, EXIT_USAGE, EXIT_INCOMPLETE, EXIT_MISMATCH = 0, 1, 2, 3

# documented default master seed
DEFAULT_SEED = 0
MAX_N = 16
MAX_D = 20


class UsageError(Exception):
    pass


def parse_range(text: str, lo: int = 0, hi: int | None = None, name: str = "value") -> list[int]:
    """``"3"``, ``"3..6"`` or ``"2,4,7"`` (parts may be mixed: ``"2,4..6"``)."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                a, b = part.split("..")
                a, b = int(a), int(b)
                if a > b:
                    raise UsageError(f"empty range {part!r} for {name}")
                out.extend(range(a, b + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"cannot parse {name} range {text!r}") from None
    for v in out:
        if v < lo or (hi is not None and v > hi):
            raise UsageError(f"{name}={v} outside {lo}..{hi if hi is not None else 'inf'}")
    return sorted(set(out))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gramfaces", description="codim U^2 tables, space queries and randomized checks")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("mtable", help="table of m(n,d,k) over strongly stable subspaces")
    t.add_argument("--n", required=True)
    t.add_argument("--d", required=True)
    t.add_argument("--k", required=True)
    t.add_argument("--check-paper", action="store_true", help="compare with the reference table")
    t.add_argument("--format", choices=["markdown", "csv", "records"], default="markdown")
    t.add_argument("--witnesses", action="store_true")
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--budget", type=float, default=None, help="seconds per (n, d) block")
    t.add_argument("--output", default=None)

    s = sub.add_parser("space", help="report on a subspace interchange file")
    s.add_argument("file")
    s.add_argument("--T", type=int, default=None, help="Hilbert table degree bound (default 2d+2)")
    s.add_argument("--format", choices=["text", "json"], default="text")

    m = sub.add_parser("macaulay", help="Macaulay representation calculus")
    msub = m.add_subparsers(dest="op", required=True, parser_class=_Parser)
    r = msub.add_parser("rep")
    r.add_argument("a", type=int)
    r.add_argument("d", type=int)
    sh = msub.add_parser("shift")
    for name in ("a", "d", "s", "t"):
        sh.add_argument(name, type=int)
    g = msub.add_parser("growth")
    g.add_argument("h", type=int)
    g.add_argument("i", type=int)
    gr = msub.add_parser("green")
    gr.add_argument("h", type=int)
    gr.add_argument("d", type=int)

    e = sub.add_parser("enumerate-ss", help="list strongly stable complements")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--k", type=int, required=True)
    e.add_argument("--count", action="store_true", help="print only the number of complements")
    e.add_argument("--codim", action="store_true", help="append codim U^2 to each line")

    v = sub.add_parser("verify", help="run a registered check, 'gallery' or 'all'")
    v.add_argument("check")
    v.add_argument("--n")
    v.add_argument("--d")
    v.add_argument("--k")
    v.add_argument("--m", type=int, default=None, help="variable count kept by var-reduction")
    v.add_argument("--levels", default=None, help="lift levels for lift-formula")
    v.add_argument("--trials", type=int, default=50)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--height", type=int, default=100)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--format", choices=["text", "records"], default="text")
    v.add_argument("--payload-dir", default=None, help="write failing instances here")

    c = sub.add_parser("conjecture", help="m(k,k,k) and m(3k,k,k) against the guessed formulas")
    c.add_argument("--k-max", type=int, default=4)
    c.add_argument("--max-dim", type=int, default=4000)
    return p


def _emit(text: str, output: str | None = None) -> None:
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_mtable(args) -> int:
    from .stable import compare_with_reference, m_table

    ns = parse_range(args.n, 1, MAX_N, "n")
    ds = parse_range(args.d, 1, MAX_D, "d")
    ks = parse_range(args.k, 0, None, "k")
    if args.jobs < 1:
        raise UsageError("--jobs must be positive")
    table = m_table(ns, ds, ks, jobs=args.jobs, budget=args.budget)
    if args.format == "csv":
        text = table.to_csv(args.witnesses)
    elif args.format == "records":
        recs = []
        for n in ns:
            for d in ds:
                for k in ks:
                    w = table.blocks[(n, d)].witnesses.get(k)
                    rec = {"n": n, "d": d, "k": k, "m": table.shown(n, d, k)}
                    if args.witnesses and w is not None and rec["m"] != "-":
                        rec["witness"] = w.to_text()
                    recs.append(json.dumps(rec, sort_keys=True))
        text = "\n".join(recs) + "\n"
    else:
        text = table.to_markdown(args.witnesses)
    _emit(text, args.output)
    status = EXIT_OK
    if args.check_paper:
        bad = compare_with_reference(table)
        for line in bad:
            print(f"mismatch: {line}", file=sys.stderr)
        if bad:
            status = EXIT_MISMATCH
        else:
            print("reference check: all computed cells match", file=sys.stderr)
    if status == EXIT_OK and not table.complete():
        print("incomplete: some cells exceeded the time budget", file=sys.stderr)
        status = EXIT_INCOMPLETE
    return status


def cmd_space(args) -> int:
    from .forms import base_point_certificate, face_dimension, hilbert_table, loads_space, square_codim

    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    try:
        U = loads_space(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.file}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    T = args.T if args.T is not None else 2 * U.d + 2
    if T < U.d:
        raise UsageError("--T must be at least d")
    csq = square_codim(U)
    table = hilbert_table(U, T)
    cert = base_point_certificate(U, T)
    exact = all(st == "exact" for st in table.status)
    face = face_dimension(U.dim, U.n, U.d, csq)
    if args.format == "json":
        out = {
            "n": U.n,
            "d": U.d,
            "dim": U.dim,
            "codim": U.codim,
            "codim_U2": csq,
            "hilbert": list(table.h),
            "hilbert_exact": exact,
            "certificate": cert.verdict,
            "certificate_detail": str(cert),
            "face_dimension": face,
        }
        sys.stdout.write(json.dumps(out, sort_keys=True) + "\n")
    else:
        lines = [
            f"n = {U.n}, d = {U.d}",
            f"dim U = {U.dim}",
            f"codim U = {U.codim}",
            f"codim U^2 = {csq}",
            f"Hilbert function h_0..h_{T} = {', '.join(map(str, table.h))}"
            + ("" if exact else " (modular values are upper bounds)"),
            f"base points: {cert}",
            f"face dimension C(dim U + 1, 2) - dim A_2d + codim U^2 = {face}",
        ]
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def cmd_macaulay(args) -> int:
    from .macaulay import green_restriction_bound, macaulay_growth_bound, macaulay_rep, macaulay_shift

    def need(cond, msg):
        if not cond:
            raise UsageError(msg)

    if args.op == "rep":
        need(args.a >= 0 and args.d >= 1, "need a >= 0 and d >= 1")
        rep = macaulay_rep(args.a, args.d)
        print(" ".join(str(k) for k in rep.tops) if rep.tops else "")
        print(rep)
    elif args.op == "shift":
        need(args.a >= 0 and args.d >= 1, "need a >= 0 and d >= 1")
        need(args.s <= args.t, "shifts need s <= t")
        print(macaulay_shift(macaulay_rep(args.a, args.d), args.s, args.t))
    elif args.op == "growth":
        need(args.h >= 0 and args.i >= 1, "need h >= 0 and i >= 1")
        print(macaulay_growth_bound(args.h, args.i))
    else:
        need(args.h >= 0 and args.d >= 1, "need h >= 0 and d >= 1")
        print(green_restriction_bound(args.h, args.d))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    from .stable import enumerate_stable_complements, monomial_square_codim
    from .monomials import num_monomials

    if not (1 <= args.n <= MAX_N and 0 <= args.d <= MAX_D):
        raise UsageError("n or d out of range")
    if not 0 <= args.k <= num_monomials(args.n, args.d):
        raise UsageError(f"k must lie in 0..{num_monomials(args.n, args.d)}")
    comps = enumerate_stable_complements(args.n, args.d, args.k)
    if args.count:
        print(len(comps))
        return EXIT_OK
    for c in comps:
        line = c.to_text()
        if args.codim:
            line += f"  codim U^2 = {monomial_square_codim(c)}"
        print(line)
    return EXIT_OK


def cmd_verify(args) -> int:
    from . import harness

    if args.check == "gallery":
        items = harness.example_gallery()
        sys.stdout.write(harness.gallery_text(items))
        return EXIT_OK if all(i.match for i in items) else EXIT_MISMATCH
    ids = sorted(harness.REGISTRY) if args.check == "all" else [args.check]
    if args.check not in harness.REGISTRY and args.check != "all":
        raise UsageError(
            f"unknown check {args.check!r}; registered: gallery, all, " + ", ".join(sorted(harness.REGISTRY))
        )
    if args.trials < 1 or args.jobs < 1 or args.height < 1:
        raise UsageError("--trials, --jobs and --height must be positive")
    params = {
        "n": parse_range(args.n, 1, MAX_N, "n") if args.n else None,
        "d": parse_range(args.d, 1, MAX_D, "d") if args.d else None,
        "k": parse_range(args.k, 0, None, "k") if args.k else None,
    }
    if args.m is not None:
        params["m"] = args.m
    if args.levels is not None:
        params["levels"] = parse_range(args.levels, 0, 8, "levels")
    status = EXIT_OK
    for cid in ids:
        try:
            report = harness.verify(cid, trials=args.trials, seed=args.seed, height=args.height, jobs=args.jobs, **params)
        except ValueError as exc:
            if args.check == "all":
                print(f"skipped {cid}: {exc}", file=sys.stderr)
                continue
            raise UsageError(str(exc)) from None
        sys.stdout.write(report.to_records() if args.format == "records" else report.to_text())
        if not report.ok:
            status = EXIT_MISMATCH
            if args.payload_dir:
                _write_payloads(report, args.payload_dir)
    return status


def _write_payloads(report, directory: str) -> None:
    import os

    os.makedirs(directory, exist_ok=True)
    for r in report.failures():
        path = os.path.join(directory, f"{report.check_id}-seed{report.seed}-trial{r.trial}.json")
        with open(path, "w") as fh:
            json.dump(r.record(report.check_id), fh, indent=2, sort_keys=True)
            fh.write("\n")


def cmd_conjecture(args) -> int:
    from .harness import conjecture_mkkk, conjecture_text

    if args.k_max < 1:
        raise UsageError("--k-max must be positive")
    sys.stdout.write(conjecture_text(conjecture_mkkk(args.k_max, args.max_dim)))
    return EXIT_OK


COMMANDS = {
    "mtable": cmd_mtable,
    "space": cmd_space,
    "macaulay": cmd_macaulay,
    "enumerate-ss": cmd_enumerate,
    "verify": cmd_verify,
    "conjecture": cmd_conjecture,
}


def main(argv: list[str] | None = None) -> int:
    start = time.monotonic()
    try:
        args = build_parser().parse_args(argv)
        status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wall time {time.monotonic() - start:.2f}s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
