"""Command-line interface.

Exit codes: 0 success, 1 mathematical failure, 2 experiment outside the
theorem's hypotheses, 3 resource guard, 4 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .basstree import TreeWindow
from .certify import certify
from .curvespace import orbit_experiment
from .fixtures import FixtureError, resolve, shipped_names
from .freegroup import ConjClass, Word, WordError
from .raag import RaagError
from .splitting import SplittingError, validate
from .twist import MAX_IMAGE_LENGTH, ResourceGuard, commutator, commutator_is_inner, from_splitting, power

OK, FAILURE, EXPERIMENT, GUARD, USAGE = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE, f"{self.prog}: error: {message}\n")


def _write(path, text: str, out):
    if path in (None, "-"):
        out.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_validate(args, out) -> int:
    bundle = resolve(args.fixtures)
    code = OK
    for name, d in bundle.splittings.items():
        rep = validate(d)
        status = "ok" if rep.adapted else "FAIL"
        out.write(f"{name} [{d.kind}]: {status}\n")
        for check, passed, detail in rep.checks:
            if not passed:
                out.write(f"  {check}: {detail}\n")
        if not rep.adapted:
            code = FAILURE
    return code


def cmd_twist(args, out) -> int:
    bundle = resolve(args.fixtures)
    d = bundle.splitting(args.splitting)
    w = Word.parse(args.word, bundle.rank)
    phi = from_splitting(d)
    if args.power != 1:
        phi = power(phi, args.power, args.guard)
    out.write(f"{phi(w)}\n")
    return OK


def cmd_commute(args, out) -> int:
    bundle = resolve(args.fixtures)
    phi = from_splitting(bundle.splitting(args.first))
    psi = from_splitting(bundle.splitting(args.second))
    if commutator_is_inner(phi, psi):
        out.write("COMMUTE\n")
    else:
        out.write("CROSS\n")
        out.write(f"  commutator {commutator(phi, psi)} is not inner\n")
    return OK


def _exponents(text: str, k: int):
    try:
        ns = tuple(int(s) for s in text.split(","))
    except ValueError:
        raise FixtureError("--exponents", f"expected comma-separated integers, got {text!r}") from None
    if len(ns) == 1:
        ns = ns * k
    if len(ns) != k:
        raise FixtureError("--exponents", f"need {k} exponents, got {len(ns)}")
    if any(n == 0 for n in ns):
        raise FixtureError("--exponents", "exponents must be nonzero")
    return ns


def cmd_certify(args, out) -> int:
    bundle = resolve(args.fixtures)
    c = bundle.collection(args.collection)
    ns = _exponents(args.exponents, len(c)) if args.exponents else ()
    cert = certify(c, ns, args.scan_length if ns else 0, args.guard, args.threads)
    report = json.dumps(cert.to_json(timings=args.timings), indent=2) + "\n"
    _write(args.report, report, out)
    if args.dot:
        _write(args.dot, cert.graph.to_dot() + "\n", out)
    if not cert.verdict.passed:
        for reason in cert.verdict.reasons:
            sys.stderr.write(f"incompatible: {reason}\n")
        return FAILURE
    if cert.scan is not None and cert.scan.counterexamples:
        return FAILURE
    if ns and not cert.meets_threshold:
        sys.stderr.write(f"exponents {list(ns)} below N = {cert.bounds.N}: experiment only\n")
        return EXPERIMENT
    return OK


def cmd_converge(args, out) -> int:
    bundle = resolve(args.fixtures)
    d = bundle.splitting(args.splitting)
    family = bundle.family(args.family)
    alpha = ConjClass.of(Word.parse(args.alpha, bundle.rank))
    rep = orbit_experiment(d, alpha, args.n_max, family, args.guard, args.factorial_only)
    _write(args.csv, rep.to_csv(), out)
    if rep.constant:
        sys.stderr.write(f"constant orbit: i({alpha}, {args.splitting}) = {rep.i_alpha_T}\n")
    if rep.degenerate:
        sys.stderr.write("WINDOW-DEGENERATE: zero intersection vector on this family\n")
    for n, s, lhs, rhs in rep.lemma_violations:
        sys.stderr.write(f"lemma violated at n={n}, {s}: {lhs} > {rhs}\n")
    for n, dist, bound in rep.bound_violations:
        sys.stderr.write(f"distance bound violated at n={n}: {dist} > {bound}\n")
    return OK if rep.ok else FAILURE


def cmd_window(args, out) -> int:
    bundle = resolve(args.fixtures)
    win = TreeWindow(bundle.splitting(args.splitting), radius=args.radius)
    _write(args.dot, win.to_dot() + "\n", out)
    return OK


def cmd_fixtures(args, out) -> int:
    for name in shipped_names():
        out.write(name + "\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twistraag", description="Dehn twists of free groups and the RAAGs they generate.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--guard", type=int, default=MAX_IMAGE_LENGTH,
                   help="maximum length of any intermediate image (default %(default)s)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    fx = dict(help="fixture bundle: a JSON path or a shipped bundle name")

    s = sub.add_parser("validate", help="check every splitting of a bundle")
    s.add_argument("fixtures", **fx)
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("twist", help="apply a Dehn twist to a word")
    s.add_argument("fixtures", **fx)
    s.add_argument("splitting")
    s.add_argument("word")
    s.add_argument("--power", type=int, default=1)
    s.set_defaults(func=cmd_twist)

    s = sub.add_parser("commute", help="decide whether two twists commute in Out(F)")
    s.add_argument("fixtures", **fx)
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_commute)

    s = sub.add_parser("certify", help="certify a collection and scan for non-injectivity")
    s.add_argument("fixtures", **fx)
    s.add_argument("--collection", required=True)
    s.add_argument("--exponents", help="comma-separated twist exponents (one value repeats)")
    s.add_argument("--scan-length", type=int, default=0)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--report", help="write the JSON report here instead of stdout")
    s.add_argument("--dot", help="write the coincidence graph in DOT format")
    s.add_argument("--timings", action="store_true", help="include wall-clock time in the report")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("converge", help="twist-orbit experiment on intersection vectors (CSV)")
    s.add_argument("fixtures", **fx)
    s.add_argument("--splitting", required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--n-max", type=int, default=50)
    s.add_argument("--family", default="basis")
    s.add_argument("--csv", help="write the CSV here instead of stdout")
    s.add_argument("--factorial-only", action="store_true",
                   help="only accept classes of basis letters")
    s.set_defaults(func=cmd_converge)

    s = sub.add_parser("window", help="DOT picture of a Bass-Serre tree window")
    s.add_argument("fixtures", **fx)
    s.add_argument("splitting")
    s.add_argument("--radius", type=int, default=2)
    s.add_argument("--dot")
    s.set_defaults(func=cmd_window)

    s = sub.add_parser("fixtures", help="list shipped fixture bundles")
    s.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except ResourceGuard as e:
        sys.stderr.write(f"resource guard: {e}\n")
        return GUARD
    except SplittingError as e:
        sys.stderr.write(f"invalid splitting: {e}\n")
        return FAILURE
    except (FixtureError, WordError, RaagError) as e:
        sys.stderr.write(f"error: {e}\n")
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
