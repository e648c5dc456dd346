"""Command-line front end.

Commands
--------
eval      values of ``v_mn`` (and optionally ``Omega_mn``) at given sites
table     CSV-ready table of ``s, x(s), v_mn(s), Omega_mn(s)`` on the sample grid
ladder    before/after/target triples of a raising or lowering step
verify    run the verification suite; nonzero exit iff a cell fails
families  list the registered families

Family parameters are given as extra options, e.g.
``ladderlattice eval kravchuk --p 1/3 --N 6 --n 2 --at 0 1 2``.

Exit codes: 0 success, 1 computation error or failed verification,
2 invalid input.
"""
import argparse
import csv
import io
import json
import sys

from . import faults
from .errors import LadderLatticeError, ParameterError, UnknownFamilyError, WindowTooSmallError
from .families import catalog_entries, catalog_get, load_catalog
from .field import as_rational, format_scalar, set_precision
from .ladder import lowering, raising
from .lattice import x_eval
from .orthonormal import LadderOperator, ortho_build
from .rodrigues import build_vmn
from .verify import DEFAULT_FAMILIES, SuiteConfig, run_suite

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Invalid command-line input, reported with exit code 2."""


def _parse_family_params(extra):
    """Turn ``['--mu', '1/2', '--N=6']`` into ``{'mu': '1/2', 'N': '6'}``."""
    params = {}
    it = iter(extra)
    for tok in it:
        if not tok.startswith("--") or tok == "--":
            raise UsageError(f"unexpected argument {tok!r}")
        key, eq, value = tok[2:].partition("=")
        if not eq:
            value = next(it, None)
            if value is None or value.startswith("--"):
                raise UsageError(f"family parameter --{key} needs a value")
        params[key] = value
    return params


def _family(args, extra):
    try:
        params = {k: as_rational(v) for k, v in _parse_family_params(extra).items()}
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad family parameter: {exc}") from exc
    try:
        return catalog_get(args.family, **params)
    except (ParameterError, UnknownFamilyError) as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from exc


def _check_indices(family, n, m):
    if n < 0 or m < 0 or m > n:
        raise UsageError(f"need 0 <= m <= n, got m={m}, n={n}")
    top = family.max_degree
    if top is not None and n > top:
        raise UsageError(f"{family.describe()}: n={n} exceeds the largest admissible degree {top}")


def _sites(family, m, values, lo=None, hi=None):
    if values:
        try:
            return [as_rational(v) for v in values]
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"bad site: {exc}") from exc
    sites = list(family.sites(m))
    if lo is not None:
        sites = [s for s in sites if s >= as_rational(lo)]
    if hi is not None:
        sites = [s for s in sites if s <= as_rational(hi)]
    return sites


def _emit(rows, header, fmt, out):
    if fmt == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    else:
        width = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, width)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(c.ljust(w) for c, w in zip(r, width)).rstrip() + "\n")


# -- commands ------------------------------------------------------------------------

def cmd_eval(args, extra, out):
    family = _family(args, extra)
    _check_indices(family, args.n, args.m)
    v = build_vmn(family, args.m, args.n)
    omega = ortho_build(family, args.m, args.n) if args.ortho else None
    header = ["s", "v"] + (["omega"] if omega else [])
    rows = []
    for s in _sites(family, args.m, args.at):
        row = [format_scalar(s), format_scalar(v.at(s))]
        if omega:
            row.append(format_scalar(omega.at(s)))
        rows.append(row)
    _emit(rows, header, args.format, out)
    return EXIT_OK


def cmd_table(args, extra, out):
    family = _family(args, extra)
    _check_indices(family, args.n, args.m)
    v = build_vmn(family, args.m, args.n)
    omega = ortho_build(family, args.m, args.n)
    rows = [[format_scalar(s), format_scalar(x_eval(family.lattice, s)), format_scalar(v.at(s)),
             format_scalar(omega.at(s))] for s in _sites(family, args.m, None, args.lo, args.hi)]
    _emit(rows, ["s", "x", "v", "omega"], args.format, out)
    return EXIT_OK


def cmd_ladder(args, extra, out):
    family = _family(args, extra)
    _check_indices(family, args.n, args.m)
    target_n = args.n + 1 if args.direction == "raise" else args.n - 1
    if target_n < args.m:
        raise UsageError(f"cannot lower v_{args.m}{args.n} below n = m")
    _check_indices(family, target_n, args.m)
    if args.orthonormal:
        op = LadderOperator(args.direction, family, args.m, args.n)
        f = ortho_build(family, args.m, args.n)
        g = op(f)
        tgt = ortho_build(family, args.m, target_n)
        scale = op.image_scale()
        rows = [[format_scalar(s), format_scalar(f.at(s)), format_scalar(g(s)), format_scalar(scale * tgt.at(s))]
                for s in f.sites]
    else:
        v = build_vmn(family, args.m, args.n)
        step = raising if args.direction == "raise" else lowering
        got = step(family, args.m, args.n)
        tgt = build_vmn(family, args.m, target_n)
        rows = [[format_scalar(s), format_scalar(v.at(s)), format_scalar(got.at(s)), format_scalar(tgt.at(s))]
                for s in v.sites]
    _emit(rows, ["s", "before", "after", "target"], args.format, out)
    return EXIT_OK


def _suite_families(args):
    if args.family:
        suite = dict(DEFAULT_FAMILIES)
        return tuple((name, suite.get(name, {})) for name in args.family)
    if args.custom_names:
        return tuple((name, {}) for name in args.custom_names)
    return DEFAULT_FAMILIES


def cmd_verify(args, extra, out):
    if extra:
        raise UsageError(f"unexpected arguments {' '.join(extra)}")
    fault = {}
    if args.fault_tau:
        fault["tau_shift"] = args.fault_tau
    if args.fault_alpha:
        fault["alpha_shift"] = args.fault_alpha
    if args.fault_beta:
        fault["beta_shift"] = args.fault_beta
    if args.fault_sign:
        fault["flip_rodrigues_sign"] = True
    cfg = SuiteConfig(families=_suite_families(args), n_max=args.nmax, m_max=args.mmax,
                      ortho_n_max=args.ortho_nmax if args.ortho_nmax is not None else args.nmax,
                      claims=args.claims, faults=fault, seed=args.seed)
    try:
        report = run_suite(cfg)
    except (ParameterError, UnknownFamilyError) as exc:
        raise UsageError(str(exc)) from exc
    if args.format == "csv":
        out.write(report.to_csv())
    elif args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        s = report.summary()
        out.write(f"cells {s['total']}  pass {s['pass']}  fail {s['fail']}  skipped {s['skipped']}\n")
        for c in report.failures():
            out.write(f"FAIL {c.identity} {c.family}({c.params}) m={c.m} n={c.n} "
                      f"residual={c.max_residual or c.note} tol={c.tolerance}\n")
    return EXIT_OK if report.passed else EXIT_COMPUTE


def _support_text(entry):
    a, b = entry["support"]
    if entry["lattice"]["kind"] == "continuous":
        return f"{'(-inf' if a is None else f'[{a}'}, {'inf)' if b is None else f'{b}]'}"
    return f"{a} .. {'inf' if b is None else int(b) - 1}"


def cmd_families(args, extra, out):
    if extra:
        raise UsageError(f"unexpected arguments {' '.join(extra)}")
    entries = catalog_entries()
    if args.format == "json":
        out.write(json.dumps(entries, indent=2) + "\n")
        return EXIT_OK
    rows = [[e["name"], e["lattice"]["kind"], ", ".join(f"{k}={v}" for k, v in e["params"].items()),
             _support_text(e)] for e in entries]
    _emit(rows, ["name", "lattice", "defaults", "support"], args.format, out)
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "ladder": cmd_ladder, "verify": cmd_verify,
            "families": cmd_families}


# -- parser --------------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--families", metavar="PATH", default="default",
                        help="JSON catalog of custom families to register ('default' for none)")
    common.add_argument("--precision", type=int, help="working precision in decimal digits")
    common.add_argument("--format", choices=("plain", "csv", "json"), default="plain")
    common.add_argument("--output", metavar="PATH", help="write to a file instead of stdout")

    parser = argparse.ArgumentParser(prog="ladderlattice", description=__doc__.split("\n")[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def indexed(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, allow_abbrev=False)
        p.add_argument("family")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, default=0)
        return p

    p = indexed("eval", "evaluate v_mn at sites")
    p.add_argument("--at", nargs="+", metavar="S", help="sites (default: the sample grid)")
    p.add_argument("--ortho", action="store_true", help="also print Omega_mn")

    p = indexed("table", "tabulate s, x(s), v_mn, Omega_mn")
    p.add_argument("--from", dest="lo", metavar="S")
    p.add_argument("--to", dest="hi", metavar="S")

    p = indexed("ladder", "apply a raising or lowering step")
    p.add_argument("--direction", choices=("raise", "lower"), required=True)
    p.add_argument("--orthonormal", action="store_true", help="act on Omega_mn instead of v_mn")

    p = sub.add_parser("verify", parents=[common], help="run the verification suite", allow_abbrev=False)
    p.add_argument("--family", action="append", help="restrict to a family (repeatable)")
    p.add_argument("--nmax", type=int, default=8)
    p.add_argument("--mmax", type=int, default=2)
    p.add_argument("--ortho-nmax", type=int)
    p.add_argument("--claims", action="store_true",
                   help="also check the literal closed forms that fail on some lattices")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fault-tau", type=float, metavar="EPS", help="shift the catalog tau by EPS")
    p.add_argument("--fault-alpha", type=float, metavar="EPS", help="scale alpha by 1 + EPS")
    p.add_argument("--fault-beta", type=float, metavar="EPS", help="shift beta by EPS")
    p.add_argument("--fault-sign", action="store_true", help="flip the sign of A_mn")

    sub.add_parser("families", parents=[common], help="list registered families", allow_abbrev=False)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out = io.StringIO()
    try:
        if args.precision is not None:
            if args.precision < 15:
                raise UsageError("--precision must be at least 15 digits")
            set_precision(args.precision)
        args.custom_names = []
        if args.families != "default":
            try:
                args.custom_names = load_catalog(args.families)
            except ParameterError as exc:
                raise UsageError(str(exc)) from exc
        with faults.inject():
            code = COMMANDS[args.command](args, extra, out)
    except UsageError as exc:
        print(f"ladderlattice: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except WindowTooSmallError as exc:
        print(f"ladderlattice: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LadderLatticeError, ArithmeticError) as exc:
        print(f"ladderlattice: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    text = out.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
