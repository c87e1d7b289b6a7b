"""Command-line front end.

Exit status: 0 success, 1 usage or I/O error, 2 mathematical failure (singular
leading minor, vanishing tau), 3 a verification ran and found a mismatch.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bidiag import (BidiagonalChain, PerturbedSingular, TauZero, chain_to_csv,
                     christoffel_chain, perturbed_factorizations)
from .exact import MathError, SingularLeadingMinor, fmt
from .measures import load_measure, moment_matrix
from .mop import build_families, recursion_matrices

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _max_n() -> int:
    raw = os.environ.get("MOP_MAX_N", "64")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"MOP_MAX_N must be an integer, got {raw!r}") from None


def _check_n(n: int) -> int:
    if n < 1:
        raise UsageError("n_trunc must be at least 1")
    cap = _max_n()
    if n > cap:
        raise UsageError(f"n_trunc {n} exceeds MOP_MAX_N={cap}")
    return n


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _write(path, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def _fraction_list(s: str) -> tuple:
    return tuple(_fraction(t) for t in s.split(","))


def _diagnostic(err: MathError) -> dict:
    out = {"error": type(err).__name__, "message": str(err)}
    if isinstance(err, PerturbedSingular):
        out.update(condition="existence of the transformed orthogonality",
                   side=err.kind, index=err.index, minor_order=err.k)
        if err.tau_index is not None:
            out["tau"] = {"family": "B" if err.kind == "B-side" else "A",
                          "index": [err.index, err.tau_index]}
    elif isinstance(err, TauZero):
        out.update(condition="existence of the transformed orthogonality",
                   tau={"family": err.which, "index": list(err.index)})
    elif isinstance(err, SingularLeadingMinor):
        out.update(condition="Gauss-Borel factorization needs nonzero leading principal minors",
                   minor_order=err.k)
    return out


# -- commands -----------------------------------------------------------------

def cmd_moments(args) -> int:
    mu = load_measure(args.measure)
    n = _check_n(args.n)
    m = moment_matrix(mu, n, n)
    if args.emit == "csv":
        rows = ["row,col,value"] + [f"{i},{j},{fmt(m[i, j])}" for i in range(n) for j in range(n)]
        _write(args.out, "\n".join(rows) + "\n")
    else:
        _write(args.out, _dumps({"q": mu.q, "p": mu.p, "N": n, "moments": m.to_json()}))
    return EXIT_OK


def cmd_families(args) -> int:
    _no_csv(args)
    mu = load_measure(args.measure)
    fam = build_families(mu, _check_n(args.n))
    _write(args.out, _dumps(fam.to_json()))
    return EXIT_OK


def _recursion_json(rec, mu) -> dict:
    return {"N": rec.N, "q": mu.q, "p": mu.p, "diagonals": rec.T.to_json()}


def cmd_recursion(args) -> int:
    _no_csv(args)
    mu = load_measure(args.measure)
    n = _check_n(args.n)
    rec = recursion_matrices(mu, n)
    _write(args.out, _dumps(_recursion_json(rec, mu)))
    return EXIT_OK


def cmd_bidiag(args) -> int:
    from .verify import check_instance

    mu = load_measure(args.measure)
    n = _check_n(args.n)
    fam = build_families(mu, n)
    chain = christoffel_chain(mu, n, perturbed_factorizations(mu, n))
    verified = all(check_instance(mu, n).values())
    if args.dump_families:
        _write(args.dump_families, _dumps(fam.to_json()))
    if args.dump_recursion:
        _write(args.dump_recursion, _dumps(_recursion_json(recursion_matrices(mu, n, fam), mu)))
    if args.emit_csv:
        _write(args.emit_csv, chain_to_csv(chain))
    text = chain_to_csv(chain) if args.emit == "csv" else _dumps(chain.to_json(verified))
    _write(args.out, text)
    return EXIT_OK if verified else EXIT_MISMATCH


def _hahn_chain(params, nt: int) -> BidiagonalChain:
    from .hahn import hahn2_chain, hahn3_chain, hahn_chain_from_values
    if params.p == 2:
        return hahn2_chain(params, nt)
    if params.p == 3:
        return hahn3_chain(params, nt)
    return hahn_chain_from_values(params, nt)


def hahn_report(params, nt: int) -> list:
    """Closed forms against the generic pipeline on the Hahn measure."""
    from .hahn import hahn2_chain_alt, hahn_measure, recurrence_table

    mu = hahn_measure(params)
    oracle = christoffel_chain(mu, nt)
    T = recursion_matrices(mu, nt).T_matrix
    table = recurrence_table(params, nt)
    rows = [("recurrence coefficients", all(v == T[n, n - j] for (j, n), v in table.items())),
            ("closed-form chain", _hahn_chain(params, nt).agrees_with(oracle))]
    if params.p == 2:
        rows.append(("alternative closed-form chain", hahn2_chain_alt(params, nt).agrees_with(oracle)))
    return rows


def cmd_hahn(args) -> int:
    from .hahn import HahnParams, recurrence_table

    nt = _check_n(args.ntrunc)
    if len(args.alphas) != args.p:
        raise UsageError(f"--p {args.p} needs {args.p} alphas, got {len(args.alphas)}")
    try:
        params = HahnParams(args.alphas, args.beta, args.nsupp)
    except ValueError as e:
        raise UsageError(str(e)) from None
    chain = _hahn_chain(params, nt)
    report = hahn_report(params, nt) if args.verify_against == "generic" else []
    passed = all(ok for _, ok in report)
    if args.emit == "csv":
        _write(args.out, chain_to_csv(chain))
    else:
        out = {
            "params": {"p": params.p, "alphas": [fmt(a) for a in params.alphas],
                       "beta": fmt(params.beta), "n_supp": params.n_supp, "n_trunc": nt},
            "chain": chain.to_json(passed if report else None),
            "recurrence": [{"j": j, "n": n, "value": fmt(v)}
                           for (j, n), v in sorted(recurrence_table(params, nt).items(), key=lambda t: (t[0][1], t[0][0]))],
        }
        if report:
            out["verification"] = {"against": "generic", "all_pass": passed,
                                   "checks": [{"check": lab, "passed": ok} for lab, ok in report]}
        _write(args.out, _dumps(out))
    return EXIT_OK if passed else EXIT_MISMATCH


def cmd_verify_all(args) -> int:
    from .verify import format_table, hahn_fixture_checks, run_random

    if args.cases < 0:
        raise UsageError("--cases must be nonnegative")
    rep = run_random(args.cases, args.seed)
    rows = hahn_fixture_checks()
    _write(args.out, format_table(rep, rows))
    return EXIT_OK if rep.ok and all(ok for _, ok in rows) else EXIT_MISMATCH


def _no_csv(args) -> None:
    if args.emit == "csv":
        raise UsageError(f"{args.command} has no CSV form")


COMMANDS = {"moments": cmd_moments, "families": cmd_families, "recursion": cmd_recursion,
            "bidiag": cmd_bidiag, "hahn": cmd_hahn, "verify-all": cmd_verify_all}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mopbidiag", description="Exact bidiagonal factorization of banded recursion matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, measure=True):
        if measure:
            p.add_argument("--measure", required=True, help="measure matrix JSON file")
            p.add_argument("--n", type=int, required=True, help="truncation size")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--emit", choices=("json", "csv"), default="json")

    for name in ("moments", "families", "recursion"):
        common(sub.add_parser(name))
    b = sub.add_parser("bidiag")
    common(b)
    b.add_argument("--emit-csv", metavar="PATH", help="also write the chain as CSV")
    b.add_argument("--dump-families", metavar="PATH")
    b.add_argument("--dump-recursion", metavar="PATH")

    h = sub.add_parser("hahn")
    common(h, measure=False)
    h.add_argument("--p", type=int, required=True, choices=(1, 2, 3))
    h.add_argument("--alphas", type=_fraction_list, required=True, help="comma-separated, e.g. 1/2,1/5")
    h.add_argument("--beta", type=_fraction, required=True)
    h.add_argument("--nsupp", type=int, required=True, help="support is {0, ..., nsupp}")
    h.add_argument("--ntrunc", type=int, required=True)
    h.add_argument("--verify-against", choices=("generic",))

    v = sub.add_parser("verify-all")
    v.add_argument("--cases", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except MathError as e:
        print(json.dumps(_diagnostic(e), indent=2), file=sys.stderr)
        return EXIT_MATH
    except (OSError, KeyError, ValueError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
