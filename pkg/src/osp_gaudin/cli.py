"""Command-line front end: ``spectrum``, ``verify``, ``count`` and ``basis``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 when the
requested chain is longer than ``--max-sites``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import List, Optional

from .coproduct import HamiltonianParams
from .eigenbasis import DEFAULT_MAX_SITES, enumerate_label_chains, full_spectrum, irrep_counts, irrep_dimension, kernel_state, ladder_states
from .exact_linalg import StateVector, format_scalar, parse_scalar
from .oracle import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class GuardError(Exception):
    pass


def _scalar_arg(text: str):
    try:
        return parse_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _sites_arg(text: str) -> int:
    try:
        n = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if n < 1:
        raise argparse.ArgumentTypeError("--sites must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="osp-gaudin",
        description="Exact eigenbasis of the osp(1,2) spin-1/2 Gaudin magnet.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, guarded=True):
        p.add_argument("--sites", type=_sites_arg, required=True, help="number of sites N")
        p.add_argument("--out", help="write output here instead of stdout")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if guarded:
            p.add_argument("--max-sites", type=_sites_arg, default=DEFAULT_MAX_SITES,
                           help="refuse to build matrices beyond this many sites (default %(default)s)")
        return p

    p = common(sub.add_parser("spectrum", help="all 3^N eigenstates with eigenvalues"))
    p.add_argument("--lambda", dest="lam", type=_scalar_arg, default=1)
    p.add_argument("--mu", type=_scalar_arg, default=1)

    p = common(sub.add_parser("verify", help="run brute-force verification suites"))
    p.add_argument("--suite", default="all", help=f"one of {', '.join(SUITES)}, all")
    p.add_argument("--lambda", dest="lam", type=_scalar_arg, default=None,
                   help="also verify this Hamiltonian (default: three fixed samples)")
    p.add_argument("--mu", type=_scalar_arg, default=None)

    common(sub.add_parser("count", help="irrep multiplicities from the Clebsch-Gordan recurrence"), guarded=False)

    p = common(sub.add_parser("basis", help="kernel states or the full ladder basis"))
    p.add_argument("--kernel-only", action="store_true")
    return parser


def _vector_json(v: StateVector) -> List[dict]:
    return [{"index": i, "coeff": format_scalar(c)} for i, c in v.items()]


def _vector_csv(v: StateVector) -> str:
    return ";".join(f"{i}:{format_scalar(c)}" for i, c in v.items())


def _spin_key(spin: Fraction) -> str:
    return format_scalar(spin)


def _guard(args) -> None:
    if args.sites > args.max_sites:
        raise GuardError(
            f"--sites {args.sites} exceeds --max-sites {args.max_sites} "
            f"({3 ** args.sites} dimensional space); raise --max-sites to proceed"
        )


def _csv_text(header: List[str], rows: List[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def spectrum_payload(n_sites: int, params: HamiltonianParams, max_sites: int = DEFAULT_MAX_SITES) -> dict:
    states = []
    for rec in full_spectrum(n_sites, params, max_sites):
        states.append({
            "k": rec.label.k,
            "chain": rec.label.chain.to_list(),
            "h_eigenvalue": rec.h_eigenvalue,
            "casimir_eigenvalues": {str(h): v for h, v in sorted(rec.casimir_eigenvalues.items())},
            "hamiltonian_eigenvalue": format_scalar(rec.hamiltonian_eigenvalue),
            "vector": _vector_json(rec.vector),
        })
    return {
        "sites": n_sites,
        "lambda": format_scalar(params.lam),
        "mu": format_scalar(params.mu),
        "states": states,
    }


def basis_payload(n_sites: int, kernel_only: bool) -> dict:
    states = []
    for chain in enumerate_label_chains(n_sites):
        pairs = [(chain.m, kernel_state(chain))] if kernel_only else [(lab.k, v) for lab, v in ladder_states(chain)]
        for k, v in pairs:
            states.append({"k": k, "chain": chain.to_list(), "label": chain.label(), "vector": _vector_json(v)})
    return {"sites": n_sites, "kernel_only": kernel_only, "states": states}


def count_payload(n_sites: int) -> dict:
    counts = irrep_counts(n_sites)
    total = sum(c * irrep_dimension(s) for s, c in counts.items())
    if total != 3**n_sites:
        raise AssertionError(f"dimension identity broken: {total} != {3 ** n_sites}")
    return {
        "sites": n_sites,
        "irreps": {_spin_key(s): c for s, c in counts.items()},
        "kernel_dim": sum(counts.values()),
        "total_dim": 3**n_sites,
    }


def _cmd_spectrum(args) -> tuple[int, str]:
    _guard(args)
    payload = spectrum_payload(args.sites, HamiltonianParams(args.lam, args.mu), args.max_sites)
    if args.format == "json":
        return EXIT_OK, json.dumps(payload, indent=1)
    rows = [
        [
            json.dumps(s["chain"], separators=(",", ":")),
            s["k"],
            s["h_eigenvalue"],
            ";".join(f"{h}:{v}" for h, v in s["casimir_eigenvalues"].items()),
            s["hamiltonian_eigenvalue"],
            ";".join(f"{e['index']}:{e['coeff']}" for e in s["vector"]),
        ]
        for s in payload["states"]
    ]
    header = ["chain", "k", "h_eigenvalue", "casimir_eigenvalues", "hamiltonian_eigenvalue", "vector"]
    return EXIT_OK, _csv_text(header, rows)


def _cmd_basis(args) -> tuple[int, str]:
    _guard(args)
    payload = basis_payload(args.sites, args.kernel_only)
    if args.format == "json":
        return EXIT_OK, json.dumps(payload, indent=1)
    rows = [
        [json.dumps(s["chain"], separators=(",", ":")), s["k"], s["label"],
         ";".join(f"{e['index']}:{e['coeff']}" for e in s["vector"])]
        for s in payload["states"]
    ]
    return EXIT_OK, _csv_text(["chain", "k", "label", "vector"], rows)


def _cmd_count(args) -> tuple[int, str]:
    payload = count_payload(args.sites)
    if args.format == "json":
        return EXIT_OK, json.dumps(payload, indent=1)
    rows = [[spin, c] for spin, c in payload["irreps"].items()]
    return EXIT_OK, _csv_text(["spin", "count"], rows)


def _cmd_verify(args) -> tuple[int, str]:
    if args.suite != "all" and args.suite not in SUITES:
        raise argparse.ArgumentTypeError(f"unknown suite {args.suite!r}")
    _guard(args)
    if args.sites < 2 and args.suite != "kernel":
        raise argparse.ArgumentTypeError("verification suites need --sites >= 2")
    from .oracle import DEFAULT_PARAMS

    params = DEFAULT_PARAMS
    if args.lam is not None or args.mu is not None:
        params = (HamiltonianParams(1 if args.lam is None else args.lam, 1 if args.mu is None else args.mu),)
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(name, args.sites, params) for name in names]
    ok = all(r.passed for r in reports)
    code = EXIT_OK if ok else EXIT_FAILED
    if args.format == "json":
        payload = {"sites": args.sites, "reports": [r.to_dict() for r in reports], "pass": ok}
        return code, json.dumps(payload, indent=1)
    rows = [[r.suite, c.name, c.passed, c.witness or ""] for r in reports for c in r.checks]
    return code, _csv_text(["suite", "name", "pass", "witness"], rows)


COMMANDS = {"spectrum": _cmd_spectrum, "verify": _cmd_verify, "count": _cmd_count, "basis": _cmd_basis}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, text = COMMANDS[args.command](args)
    except argparse.ArgumentTypeError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardError as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return EXIT_GUARD
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
