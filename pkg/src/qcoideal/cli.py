"""Command-line front end for batch computation and verification.

Subcommands: validate-pair, compute, bar-exists, canonical, nu-atlas,
verify.  Inputs are JSON files (or inline JSON strings); Cartan data may
also be given as ``type:rank`` shorthand such as ``A:3`` or
``affine:A:1``.  Every command prints human-readable text and, with
``--out``, writes a deterministic ``report.json`` (byte-identical for
identical inputs and seed).

Exit codes: 0 success / verdict exists, 1 verdict fails, 2 input error,
3 engine inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .barcheck import (
    EngineInconsistencyError,
    OutOfScopeError,
    bar_exists,
    canonical_params,
    nu_sign,
)
from .cartan import (
    AdmissibleError,
    FiniteTypeError,
    admissible_violations,
    cartan_datum,
    datum_from_json,
    datum_to_json,
    enumerate_admissible,
    pair_from_json,
    pair_to_json,
)
from .grammar import ScalarParseError, element_to_json, element_to_text, parse_scalar, scalar_to_text
from .qsp import (
    MembershipError,
    NoClosedFormulaError,
    QSPParameters,
    b_generator,
    c_closed,
    c_oracle,
    context_for,
    w_element,
    z_element,
)
from .suites import SUITES, run_suite
from .uqg import ZeroTestGuardError


class InputError(ValueError):
    pass


def _load_json_arg(text):
    """Accept a path to a JSON file or an inline JSON string."""
    if text is None:
        raise InputError("missing required JSON input")
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("["):
        return json.loads(stripped)
    if not os.path.exists(text):
        raise InputError(f"no such file: {text}")
    with open(text, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_datum(arg):
    if arg is None:
        raise InputError("a Cartan datum is required (--cartan)")
    stripped = arg.strip()
    if not stripped.startswith("{") and ":" in stripped and not os.path.exists(arg):
        head, _, rank = stripped.rpartition(":")
        return cartan_datum(head, int(rank))
    return datum_from_json(_load_json_arg(arg))


def _load_pair(datum, arg):
    if arg is None:
        raise InputError("an admissible pair is required (--pair)")
    return pair_from_json(datum, _load_json_arg(arg))


def _load_params(args):
    """Build QSPParameters from --params (optionally with embedded cartan/pair)."""
    obj = _load_json_arg(args.params) if args.params else {}
    if "cartan" in obj:
        datum = datum_from_json(obj["cartan"])
    else:
        datum = _load_datum(args.cartan)
    if "pair" in obj:
        pair = pair_from_json(datum, obj["pair"])
    else:
        pair = _load_pair(datum, args.pair)
    c = {int(k): parse_scalar(v) for k, v in obj.get("c", {}).items()}
    s = {int(k): parse_scalar(v) for k, v in obj.get("s", {}).items()}
    return datum, pair, QSPParameters(pair, c, s)


def _emit(args, text_lines, report):
    for line in text_lines:
        print(line)
    if args.out:
        payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
        path = args.out
        if os.path.isdir(path):
            path = os.path.join(path, "report.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)


def _cmd_validate_pair(args):
    datum = _load_datum(args.cartan)
    obj = _load_json_arg(args.pair)
    X = [int(x) for x in obj.get("X", [])]
    tau = {lab: lab for lab in datum.labels}
    for i, j in obj.get("tau", []):
        tau[int(i)] = int(j)
        tau[int(j)] = int(i)
    violations = admissible_violations(datum, X, tau)
    report = {
        "command": "validate-pair",
        "cartan": datum_to_json(datum),
        "pair": {"X": sorted(X), "tau": sorted([i, j] for i, j in tau.items() if i < j)},
        "valid": not violations,
        "violations": violations,
    }
    lines = ["valid" if not violations else "invalid:"] + [
        f"  - {v}" for v in violations
    ]
    _emit(args, lines, report)
    return 0 if not violations else 1


def _cmd_compute(args):
    datum, pair, params = _load_params(args)
    ctx = context_for(pair)
    what = args.what
    i = args.i
    j = args.j
    if i is None:
        raise InputError("--i is required for compute")
    if what == "Zi":
        elem = z_element(ctx, i)
    elif what == "Bi":
        elem = b_generator(params, i)
    elif what == "Wij":
        if j is None:
            raise InputError("--j is required for Wij")
        elem = w_element(ctx, i, j)
    elif what == "Cij-closed":
        if j is None:
            raise InputError("--j is required for Cij-closed")
        elem = c_closed(params, i, j)
    elif what == "Cij-oracle":
        if j is None:
            raise InputError("--j is required for Cij-oracle")
        elem = c_oracle(params, i, j)
    else:
        raise InputError(f"unknown compute target {what!r}")
    text = element_to_text(elem)
    report = {
        "command": "compute",
        "what": what,
        "i": i,
        "j": j,
        "element_text": text,
        "element": element_to_json(elem),
    }
    _emit(args, [text], report)
    return 0


def _cmd_bar_exists(args):
    datum, pair, params = _load_params(args)
    rep = bar_exists(params)
    lines = [f"verdict: {rep.verdict}"]
    if rep.failing_nodes:
        lines.append("failing nodes: " + ", ".join(map(str, sorted(rep.failing_nodes))))
    for i in sorted(rep.nu):
        lines.append(f"  node {i}: nu = {rep.nu[i]:+d}, ell = {scalar_to_text(rep.ell[i])}")
    report = {
        "command": "bar-exists",
        "pair": pair_to_json(pair),
        "report": rep.to_json(),
    }
    _emit(args, lines, report)
    return 0 if rep.exists else 1


def _cmd_canonical(args):
    datum = _load_datum(args.cartan)
    pair = _load_pair(datum, args.pair)
    d = canonical_params(pair)
    as_text = {str(i): scalar_to_text(v) for i, v in sorted(d.items())}
    lines = [f"c_{i} = {t}" for i, t in sorted(as_text.items(), key=lambda kv: int(kv[0]))]
    report = {"command": "canonical", "pair": pair_to_json(pair), "c": as_text}
    _emit(args, lines, report)
    return 0


def _cmd_nu_atlas(args):
    rows = []
    lines = []
    specs = []
    for fam in (args.families or "A,B,C,D,G").split(","):
        fam = fam.strip()
        if not fam:
            continue
        if fam.startswith("affine"):
            specs.append((fam, args.max_rank))
        else:
            specs.append((fam, args.max_rank))
    for fam, max_rank in specs:
        min_rank = {"B": 2, "C": 2, "D": 4, "E": 6, "F": 4, "G": 2}.get(fam, 1)
        max_allowed = {"G": 2, "F": 4, "E": 8}.get(fam, max_rank)
        for rank in range(min_rank, min(max_rank, max_allowed) + 1):
            try:
                datum = cartan_datum(fam, rank)
            except ValueError:
                continue
            for pair in enumerate_admissible(datum):
                ctx = context_for(pair)
                free = sorted(set(datum.labels) - pair.X)
                for i in free:
                    nu = nu_sign(ctx, i)
                    rows.append({
                        "type": fam,
                        "rank": rank,
                        "X": sorted(pair.X),
                        "tau": sorted([a, b] for a, b in pair.tau.items() if a < b),
                        "node": i,
                        "nu": nu,
                    })
    rows.sort(key=lambda r: (r["type"], r["rank"], str(r["X"]), str(r["tau"]), r["node"]))
    for r in rows:
        lines.append(
            f"{r['type']}{r['rank']}  X={r['X']}  tau={r['tau']}  node {r['node']}: nu = {r['nu']:+d}"
        )
    if not rows:
        lines.append("no admissible pairs with free nodes in range")
    report = {"command": "nu-atlas", "rows": rows}
    _emit(args, lines, report)
    return 0


def _cmd_verify(args):
    if args.suite not in SUITES:
        raise InputError(
            f"unknown suite {args.suite!r}; available: {', '.join(sorted(SUITES))}"
        )
    ok, checks = run_suite(
        args.suite, seed=args.seed, max_bucket=args.max_bucket, jobs=args.jobs
    )
    lines = []
    for c in checks:
        status = "pass" if c["ok"] else "FAIL"
        lines.append(f"[{status}] {c['id']}" + (f"  ({c['detail']})" if c["detail"] else ""))
    lines.append(f"suite {args.suite}: {'PASS' if ok else 'FAIL'} ({len(checks)} checks)")
    report = {
        "command": "verify",
        "suite": args.suite,
        "seed": args.seed,
        "passed": ok,
        "checks": checks,
    }
    _emit(args, lines, report)
    return 0 if ok else 1


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="qcoideal",
        description="Exact computations in quantum symmetric pair coideal subalgebras",
    )
    ap.add_argument("--cartan", help="Cartan datum: JSON file/string or type:rank (e.g. A:3)")
    ap.add_argument("--pair", help="admissible pair JSON: {\"X\": [...], \"tau\": [[i,j],...]}")
    ap.add_argument("--params", help="parameter JSON: {cartan, pair, c: {node: scalar}, s: {...}}")
    ap.add_argument("--out", help="write a deterministic JSON report to this path")
    ap.add_argument("--jobs", type=int, default=1, help="parallel workers for verify sweeps")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    ap.add_argument(
        "--max-bucket",
        type=int,
        default=10 ** 6,
        help="dual-word evaluation guard per graded bucket of the zero test",
    )
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("validate-pair", help="check admissibility of (X, tau)")
    pc = sub.add_parser("compute", help="compute a coideal element")
    pc.add_argument("--what", required=True,
                    choices=["Zi", "Wij", "Bi", "Cij-closed", "Cij-oracle"])
    pc.add_argument("--i", type=int)
    pc.add_argument("--j", type=int)
    sub.add_parser("bar-exists", help="decide existence of the intrinsic bar involution")
    sub.add_parser("canonical", help="canonical parameter family for a pair")
    pn = sub.add_parser("nu-atlas", help="tabulate nu over enumerated admissible pairs")
    pn.add_argument("--families", help="comma list of type letters (default A,B,C,D,G)")
    pn.add_argument("--max-rank", type=int, default=4)
    pv = sub.add_parser("verify", help="run a named verification suite")
    pv.add_argument("--suite", required=True)
    return ap


_COMMANDS = {
    "validate-pair": _cmd_validate_pair,
    "compute": _cmd_compute,
    "bar-exists": _cmd_bar_exists,
    "canonical": _cmd_canonical,
    "nu-atlas": _cmd_nu_atlas,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except EngineInconsistencyError as exc:
        print(f"engine inconsistency: {exc}", file=sys.stderr)
        return 3
    except (
        InputError,
        AdmissibleError,
        MembershipError,
        NoClosedFormulaError,
        OutOfScopeError,
        FiniteTypeError,
        ScalarParseError,
        ZeroTestGuardError,
        json.JSONDecodeError,
        KeyError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
