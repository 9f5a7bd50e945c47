"""Command-line surface for the square-avoidance toolkit.

Eight subcommands map onto the library modules:

* ``witness``   - minimal square witness for a progression, or a
                  square-free certificate (exit 1 when a witness exists).
* ``verify``    - the same question answered twice (certified search plus
                  guarded brute force) with the agreement recorded.
* ``construct`` - the small-square constructive witness with its full
                  arithmetic trace.
* ``reduce``    - the gcd reduction chain, one record per step.
* ``lower``     - the non-residue instance for a prime with its machine
                  certificate.
* ``scan-nqr``  - least non-residues over primes 1 mod 4, with records.
* ``exponent``  - the piecewise exponent surface on a grid plus its
                  supremum row.
* ``sweep``     - the extremal-search harness over candidate families.

All integer input and output travels as decimal strings of arbitrary
length (JSON numbers would silently lose precision past 2^53).  Records
go to --output (default stdout) as JSON lines or CSV; a short human
summary goes to stderr.  Exit codes: 0 success/certified, 1 witness
found, 2 usage or domain error.  Field names and columns are documented
in docs/schema.md and stamped with schema_version.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .arith import DomainError, TooLarge
from .bounds import ExponentPoint, case_exponent, exponent_supremum
from .formats import SCHEMA_VERSION, enc_int, enc_rat
from .lattice import reduce_recursive
from .lowerbound import (
    build_instance,
    least_nonresidue_scan,
    residue_certificate,
    size_vs_t,
)
from .progression import (
    BRUTE_FORCE_GUARD,
    TwoDAP,
    brute_force_witness,
    certify_square_free,
    find_square_witness,
    is_proper,
)
from .small_squares import balanced_n, construct_small_square
from .sweep import FAMILIES, SweepConfig, sweep

F = Fraction

EXIT_OK = 0
EXIT_WITNESS = 1
EXIT_ERROR = 2


def _int(s: str) -> int:
    return int(s, 10)


def _rational(s: str) -> Fraction:
    return Fraction(s)


def _bool(x: bool) -> str:
    return "true" if x else "false"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", default=None, help="write records here instead of stdout")
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--threads", type=int, default=1, help="worker shards for the sweep")
    common.add_argument("--seed", type=_int, default=0, help="seed for randomized search")
    common.add_argument(
        "--guard",
        type=_int,
        default=BRUTE_FORCE_GUARD,
        help="enumeration cap for brute-force verification",
    )

    p = argparse.ArgumentParser(
        prog="sqavoid",
        description="exact arithmetic for square-avoiding two-dimensional progressions",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def box_args(sp):
        sp.add_argument("--q1", type=_int, required=True)
        sp.add_argument("--q2", type=_int, required=True)
        sp.add_argument("--x1", type=_rational, required=True)
        sp.add_argument("--x2", type=_rational, required=True)
        sp.add_argument("--t", type=_int, required=True)

    box_args(sub.add_parser("witness", parents=[common], help="minimal square witness"))
    box_args(sub.add_parser("verify", parents=[common], help="dual-route square-freeness check"))

    sp = sub.add_parser("construct", parents=[common], help="small-square witness with trace")
    sp.add_argument("--q1", type=_int, required=True)
    sp.add_argument("--q2", type=_int, required=True)
    sp.add_argument("--n-cap", type=_int, default=None, help="root budget; default balances the steps")

    sp = sub.add_parser("reduce", parents=[common], help="gcd reduction chain")
    box_args(sp)
    sp.add_argument("--c0", type=_int, default=16, help="small-gcd divide-out cutoff")

    sp = sub.add_parser("lower", parents=[common], help="non-residue instance for a prime")
    sp.add_argument("--p", type=_int, required=True)

    sp = sub.add_parser("scan-nqr", parents=[common], help="least non-residue scan")
    sp.add_argument("--p-max", type=_int, required=True)
    sp.add_argument("--p-min", type=_int, default=13)

    sp = sub.add_parser("exponent", parents=[common], help="exponent surface and supremum")
    sp.add_argument("--grid", type=_int, required=True)
    sp.add_argument("--b-max", type=_rational, default=None)
    sp.add_argument("--component", choices=("overall", "case1", "case2"), default="overall")

    sp = sub.add_parser("sweep", parents=[common], help="extremal-search harness")
    sp.add_argument("--t", type=_int, required=True)
    sp.add_argument(
        "--families",
        default=",".join(FAMILIES),
        help=f"comma-separated subset of {{{','.join(FAMILIES)}}}",
    )
    sp.add_argument("--budget", type=_int, default=200)

    return p


# ------------------------------------------------------------- handlers


def _cmd_witness(args):
    a = TwoDAP(args.q1, args.q2, args.x1, args.x2)
    w = find_square_witness(a, args.t)
    base = a.to_json() | {"t": enc_int(args.t)}
    if w is not None:
        rec = {"kind": "Witness"} | base | w.to_json()
        return [rec], EXIT_WITNESS, f"witness ({w.x1}, {w.x2}, {w.n})"
    cert = certify_square_free(a, args.t)
    rec = {"kind": "SquareFree"} | base | {"n_max": enc_int(cert.n_max)}
    return [rec], EXIT_OK, f"square-free up to {args.t} (roots to {cert.n_max})"


def _cmd_verify(args):
    a = TwoDAP(args.q1, args.q2, args.x1, args.x2)
    w = find_square_witness(a, args.t)
    base = a.to_json() | {"t": enc_int(args.t)}
    try:
        bw = brute_force_witness(a, args.t, guard=args.guard)
        brute = "agree" if bw == w else "MISMATCH"
    except TooLarge:
        bw, brute = None, "skipped-guard"
    if brute == "MISMATCH":
        rec = {"kind": "Error", "error": "RouteMismatch"} | base | {
            "certified_route": json.dumps(None if w is None else w.to_json()),
            "brute_route": json.dumps(None if bw is None else bw.to_json()),
        }
        return [rec], EXIT_ERROR, "internal disagreement between routes"
    if w is not None:
        rec = {"kind": "Witness"} | base | w.to_json() | {"brute_force": brute}
        return [rec], EXIT_WITNESS, f"witness ({w.x1}, {w.x2}, {w.n}); brute force: {brute}"
    rec = {"kind": "SquareFree"} | base | {
        "n_max": enc_int(certify_square_free(a, args.t).n_max),
        "brute_force": brute,
    }
    return [rec], EXIT_OK, f"square-free up to {args.t}; brute force: {brute}"


def _cmd_construct(args):
    n_cap = args.n_cap if args.n_cap is not None else balanced_n(args.q1, args.q2)
    trace = construct_small_square(args.q1, args.q2, n_cap)
    rec = {"kind": "SmallSquare"} | trace.to_json()
    rec["witness"] = json.dumps(rec["witness"], sort_keys=True)
    w = trace.witness
    return [rec], EXIT_OK, f"n = {trace.n} <= {n_cap}: ({w.x1})*q1 + ({w.x2})*q2 = {trace.n}^2"


def _cmd_reduce(args):
    chain = reduce_recursive(args.q1, args.q2, args.x1, args.x2, args.t, c0=args.c0)
    records = []
    for i, step in enumerate(chain):
        rec = {"kind": "ReductionStep", "index": enc_int(i)} | step.to_json()
        for key in ("u", "v"):
            rec[key] = json.dumps(rec[key])
        records.append(rec)
    records.append(
        {
            "kind": "ReductionChain",
            "steps": enc_int(len(chain)),
            "termination": chain.termination,
            "final_q1": enc_int(chain.final_q1),
            "final_q2": enc_int(chain.final_q2),
            "final_x1bound": enc_rat(chain.final_x1bound),
            "final_x2bound": enc_rat(chain.final_x2bound),
            "final_t": enc_int(chain.final_t),
        }
    )
    return records, EXIT_OK, f"{len(chain)} step(s), terminated: {chain.termination}"


def _cmd_lower(args):
    inst = build_instance(args.p)
    cert = residue_certificate(inst)
    records = [
        {"kind": "LowerBound"}
        | inst.to_json()
        | {
            "certificate_ok": _bool(cert.ok),
            "size_vs_t": enc_rat(size_vs_t(inst)),
            "proper": _bool(is_proper(inst.progression)),
        }
    ]
    for name, passed, detail in cert.steps:
        records.append(
            {"kind": "CertificateStep", "step": name, "passed": _bool(passed), "detail": detail}
        )
    code = EXIT_OK if cert.ok else EXIT_ERROR
    return records, code, f"p={inst.p}: size {inst.size}, certificate {'ok' if cert.ok else 'FAILED'}"


def _cmd_scan_nqr(args):
    recs = least_nonresidue_scan(args.p_max, args.p_min)
    records = [
        {
            "kind": "NonResidue",
            "p": enc_int(r.p),
            "nqr": enc_int(r.nqr),
            "is_record": _bool(r.is_record),
            "sq_ok": _bool(r.sq_ok),
            "root_ratio": f"{r.root_ratio:.6f}",
            "burgess_ratio": f"{r.burgess_ratio:.6f}",
        }
        for r in recs
    ]
    if recs:
        top = max(recs, key=lambda r: (r.nqr, -r.p))
        records.append(
            {
                "kind": "NonResidueSummary",
                "count": enc_int(len(recs)),
                "max_nqr": enc_int(top.nqr),
                "argmax_p": enc_int(top.p),
                "max_burgess_ratio": f"{max(r.burgess_ratio for r in recs):.6f}",
            }
        )
    return records, EXIT_OK, f"{len(recs)} primes scanned"


def _cmd_exponent(args):
    if args.grid < 1:
        raise DomainError(f"grid resolution must be >= 1, got {args.grid}")
    records = []
    for i in range(args.grid + 1):
        a = F(i, args.grid)
        for j in range(i, args.grid + 1):
            b = F(j, args.grid)
            if args.b_max is not None and b > args.b_max:
                continue
            rep = case_exponent(ExponentPoint(a, b))
            value = {"overall": rep.exponent, "case1": rep.case1, "case2": rep.case2}[
                args.component
            ]
            label = {"overall": rep.case_label, "case1": rep.case1_label, "case2": rep.case2_label}[
                args.component
            ]
            records.append(
                {
                    "kind": "ExponentPoint",
                    "a": enc_rat(a),
                    "b": enc_rat(b),
                    "exponent": enc_rat(value),
                    "case": label,
                }
            )
    sup, points = exponent_supremum(args.grid, b_max=args.b_max, component=args.component)
    # The bound is flat on a whole region; the distinguished corner is the
    # attaining point of maximal (b, a), past which the exponent drops.
    corner = max(points, key=lambda p: (p.b, p.a))
    records.append(
        {
            "kind": "ExponentSupremum",
            "supremum": enc_rat(sup),
            "grid": enc_int(args.grid),
            "component": args.component,
            "b_max": "" if args.b_max is None else enc_rat(args.b_max),
            "argmax": f"{enc_rat(corner.a)},{enc_rat(corner.b)}",
            "argmax_count": enc_int(len(points)),
        }
    )
    return records, EXIT_OK, f"supremum {sup} over {len(records) - 1} grid points"


def _cmd_sweep(args):
    config = SweepConfig(
        t=args.t,
        families=tuple(f for f in args.families.split(",") if f),
        budget=args.budget,
        seed=args.seed,
        threads=args.threads,
    )
    result = sweep(config)
    records = []
    for fb in result.family_bests:
        a = fb.progression
        records.append(
            {
                "kind": "FamilyBest",
                "family": fb.family,
                "size": enc_int(fb.size),
            }
            | a.to_json()
        )
    best = result.best
    records.append(
        {
            "kind": "SweepBest",
            "family": best.family,
            "size": enc_int(best.size),
            "t": enc_int(config.t),
            "ratio_to_T_20_27": result.ratio_to_t_20_27,
            "ratio_to_sqrtT_logT": result.ratio_to_sqrt_t_log_t,
        }
        | best.progression.to_json()
    )
    return (
        records,
        EXIT_OK,
        f"best: {best.family} size {best.size} at ({best.progression.q1}, {best.progression.q2})",
    )


_HANDLERS = {
    "witness": _cmd_witness,
    "verify": _cmd_verify,
    "construct": _cmd_construct,
    "reduce": _cmd_reduce,
    "lower": _cmd_lower,
    "scan-nqr": _cmd_scan_nqr,
    "exponent": _cmd_exponent,
    "sweep": _cmd_sweep,
}


# ------------------------------------------------------------- emission


def _emit(records: list[dict], fmt: str, stream) -> None:
    stamped = [{"schema_version": SCHEMA_VERSION} | r for r in records]
    if fmt == "jsonl":
        for rec in stamped:
            stream.write(json.dumps(rec, sort_keys=True))
            stream.write("\n")
        return
    columns: list[str] = []
    for rec in stamped:
        for key in rec:
            if key not in columns:
                columns.append(key)
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for rec in stamped:
        writer.writerow([str(rec.get(c, "")) for c in columns])


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        records, code, summary = _HANDLERS[args.command](args)
    except (DomainError, RuntimeError, ValueError, ZeroDivisionError) as e:
        records = [{"kind": "Error", "error": type(e).__name__, "message": str(e)}]
        code, summary = EXIT_ERROR, f"error: {e}"
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            _emit(records, args.format, fh)
    else:
        _emit(records, args.format, sys.stdout)
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
