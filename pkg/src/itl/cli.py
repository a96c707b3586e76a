"""Command-line interface.

Commands: ``list``, ``check-rel``, ``profile``, ``verify``, ``demo``.  Object
arguments accept inline JSON or ``@path`` to read a file.  Exit codes: 0 on
success (including relation verdicts of any kind and all-pass verification),
1 when verification fails or a counterexample shows up where none should
exist, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from .errors import ItlError
from .harness import run_all_suites, run_suite, search_counterexample
from .jsoncodec import decode_object, encode_object
from .kernel.measures import MeasurableSet
from .kernel.partitions import Partition
from .kernel.profiles import colored_count_profile, interval_count_profile, measure_profile
from .kernel.sets import OmegaSet
from .kernel.streams import UpStream
from .relations import evaluate_relation
from .tukey import (
    CONNECTIONS,
    Policy,
    build_connection,
    interleaved_pair,
    list_mutants,
    list_systems,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _load_json_arg(text: str):
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(text)


def _decode_arg(text: str):
    return decode_object(_load_json_arg(text))


def _write_atomic(path: str, payload: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".itl-report-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="itl",
        description="Exact decisions and verification for interval relational systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list systems and connections with metadata")

    pc = sub.add_parser("check-rel", help="evaluate one relation on two objects")
    pc.add_argument("--rel", required=True, help="relation identifier")
    pc.add_argument("--lhs", required=True, help="inline JSON or @path")
    pc.add_argument("--rhs", required=True, help="inline JSON or @path")
    pc.add_argument("--k", type=int, default=None)
    pc.add_argument("--eps", default=None, help="rational like 1/2")
    pc.add_argument("--quant", choices=["forall", "exists"], default=None)
    pc.add_argument("--horizon", type=int, default=256)

    pp = sub.add_parser("profile", help="print the eventual count profile")
    pp.add_argument("--f", required=True, help="stream, inline JSON or @path")
    pp.add_argument("--x", required=True,
                    help="set, partition or measurable set, inline JSON or @path")
    pp.add_argument("--n", type=int, default=10, help="raw counts to print")

    pv = sub.add_parser("verify", help="run connection suites")
    group = pv.add_mutually_exclusive_group(required=True)
    group.add_argument("--lemma", help="connection identifier")
    group.add_argument("--all", action="store_true")
    pv.add_argument("--trials", type=int, default=500)
    pv.add_argument("--seed", type=int, default=1)
    pv.add_argument("--horizon", type=int, default=4096)
    pv.add_argument("--evidence", type=int, default=25)
    pv.add_argument("--mutant", default=None, help="run a corrupted copy instead")
    pv.add_argument("--report", default=None, help="write the JSON report here")
    pv.add_argument("--format", choices=["json", "csv", "text"], default="text")

    pd = sub.add_parser("demo", help="reproduce a structural observation")
    pd.add_argument("remark", choices=["forall0", "col1_pair", "measure_sum_degenerate"])
    pd.add_argument("--budget", type=int, default=1000)
    pd.add_argument("--seed", type=int, default=1)

    return parser


def _cmd_list(_args) -> int:
    print("Relational systems:")
    for system in list_systems():
        print(f"  {system.sid:24s} x: {system.x_domain.describe():24s} "
              f"y: {system.y_domain.describe():24s} rel: {system.relation_id}")
        if system.metadata:
            print(f"      {system.metadata}")
    print()
    print("Tukey connections (use with verify --lemma):")
    for cid, spec in CONNECTIONS.items():
        conn = build_connection(cid)
        defaults = ",".join(f"{k}={v}" for k, v in sorted(spec.defaults.items()))
        print(f"  {cid:28s} {conn.source.sid} -> {conn.target.sid}"
              + (f"  [{defaults}]" if defaults else ""))
        print(f"      {conn.anchor}")
        muts = ", ".join(list_mutants(cid))
        if muts:
            print(f"      mutants: {muts}")
    return EXIT_OK


def _cmd_check_rel(args) -> int:
    params = {}
    if args.k is not None:
        params["k"] = args.k
    if args.eps is not None:
        params["eps"] = Fraction(args.eps)
    if args.quant is not None:
        params["quant"] = args.quant
    lhs = _decode_arg(args.lhs)
    rhs = _decode_arg(args.rhs)
    verdict = evaluate_relation(args.rel, params, lhs, rhs, horizon=args.horizon)
    print(json.dumps({"relation": args.rel,
                      "params": {k: str(v) for k, v in params.items()},
                      **verdict.to_json()}, sort_keys=True))
    return EXIT_OK


def _cmd_profile(args) -> int:
    f = _decode_arg(args.f)
    if not isinstance(f, UpStream):
        raise ItlError("--f must decode to a stream")
    other = _decode_arg(args.x)
    if isinstance(other, OmegaSet):
        profile = interval_count_profile(f, other)
    elif isinstance(other, Partition):
        profile = colored_count_profile(f, other)
    elif isinstance(other, MeasurableSet):
        profile = measure_profile(f, other)
    else:
        raise ItlError("--x must decode to a set, partition or measurable set")
    raw = [str(v) for v in profile.values(args.n)]
    print(json.dumps({
        "transient": profile.transient,
        "period": profile.period,
        "head": [str(v) for v in profile.head],
        "cycle": [str(v) for v in profile.cycle],
        "first_counts": raw,
    }, sort_keys=True))
    return EXIT_OK


def _suite_lines(reports, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"suites": [r.to_json() for r in reports]},
                          sort_keys=True, indent=2)
    if fmt == "csv":
        header = ("lemma,trials,pass,evidence,vacuous,fail,inconclusive,"
                  "insufficient,seed")
        rows = [header]
        for r in reports:
            rows.append(f"{r.lemma},{r.trials},{r.passed},{r.evidence},"
                        f"{r.vacuous},{r.fail},{r.inconclusive},"
                        f"{str(r.insufficient).lower()},{r.seed}")
        return "\n".join(rows)
    lines = []
    for r in reports:
        verdict = "FAIL" if r.fail else ("THIN" if r.insufficient else "ok")
        lines.append(
            f"{r.lemma:28s} trials={r.trials:5d} pass={r.passed:5d} "
            f"evidence={r.evidence:4d} vacuous={r.vacuous:5d} "
            f"fail={r.fail:3d} inconclusive={r.inconclusive:4d}  {verdict}")
    return "\n".join(lines)


def _cmd_verify(args) -> int:
    policy = Policy(horizon=args.horizon, evidence=args.evidence)
    if args.all:
        reports = run_all_suites(args.trials, args.seed, policy)
    else:
        if args.lemma not in CONNECTIONS:
            print(f"unknown connection {args.lemma!r}", file=sys.stderr)
            return EXIT_USAGE
        reports = [run_suite(args.lemma, args.trials, args.seed, policy,
                             mutant=args.mutant)]
    text = _suite_lines(reports, args.format)
    print(text)
    if args.report:
        payload = json.dumps({"suites": [r.to_json() for r in reports]},
                             sort_keys=True, indent=2)
        _write_atomic(args.report, payload)
    failing = sum(r.fail for r in reports)
    thin = any(r.insufficient for r in reports)
    if failing or thin:
        return EXIT_FAIL
    return EXIT_OK


def _cmd_demo(args) -> int:
    if args.remark == "forall0":
        result = search_counterexample("forall0_holds", args.budget, args.seed)
        print("Claim: no stream places every tail interval disjoint from an "
              "infinite set (threshold 0, eventually).")
        print(json.dumps(result, sort_keys=True))
        return EXIT_OK if not result["found"] else EXIT_FAIL
    if args.remark == "col1_pair":
        f, g = interleaved_pair(args.seed)
        print("Strictly interleaved pair:")
        print(json.dumps({"f": encode_object(f), "g": encode_object(g)},
                         sort_keys=True))
        result = search_counterexample("both_col1", args.budget, args.seed)
        print("Search for one partition serving both at one block per interval:")
        print(json.dumps(result, sort_keys=True))
        return EXIT_OK if not result["found"] else EXIT_FAIL
    # measure_sum_degenerate
    from .harness import GenParams as _GP, _gen_measurable, _gen_stream
    from .rand import Rng, split_seed
    from .relations import SumFinite, eval_measure_relation
    from .tukey import Domain

    gp = _GP()
    hits = 0
    for i in range(args.budget):
        rng = Rng(split_seed(args.seed, i))
        f = _gen_stream(rng.spawn(1), gp, Domain("stream"))
        y = _gen_measurable(rng.spawn(2), gp)
        if eval_measure_relation(f, y, SumFinite()).is_true:
            hits += 1
    print("Claim: consecutive intervals tile the half-line, so the summed "
          "intersection measure with an infinite-measure set always diverges.")
    print(json.dumps({"predicate": "measure_sum_finite", "found": hits > 0,
                      "examined": args.budget, "witness": None}, sort_keys=True))
    return EXIT_OK if hits == 0 else EXIT_FAIL


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return EXIT_USAGE if exc.code not in (0,) else EXIT_OK
    try:
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "check-rel":
            return _cmd_check_rel(args)
        if args.command == "profile":
            return _cmd_profile(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "demo":
            return _cmd_demo(args)
        parser.error(f"unknown command {args.command!r}")
        return EXIT_USAGE
    except (ItlError, json.JSONDecodeError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
