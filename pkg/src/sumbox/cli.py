"""Command-line front end.

Subcommands: capacity, tables, scheme build|simulate|check, verify.

Exit codes: 0 success, 1 verification mismatch, 2 usage/parse error,
3 resource-guard refusal.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from itertools import combinations

from .capacity import (LpSizeError, capacity_fullent, capacity_lp,
                       capacity_symmetric, capacity_unent, dsc_gain)
from .field import Field, FieldError, field_construct, parse_field_name
from .matrix import Mat, MatrixError
from .model import Problem, ProblemError, beta_cliques, parse_problem
from .nsumbox import BoxError
from .oracle import (GuardExceeded, check_identities, check_lp_oracle,
                     exhaustive_decode_check, tap_lines)
from .scheme import (DEFAULT_SEED, Allocation, SchemeError, build_scheme,
                     parse_scheme, render_scheme, simulate, true_sum)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _emit(records: bool, instance: str, value: Fraction, extra: str = ""):
    if records:
        print(json.dumps({"instance": instance,
                          "value-num": value.numerator,
                          "value-den": value.denominator}))
    else:
        line = f"{instance}: {value}"
        if extra:
            line += f"  ({extra})"
        print(line)


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _parse_d(token: str) -> Field:
    if "^" in token:
        p_str, r_str = token.split("^", 1)
        return field_construct(int(p_str), int(r_str))
    return parse_field_name("F" + token)


def _detect_symmetric(P: Problem) -> tuple[int, int, int]:
    """Recover (S, alpha, beta) from a fully symmetric instance or fail."""
    S = P.S
    sizes = {len(w) for w in P.W}
    if len(sizes) != 1:
        raise ProblemError("streams are not uniformly replicated")
    alpha = sizes.pop()
    if set(P.W) != {frozenset(c) for c in combinations(range(1, S + 1), alpha)}:
        raise ProblemError("streams do not cover all alpha-subsets of servers")
    bsizes = {len(e) for e in P.E}
    if len(bsizes) != 1:
        raise ProblemError("cliques are not uniform")
    beta = bsizes.pop()
    if set(P.E) != set(beta_cliques(S, beta)):
        raise ProblemError("cliques do not cover all beta-subsets of servers")
    return S, alpha, beta


def cmd_capacity(args) -> int:
    P = parse_problem(_read(args.file))
    records = args.format == "records"
    if args.closed_form == "fullent":
        res = capacity_fullent(P)
        _emit(records, f"{args.file} fullent", res.capacity)
    elif args.closed_form == "unent":
        res = capacity_unent(P)
        _emit(records, f"{args.file} unent", res.capacity)
    elif args.closed_form == "symmetric":
        S, alpha, beta = _detect_symmetric(P)
        val = capacity_symmetric(S, alpha, beta)
        _emit(records, f"{args.file} symmetric S={S} alpha={alpha} beta={beta}", val)
        return EXIT_OK
    else:
        res = capacity_lp(P)
        _emit(records, f"{args.file} capacity", res.capacity)
    if not records:
        print(f"optimal cost: {res.optimal_cost}")
        witness = " ".join(str(v) for v in res.witness)
        print(f"witness: {witness}")
    if args.dsc:
        _emit(records, f"{args.file} dsc-gain", dsc_gain(P))
    return EXIT_OK


def cmd_tables(args) -> int:
    from .tables import check_table1, check_table2

    records = args.format == "records"
    bad = 0
    for label, got, golden in check_table1():
        _emit(records, f"table1 {label}", got)
        if got != golden:
            bad += 1
            print(f"MISMATCH {label}: computed {got}, golden {golden}",
                  file=sys.stderr)
    for label, got, golden in check_table2(args.lp_check_max_s):
        _emit(records, f"table2 {label}", got)
        if got != golden:
            bad += 1
            print(f"MISMATCH {label}: computed {got}, golden {golden}",
                  file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_scheme_build(args) -> int:
    P = parse_problem(_read(args.file))
    d_field = _parse_d(args.d) if args.d else None
    z = None if args.z in (None, "auto") else int(args.z)
    allocation = None
    if args.alloc:
        counts = [int(v) for v in args.alloc.split(",")]
        idx = P.cost_index()
        if len(counts) != len(idx):
            raise ProblemError(
                f"--alloc expects {len(idx)} entries (clique-major, server-ascending)")
        allocation = Allocation(tuple((t, s, n) for (t, s), n in zip(idx, counts)))
    sch = build_scheme(P, allocation=allocation, d_field=d_field, z=z, seed=args.seed)
    text = render_scheme(sch)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote scheme: rate {sch.rate}, q = {sch.ext.big.order}, "
              f"R = {sch.R}, total download {sch.allocation.total}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_scheme_simulate(args) -> int:
    sch = parse_scheme(_read(args.file))
    q = sch.ext.big.order
    if args.exhaustive:
        rep = exhaustive_decode_check(sch)
        total = q ** (sch.problem.K * sch.R)
        if rep.agree:
            print(f"{total}/{total} pass")
            return EXIT_OK
        print(f"FAIL at realization {rep.counterexample}: "
              f"decoded {rep.main_value}, expected {rep.oracle_value}")
        return EXIT_MISMATCH
    rng = random.Random(args.seed)
    fails = 0
    for _ in range(args.trials):
        data = [Mat(sch.ext.big, [[rng.randrange(q)] for _ in range(sch.R)])
                for _ in range(sch.problem.K)]
        if simulate(sch, data) != true_sum(sch, data):
            fails += 1
    print(f"{args.trials - fails}/{args.trials} pass (seed {args.seed})")
    return EXIT_MISMATCH if fails else EXIT_OK


def cmd_scheme_check(args) -> int:
    sch = parse_scheme(_read(args.file))
    ok = sch.certificate_ok()
    rate = sch.rate
    cap = capacity_lp(sch.problem).capacity
    print(f"certificate: {'OK' if ok else 'FAIL'}")
    print(f"rate: {rate} (capacity {cap})")
    return EXIT_OK if ok and rate == cap else EXIT_MISMATCH


def cmd_verify(args) -> int:
    from .capacity import beta_star

    if args.suite == "identities":
        reports = check_identities(args.seed, args.cases, args.max_s or 5)
    elif args.suite == "oracle-lp":
        reports = check_lp_oracle(args.seed, args.cases)
    else:  # beta-star
        from .oracle import OracleReport

        reports = []
        max_s = args.max_s or 10
        for S in range(1, max_s + 1):
            for alpha in range(1, S + 1):
                c_full = capacity_symmetric(S, alpha, S)
                scanned = next(b for b in range(1, S + 1)
                               if capacity_symmetric(S, alpha, b) == c_full)
                formula = beta_star(S, alpha)
                reports.append(OracleReport(
                    f"beta* S={S} alpha={alpha}", scanned, formula,
                    scanned == formula))
    if args.format == "records":
        for rep in reports:
            val = rep.main_value if isinstance(rep.main_value, Fraction) else None
            rec = {"instance": rep.instance, "ok": rep.agree}
            if val is not None:
                rec["value-num"] = val.numerator
                rec["value-den"] = val.denominator
            print(json.dumps(rec))
    else:
        print(f"1..{len(reports)}")
        for line in tap_lines(reports):
            print(line)
    return EXIT_OK if all(r.agree for r in reports) else EXIT_MISMATCH


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sumbox",
                                 description="finite-field sum-computation toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p_cap = sub.add_parser("capacity", help="capacity of a problem file")
    p_cap.add_argument("file")
    p_cap.add_argument("--dsc", action="store_true",
                       help="also report the gain over the unentangled baseline")
    p_cap.add_argument("--closed-form", choices=["fullent", "unent", "symmetric"])
    p_cap.add_argument("--format", choices=["text", "records"], default="text")
    p_cap.set_defaults(func=cmd_capacity)

    p_tab = sub.add_parser("tables", help="regenerate and diff the golden tables")
    p_tab.add_argument("--lp-check-max-s", type=int, default=0,
                       help="also LP-cross-check the symmetric grid up to this S")
    p_tab.add_argument("--format", choices=["text", "records"], default="text")
    p_tab.set_defaults(func=cmd_tables)

    p_sch = sub.add_parser("scheme", help="build/simulate/check coding schemes")
    ssub = p_sch.add_subparsers(dest="scmd", required=True)

    p_b = ssub.add_parser("build", help="build a capacity-achieving scheme")
    p_b.add_argument("file")
    p_b.add_argument("--out", help="output scheme file (default: stdout)")
    p_b.add_argument("--d", help="data field as p^r or order (default: field in file)")
    p_b.add_argument("--z", default="auto", help="extension degree or 'auto'")
    p_b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_b.add_argument("--alloc", help="comma-separated box counts, clique-major order")
    p_b.set_defaults(func=cmd_scheme_build)

    p_s = ssub.add_parser("simulate", help="run decode trials on a scheme file")
    p_s.add_argument("file")
    p_s.add_argument("--trials", type=int, default=1000)
    p_s.add_argument("--exhaustive", action="store_true")
    p_s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_s.set_defaults(func=cmd_scheme_simulate)

    p_c = ssub.add_parser("check", help="re-validate a scheme file's certificate")
    p_c.add_argument("file")
    p_c.set_defaults(func=cmd_scheme_check)

    p_v = sub.add_parser("verify", help="run a verification suite (TAP output)")
    p_v.add_argument("suite", choices=["identities", "beta-star", "oracle-lp"])
    p_v.add_argument("--seed", type=int, default=0)
    p_v.add_argument("--cases", type=int, default=100)
    p_v.add_argument("--max-s", type=int, default=0)
    p_v.add_argument("--format", choices=["text", "records"], default="text")
    p_v.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    ap = make_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (GuardExceeded, LpSizeError) as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ProblemError, FieldError, MatrixError, BoxError, SchemeError,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
