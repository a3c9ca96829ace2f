"""Command-line interface.

Exit codes: 0 success, 2 validation error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import asymptotics, expectations, limitlaws, oracle, series
from .counting import build_count_table, count_no_part_k, prob_multiplicity
from .errors import PartitionError, ValidationError
from .harness import ExperimentConfig, compare, run_monte_carlo
from .sampler import (
    ExactSampler,
    FristedtSampler,
    draw_part,
    make_rng,
    stat_Yms,
    stat_Zds,
)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _g(x: float) -> str:
    return format(x, ".17g")


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _ints(text: str) -> tuple:
    return tuple(int(x) for x in text.split(",") if x)


def _linspace(text: str) -> np.ndarray:
    start, stop, num = text.split(":")
    return np.linspace(float(start), float(stop), int(num))


def cmd_count(args) -> str:
    if args.prob:
        n, j, m = args.prob
        table = build_count_table(max(n, 0) if args.table_limit is None else args.table_limit)
        return _frac(prob_multiplicity(table, n, j, m))
    if args.n is None:
        raise ValidationError("count needs --n or --prob")
    table = build_count_table(args.n if args.table_limit is None else args.table_limit)
    if args.no_part is not None:
        return str(count_no_part_k(table, args.n, args.no_part))
    return str(table[args.n])


def cmd_series(args) -> str:
    if args.verify_lemma1:
        n, d, s = args.verify_lemma1
        table = build_count_table(n)
        row = {
            "identity": "lemma1",
            "n": n, "d": d, "s": s,
            "printed": series.lemma1_coefficient(n, n, d, s),
            "direct": str(table[n] * expectations.expect_Zds(table, n, d, s)),
            "enumeration": sum(stat_Zds(lam, d, s) for lam in oracle.enumerate_partitions(n)),
            "constrained_enumeration": oracle.constrained_part_count(n, d, s),
        }
    elif args.verify_lemma2:
        n, m, s = args.verify_lemma2
        table = build_count_table(n)
        row = {
            "identity": "lemma2",
            "n": n, "m": m, "s": s,
            "printed": series.lemma2_coefficient(n, n, m, s),
            "direct": str(table[n] * expectations.expect_Yms(table, n, m, s)),
            "enumeration": sum(stat_Yms(lam, m, s) for lam in oracle.enumerate_partitions(n)),
        }
    elif args.euler is not None:
        return " ".join(str(c) for c in series.euler_product(args.euler).coeffs)
    else:
        raise ValidationError("series needs --verify-lemma1, --verify-lemma2 or --euler")
    if args.format == "json":
        return json.dumps(row)
    return _csv([list(row.values())], list(row.keys())).rstrip("\n")


def cmd_expect(args) -> str:
    table = build_count_table(args.n)
    rep = expectations.expectation_report(table, args.n, args.stat, d=args.d, s=args.s, m=args.m)
    if args.format == "json":
        return json.dumps(rep.to_json())
    return f"{_frac(rep.exact)} {_g(float(rep.exact))}"


def _sampler(args):
    if args.method == "exact":
        sampler = ExactSampler(build_count_table(args.n), cache_limit=256)
        return lambda rng: sampler.sample(args.n, rng), None
    fristedt = FristedtSampler(args.n, max_trials=args.max_trials)
    return fristedt.sample, fristedt


def _meta(args, **extra) -> None:
    meta = {"command": args.command, "n": args.n, "seed": args.seed, "method": args.method}
    meta.update(extra)
    print(json.dumps(meta), file=sys.stderr)


def cmd_sample(args) -> str:
    rng = make_rng(args.seed)
    draw, fristedt = _sampler(args)
    lines = [json.dumps(draw(rng).to_json()) for _ in range(args.count)]
    extra = {"acceptance_rate": fristedt.acceptance_rate} if fristedt else {}
    _meta(args, **extra)
    return "\n".join(lines)


def cmd_draw(args) -> str:
    rng = make_rng(args.seed)
    draw, _ = _sampler(args)
    lines = []
    for _ in range(args.count):
        d = draw_part(draw(rng), args.proc, rng)
        lines.append(json.dumps({"procedure": d.procedure, "mu": d.mu, "sigma": d.sigma}))
    _meta(args, procedure=args.proc)
    return "\n".join(lines)


def cmd_oracle(args) -> str:
    jt = oracle.joint_table(args.n, args.proc, cap=args.cap)
    if args.grid:
        kmax, smax = _ints(args.grid)
        jt = oracle.JointTable(jt.n, jt.procedure,
                               {c: v for c, v in jt.entries.items() if c[0] <= kmax and c[1] <= smax})
    if args.format == "json":
        return json.dumps([{"m_or_d": k, "s": s, "value": _frac(v), "float": float(v)}
                           for (k, s), v in sorted(jt.entries.items())])
    return jt.to_csv().rstrip("\n")


def cmd_limit(args) -> str:
    axis = _linspace(args.grid)
    rows = []
    if args.proc == 1:
        header = ["u", "v", "F1"]
        for u in axis:
            for v in axis:
                rows.append([_g(u), _g(v), _g(limitlaws.F1(u, v))])
    else:
        header = ["m", "t", "joint", "mult_marginal", "size_marginal"]
        mult = limitlaws.M2_mult if args.proc == 2 else limitlaws.M3_mult
        size = limitlaws.M2_size if args.proc == 2 else limitlaws.M3_size
        for m in _ints(args.ms):
            for t in axis:
                rows.append([m, _g(t), _g(limitlaws.law(args.proc, m, t)), _g(mult(m)), _g(size(t))])
    if args.format == "json":
        return json.dumps([dict(zip(header, r)) for r in rows])
    return _csv(rows, header).rstrip("\n")


def cmd_asymp(args) -> str:
    ns = _ints(args.n)
    need_table = args.what in ("pn", "ez", "ey") or (args.what == "phi" and args.exact)
    table = build_count_table(max(ns)) if need_table else None
    rows = []
    for n in ns:
        if args.what == "pn":
            log_approx = {
                "hayman": asymptotics.hayman_pn_log,
                "hr": asymptotics.hr_leading_log,
                "rademacher": asymptotics.rademacher_two_term_log,
            }[args.method](n)
            exact = table[n]
            rows.append([n, exact, _g(math.exp(log_approx)) if log_approx < 709 else f"exp({_g(log_approx)})",
                         _g(asymptotics.relative_error(log_approx, exact))])
        elif args.what == "saddle":
            st = asymptotics.solve_saddle(n)
            approx = asymptotics.h_expansion(n)
            rows.append([n, _g(st.h), _g(approx), _g(approx / st.h - 1)])
        elif args.what == "phi":
            st = asymptotics.solve_saddle(n)
            d, s = n ** (args.u / 2), n ** (args.v / 2)
            approx = asymptotics.phi_ds(st.h, min(d, n), min(s, n))
            if table is not None:
                exact = float(expectations.expect_Zds(table, n, d, min(s, n)))
                rows.append([n, _g(exact), _g(approx), _g(approx / exact - 1) if exact else "nan"])
            else:
                rows.append([n, "", _g(approx), ""])
        elif args.what in ("ez", "ey"):
            f, a = ((expectations.expect_Zn, asymptotics.asym_EZ) if args.what == "ez"
                    else (expectations.expect_Yn, asymptotics.asym_EY))
            exact = float(f(table, n))
            approx = a(n)
            rows.append([n, _g(exact), _g(approx), _g(approx / exact - 1)])
    header = ["n", "exact", "approx", "rel_err"]
    if args.format == "json":
        return json.dumps([dict(zip(header, r)) for r in rows])
    return _csv(rows, header).rstrip("\n")


def _config(args) -> ExperimentConfig:
    return ExperimentConfig(
        n=args.n, procedure=args.proc, samples=args.count, seed=args.seed,
        method=args.method, reference=args.reference, ks=_ints(args.ks),
        s_max=args.s_max, replicas=args.replicas, workers=args.workers,
        max_trials=args.max_trials,
    )


def _report(rep, fmt) -> str:
    return rep.to_json() if fmt == "json" else rep.to_csv().rstrip("\n")


def cmd_simulate(args) -> str:
    rep = run_monte_carlo(_config(args))
    print(f"KS = {rep.ks_statistic:.6g}", file=sys.stderr)
    return _report(rep, args.format)


def cmd_compare(args) -> str:
    hist: dict = {}
    total = 0
    with open(args.draws) as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            if rec["procedure"] != args.proc:
                raise ValidationError(f"draw from procedure {rec['procedure']} in a procedure {args.proc} comparison")
            key = (rec["mu"], rec["sigma"])
            hist[key] = hist.get(key, 0) + 1
            total += 1
    if not total:
        raise ValidationError("no draws found")
    args.count = total
    rep = compare(_config(args), hist)
    print(f"KS = {rep.ks_statistic:.6g}", file=sys.stderr)
    return _report(rep, args.format)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="64-bit unsigned RNG seed")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="randpart", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("count", cmd_count, "exact p(n) and multiplicity probabilities")
    p.add_argument("--n", type=int)
    p.add_argument("--table-limit", type=int)
    p.add_argument("--prob", type=int, nargs=3, metavar=("N", "J", "M"))
    p.add_argument("--no-part", type=int, metavar="K", help="count partitions of n with no part K")

    p = add("series", cmd_series, "generating-function identities checked coefficientwise")
    p.add_argument("--verify-lemma1", type=int, nargs=3, metavar=("N", "D", "S"))
    p.add_argument("--verify-lemma2", type=int, nargs=3, metavar=("N", "M", "S"))
    p.add_argument("--euler", type=int, metavar="CAP", help="print p(0..CAP) from the Euler product")

    p = add("expect", cmd_expect, "exact expectations of the part statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--stat", choices=expectations.STATISTICS, required=True)
    p.add_argument("--d", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--m", type=int)

    for name, func, help_ in (("sample", cmd_sample, "uniform random partitions as JSON lines"),
                              ("draw", cmd_draw, "part draws (procedure, mu, sigma) as JSON lines")):
        p = add(name, func, help_)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--count", type=int, default=1)
        p.add_argument("--method", choices=("exact", "fristedt"), default="exact")
        p.add_argument("--max-trials", type=int, default=10**7)
        if name == "draw":
            p.add_argument("--proc", type=int, choices=(1, 2, 3), required=True)

    p = add("oracle", cmd_oracle, "exact joint law by enumeration (CSV)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--proc", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--grid", metavar="KMAX,SMAX")
    p.add_argument("--cap", type=int, default=oracle.DEFAULT_ENUMERATION_CAP)

    p = add("limit", cmd_limit, "limit-law values for plotting")
    p.add_argument("--proc", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--grid", default="0:3:31", metavar="START:STOP:NUM", help="t axis (u and v for proc 1)")
    p.add_argument("--ms", default="1,2,3", help="multiplicities for procedures 2 and 3")

    p = add("asymp", cmd_asymp, "asymptotic approximations vs exact values")
    p.add_argument("--what", choices=("pn", "saddle", "phi", "ez", "ey"), required=True)
    p.add_argument("--n", required=True, help="comma-separated list of n")
    p.add_argument("--method", choices=("hayman", "hr", "rademacher"), default="hayman")
    p.add_argument("--u", type=float, default=0.9)
    p.add_argument("--v", type=float, default=0.9)
    p.add_argument("--exact", action="store_true", help="phi: also compute the exact E(Z_{d,s})")

    for name, func, help_ in (("simulate", cmd_simulate, "Monte Carlo run compared to a reference"),
                              ("compare", cmd_compare, "compare saved draws to a reference")):
        p = add(name, func, help_)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--proc", type=int, choices=(1, 2, 3), required=True)
        p.add_argument("--reference", choices=("oracle", "limit"), default="oracle")
        p.add_argument("--ks", default="1,2,3,4,5,6", help="multiplicity grid")
        p.add_argument("--s-max", type=int)
        p.add_argument("--method", choices=("exact", "fristedt"), default="exact")
        p.add_argument("--max-trials", type=int, default=10**7)
        p.add_argument("--replicas", type=int, default=1)
        p.add_argument("--workers", type=int, default=1)
        if name == "simulate":
            p.add_argument("--count", type=int, default=10**4)
        else:
            p.add_argument("--draws", required=True, metavar="JSONL", help="output of `randpart draw`")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except PartitionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        try:
            print(out)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the exit-time flush
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
    return 0


if __name__ == "__main__":
    sys.exit(main())
