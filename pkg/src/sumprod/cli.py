"""Command-line front door: generation, statistics, certificates, sweeps, search.

Exit codes: 0 on success with all binding checks passing, 1 when a binding
certificate check fails or a budget is exceeded, 2 on usage or input-parsing
errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import explore
from .cert2d import build_certificate, verify_asym, verify_corollary, verify_theorem_main
from .certkd import DEFAULT_BUDGET, build_kfold_certificate
from .energy import dominant_class, dyadic_decompose, energy_report, ratio_profile
from .numset import BudgetExceeded, NumberSet, load_set, ratioset_size, save_set
from .report import fmt_rat, fmt_sig12, json_bytes


def _write_json(path: str | None, payload: dict) -> None:
    if path:
        with open(path, "wb") as fh:
            fh.write(json_bytes(payload))


def _print_checks(checks) -> bool:
    ok = True
    for c in checks:
        print(c.describe())
        if c.binding and not c.holds:
            ok = False
    return ok


def _cmd_gen(args) -> int:
    spec = explore.FamilySpec(
        kind=args.family,
        n=args.n,
        start=Fraction(args.start),
        step=Fraction(args.step),
        ratio=Fraction(args.ratio),
        max_value=args.range,
        seed=args.seed,
    )
    A = explore.generate(spec)
    save_set(A, args.output)
    print(f"wrote {len(A)} elements to {args.output}")
    return 0


def _cmd_stats(args) -> int:
    A = load_set(args.set)
    from .numset import productset_size, sumset_size

    print(f"|A| = {len(A)}")
    print(f"min = {A.min}  max = {A.max}")
    print(f"|A+A| = {sumset_size(A, A, threads=args.threads)}")
    print(f"|AA| = {productset_size(A, A, threads=args.threads)}")
    print(f"|A/A| = {ratioset_size(A, A, threads=args.threads)}")
    return 0


def _cmd_energy(args) -> int:
    A = load_set(args.set)
    rep = energy_report(A, threads=args.threads)
    print(f"|A| = {rep.set_size}")
    print(f"E(A) = {rep.energy}")
    print(f"|A+A| = {rep.sumset_size}  |AA| = {rep.productset_size}")
    print(
        f"E(A) >= |A|^4/|AA| = {rep.cs_lower_bound}: "
        f"{'PASS' if rep.cs_holds else 'FAIL'}"
    )
    if rep.energy_bound_holds is None:
        print("energy upper bound: not applicable (|A| < 2)")
    else:
        print(
            f"E(A) <= 4|A+A|^2 ceil(log2|A|) = {rep.energy_bound_rhs}: "
            f"{'PASS' if rep.energy_bound_holds else 'FAIL'}"
        )
    profile = ratio_profile(A, threads=args.threads)
    dom = dominant_class(dyadic_decompose(profile), rep.energy, rep.set_size)
    print(
        f"dominant dyadic class: I = {dom.index}, m = {dom.m}, "
        f"class sum = {dom.class_sum}"
    )
    _write_json(
        args.json,
        {
            "set": [str(e) for e in A.elements],
            "energy": rep.energy,
            "sumsetSize": rep.sumset_size,
            "productsetSize": rep.productset_size,
            "csLowerBound": fmt_rat(rep.cs_lower_bound),
            "csHolds": rep.cs_holds,
            "energyBoundRhs": rep.energy_bound_rhs,
            "energyBoundHolds": rep.energy_bound_holds,
            "dominantIndex": dom.index,
            "dominantSize": dom.m,
            "dominantClassSum": dom.class_sum,
        },
    )
    ok = rep.cs_holds and rep.energy_bound_holds is not False
    return 0 if ok else 1


def _cmd_certify_main(args) -> int:
    A = load_set(args.set)
    cert = build_certificate(A, threads=args.threads)
    if not cert.applicable:
        print(cert.reason)
        _write_json(args.json, cert.to_json_dict())
        return 0
    print(
        f"|A| = {len(A)}  E = {cert.energy}  I = {cert.dominant_index}  "
        f"m = {cert.m}  |union| = {cert.union_size}"
    )
    ok = _print_checks(cert.checks)
    _write_json(args.json, cert.to_json_dict())
    return 0 if ok else 1


def _cmd_certify_kfold(args) -> int:
    A = load_set(args.set)
    cert = build_kfold_certificate(A, args.k, budget=args.budget)
    if not cert.applicable:
        print(cert.reason)
        _write_json(args.json, cert.to_json_dict())
        return 0
    print(
        f"|A| = {len(A)}  k = {cert.k}  lines = {cert.cover_lines}  "
        f"heavy = {len(cert.heavy.lines)}  threshold = {cert.params.threshold}"
    )
    if cert.degenerate:
        print(cert.reason)
    else:
        print(
            f"|P| = {len(cert.chart_points)}  simplices = {len(cert.triangulation.simplices)}  "
            f"|{args.k}A| = {cert.kfold_size}"
        )
    ok = _print_checks(cert.checks)
    for key, value in cert.advisory.items():
        print(f"advisory {key} = {value}")
    _write_json(args.json, cert.to_json_dict())
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    A = load_set(args.set)
    ok = True
    main = verify_theorem_main(A, threads=args.threads)
    cor = verify_corollary(A, threads=args.threads)
    payload: dict = {"set": [str(e) for e in A.elements]}
    if not main.applicable:
        print("product-sumset bound: not applicable (|A| < 2)")
    else:
        print(
            f"{'PASS' if main.holds else 'FAIL'} product_sumset_bound: "
            f"{main.lhs} >= {main.rhs} (ratio {fmt_sig12(float(main.ratio))})"
        )
        print(
            f"{'PASS' if cor.holds else 'FAIL'} maxside_bound: "
            f"{cor.lhs} >= {cor.rhs} (ratio {fmt_sig12(float(cor.ratio))})"
        )
        ok = ok and main.holds and cor.holds
        payload["main"] = {"lhs": str(main.lhs), "rhs": str(main.rhs), "holds": main.holds}
        payload["corollary"] = {"lhs": str(cor.lhs), "rhs": str(cor.rhs), "holds": cor.holds}
    if args.second:
        B = load_set(args.second)
        first, second = (A, B) if len(A) >= len(B) else (B, A)
        asym = verify_asym(first, second, threads=args.threads)
        if not asym.applicable:
            print("two-set bound: not applicable (|B| < 2)")
        else:
            print(
                f"{'PASS' if asym.holds else 'FAIL'} two_set_bound: "
                f"{asym.lhs} <= {asym.rhs}"
            )
            print(
                f"{'PASS' if asym.energy_lower_holds else 'FAIL'} two_set_energy_bound: "
                f"E(A,B) = {asym.energy} >= {asym.lhs}"
            )
            ok = ok and asym.holds and asym.energy_lower_holds
            payload["asym"] = {
                "lhs": str(asym.lhs),
                "rhs": str(asym.rhs),
                "holds": asym.holds,
                "energy": asym.energy,
            }
    _write_json(args.json, payload)
    return 0 if ok else 1


def _cmd_sweep(args) -> int:
    ns = [int(v) for v in args.ns.split(",") if v]
    kwargs = {}
    if args.family == "randint":
        kwargs = {"max_value": args.range, "seed": args.seed}
    rows = explore.sweep(
        args.family, ns, budget=args.budget, threads=args.threads, spec_kwargs=kwargs
    )
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            explore.write_sweep_csv(rows, fh)
    explore.write_sweep_csv(rows, sys.stdout)
    return 0


def _cmd_search(args) -> int:
    config = explore.SearchConfig(
        objective=args.objective,
        n=args.n,
        max_value=args.range,
        iterations=args.iters,
        seed=args.seed,
        chains=args.chains,
    )
    result = explore.anneal(config)
    print(f"best set: {{{', '.join(str(e) for e in result.best.elements)}}}")
    print(f"objective key: {result.best_key}")
    for key, value in sorted(result.stats.items()):
        print(f"{key} = {value}")
    _write_json(args.json, result.to_json_dict())
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write("iteration,key\n")
            for it, key in result.trace:
                fh.write(f"{it},{key}\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumprod",
        description="Exact sum-product statistics and machine-checked certificates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, threads=True, json_flag=True):
        if threads:
            p.add_argument("--threads", type=int, default=1)
        if json_flag:
            p.add_argument("--json", metavar="PATH")

    p = sub.add_parser("gen", help="generate a set file from a family")
    p.add_argument("--family", choices=explore.FAMILIES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start", default="1")
    p.add_argument("--step", default="1")
    p.add_argument("--ratio", default="2")
    p.add_argument("--range", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("stats", help="basic exact statistics of a set file")
    p.add_argument("set")
    common(p, json_flag=False)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("energy", help="multiplicative energy and its bounds")
    p.add_argument("set")
    common(p)
    p.set_defaults(func=_cmd_energy)

    p = sub.add_parser("certify-main", help="build and verify the 2-D certificate")
    p.add_argument("set")
    common(p)
    p.set_defaults(func=_cmd_certify_main)

    p = sub.add_parser("certify-kfold", help="build and verify the k-fold certificate")
    p.add_argument("set")
    p.add_argument("-k", type=int, default=3)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    common(p, threads=False)
    p.set_defaults(func=_cmd_certify_kfold)

    p = sub.add_parser("verify", help="verify the headline inequalities for a set")
    p.add_argument("set")
    p.add_argument("second", nargs="?", help="second set for the two-set inequality")
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("sweep", help="exact statistics over a family of sizes")
    p.add_argument("--family", choices=explore.FAMILIES, default="interval")
    p.add_argument("--ns", required=True, help="comma-separated sizes, e.g. 2,4,8")
    p.add_argument("--range", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=3 * 10 ** 7)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("search", help="annealing search for extremal configurations")
    p.add_argument("--objective", choices=explore.OBJECTIVES, default="maxside_ratio")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--range", type=int, required=True)
    p.add_argument("--iters", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--csv", metavar="PATH")
    common(p, threads=False)
    p.set_defaults(func=_cmd_search)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
