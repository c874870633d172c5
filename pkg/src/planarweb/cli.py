"""Command-line front end.

Subcommands: sigma, rank, abel-ode, hexagonal, config-web, verify-num,
constant, prop7.  Reports are deterministic JSON documents (identical runs
give byte-identical output); exit status is 0 for success/PASS, 1 for a
mathematical FAIL, 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import PlanarWebError
from .parse import parse_ratfunc


def _emit(report: dict, out_path=None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    print(text)


def _point(text):
    x, y = text.split(",")
    return (Fraction(x), Fraction(y))


def cmd_sigma(args) -> int:
    from .web import load_web, singular_locus, verify_sigma_factors

    web = load_web(args.webfile)
    if args.factors:
        cands = [parse_ratfunc(t).num for t in args.factors.split(";")]
        report = verify_sigma_factors(web, cands)
        _emit(report, args.output)
        return 0 if report["all_divide"] else 1
    locus = singular_locus(web)
    _emit(
        {
            "web": web.name,
            "curve_components": [str(c) for c in locus.curve_components],
            "tangency_components": [str(c) for c in locus.tangency_components],
            "indeterminacy": [
                {"num": str(n), "den": str(d)} for n, d in locus.indeterminacy_points
            ],
        },
        args.output,
    )
    return 0


def cmd_rank(args) -> int:
    from .jets import abelian_rank, filtration_dims, rank_report
    from .web import load_web, pick_generic_point

    web = load_web(args.webfile)
    base = pick_generic_point(
        web, seed=args.seed, preferred=_point(args.point) if args.point else (Fraction(1, 3), Fraction(1, 2))
    )
    rank, basis = abelian_rank(
        web, base, max_order=args.max_order, stabilize=args.stabilize
    )
    report = {
        "web": web.name,
        "base_point": [str(base.point[0]), str(base.point[1])],
        "rank": rank,
        "solution_space_with_constants": rank + web.size - 1,
        "stabilized_order": basis.order,
        "bol_bound": (web.size - 1) * (web.size - 2) // 2,
    }
    if args.filtration:
        report["filtration"] = {str(p): d for p, d in filtration_dims(web, base).items()}
    if args.subwebs:
        sizes = [int(s) for s in args.subwebs.split(",")]
        report["subwebs"] = rank_report(web, sizes, base_seed=args.seed)["subwebs"]
    _emit(report, args.output)
    return 0


def cmd_abel_ode(args) -> int:
    from .abel import derive_lde
    from .errors import NotPurelyUnivariate, TrivialEquation
    from .web import load_web

    web = load_web(args.webfile)
    try:
        ode = derive_lde(web, args.target)
    except TrivialEquation as exc:
        _emit({"web": web.name, "target": args.target, "result": "trivial", "detail": str(exc)}, args.output)
        return 0
    except NotPurelyUnivariate as exc:
        _emit({"web": web.name, "target": args.target, "result": "not-univariate", "detail": str(exc)}, args.output)
        return 1
    report = {
        "web": web.name,
        "target": args.target,
        "order": ode.order,
        "coefficients": ode.coefficient_strings(),
    }
    if args.trace:
        report["trace"] = ode.derivation_trace
    _emit(report, args.output)
    return 0


def cmd_hexagonal(args) -> int:
    from .jets import hexagonality
    from .web import load_web

    report = hexagonality(load_web(args.webfile), base_seed=args.seed)
    _emit(report, args.output)
    return 0 if report["hexagonal"] else 1


def cmd_config_web(args) -> int:
    from .projective import classify_stratum, load_configuration, web_from_configuration
    from .web import web_to_text

    config = load_configuration(args.cfgfile)
    report = {"configuration": config.name, "points": len(config)}
    if args.classify:
        stratum = classify_stratum(config)
        report["stratum"] = stratum.label
        report["collinear_triples"] = stratum.witnesses
        if stratum.pivot:
            report["pivot"] = stratum.pivot
    web = web_from_configuration(config)
    report["web_size"] = web.size
    report["integrals"] = [str(u) for u in web.integrals()]
    if args.web_out:
        with open(args.web_out, "w", encoding="utf-8") as fh:
            fh.write(web_to_text(web))
    _emit(report, args.output)
    return 0


def cmd_verify_num(args) -> int:
    from .hyperlog.verify import load_afe, verify_afe_numeric

    instance = load_afe(args.afefile)
    tol = Fraction(args.tolerance) if "/" in args.tolerance else Fraction(
        1, 10 ** int(args.tolerance.split("e-")[1])
    ) if "e-" in args.tolerance else Fraction(args.tolerance)
    report = verify_afe_numeric(
        instance,
        samples=args.samples,
        dps=args.precision,
        tolerance=tol,
        seed=args.seed,
    )
    _emit(report, args.output)
    return 0 if report["pass"] else 1


def cmd_constant(args) -> int:
    from .hyperlog.constants import SymConst
    from .hyperlog.verify import constancy_check, load_afe

    instance = load_afe(args.afefile)
    half = Fraction(1, 2)
    candidates = {
        "0": SymConst.rational(0),
        "pi^2/6": SymConst.monomial(pi=2, coeff=Fraction(1, 6)),
        "c21 = pi^2/6 - log^2(2)/2": SymConst.monomial(pi=2, coeff=Fraction(1, 6))
        + SymConst.monomial(log2=2, coeff=-half),
        "-c21": SymConst.monomial(pi=2, coeff=Fraction(-1, 6))
        + SymConst.monomial(log2=2, coeff=half),
    }
    report = constancy_check(
        instance,
        samples=args.samples,
        dps=args.precision,
        candidates=candidates,
        tolerance=Fraction(1, 10**30),
        seed=args.seed,
    )
    _emit(report, args.output)
    return 0 if report["matched"] else 1


def cmd_prop7(args) -> int:
    from .projective import Configuration, named_configuration, prop7_check
    from .web import load_web

    web = load_web(args.webfile)
    if args.config in ("b", "q", "c"):
        config = named_configuration(args.config)
    else:
        from .projective import load_configuration

        config = load_configuration(args.config)
    if args.subset:
        idx = [int(i) for i in args.subset.split(",")]
        config = Configuration([config.points[i - 1] for i in idx], name=f"{config.name}[{args.subset}]")
    report = prop7_check(web, config)
    _emit(report, args.output)
    return 0 if report["match"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="planarweb",
        description="exact tools for abelian functional equations and planar webs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", "-o", help="also write the JSON report here")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--jobs", type=int, default=1, help="worker cap (results identical for any value)")

    sp = sub.add_parser("sigma", help="singular locus of a web")
    sp.add_argument("webfile")
    sp.add_argument("--factors", help="semicolon-separated candidate factors to verify")
    common(sp)
    sp.set_defaults(fn=cmd_sigma)

    sp = sub.add_parser("rank", help="web rank by exact jet linear algebra")
    sp.add_argument("webfile")
    sp.add_argument("--point", help="preferred base point 'x,y'")
    sp.add_argument("--max-order", type=int, default=None)
    sp.add_argument("--stabilize", type=int, default=3)
    sp.add_argument("--filtration", action="store_true")
    sp.add_argument("--subwebs", help="comma-separated subweb sizes to tabulate")
    common(sp)
    sp.set_defaults(fn=cmd_rank)

    sp = sub.add_parser("abel-ode", help="derive the linear ODE of one component")
    sp.add_argument("webfile")
    sp.add_argument("--target", type=int, required=True)
    sp.add_argument("--trace", action="store_true")
    common(sp)
    sp.set_defaults(fn=cmd_abel_ode)

    sp = sub.add_parser("hexagonal", help="hexagonality via 3-subweb ranks")
    sp.add_argument("webfile")
    common(sp)
    sp.set_defaults(fn=cmd_hexagonal)

    sp = sub.add_parser("config-web", help="web generated by a point configuration")
    sp.add_argument("cfgfile")
    sp.add_argument("--classify", action="store_true")
    sp.add_argument("--web-out", help="write the generated web file here")
    common(sp)
    sp.set_defaults(fn=cmd_config_web)

    sp = sub.add_parser("verify-num", help="numeric verification of an AFE instance")
    sp.add_argument("afefile")
    sp.add_argument("--samples", type=int, default=20)
    sp.add_argument("--precision", type=int, default=50)
    sp.add_argument("--tolerance", default="1e-40")
    common(sp)
    sp.set_defaults(fn=cmd_verify_num)

    sp = sub.add_parser("constant", help="constancy check of an AFE left-hand side")
    sp.add_argument("afefile")
    sp.add_argument("--samples", type=int, default=12)
    sp.add_argument("--precision", type=int, default=50)
    common(sp)
    sp.set_defaults(fn=cmd_constant)

    sp = sub.add_parser("prop7", help="Cremona image versus a configuration web")
    sp.add_argument("webfile")
    sp.add_argument("--config", default="q", help="named configuration or a .cfg path")
    sp.add_argument("--subset", help="1-based subset of configuration points")
    common(sp)
    sp.set_defaults(fn=cmd_prop7)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except PlanarWebError as exc:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__}))
        return 1
    except FileNotFoundError as exc:
        print(json.dumps({"error": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
