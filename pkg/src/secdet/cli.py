"""secdet command line: build examples, check presentations, glue, factor, run acceptance."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .acceptance import SuiteConfig, run_acceptance
from .gluing import GlueError, glue_roundtrip, negative_matrix
from .linmat import LinearMatrix, MatrixError, parse_linmat
from .report import (
    CHARP, DEFAULT_SEED, EVIDENCE, EXACT, FAIL, PASS, SAMPLED, SKIPPED, Check, Report, status_of,
)
from .resolutions import resolution_check
from .secant import (
    FactorizationError,
    PresentationError,
    certify_presentation,
    classify,
    factor_presentation,
    presentation,
    secant_profile,
)
from .symkernel import BudgetExceeded, DEFAULT_BUDGET, Field, FieldError, PolyError
from .varieties import VarietyError, parse_variety_spec, variety_from_spec, variety_to_text

FAMILIES = ("scroll", "veronese", "segre", "p1p1_22", "delpezzo")


def _config(args) -> dict:
    return {"seed": args.seed, "field": args.field, "budget": args.budget, "trials": args.trials, "q": args.q}


def _read_variety(path: str, field: str | None):
    spec = parse_variety_spec(Path(path).read_text())
    if field:
        spec["field"] = field
    return variety_from_spec(spec)


def _read_matrix(path: str, V) -> LinearMatrix:
    return parse_linmat(Path(path).read_text(), V.ring)


def _emit(rep: Report, args) -> int:
    text = rep.to_json(args.timings)
    if args.json:
        Path(args.json).write_text(text)
    for line in rep.summary_lines():
        print(line)
    print(f"verdict: {rep.verdict}")
    return rep.exit_code()


def _charp(F: Field) -> str:
    return CHARP if F.characteristic else EXACT


# ---------------------------------------------------------------------------
# subcommands

def cmd_example(args) -> int:
    F = Field.from_spec(args.field or "gf:32003")
    spec = {"family": args.family, "params": " ".join(map(str, args.params)), "field": F.spec(), "seed": args.seed}
    if args.family == "delpezzo" and args.gamma:
        spec["gamma"] = args.gamma
    V = variety_from_spec(spec)
    q = args.q if args.q is not None else (1 if args.family == "segre" else 2)
    M = presentation(V, q, args.kind)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = args.name or "_".join([args.family] + [str(p) for p in args.params])
    vpath, mpath = out / f"{stem}.variety", out / f"{stem}.linmat"
    vpath.write_text(variety_to_text(V))
    mpath.write_text(M.to_text())
    print(f"{vpath}\n{mpath}")
    print(f"{V.provenance} in P^{V.r}; q={q}; matrix {M.a}x{M.b}" + (" symmetric" if M.symmetric else ""))
    return 0


def cmd_check(args) -> int:
    V = _read_variety(args.variety, args.field)
    q = args.q if args.q is not None else 2
    rng = np.random.default_rng(args.seed)
    rep = Report("check", {**_config(args), "variety": V.provenance, "q": q})
    F = V.field
    t = time.perf_counter()
    profile = secant_profile(V, q, rng, args.trials)
    rep.add(Check("terracini", PASS, SAMPLED, {"dim_secant": profile.dim_secant, "e": profile.e,
                                                "trials": args.trials}, time.perf_counter() - t))
    if not args.matrix:
        t = time.perf_counter()
        try:
            res = classify(V, q, rng, None, args.budget)
        except BudgetExceeded:
            rep.add(Check("classify", SKIPPED, _charp(F), {"reason": "budget"}, time.perf_counter() - t))
            return _emit(rep, args)
        st = PASS if res["type"] in ("scroll", "veronese", "neither") else EVIDENCE
        rep.add(Check("classify", st, _charp(F), res, time.perf_counter() - t))
        print(f"type: {res['type']}")
        return _emit(rep, args)
    M = _read_matrix(args.matrix, V)
    t = time.perf_counter()
    verdict = certify_presentation(M, V, q, profile, rng, budget=args.budget)
    for name, flag in verdict.checks.items():
        prov = SAMPLED if name == "secant_vanishing" else _charp(F)
        rep.add(Check(f"certify.{name}", status_of(flag), prov, {}, None))
    rep.add(Check("certify", PASS if verdict.certified else FAIL, _charp(F), verdict.data, time.perf_counter() - t))
    print(f"type: {verdict.kind}, e={profile.e}, degree={profile.measured_degree}")
    if verdict.certified:
        t = time.perf_counter()
        hd = None
        try:
            from .linmat import minors_ideal
            hd = minors_ideal(M, q + 1, args.budget).hilbert_data()
            res = resolution_check(M, q, profile.e, args.budget, hd)
            rep.add(Check("resolution", status_of(res.consistent), _charp(F), res.as_dict(), time.perf_counter() - t))
        except BudgetExceeded:
            rep.add(Check("resolution", SKIPPED, _charp(F), {"reason": "budget"}, time.perf_counter() - t))
        t = time.perf_counter()
        try:
            fac = factor_presentation(M, V)
            rep.add(Check("factor", PASS, EXACT, fac.as_dict(), time.perf_counter() - t))
        except FactorizationError as exc:
            rep.add(Check("factor", FAIL, EXACT, {"error": str(exc)}, time.perf_counter() - t))
    return _emit(rep, args)


def cmd_glue(args) -> int:
    V = _read_variety(args.variety, args.field)
    q = args.q if args.q is not None else (1 if args.mode == "scroll1" else 2)
    rng = np.random.default_rng(args.seed)
    rep = Report("glue", {**_config(args), "variety": V.provenance, "q": q, "mode": args.mode})
    M = _read_matrix(args.matrix, V) if args.matrix else None
    t = time.perf_counter()
    try:
        res = glue_roundtrip(V, q, args.mode, rng, M)
    except GlueError as exc:
        rep.add(Check("roundtrip", FAIL, EXACT, {"condition": exc.condition, "error": str(exc)},
                      time.perf_counter() - t))
        return _emit(rep, args)
    sec = time.perf_counter() - t
    rep.add(Check("roundtrip", status_of(res["roundtrip"]), EXACT,
                  {"attempts": res["attempts"], "gamma": res["gamma"], "glued": res["glued"].to_text()}, sec))
    for name, flag in res["conditions"].items():
        rep.add(Check(f"condition{name}", status_of(flag), EXACT))
    for name, flag in res["checks"].items():
        rep.add(Check(f"battery.{name}", status_of(flag), EXACT))
    if args.negative:
        for cond, r in negative_matrix(V, q, args.mode, rng, M).items():
            ok = r["failed"] == [cond] and r["glue_error"] == cond
            rep.add(Check(f"negative{cond}", status_of(ok), EXACT, r))
    return _emit(rep, args)


def cmd_factor(args) -> int:
    V = _read_variety(args.variety, args.field)
    M = _read_matrix(args.matrix, V)
    rep = Report("factor", {**_config(args), "variety": V.provenance})
    t = time.perf_counter()
    try:
        fac = factor_presentation(M, V)
        rep.add(Check("factor", PASS, EXACT, fac.as_dict(), time.perf_counter() - t))
        for k, v in fac.as_dict().items():
            print(f"{k}: {v}")
    except FactorizationError as exc:
        rep.add(Check("factor", FAIL, EXACT, {"error": str(exc)}, time.perf_counter() - t))
    return _emit(rep, args)


def cmd_acceptance(args) -> int:
    F = Field.from_spec(args.field or "gf:32003")
    only = {int(x) for x in args.criteria.split(",")} if args.criteria else None
    cfg = SuiteConfig(seed=args.seed, field=F, budget=args.budget, trials=args.trials, tiny=args.tiny)
    rep = run_acceptance(cfg, only, echo=print)
    if args.json:
        Path(args.json).write_text(rep.to_json(args.timings))
    print(f"verdict: {rep.verdict}")
    return rep.exit_code()


def cmd_report(args) -> int:
    worst = 0
    for path in args.reports:
        d = json.loads(Path(path).read_text())
        if d.get("schema") != 1:
            print(f"{path}: unsupported schema {d.get('schema')!r}", file=sys.stderr)
            return 2
        print(f"== {path}: {d['command']} ({d['verdict']})")
        for c in d["checks"]:
            ms = f"  {c['timing_ms']} ms" if "timing_ms" in c else ""
            print(f"  {c['status'].upper():8s} {c['name']}  [{c['provenance']}]{ms}")
        code = {PASS: 0, FAIL: 2}.get(d["verdict"], 3)
        worst = max(worst, code)
    return worst


# ---------------------------------------------------------------------------

def _seed(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="q or gf:<prime> (default: the variety's field / gf:32003)")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Groebner step cap")
    common.add_argument("--trials", type=int, default=5, help="Terracini trials")
    common.add_argument("--json", default=None, metavar="PATH", help="write the JSON report here")
    common.add_argument("--q", type=int, default=None)
    common.add_argument("--timings", action="store_true", help="include wall-clock timings in JSON")

    ap = argparse.ArgumentParser(prog="secdet", description=__doc__)
    ap.add_argument("--version", action="version", version=f"secdet {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("example", parents=[common], help="write variety and presentation files")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--kind", choices=["veronese"], default=None, help="symmetric presentation (rnc of even degree)")
    p.add_argument("--gamma", default=None, help="del Pezzo points 'a b c; ...'")
    p.add_argument("--out", default=".")
    p.add_argument("--name", default=None)
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("check", parents=[common], help="certify a presentation (or classify without one)")
    p.add_argument("variety")
    p.add_argument("matrix", nargs="?")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("glue", parents=[common], help="project a presentation and glue it back")
    p.add_argument("variety")
    p.add_argument("matrix", nargs="?")
    p.add_argument("--mode", choices=["scroll1", "scroll2", "veronese"], required=True)
    p.add_argument("--negative", action="store_true", help="also run the single-condition perturbations")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("factor", parents=[common], help="pullback factorization s_i t_j u")
    p.add_argument("variety")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("acceptance", parents=[common], help="run the acceptance suite")
    p.add_argument("--criteria", default=None, help="comma-separated criterion numbers")
    p.add_argument("--tiny", action="store_true", help="only the small instances")
    p.set_defaults(func=cmd_acceptance)

    p = sub.add_parser("report", help="summarize JSON reports")
    p.add_argument("reports", nargs="+")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, VarietyError, MatrixError, PolyError, FieldError, PresentationError, ValueError) as exc:
        print(f"secdet: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
