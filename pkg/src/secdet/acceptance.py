"""The acceptance suite: ten criteria over a fixed instance table.

Each criterion returns a Check whose data lists the per-instance outcomes.
Runtime limits are part of the pass condition.  Random draws use a generator
seeded by (seed, criterion number), so criteria are independent of run order.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .gluing import GlueError, glue_roundtrip, negative_matrix, uniqueness_check
from .linmat import LinearMatrix, is_one_generic, minors, minors_ideal, random_gl_action
from .report import CHARP, DEFAULT_SEED, EXACT, FAIL, PASS, SAMPLED, SKIPPED, Check, Report, status_of
from .resolutions import resolution_check
from .secant import (
    N_SAMPLES,
    TERRACINI_TRIALS,
    FactorizationError,
    classify,
    factor_presentation,
    presentation,
    sample_secant_points,
    secant_ideal_tiny,
    secant_ranks,
    terracini,
)
from .symkernel import BudgetExceeded, DEFAULT_BUDGET, GF32003, QQ, Field, PolyRing, ideal_equal
from .varieties import (
    make_delpezzo_blowup,
    make_p1p1_22,
    make_scroll,
    make_segre,
    make_veronese,
)


@dataclass(frozen=True)
class Instance:
    name: str
    build: Callable
    q: int
    kind: str | None           # None: scroll presentation; "veronese": symmetric one
    expected: tuple            # (codim, degree)
    limit: float = 60.0
    gf_only: bool = False
    direct: bool = True        # has an index-built presentation for the uniqueness check
    tiny: bool = False

    def variety(self, F: Field):
        return self.build(F)


INSTANCES = (
    Instance("twisted_cubic", lambda F: make_scroll(3, field=F), 1, None, (2, 3), tiny=True),
    Instance("S(3,4)", lambda F: make_scroll(3, 4, field=F), 2, None, (3, 10), tiny=True),
    Instance("rnc6_veronese", lambda F: make_scroll(6, field=F), 2, "veronese", (3, 10), tiny=True),
    Instance("nu2(P3)", lambda F: make_veronese(3, 2, field=F), 2, None, (3, 10)),
    Instance("sigma(P1xP3)", lambda F: make_segre(1, 3, field=F), 1, None, (3, 4), tiny=True),
    Instance("delpezzo_s1", lambda F: make_delpezzo_blowup([(0, 0, 1)], F), 2, None, (3, 10), direct=False),
    Instance("nu3(P2)", lambda F: make_veronese(2, 3, field=F), 2, None, (4, 15), limit=300.0, gf_only=True,
             direct=False),
    Instance("P1xP1_O(2,2)", lambda F: make_p1p1_22(F), 2, None, (3, 10)),
)

GLUE_CASES = (
    ("rnc5", lambda F: make_scroll(5, field=F), 1, "scroll1"),
    ("sigma(P1xP3)", lambda F: make_segre(1, 3, field=F), 1, "scroll1"),
    ("S(3,4)", lambda F: make_scroll(3, 4, field=F), 2, "scroll2"),
    ("delpezzo_s1", lambda F: make_delpezzo_blowup([(0, 0, 1)], F), 2, "scroll2"),
    ("rnc6", lambda F: make_scroll(6, field=F), 2, "veronese"),
    ("nu2(P3)", lambda F: make_veronese(3, 2, field=F), 2, "veronese"),
    ("P1xP1_O(2,2)", lambda F: make_p1p1_22(F), 2, "veronese"),
)

GLUE_SEEDS = 5
GLUE_LIMIT = 30.0


@dataclass
class SuiteConfig:
    seed: int = DEFAULT_SEED
    field: Field = GF32003
    budget: int | None = DEFAULT_BUDGET
    trials: int = TERRACINI_TRIALS
    samples: int = N_SAMPLES
    tiny: bool = False

    def rng(self, k: int):
        return np.random.default_rng([self.seed, k])

    def instances(self):
        out = [I for I in INSTANCES if not self.tiny or I.tiny]
        return out

    def as_dict(self) -> dict:
        return {"seed": self.seed, "field": self.field.spec(), "budget": self.budget, "trials": self.trials,
                "samples": self.samples, "tiny": self.tiny}


def _timed(fn, *args, **kw):
    t = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t


_PRES: dict = {}


def instance_matrix(I: Instance, F: Field) -> tuple:
    key = (I.name, F.spec())
    if key not in _PRES:
        V = I.variety(F)
        _PRES[key] = (V, presentation(V, I.q, I.kind))
    return _PRES[key]


def _finish(name: str, items: dict, seconds: float, provenance: str = EXACT) -> Check:
    flags = [v.get("pass") for v in items.values()]
    if any(f is False for f in flags):
        st = FAIL
    elif any(f is None for f in flags):
        st = SKIPPED
    else:
        st = PASS
    return Check(name, st, provenance, items, seconds)


def _charp(F: Field) -> str:
    return CHARP if F.characteristic else EXACT


# ---------------------------------------------------------------------------
# the ten criteria

def c01_degree_table(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    items = {}
    runs = [(I, cfg.field) for I in cfg.instances()]
    if cfg.field.characteristic:
        runs.append((INSTANCES[0], QQ))       # the twisted cubic is also checked over Q
    for I, F in runs:
        key = I.name if F == cfg.field else f"{I.name}@Q"
        if I.gf_only and not F.characteristic:
            items[key] = {"pass": None, "reason": "GF only"}
            continue
        limit = 5.0 if (not F.characteristic and F != cfg.field) else I.limit
        try:
            (V, M) = instance_matrix(I, F)
            hd, sec = _timed(lambda: minors_ideal(M, I.q + 1, cfg.budget).hilbert_data())
        except BudgetExceeded:
            items[key] = {"pass": None, "reason": "budget"}
            continue
        got = (hd.codimension, hd.degree)
        items[key] = {"pass": got == I.expected and sec <= limit, "shape": list(M.shape),
                      "codim_degree": list(got), "expected": list(I.expected), "limit_s": limit}
    return _finish("C01 degree/codimension table", items, time.perf_counter() - t0, _charp(cfg.field))


def c02_terracini(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    rng = cfg.rng(2)
    items = {}
    for I in cfg.instances():
        V, M = instance_matrix(I, cfg.field)
        (dim, e), sec = _timed(terracini, V, I.q, rng, cfg.trials)
        want = 3 if M.symmetric else M.b - I.q
        items[I.name] = {"pass": e == want and sec <= 1.0, "e": e, "expected": want, "trials": cfg.trials}
    return _finish("C02 terracini codimension", items, time.perf_counter() - t0, SAMPLED)


def _witness_ok(M: LinearMatrix, res) -> bool:
    if res.generic or res.witness is None:
        return False
    v, w = res.witness
    return any(v) and any(w) and not any(M.bilinear(v, w))


def c03_one_generic(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    items = {}
    F = cfg.field
    for I in cfg.instances():
        V, M = instance_matrix(I, F)
        res, sec = _timed(is_one_generic, M, cfg.budget)
        items[I.name] = {"pass": res.generic and sec <= 5.0, "one_generic": res.generic}
        co = [list(r) for r in M.coeffs]
        co[0][0] = tuple(F.zero for _ in co[0][0])
        if M.symmetric:
            Z = LinearMatrix(M.ring, co, True)
        else:
            Z = LinearMatrix(M.ring, co)
        res, sec = _timed(is_one_generic, Z, cfg.budget)
        items[I.name + "/zeroed"] = {"pass": _witness_ok(Z, res) and sec <= 5.0, "one_generic": res.generic,
                                     "witness": res.witness}
    R = PolyRing(("x", "y"), F)
    X = LinearMatrix.from_entries(R, [["x", "y"], ["y", "x"]])
    res, sec = _timed(is_one_generic, X, cfg.budget)
    items["[[x,y],[y,x]]"] = {"pass": _witness_ok(X, res) and sec <= 5.0, "one_generic": res.generic,
                              "witness": res.witness}
    return _finish("C03 one-genericity", items, time.perf_counter() - t0, EXACT)


def c04_secant_vanishing(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    rng = cfg.rng(4)
    items = {}
    for I in cfg.instances():
        V, M = instance_matrix(I, cfg.field)
        t = time.perf_counter()
        ranks = secant_ranks(M, sample_secant_points(V, I.q, cfg.samples, rng))
        sec = time.perf_counter() - t
        good = int(np.sum(ranks <= I.q))
        items[I.name] = {"pass": good == cfg.samples and sec <= 5.0, "vanishing": f"{good}/{cfg.samples}",
                         "max_rank": int(ranks.max())}
    return _finish("C04 secant vanishing", items, time.perf_counter() - t0, SAMPLED)


def c05_gluing(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    items = {}
    F = cfg.field
    tiny_names = {"rnc5", "sigma(P1xP3)", "S(3,4)", "rnc6"}
    for name, build, q, mode in GLUE_CASES:
        if cfg.tiny and name not in tiny_names:
            continue
        V = build(F)
        M = presentation(V, q, "veronese" if mode == "veronese" else None)
        per_seed = []
        for k in range(GLUE_SEEDS):
            rng = np.random.default_rng([cfg.seed, 5, k])
            try:
                r, sec = _timed(glue_roundtrip, V, q, mode, rng, M)
                per_seed.append(bool(r["roundtrip"]) and all(v is not False for v in r["checks"].values())
                                and sec <= GLUE_LIMIT)
            except GlueError as exc:
                per_seed.append(False)
                items[f"{name}/{mode}/seed{k}"] = {"pass": False, "error": f"{exc.condition}: {exc}"}
        items[f"{name}/{mode}"] = {"pass": all(per_seed), "seeds": f"{sum(per_seed)}/{GLUE_SEEDS}"}
        neg = negative_matrix(V, q, mode, cfg.rng(50), M)
        for cond, res in neg.items():
            exact = res["failed"] == [cond] and res["glue_error"] == cond
            items[f"{name}/{mode}/negative{cond}"] = {"pass": exact, **res}
    return _finish("C05 gluing round-trips and negative tests", items, time.perf_counter() - t0, EXACT)


def c06_uniqueness(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    rng = cfg.rng(6)
    items = {}
    for I in cfg.instances():
        if not I.direct:
            continue
        V, _ = instance_matrix(I, cfg.field)
        kind = "veronese" if I.kind == "veronese" or (I.name in ("nu2(P3)", "P1xP1_O(2,2)")) else "scroll"
        res, sec = _timed(uniqueness_check, V, I.q, kind, rng)
        items[I.name] = {"pass": res["equivalent"] and sec <= 10.0, **res}
    return _finish("C06 uniqueness", items, time.perf_counter() - t0, EXACT)


def c07_resolutions(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    items = {}
    for I in cfg.instances():
        if I.gf_only and not cfg.field.characteristic:
            items[I.name] = {"pass": None, "reason": "GF only"}
            continue
        V, M = instance_matrix(I, cfg.field)
        e = 3 if M.symmetric else M.b - I.q
        try:
            res, sec = _timed(resolution_check, M, I.q, e, cfg.budget)
        except BudgetExceeded:
            items[I.name] = {"pass": None, "reason": "budget"}
            continue
        ok = res.consistent and sec <= 60.0
        if res.kind == "veronese":
            ok = ok and res.gb_numerator[:4] == (1, 0, 0, -10)
        items[I.name] = {"pass": ok, **res.as_dict()}
    return _finish("C07 resolution consistency", items, time.perf_counter() - t0, _charp(cfg.field))


def c08_factorization(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    rng = cfg.rng(8)
    items = {}
    F = cfg.field
    for I in cfg.instances():
        V, M = instance_matrix(I, F)
        if not M.symmetric:
            continue
        for label, N in (("", M), ("/shuffled", random_gl_action(M, rng)[1])):
            t = time.perf_counter()
            try:
                f = factor_presentation(N, V)
                ok = f.alpha is not None and all(x == y.scale(f.alpha) for x, y in zip(f.s, f.t))
                items[I.name + label] = {"pass": ok and time.perf_counter() - t <= 5.0, "alpha": f.alpha}
            except FactorizationError as exc:
                items[I.name + label] = {"pass": False, "error": str(exc)}
    V = make_scroll(1, 5, field=F)
    M = presentation(V, 2)
    t = time.perf_counter()
    f = factor_presentation(M, V)
    l2 = V.pring.gen(V.pring.variables.index("l2"))
    items["S(1,5)"] = {"pass": f.u == l2 and time.perf_counter() - t <= 5.0, "u": f.u}
    V = make_segre(1, 3, field=F)
    M = presentation(V, 1)
    t = time.perf_counter()
    f = factor_presentation(M, V)
    R = V.pring
    lit = (f.u == R.one() and [str(x) for x in f.s] == ["s0", "s1"]
           and [str(x) for x in f.t] == [f"t{j}" for j in range(4)])
    items["sigma(P1xP3)"] = {"pass": lit and time.perf_counter() - t <= 5.0, **f.as_dict()}
    return _finish("C08 factorization", items, time.perf_counter() - t0, EXACT)


def c09_neither(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    V = make_veronese(4, 2, field=cfg.field)
    res, sec = _timed(classify, V, 2, cfg.rng(9), None, cfg.budget, cfg.samples)
    tang = res["tangential"]
    ok = (res["type"] == "neither" and tang["degree"] == 8 and tang["degree"] != tang["codim"] + 1
          and sec <= 120.0)
    items = {"nu2(P4)": {"pass": ok, "type": res["type"], "e": res["e"], "tangential": tang}}
    return _finish("C09 negative classification", items, time.perf_counter() - t0, _charp(cfg.field))


def c10_tiny_oracle(cfg: SuiteConfig) -> Check:
    t0 = time.perf_counter()
    V = make_scroll(4, field=cfg.field)
    I, sec = _timed(secant_ideal_tiny, V, 2, 3, cfg.rng(10), budget=cfg.budget)
    H = LinearMatrix.hankel(V.ring, 3, 3)
    det = minors(H, 3)[0]
    gens = I.generators
    one = len(gens) == 1 and gens[0].monic() == det.monic()
    same = ideal_equal(I, minors_ideal(H, 3, cfg.budget))
    items = {"rnc4/q=2/D=3": {"pass": one and same and sec <= 30.0, "generators": [str(g) for g in gens],
                              "catalecticant": str(det), "ideal_equal": same}}
    return _finish("C10 tiny secant oracle", items, time.perf_counter() - t0, _charp(cfg.field))


CRITERIA = (
    c01_degree_table, c02_terracini, c03_one_generic, c04_secant_vanishing, c05_gluing,
    c06_uniqueness, c07_resolutions, c08_factorization, c09_neither, c10_tiny_oracle,
)


def run_acceptance(cfg: SuiteConfig, only: set | None = None, echo=None) -> Report:
    rep = Report("acceptance", cfg.as_dict())
    for k, crit in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        chk = rep.add(crit(cfg))
        if echo is not None:
            echo(f"{chk.status.upper():8s} {chk.name}")
    return rep
