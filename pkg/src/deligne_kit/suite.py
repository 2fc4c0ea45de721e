"""The end-to-end check suite behind ``deligne-kit suite``.

Work is split into independent cases that may run in worker processes; the
report lists cases in a fixed order and contains no timings, so it is
byte-identical for any ``--jobs`` value.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor

from .artin import parse_artin
from .defring import compare_ce_kuranishi, def_ring, tangent_dim, theorem2_check
from .deligne import (bch, curvature, enumerate_mc, first_order_term, gauge_act, infinitesimal_action,
                      gauge_vector_field, nilpotent, pi0)
from .descent import HypothesisNotVerified, homotopy_sheaf_check, stack_check, validate as validate_cover
from .dgla import cohomology, tensor_with_ideal, validate as validate_dgla
from .fields import parse_field
from .library import (MUTANTS, builtin_cover, builtin_mutant, builtin_rep, catalog, load_example, builtin_dgla)
from .repdef import governance_check

H0_ZERO = ("abelian", "abelian(1,0)", "abelian(1,1)", "acyclic", "obstruction", "random")
THM2_DGLAS = ("abelian", "acyclic", "obstruction", "random")
THM2_ARTINS = ("{p}[e]/e^2", "{p}[t]/t^3", "{p}[x,y]/m^2")
GAUGE_PAIRS = (("acyclic", "F5[e]/e^2"), ("acyclic", "F5[t]/t^3"), ("random", "F5[t]/t^3"),
               ("random", "F7[t]/t^3"), ("random", "F7[x,y]/m^2"), ("heisenberg", "F5[t]/t^3"),
               ("obstruction", "F5[t]/t^3"))
COVER_CASES = tuple((c, a) for c in ("constant2:abelian", "constant3:abelian", "constant2:obstruction",
                                     "constant3:obstruction") for a in ("F5[e]/e^2", "F5[t]/t^3"))


def _validate_any(kind, obj):
    if kind == "dgla":
        return validate_dgla(obj)
    if kind == "cover":
        return validate_cover(obj)
    return obj.validate()


def case_axioms(kind, name):
    if kind == "mutant":
        mk, obj = builtin_mutant(name)
        rep = _validate_any(mk, obj)
        failed = rep.failed()
        witness = [failed[0].name] + [str(w) for w in failed[0].witness] if failed else None
        return {"case": f"mutant {name}", "ok": bool(failed and failed[0].witness), "witness": witness}
    rep = _validate_any(kind, load_example(kind, name))
    return {"case": f"{kind} {name}", "ok": rep.ok}


def case_gauge(dgla, artin, seed, samples):
    """Gauge laws on sampled ``(x, x′, y)``; clause 3 is the literal ``dx + [x,y]`` first-order law."""
    A = parse_artin(artin)
    g = builtin_dgla(dgla, A.field)
    h = nilpotent(tensor_with_ideal(g, A))
    F = h.field
    rng = random.Random(f"{seed}:{dgla}:{artin}")
    mc = enumerate_mc(h)
    counts = {"mc_preserved": 0, "composition": 0, "first_order_literal": 0, "first_order_adopted": 0}
    for _ in range(samples):
        x = tuple(F(rng.randrange(F.characteristic)) for _ in range(h.dim(0)))
        xp = tuple(F(rng.randrange(F.characteristic)) for _ in range(h.dim(0)))
        y = mc[rng.randrange(len(mc))]
        z = gauge_act(h, x, y, check=False)
        if not any(curvature(h, z)):
            counts["mc_preserved"] += 1
        if gauge_act(h, bch(h, x, xp), y, check=False) == gauge_act(h, x, gauge_act(h, xp, y, check=False), check=False):
            counts["composition"] += 1
        fo = first_order_term(h, x, y)
        if fo == infinitesimal_action(h, x, y):
            counts["first_order_literal"] += 1
        if fo == gauge_vector_field(h, x, y):
            counts["first_order_adopted"] += 1
    return {"case": f"{dgla} x {artin}", "samples": samples, "passed": counts}


def case_ks(dgla):
    out = {"case": dgla}
    for p in ("Q", "F5"):
        g = builtin_dgla(dgla, p)
        out[f"tangent_{p}"] = tangent_dim(def_ring(g, 3))
        out[f"h1_{p}"] = cohomology(g, 1).dim
    g = builtin_dgla(dgla, "F5")
    A = parse_artin("F5[e]/e^2")
    out["pi0_eps"] = pi0(tensor_with_ideal(g, A)).count
    out["expected_pi0_eps"] = 5 ** (out["h1_F5"] * A.m_dim)
    out["ok"] = (out["tangent_Q"] == out["h1_Q"] and out["tangent_F5"] == out["h1_F5"]
                 and out["pi0_eps"] == out["expected_pi0_eps"])
    return out


def case_thm2(dgla, artin):
    A = parse_artin(artin)
    r = theorem2_check(builtin_dgla(dgla, A.field), A)
    return {"case": f"{dgla} x {artin}", "ok": r.match, "lhs": r.lhs, "rhs": r.rhs,
            "bijection": [list(p) for p in r.bijection]}


def case_thm1(dgla, field):
    c = compare_ce_kuranishi(builtin_dgla(dgla, field), 3)
    return {"case": f"{dgla} over {field}", "ok": c.ok, "ce_dim": c.ce_dim, "def_ring_dim": c.def_dim,
            "presentation": str(c.presentation)}


def case_cover(cover, artin):
    C = builtin_cover(cover)
    hyp = homotopy_sheaf_check(C)
    s = stack_check(C, parse_artin(artin))
    return {"case": f"{cover} x {artin}", "ok": all(hyp.values()) and s.equivalent,
            "sheaf": all(hyp.values()), "global_classes": s.global_classes, "descent_classes": s.descent_classes}


def case_split(artin):
    C = builtin_cover("split:obstruction")
    hyp = homotopy_sheaf_check(C)
    try:
        stack_check(C, parse_artin(artin))
        refused = False
    except HypothesisNotVerified:
        refused = True
    s = stack_check(C, parse_artin(artin), bypass_hypothesis=True)
    return {"case": f"split:obstruction x {artin}", "ok": (not all(hyp.values())) and refused and not s.equivalent,
            "sheaf": all(hyp.values()), "refused": refused, "equivalent_when_bypassed": s.equivalent,
            "global_classes": s.global_classes, "descent_classes": s.descent_classes}


def case_governance(rep, artin):
    r = governance_check(builtin_rep(rep), parse_artin(artin))
    return {"case": f"{rep} x {artin}", "ok": r.equivalent, "deligne_classes": r.deligne_classes,
            "rep_classes": r.rep_classes}


CASES = {
    "axioms": case_axioms, "gauge": case_gauge, "ks": case_ks, "thm2": case_thm2, "thm1": case_thm1,
    "cover": case_cover, "split": case_split, "governance": case_governance,
}


def _run(task):
    kind, args = task
    return CASES[kind](*args)


def plan(seed=0, samples=30):
    """``(criterion, [(case kind, args)])`` in canonical order."""
    out = [(1, [("axioms", (k, n)) for k, n in catalog()])]
    out.append((2, [("gauge", (g, a, seed, samples)) for g, a in GAUGE_PAIRS]))
    out.append((3, [("ks", (g,)) for g in H0_ZERO]))
    out.append((4, [("thm2", (g, a.format(p=p))) for p in ("F5", "F7") for g in THM2_DGLAS for a in THM2_ARTINS]))
    out.append((5, [("thm1", (g, f)) for f in ("Q", "F5", "F7") for g in H0_ZERO]))
    out.append((6, [("cover", ca) for ca in COVER_CASES] + [("split", (a,)) for a in ("F5[e]/e^2", "F5[t]/t^3")]))
    out.append((7, [("governance", ("C5-trivial", "F5[e]/e^2")), ("governance", ("C3-trivial", "F5[e]/e^2"))]))
    return out


def _criterion_ok(crit, cases):
    if crit == 2:
        total = sum(c["samples"] for c in cases)
        lit = all(c["passed"]["mc_preserved"] == c["samples"] and c["passed"]["composition"] == c["samples"]
                  and c["passed"]["first_order_literal"] == c["samples"] for c in cases)
        return total >= 200 and lit
    return all(c["ok"] for c in cases)


def run_suite(seed=0, jobs=1, samples=30):
    tasks = plan(seed, samples)
    flat = [t for _, ts in tasks for t in ts]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run, flat))
    else:
        results = [_run(t) for t in flat]
    report = {"seed": seed, "criteria": []}
    k = 0
    for crit, ts in tasks:
        cases = results[k:k + len(ts)]
        k += len(ts)
        report["criteria"].append({"criterion": crit, "ok": _criterion_ok(crit, cases), "cases": cases})
    report["ok"] = all(c["ok"] for c in report["criteria"])
    return report
