"""``deligne-kit`` command line.

Every command prints one JSON report (``--human`` for ``key=value`` text).
Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import artin as artin_mod
from .defring import (HypothesisViolated, compare_ce_kuranishi, def_ring, tangent_dim, theorem2_check)
from .deligne import enumerate_mc, nilpotent, pi0
from .descent import (CoverDiagram, HypothesisNotVerified, SignCheckFailed, cech_complex, homotopy_sheaf_check,
                      stack_check, validate as validate_cover)
from .dgla import DgLieAlgebra, cohomology, nilpotency_class, tensor_with_ideal, validate as validate_dgla
from .fields import FieldError, parse_field
from .glin import ShapeMismatch
from .library import (MUTANTS, builtin_artin, builtin_cover, builtin_dgla, builtin_mutant, builtin_rep, catalog,
                      load_example)
from .repdef import Representation, governance_check, rep_def_groupoid
from .suite import run_suite


class InputError(Exception):
    pass


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: not valid JSON ({e})") from e


def load_dgla(source, field):
    if os.path.isfile(source):
        data = _read_json(source)
        if data.get("kind", "dgla") != "dgla":
            raise InputError(f"{source} holds a {data.get('kind')}, not a dgla")
        g = DgLieAlgebra.from_json(data)
        return g.change_field(parse_field(field)) if field else g
    return builtin_dgla(source, field or "F5")


def load_artin(source):
    if os.path.isfile(source):
        return artin_mod.ArtinAlgebra.from_json(_read_json(source))
    return builtin_artin(source)


def load_cover(source):
    if os.path.isfile(source):
        return CoverDiagram.from_json(_read_json(source))
    return builtin_cover(source)


def load_rep(source):
    if os.path.isfile(source):
        return Representation.from_json(_read_json(source))
    return builtin_rep(source)


def load_any(source):
    """``(kind, object)`` from a JSON file (by its ``kind``) or a catalog name."""
    if os.path.isfile(source):
        data = _read_json(source)
        kind = data.get("kind")
        loaders = {"dgla": DgLieAlgebra.from_json, "artin": artin_mod.ArtinAlgebra.from_json,
                   "cover": CoverDiagram.from_json, "representation": Representation.from_json}
        if kind not in loaders:
            raise InputError(f"{source}: unknown kind {kind!r}")
        return kind, loaders[kind](data)
    if source in MUTANTS:
        return builtin_mutant(source)
    for kind, name in catalog():
        if name == source:
            return kind, load_example(kind, name)
    raise InputError(f"{source!r} is neither a file nor a built-in example")


# --------------------------------------------------------------------------
# commands: each returns (ok, result dict)

def cmd_validate(a):
    kind, obj = load_any(a.target)
    rep = validate_dgla(obj) if kind == "dgla" else validate_cover(obj) if kind == "cover" else obj.validate()
    return rep.ok, {"kind": kind, **rep.to_json()}


def cmd_cohomology(a):
    g = load_dgla(a.dgla, a.field)
    out = {}
    for d in g.degrees:
        H = cohomology(g, d)
        out[str(d)] = {"dim": H.dim, "representatives": [g.format(d, v) for v in H.section.columns()]}
    return True, {"dgla": g.name, "field": g.field.name, "cohomology": out}


def cmd_nilpotency(a):
    g = load_dgla(a.dgla, a.field)
    if a.artin:
        g = tensor_with_ideal(g, load_artin(a.artin))
    c = nilpotency_class(g)
    return c is not None, {"dgla": g.name, "nilpotency_class": c}


def _tensor(a):
    A = load_artin(a.artin)
    g = load_dgla(a.dgla, A.field.name)
    return g, A, nilpotent(tensor_with_ideal(g, A))


def cmd_mc(a):
    g, A, h = _tensor(a)
    mc = enumerate_mc(h)
    shown = mc if a.limit is None else mc[:a.limit]
    return True, {"dgla": g.name, "artin": A.label, "count": len(mc), "elements": [h.format(1, y) for y in shown]}


def cmd_pi0(a):
    g, A, h = _tensor(a)
    s = pi0(h)
    return True, {"dgla": g.name, "artin": A.label, "count": s.count, **s.to_json()}


def cmd_def_ring(a):
    g = load_dgla(a.dgla, a.field)
    p = def_ring(g, a.order)
    return True, {"dgla": g.name, "order": a.order, "presentation": str(p), **p.to_json()}


def cmd_ks_check(a):
    g = load_dgla(a.dgla, a.field)
    p = def_ring(g, a.order)
    h1 = cohomology(g, 1).dim
    out = {"dgla": g.name, "tangent_dim": tangent_dim(p), "h1": h1}
    ok = out["tangent_dim"] == h1
    if g.field.is_finite:
        A = artin_mod.make_truncated_polynomial(g.field, ["e"], 2)
        n = pi0(tensor_with_ideal(g, A)).count
        out["pi0_eps"] = n
        out["expected_pi0_eps"] = g.field.characteristic ** (h1 * A.m_dim)
        ok = ok and n == out["expected_pi0_eps"]
    out["match"] = ok
    return ok, out


def cmd_thm1(a):
    g = load_dgla(a.dgla, a.field)
    c = compare_ce_kuranishi(g, a.order)
    return c.ok, {"dgla": g.name, "order": a.order, **c.to_json()}


def cmd_thm2(a):
    A = load_artin(a.artin)
    g = load_dgla(a.dgla, A.field.name)
    r = theorem2_check(g, A, a.order)
    return r.match, {"dgla": g.name, "artin": A.label, **r.to_json()}


def cmd_cech(a):
    C = load_cover(a.cover)
    X = cech_complex(C)
    return True, {"cover": C.name, "dims": {str(k): X.space.dim(k) for k in X.space.degrees},
                  "cohomology": {str(k): v for k, v in X.cohomology_dims().items()}}


def cmd_sheaf_check(a):
    C = load_cover(a.cover)
    h = homotopy_sheaf_check(C)
    return all(h.values()), {"cover": C.name, "quasi_isomorphism": all(h.values()),
                             "degrees": {str(k): v for k, v in sorted(h.items())}}


def cmd_stack_check(a):
    C = load_cover(a.cover)
    A = load_artin(a.artin)
    s = stack_check(C, A, bypass_hypothesis=a.bypass_hypothesis)
    return s.equivalent, {"cover": C.name, "artin": A.label, **s.to_json()}


def cmd_rep_def(a):
    r = load_rep(a.rep)
    A = load_artin(a.artin)
    G = rep_def_groupoid(r, A)
    return True, {"rep": r.name, "artin": A.label, "count": G.summary.count, **G.summary.to_json()}


def cmd_governance(a):
    r = load_rep(a.rep)
    A = load_artin(a.artin)
    res = governance_check(r, A)
    return res.equivalent, {"rep": r.name, "artin": A.label, **res.to_json()}


def cmd_examples(a):
    if a.action == "list":
        return True, {"examples": [{"kind": k, "name": n} for k, n in catalog()]}
    if not a.name:
        raise InputError("examples emit needs a name")
    kind, obj = load_any(a.name)
    return True, obj.to_json()


def cmd_suite(a):
    rep = run_suite(seed=a.seed, jobs=a.jobs, samples=a.samples)
    return rep["ok"], rep


COMMANDS = {
    "validate": cmd_validate, "cohomology": cmd_cohomology, "nilpotency": cmd_nilpotency, "mc": cmd_mc,
    "pi0": cmd_pi0, "def-ring": cmd_def_ring, "ks-check": cmd_ks_check, "thm1-compare": cmd_thm1,
    "thm2-check": cmd_thm2, "cech": cmd_cech, "sheaf-check": cmd_sheaf_check, "stack-check": cmd_stack_check,
    "rep-def": cmd_rep_def, "governance-check": cmd_governance, "examples": cmd_examples, "suite": cmd_suite,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true", help="key=value text instead of JSON")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks (echoed in the report)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for independent checks")
    p = argparse.ArgumentParser(prog="deligne-kit", description="Deformation theory via dg Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    def dgla_args(sp, field=True):
        sp.add_argument("--dgla", required=True, help="built-in name or JSON file")
        if field:
            sp.add_argument("--field", default=None, help="field for built-ins, e.g. Q, F5")

    sp = add("validate", "check the axioms of a dgla, Artin algebra, cover or representation")
    sp.add_argument("target", help="JSON file or built-in name")
    dgla_args(add("cohomology", "cohomology dimensions and representatives"))
    sp = add("nilpotency", "nilpotency class of g or m_A ⊗ g")
    dgla_args(sp)
    sp.add_argument("--artin")
    sp = add("mc", "Maurer-Cartan elements of m_A ⊗ g")
    dgla_args(sp, field=False)
    sp.add_argument("--artin", required=True)
    sp.add_argument("--limit", type=int, default=None)
    sp = add("pi0", "isomorphism classes of the Deligne groupoid of m_A ⊗ g")
    dgla_args(sp, field=False)
    sp.add_argument("--artin", required=True)
    for name, help_ in (("def-ring", "truncated deformation ring presentation"),
                        ("ks-check", "tangent space vs H¹"),
                        ("thm1-compare", "CE dual algebra vs Kuranishi presentation")):
        sp = add(name, help_)
        dgla_args(sp)
        sp.add_argument("--order", type=int, default=3)
    sp = add("thm2-check", "Hom(deformation ring, A) vs π₀")
    dgla_args(sp, field=False)
    sp.add_argument("--artin", required=True)
    sp.add_argument("--order", type=int, default=None)
    for name, help_ in (("cech", "Čech complex of a cover"), ("sheaf-check", "homotopy-sheaf test")):
        add(name, help_).add_argument("--cover", required=True)
    sp = add("stack-check", "global Deligne groupoid vs descent groupoid")
    sp.add_argument("--cover", required=True)
    sp.add_argument("--artin", required=True)
    sp.add_argument("--bypass-hypothesis", action="store_true")
    for name, help_ in (("rep-def", "deformations of a representation"),
                        ("governance-check", "rep deformations vs Deligne groupoid of the cochain dgla")):
        sp = add(name, help_)
        sp.add_argument("--rep", required=True)
        sp.add_argument("--artin", required=True)
    sp = add("examples", "list or emit built-in examples")
    sp.add_argument("action", choices=["list", "emit"])
    sp.add_argument("name", nargs="?")
    sp = add("suite", "run the full check suite")
    sp.add_argument("--samples", type=int, default=30, help="gauge-law samples per (dgla, A) pair")
    return p


def _human(obj, prefix=""):
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            key = f"{prefix}{k}"
            if isinstance(v, (dict, list)):
                lines.extend(_human(v, key + "."))
            else:
                lines.append(f"{key}={json.dumps(v) if not isinstance(v, str) else v}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            lines.extend(_human(v, f"{prefix}{i}.") if isinstance(v, (dict, list)) else [f"{prefix}{i}={v}"])
    return lines


def _emit(report, human):
    if human:
        print("\n".join(_human(report)))
    else:
        print(json.dumps(report, ensure_ascii=False, indent=1))


def main(argv=None):
    parser = build_parser()
    a = parser.parse_args(argv)
    try:
        ok, result = COMMANDS[a.command](a)
    except (InputError, KeyError, ValueError, FileNotFoundError, FieldError, ShapeMismatch) as e:
        if isinstance(e, (HypothesisViolated, HypothesisNotVerified, SignCheckFailed)):
            report = {"command": a.command, "seed": a.seed, "ok": False, "error": str(e), "kind": type(e).__name__}
            _emit(report, a.human)
            return 1
        msg = str(e.args[0]) if isinstance(e, KeyError) and e.args else str(e)
        report = {"command": a.command, "seed": a.seed, "ok": False, "input_error": msg}
        _emit(report, a.human)
        return 2
    if a.command == "examples" and a.action == "emit":
        _emit(result, a.human)
        return 0
    report = {"command": a.command, "seed": a.seed, "ok": bool(ok), "result": result}
    _emit(report, a.human)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
