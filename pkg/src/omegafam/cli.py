"""Command-line front end over JSON workspaces.

    omegafam --workspace ws.json --cmd validate --object fam
    omegafam --workspace ws.json --cmd construct --recipe induce-ns --args fam --name ns
    omegafam --workspace ws.json --cmd cohomology --object fam --n-max 2
    omegafam --workspace ws.json --cmd deform --object fam --order 2 --seed 1
    omegafam --workspace ws.json --cmd search --target rb --algebra k --coeffs 0,1

Exit status: 0 when every verdict passes, 1 when one fails, 2 on usage or
parse errors.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

import numpy as np

from . import algebra as alg
from . import coalgebra as coal
from . import cohomology as coh
from . import deformation as dfm
from . import family_algebras as fa
from . import families as fm
from . import semigroup as sg
from . import yang_baxter as yb
from .exact_linalg import is_zero, scalar, to_jsonable
from .report import ValidationReport
from .search import DEFAULT_BOUND, TARGETS, SearchBoundExceeded, search
from .workspace import WorkspaceError, dump_workspace, family_context, load_workspace, parse_workspace

COMMANDS = ("validate", "construct", "cohomology", "deform", "search")


class UsageError(ValueError):
    pass


class CommandFailed(ValueError):
    """A constructor precondition failed; reported as a failed verdict."""


def _verdict(rep, **echo):
    d = rep.as_dict() if isinstance(rep, ValidationReport) else dict(rep)
    d.update(echo)
    return d


# context lookups

def _need(ws, section, name, what):
    if name not in ws.objects[section]:
        raise UsageError(f"unknown {what} {name!r}")
    return ws.objects[section][name]


def _bimodule_algebra(ws, name):
    return ws.objects["algebras"][ws.meta["bimodules"][name]["algebra"]]


def _cocycle_context(ws, name):
    meta = ws.meta["cocycles"][name]
    a = ws.objects["algebras"][meta["algebra"]]
    if "multiplication" in meta:
        return a, alg.adjoint_bimodule(a)
    return a, ws.objects["bimodules"][meta["bimodule"]]


def _family_ctx(ws, name):
    t, a, m, h, kind, weight = family_context(ws, name)
    if m is None:
        m = alg.adjoint_bimodule(a)
    return t, a, m, h, kind, weight


def _coctx(ws, name):
    meta = ws.meta["cofamilies"][name]
    c = ws.objects["coalgebras"][meta["coalgebra"]]
    n = ws.objects["cobimodules"][meta["cobimodule"]]
    h = ws.objects["cococycles"][meta["cococycle"]] if "cococycle" in meta else None
    return ws.objects["cofamilies"][name], c, n, h


def check_family_by_kind(t, a, m, h, kind, weight=None):
    if kind == "rota_baxter":
        return fm.check_rota_baxter_family(t, a)
    if kind in ("o_operator", "twisted_o_operator"):
        return fm.check_twisted_o_family(t, a, m, h if kind == "twisted_o_operator" else None)
    if kind == "nijenhuis":
        return fm.check_nijenhuis_family(t, a)
    if kind == "reynolds":
        return fm.check_reynolds_family(t, a)
    if kind == "derivation":
        return fm.check_derivation_family(t, a, m)
    if kind == "weighted_rb":
        return fa.check_weighted_rb_family(t, a, scalar(weight if weight is not None else 1))
    raise UsageError(f"unknown family kind {kind!r}")


# validate

def validate_object(ws, name):
    sec = ws.section_of(name)
    obj = ws.objects[sec][name]
    meta = ws.meta[sec][name]
    if sec == "semigroups":
        return [sg.validate_semigroup(obj)]
    if sec == "algebras":
        return [alg.validate_algebra(obj)]
    if sec == "bimodules":
        return [alg.validate_bimodule(_bimodule_algebra(ws, name), obj)]
    if sec == "cocycles":
        a, m = _cocycle_context(ws, name)
        return [alg.validate_2cocycle(obj, a, m)]
    if sec == "families":
        t, a, m, h, kind, weight = _family_ctx(ws, name)
        reps = [alg.validate_algebra(a)]
        if kind in ("o_operator", "twisted_o_operator", "derivation"):
            reps.append(alg.validate_bimodule(a, m))
        if kind == "twisted_o_operator" and h is not None:
            reps.append(alg.validate_2cocycle(h, a, m))
        if all(r.ok for r in reps):
            reps.append(check_family_by_kind(t, a, m, h, kind, weight))
        return reps
    if sec == "family_algebras":
        if isinstance(obj, fa.TridendriformFamily):
            return [fa.validate_tridendriform_family(obj)]
        if isinstance(obj, fa.DendriformFamily):
            return [fa.validate_dendriform_family(obj)]
        return [fa.validate_ns_family(obj)]
    if sec == "tensor_families":
        a = ws.objects["algebras"][meta["algebra"]]
        kind = meta.get("kind", "aybf1")
        if kind == "aybf1":
            return [yb.check_aybf_type1(obj, a)]
        if kind == "aybf2":
            return [yb.check_aybf_type2(obj, a)]
        raise UsageError(f"unknown tensor family kind {kind!r}")
    if sec == "coalgebras":
        return [coal.validate_coalgebra(obj)]
    if sec == "cobimodules":
        c = ws.objects["coalgebras"][meta.get("coalgebra", meta.get("self"))]
        return [coal.validate_cobimodule(c, obj)]
    if sec == "cococycles":
        c = ws.objects["coalgebras"][meta["coalgebra"]]
        n = ws.objects["cobimodules"][meta["cobimodule"]]
        return [coal.validate_cococycle(obj, c, n)]
    if sec == "cofamilies":
        sf, c, n, h = _coctx(ws, name)
        return [coal.check_twisted_o_cofamily(sf, c, n, h)]
    if sec == "deformations":
        t, a, m, h, kind, _ = _family_ctx(ws, meta["family"])
        d = dfm.family_deformation(obj, a, m, h)
        return dfm.check_family_deformation(d)
    if sec == "ns_deformations":
        return dfm.check_ns_deformation(dfm.ns_deformation(obj))
    raise UsageError(f"cannot validate section {sec}")


def cmd_validate(ws, obj=None):
    names = [obj] if obj else [n for _, n in ws.names()]
    out = []
    for name in names:
        try:
            ws.section_of(name)
        except KeyError:
            raise UsageError(f"unknown object {name!r}") from None
        try:
            reps = validate_object(ws, name)
        except (ValueError, dfm.DeformationError) as e:
            if isinstance(e, UsageError):
                raise
            out.append({"object": name, "check": "precondition", "ok": False, "detail": str(e)})
            continue
        for r in reps:
            out.append(_verdict(r, object=name))
    return {"command": "validate", "verdicts": out}


# construct

def _names(args, k, recipe):
    if len(args) < k:
        raise UsageError(f"recipe {recipe} needs {k} argument(s)")
    return args


def _store_context(ws, name, s_name, a, m, h, t, kind="twisted_o_operator"):
    ws.add("algebras", f"{name}.algebra", a)
    ws.add("bimodules", f"{name}.bimodule", m, {"algebra": f"{name}.algebra"})
    meta = {"semigroup": s_name, "algebra": f"{name}.algebra", "bimodule": f"{name}.bimodule", "kind": kind}
    if h is not None:
        ws.add("cocycles", f"{name}.cocycle", h, {"algebra": f"{name}.algebra", "bimodule": f"{name}.bimodule"})
        meta["cocycle"] = f"{name}.cocycle"
    ws.add("families", name, t, meta)
    return [name, f"{name}.algebra", f"{name}.bimodule"] + ([f"{name}.cocycle"] if h is not None else [])


def _semigroup_name(ws, s, hint):
    for n, obj in ws.objects["semigroups"].items():
        if obj is s or obj.table == s.table:
            return n
    ws.add("semigroups", hint, s)
    return hint


def _family_semigroup_name(ws, fam_name):
    return ws.meta["families"][fam_name]["semigroup"]


def construct(ws, recipe, args, name):
    """Run a recipe; returns the list of names created."""
    if recipe == "semidirect":
        _names(args, 2, recipe)
        a = _need(ws, "algebras", args[0], "algebra")
        m = _need(ws, "bimodules", args[1], "bimodule")
        h = _need(ws, "cocycles", args[2], "cocycle") if len(args) > 2 else None
        ws.add("algebras", name, alg.semidirect_product(a, m, h))
        return [name]
    if recipe == "extend":
        _names(args, 3, recipe)
        a = _need(ws, "algebras", args[0], "algebra")
        m = _need(ws, "bimodules", args[1], "bimodule")
        s = _need(ws, "semigroups", args[2], "semigroup")
        ext, mext = alg.extend_by_semigroup(a, m, s)
        ws.add("algebras", name, ext)
        ws.add("bimodules", f"{name}.bimodule", mext, {"algebra": name})
        return [name, f"{name}.bimodule"]
    if recipe in ("induce-ns", "dendriform", "collapse", "nijenhuis-context", "codualize",
                  "reynolds-to-derivation", "invert-derivation", "reynolds-from-derivation"):
        _names(args, 1, recipe)
        _need(ws, "families", args[0], "family")
        t, a, m, h, kind, weight = _family_ctx(ws, args[0])
        s_name = _family_semigroup_name(ws, args[0])
        a_name = ws.meta["families"][args[0]]["algebra"]
        if recipe == "induce-ns":
            if kind == "nijenhuis":
                f = fa.induce_ns_family("nijenhuis", t, a)
            elif kind == "weighted_rb":
                f = fa.induce_ns_family("weighted_rb", t, a, scalar(weight if weight is not None else 1))
            elif kind in ("rota_baxter", "o_operator", "twisted_o_operator", "reynolds"):
                if kind == "reynolds":
                    h = alg.multiplication_cocycle(a, -1)
                elif kind != "twisted_o_operator":
                    h = None
                f = fa.induce_ns_family("twisted_o", t, a, m, h)
            else:
                raise CommandFailed(f"induce-ns does not apply to {kind} families")
            ws.add("family_algebras", name, f, {"semigroup": s_name})
            return [name]
        if recipe == "dendriform":
            if h is not None and kind == "twisted_o_operator":
                raise CommandFailed("dendriform recipe needs an untwisted family")
            if not fm.check_twisted_o_family(t, a, m).ok:
                raise CommandFailed("family does not validate as an O-operator family")
            ws.add("family_algebras", name, fa.dendriform_from_o_family(t, a, m), {"semigroup": s_name})
            return [name]
        if recipe == "collapse":
            if kind not in ("o_operator", "twisted_o_operator", "rota_baxter"):
                raise CommandFailed(f"collapse does not apply to {kind} families")
            h = h if kind == "twisted_o_operator" else None
            T = fm.collapse_family(t, a, m, h)
            ext, mext = alg.extend_by_semigroup(a, m, t.semigroup)
            hext = None if h is None else alg.cocycle_extension(h, t.semigroup)
            triv = _semigroup_name(ws, sg.trivial(), f"{name}.trivial")
            return _store_context(ws, name, triv, ext, mext, hext, fm.OperatorFamily(sg.trivial(), T[None]))
        if recipe == "nijenhuis-context":
            A_N, M, H, ids = fm.build_nijenhuis_twisted_context(t, a)
            return _store_context(ws, name, s_name, A_N, M, H, ids)
        if recipe == "codualize":
            sf, c, n, hh = coal.codualize_context(t, a, m, h if kind == "twisted_o_operator" else None)
            ws.add("coalgebras", f"{name}.coalgebra", c)
            ws.add("cobimodules", f"{name}.cobimodule", n, {"coalgebra": f"{name}.coalgebra"})
            meta = {"semigroup": s_name, "coalgebra": f"{name}.coalgebra", "cobimodule": f"{name}.cobimodule"}
            made = [name, f"{name}.coalgebra", f"{name}.cobimodule"]
            if hh is not None:
                ws.add("cococycles", f"{name}.cococycle", hh,
                       {"coalgebra": f"{name}.coalgebra", "cobimodule": f"{name}.cobimodule"})
                meta["cococycle"] = f"{name}.cococycle"
                made.append(f"{name}.cococycle")
            ws.add("cofamilies", name, sf, meta)
            return made
        if recipe == "reynolds-to-derivation":
            d = fm.reynolds_to_derivation(t, a)
            ws.add("families", name, d, {"semigroup": s_name, "algebra": a_name, "kind": "derivation"})
            return [name]
        if recipe == "reynolds-from-derivation":
            r = fm.reynolds_from_nilpotent_derivation(t, a, a.dim + 1)
            ws.add("families", name, r, {"semigroup": s_name, "algebra": a_name, "kind": "reynolds"})
            return [name]
        # invert-derivation: inverses of an invertible derivation family form an O-family
        inv = fm.invert_derivation_family(t, a, m)
        meta = {"semigroup": s_name, "algebra": a_name, "kind": "o_operator"}
        if "bimodule" in ws.meta["families"][args[0]]:
            meta["bimodule"] = ws.meta["families"][args[0]]["bimodule"]
        ws.add("families", name, inv, meta)
        return [name]
    if recipe == "nijenhuis-from-pair":
        _names(args, 2, recipe)
        t, a, m, _, _, _ = _family_ctx(ws, args[0])
        s_fam = _need(ws, "families", args[1], "family")
        n = fm.nijenhuis_from_compatible_pair(t, s_fam, a, m)
        ws.add("families", name, n, {"semigroup": _family_semigroup_name(ws, args[0]),
                                     "algebra": ws.meta["families"][args[0]]["algebra"], "kind": "nijenhuis"})
        return [name]
    if recipe in ("ns-algebra", "total-context"):
        _names(args, 1, recipe)
        f = _need(ws, "family_algebras", args[0], "family algebra")
        if recipe == "ns-algebra":
            nsa = fa.ns_family_to_ns_algebra(fa.as_ns_family(f))
            triv = _semigroup_name(ws, sg.trivial(), f"{name}.trivial")
            ws.add("family_algebras", name, fa.NSFamily(sg.trivial(), nsa.prec[None], nsa.succ[None],
                                                        nsa.vee[None, None]), {"semigroup": triv})
            return [name]
        if not fa.validate_ns_family(fa.as_ns_family(f)).ok:
            raise CommandFailed("family algebra does not validate")
        tot, dmod, dh, ids = fa.total_algebra_context(f)
        return _store_context(ws, name, ws.meta["family_algebras"][args[0]]["semigroup"], tot, dmod, dh, ids)
    if recipe in ("rb-from-aybf1", "o-from-aybf2"):
        _names(args, 1, recipe)
        rf = _need(ws, "tensor_families", args[0], "tensor family")
        meta = ws.meta["tensor_families"][args[0]]
        a = ws.objects["algebras"][meta["algebra"]]
        if recipe == "rb-from-aybf1":
            ws.add("families", name, yb.rb_family_from_aybf1(rf, a),
                   {"semigroup": meta["semigroup"], "algebra": meta["algebra"], "kind": "rota_baxter"})
            return [name]
        t = yb.o_family_from_aybf2(rf, a)
        ws.add("bimodules", f"{name}.coadjoint", alg.coadjoint_bimodule(a), {"coadjoint": meta["algebra"]})
        ws.add("families", name, t, {"semigroup": meta["semigroup"], "algebra": meta["algebra"],
                                     "bimodule": f"{name}.coadjoint", "kind": "o_operator"})
        return [name, f"{name}.coadjoint"]
    if recipe in ("dualize", "induce-ns-cofamily"):
        _names(args, 1, recipe)
        _need(ws, "cofamilies", args[0], "cofamily")
        sf, c, n, h = _coctx(ws, args[0])
        s_name = ws.meta["cofamilies"][args[0]]["semigroup"]
        if recipe == "dualize":
            t, a, m, hd = coal.dualize_cofamily(sf, c, n, h)
            return _store_context(ws, name, s_name, a, m, hd, t)
        nsc = coal.induce_ns_cofamily(sf, c, n, h)
        rep = coal.validate_ns_cofamily(nsc)
        if not rep.ok:
            raise CommandFailed(f"induced NS-cofamily fails its coaxioms at {rep.witness}")
        ws.add("family_algebras", name, coal.dual_ns_family(nsc), {"semigroup": s_name})
        return [name]
    raise UsageError(f"unknown recipe {recipe!r}")


RECIPES = ("semidirect", "extend", "induce-ns", "dendriform", "collapse", "nijenhuis-context",
           "codualize", "reynolds-to-derivation", "reynolds-from-derivation", "invert-derivation",
           "nijenhuis-from-pair", "ns-algebra", "total-context", "rb-from-aybf1", "o-from-aybf2",
           "dualize", "induce-ns-cofamily")


def cmd_construct(ws, recipe, args, name):
    if not recipe:
        raise UsageError("construct needs --recipe")
    if recipe not in RECIPES:
        raise UsageError(f"unknown recipe {recipe!r}")
    name = name or f"{recipe}({','.join(args)})"
    try:
        made = construct(ws, recipe, args, name)
    except (UsageError, KeyError):
        raise
    except (ValueError, ArithmeticError) as e:
        return {"command": "construct", "recipe": recipe, "args": args,
                "verdicts": [{"check": "precondition", "ok": False, "detail": str(e)}]}
    verdicts = []
    for n in made:
        for r in validate_object(ws, n):
            verdicts.append(_verdict(r, object=n))
    return {"command": "construct", "recipe": recipe, "args": args, "created": made, "verdicts": verdicts}


# cohomology

def complex_for(ws, name, kind=None):
    sec = ws.section_of(name)
    if sec == "families":
        t, a, m, h, fkind, _ = _family_ctx(ws, name)
        if fkind == "reynolds":
            h = alg.multiplication_cocycle(a, -1)
        elif fkind in ("rota_baxter", "o_operator"):
            h = None
        elif fkind != "twisted_o_operator":
            raise CommandFailed(f"no deformation complex for {fkind} families")
        kind = kind or "twooperf"
        if kind == "twooperf":
            return coh.twisted_complex(t, a, m, h)
        if kind == "omega_hoch":
            star, bim = fa.omega_bimodule_from_twisted_family(t, a, m, h)
            return coh.omega_hoch_complex(star, bim)
        raise UsageError(f"complex {kind!r} does not apply to a family")
    if sec == "family_algebras":
        f = ws.objects[sec][name]
        kind = kind or ("dendriform" if isinstance(f, fa.DendriformFamily) else "ns")
        if kind == "ns":
            return coh.ns_complex(f)
        if kind == "dendriform":
            return coh.dendriform_complex(f)
        raise UsageError(f"complex {kind!r} does not apply to a family algebra")
    raise UsageError(f"object {name!r} carries no cochain complex")


def cmd_cohomology(ws, obj, n_max, kind=None, seed=0):
    if not obj:
        raise UsageError("cohomology needs --object")
    try:
        ws.section_of(obj)
    except KeyError:
        raise UsageError(f"unknown object {obj!r}") from None
    try:
        ctx = complex_for(ws, obj, kind)
        table = coh.cohomology_table(ctx, n_max)
    except (coh.ComplexError, CommandFailed) as e:
        return {"command": "cohomology", "object": obj,
                "verdicts": [{"check": "precondition", "ok": False, "detail": str(e)}]}
    verdicts = []
    for n in range(ctx.start, n_max):
        ok = coh.verify_dsquared_zero(ctx, n, trials=2, seed=seed)
        verdicts.append({"check": f"delta^2 = 0 on C^{n}", "ok": ok})
    for row in table:
        ok = row["dim_Z"] + row["rank_delta"] == row["dim_C"] and row["dim_H"] >= 0
        verdicts.append({"check": f"rank-nullity at degree {row['n']}", "ok": ok})
    return {"command": "cohomology", "object": obj, "complex": type(ctx).__name__,
            "table": table, "verdicts": verdicts}


# deform

def _random_theta(rng, dim):
    return [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(dim)]


def cmd_deform(ws, obj, order, seed):
    if not obj:
        raise UsageError("deform needs --object")
    try:
        sec = ws.section_of(obj)
    except KeyError:
        raise UsageError(f"unknown object {obj!r}") from None
    verdicts = []
    out = {"command": "deform", "object": obj}
    if sec == "ns_deformations":
        d = dfm.ns_deformation(ws.objects[sec][obj])
        verdicts += [_verdict(r) for r in dfm.check_ns_deformation(d)]
        out["verdicts"] = verdicts
        return out
    if sec == "deformations":
        fam = ws.meta[sec][obj]["family"]
        t, a, m, h, _, _ = _family_ctx(ws, fam)
        d = dfm.family_deformation(ws.objects[sec][obj], a, m, h)
    elif sec == "families":
        t, a, m, h, kind, _ = _family_ctx(ws, obj)
        if kind == "reynolds":
            h = alg.multiplication_cocycle(a, -1)
        elif kind in ("rota_baxter", "o_operator"):
            h = None
        elif kind != "twisted_o_operator":
            raise UsageError(f"deform does not apply to {kind} families")
        try:
            d = dfm.constant_deformation(t, a, m, h, order=order)
        except dfm.DeformationError as e:
            out["verdicts"] = [{"check": "precondition", "ok": False, "detail": str(e)}]
            return out
    else:
        raise UsageError(f"object {obj!r} is not a family or deformation")
    try:
        reps = dfm.check_family_deformation(d)
    except dfm.DeformationError as e:
        out["verdicts"] = [{"check": "precondition", "ok": False, "detail": str(e)}]
        return out
    verdicts += [_verdict(r) for r in reps]
    out["order"] = d.order
    if d.order >= 1 and reps[1].ok:
        verdicts.append({"check": "order-1 term is a 1-cocycle", "ok": bool(dfm.infinitesimal_cocycle_check(d))})
    if d.order >= 1 and all(r.ok for r in reps):
        # gauge a random theta and confirm the class moves by its coboundary
        theta = _random_theta(random.Random(seed), a.dim)
        e = dfm.gauge_equivalence(theta, d)
        dbar = dfm.apply_equivalence(d, e)
        shift = dfm.coboundary_family(theta, d)
        out["theta"] = to_jsonable(np.array(theta, dtype=object))
        verdicts.append(_verdict(dfm.check_intertwining(d, e, dbar)))
        verdicts.append({"check": "transported deformation is valid",
                         "ok": all(r.ok for r in dfm.check_family_deformation(dbar))})
        verdicts.append({"check": "order-1 shift equals delta(theta)",
                         "ok": is_zero(d.terms[1].maps - dbar.terms[1].maps - shift.maps)})
    out["verdicts"] = verdicts
    return out


# search

def _parse_coeffs(text):
    try:
        return [scalar(c.strip()) for c in text.split(",") if c.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed coefficient list {text!r}") from None


def _hit_json(hit):
    o = hit["object"]
    data = to_jsonable(o.maps if hasattr(o, "maps") else o.r)
    out = {"value": data, "revalidated": hit["revalidated"]}
    if "induced_ok" in hit:
        out["induced_ok"] = hit["induced_ok"]
    return out


def cmd_search(ws, target, algebra_name, coeffs, max_results=None, semigroup=None,
               bimodule=None, cocycle=None, bound=DEFAULT_BOUND):
    if target not in TARGETS:
        raise UsageError(f"unknown search target {target!r}; expected one of {', '.join(TARGETS)}")
    a = _need(ws, "algebras", algebra_name, "algebra") if algebra_name else None
    if a is None:
        raise UsageError("search needs --algebra")
    s = _need(ws, "semigroups", semigroup, "semigroup") if semigroup else sg.trivial()
    m = _need(ws, "bimodules", bimodule, "bimodule") if bimodule else None
    h = _need(ws, "cocycles", cocycle, "cocycle") if cocycle else None
    if target in ("o", "twisted_o") and m is None:
        m = alg.adjoint_bimodule(a)
    if target == "twisted_o" and h is None:
        raise UsageError("twisted_o search needs --cocycle")
    try:
        hits = search(target, a, s, coeffs, max_results=max_results, m=m, h=h, bound=bound)
    except SearchBoundExceeded as e:
        return {"command": "search", "target": target,
                "verdicts": [{"check": "search bound", "ok": False, "detail": str(e)}]}
    verdicts = [{"check": "every hit revalidates", "ok": all(x["revalidated"] for x in hits)}]
    if any("induced_ok" in x for x in hits):
        verdicts.append({"check": "every induced family validates",
                         "ok": all(x.get("induced_ok", True) for x in hits)})
    return {"command": "search", "target": target, "algebra": algebra_name,
            "coeffs": [str(c) for c in coeffs], "count": len(hits),
            "hits": [_hit_json(x) for x in hits], "verdicts": verdicts}


# driver

def build_parser():
    p = argparse.ArgumentParser(prog="omegafam", description="Validate and compute with operator families.")
    p.add_argument("--workspace", help="workspace JSON file")
    p.add_argument("--cmd", choices=COMMANDS, help="command; omit to run the workspace's requests")
    p.add_argument("--object", help="object name")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--order", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", choices=("json", "text"), default="text")
    p.add_argument("--recipe", help="construct recipe")
    p.add_argument("--args", default="", help="comma-separated recipe arguments")
    p.add_argument("--name", help="name for the constructed object")
    p.add_argument("--save", help="write the updated workspace here")
    p.add_argument("--complex", choices=("twooperf", "omega_hoch", "ns", "dendriform"))
    p.add_argument("--target", help="search target")
    p.add_argument("--algebra")
    p.add_argument("--semigroup")
    p.add_argument("--bimodule")
    p.add_argument("--cocycle")
    p.add_argument("--coeffs", default="-1,0,1")
    p.add_argument("--max-results", type=int)
    p.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    return p


def _split(text):
    return [x for x in (text or "").split(",") if x]


def dispatch(ws, req):
    """Run one request given as a dict of option names to values."""
    cmd = req.get("cmd")
    if cmd == "validate":
        return cmd_validate(ws, req.get("object"))
    if cmd == "construct":
        args = req.get("args", [])
        return cmd_construct(ws, req.get("recipe"), _split(args) if isinstance(args, str) else list(args),
                             req.get("name"))
    if cmd == "cohomology":
        return cmd_cohomology(ws, req.get("object"), int(req.get("n_max", 2)), req.get("complex"),
                              int(req.get("seed", 0)))
    if cmd == "deform":
        return cmd_deform(ws, req.get("object"), int(req.get("order", 2)), int(req.get("seed", 0)))
    if cmd == "search":
        coeffs = req.get("coeffs", "-1,0,1")
        coeffs = _parse_coeffs(coeffs) if isinstance(coeffs, str) else [scalar(c) for c in coeffs]
        mr = req.get("max_results")
        return cmd_search(ws, req.get("target"), req.get("algebra"), coeffs,
                          None if mr is None else int(mr), req.get("semigroup"), req.get("bimodule"),
                          req.get("cocycle"), int(req.get("bound", DEFAULT_BOUND)))
    raise UsageError(f"unknown command {cmd!r}")


def all_pass(report):
    reps = report["reports"] if "reports" in report else [report]
    return all(v["ok"] for r in reps for v in r.get("verdicts", []))


def render_text(report):
    lines = []
    reps = report["reports"] if "reports" in report else [report]
    for r in reps:
        head = [r["command"]] + [f"{k}={r[k]}" for k in ("object", "recipe", "target", "complex") if k in r]
        lines.append("== " + " ".join(head))
        if "created" in r:
            lines.append("created: " + ", ".join(r["created"]))
        if "table" in r:
            lines.append(f"{'n':>3} {'dim C':>7} {'rank d':>7} {'dim Z':>7} {'dim B':>7} {'dim H':>7}")
            for row in r["table"]:
                lines.append(f"{row['n']:>3} {row['dim_C']:>7} {row['rank_delta']:>7} {row['dim_Z']:>7} "
                             f"{row['dim_B']:>7} {row['dim_H']:>7}")
        if "count" in r:
            lines.append(f"hits: {r['count']}")
            for h in r["hits"]:
                lines.append("  " + json.dumps(h["value"]))
        for v in r.get("verdicts", []):
            tag = "PASS" if v["ok"] else "FAIL"
            who = f" [{v['object']}]" if "object" in v else ""
            extra = ""
            if not v["ok"]:
                bits = []
                if v.get("witness"):
                    bits.append("witness " + json.dumps(v["witness"], sort_keys=True))
                if v.get("detail"):
                    bits.append(v["detail"])
                extra = " -- " + "; ".join(bits) if bits else ""
            lines.append(f"{tag} {v['check']}{who}{extra}")
    return "\n".join(lines)


def run(argv=None):
    """(exit code, report or error message)."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as e:
        return (0 if e.code == 0 else 2), None
    if not ns.workspace:
        return 2, "error: --workspace is required"
    try:
        ws = parse_workspace(ns.workspace)
        if ns.cmd:
            req = {"cmd": ns.cmd, "object": ns.object, "n_max": ns.n_max, "order": ns.order,
                   "seed": ns.seed, "recipe": ns.recipe, "args": ns.args, "name": ns.name,
                   "complex": ns.complex, "target": ns.target, "algebra": ns.algebra,
                   "semigroup": ns.semigroup, "bimodule": ns.bimodule, "cocycle": ns.cocycle,
                   "coeffs": ns.coeffs, "max_results": ns.max_results, "bound": ns.bound}
            report = dispatch(ws, req)
        else:
            if not ws.requests:
                return 2, "error: no --cmd given and the workspace has no requests"
            reports = []
            for i, req in enumerate(ws.requests):
                if not isinstance(req, dict):
                    raise WorkspaceError(f"$.requests[{i}]", "request must be an object")
                try:
                    reports.append(dispatch(ws, req))
                except UsageError as e:
                    raise WorkspaceError(f"$.requests[{i}]", str(e)) from None
            report = {"command": "requests", "reports": reports}
        if ns.save:
            dump_workspace(ws, ns.save)
    except (WorkspaceError, UsageError) as e:
        return 2, f"error: {e}"
    report["workspace"] = ns.workspace
    code = 0 if all_pass(report) else 1
    text = json.dumps(report, indent=1, sort_keys=True) if ns.out == "json" else render_text(report)
    return code, text


def main(argv=None):
    code, text = run(argv)
    if text:
        print(text, file=sys.stderr if code == 2 else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
