"""JSON workspaces: named structures with references resolved and validated.

Rationals are written as strings "p/q" (ints are accepted too).  Per-element
tensors are keyed "alpha", per-pair tensors "alpha,beta".
"""

import json

import numpy as np

from . import algebra as alg
from . import coalgebra as coal
from . import semigroup as sg
from .exact_linalg import ShapeError, exact_array, scalar, to_jsonable
from .families import KINDS, OperatorFamily, family, family_to_json
from .family_algebras import (DendriformFamily, NSFamily, TridendriformFamily, dendriform_family,
                              ns_family, ns_family_to_json, tridendriform_family)
from .yang_baxter import TensorFamily, tensor_family, tensor_family_to_json

SECTIONS = ("semigroups", "algebras", "bimodules", "cocycles", "families", "family_algebras",
            "tensor_families", "coalgebras", "cobimodules", "cococycles", "cofamilies",
            "deformations", "ns_deformations")


class WorkspaceError(ValueError):
    """Parse or reference error; `path` names the offending key."""

    def __init__(self, path, msg):
        super().__init__(f"{path}: {msg}")
        self.path = path


class Workspace:
    def __init__(self):
        self.objects = {sec: {} for sec in SECTIONS}
        self.meta = {sec: {} for sec in SECTIONS}
        self.requests = []

    def section_of(self, name):
        found = [sec for sec in SECTIONS if name in self.objects[sec]]
        if not found:
            raise KeyError(name)
        return found[0]

    def get(self, name, section=None):
        sec = section or self.section_of(name)
        return self.objects[sec][name]

    def names(self):
        return [(sec, n) for sec in SECTIONS for n in self.objects[sec]]

    def add(self, section, name, obj, meta=None):
        self.objects[section][name] = obj
        meta = dict(meta or {})
        for key in ("adjoint", "coadjoint", "multiplication"):
            if key in meta:
                meta.setdefault("algebra", meta[key])
        self.meta[section][name] = meta

    def to_json(self):
        out = {}
        for sec in SECTIONS:
            entries = {n: _dump(sec, obj, self.meta[sec][n]) for n, obj in self.objects[sec].items()}
            if entries:
                out[sec] = entries
        if self.requests:
            out["requests"] = self.requests
        return out


def _ref(ws, section, name, path):
    if not isinstance(name, str) or name not in ws.objects[section]:
        raise WorkspaceError(path, f"unknown {section[:-1]} reference {name!r}")
    return ws.objects[section][name]


def _per_alpha(obj, s, path, lead=1):
    try:
        if isinstance(obj, dict):
            if lead == 1:
                return exact_array([obj[str(a)] for a in s.elements()])
            return exact_array([[obj[f"{a},{b}"] for b in s.elements()] for a in s.elements()])
        return exact_array(obj)
    except KeyError as e:
        raise WorkspaceError(path, f"missing entry {e.args[0]!r}") from None


def _wrap(path, fn, *args):
    try:
        return fn(*args)
    except WorkspaceError:
        raise
    except (ShapeError, ValueError, TypeError, KeyError, ZeroDivisionError, IndexError) as e:
        if isinstance(e, ZeroDivisionError):
            raise WorkspaceError(path, "malformed rational (zero denominator)") from None
        if isinstance(e, KeyError):
            raise WorkspaceError(f"{path}.{e.args[0]}", "missing required key") from None
        raise WorkspaceError(path, str(e)) from None


def _parse_semigroup(ws, name, obj, path):
    if "builtin" in obj:
        kind = obj["builtin"]
        n = obj.get("n")
        table = {"trivial": lambda: sg.trivial(), "left_zero": lambda: sg.left_zero(n),
                 "right_zero": lambda: sg.right_zero(n), "cyclic": lambda: sg.cyclic_group(n),
                 "mult_mod2": lambda: sg.mult_mod2()}
        if kind not in table:
            raise WorkspaceError(path + ".builtin", f"unknown builtin {kind!r}")
        return table[kind]()
    return sg.from_json(obj)


def _parse_algebra(ws, name, obj, path):
    return alg.algebra_from_json(obj)


def _parse_bimodule(ws, name, obj, path):
    if "adjoint" in obj:
        return alg.adjoint_bimodule(_ref(ws, "algebras", obj["adjoint"], path + ".adjoint"))
    if "coadjoint" in obj:
        return alg.coadjoint_bimodule(_ref(ws, "algebras", obj["coadjoint"], path + ".coadjoint"))
    a = _ref(ws, "algebras", obj["algebra"], path + ".algebra")
    left = exact_array(obj["left"])
    dm = left.shape[1]
    return alg.bimodule(exact_array(obj["left"], (a.dim, dm, dm)), exact_array(obj["right"], (dm, a.dim, dm)))


def _parse_cocycle(ws, name, obj, path):
    if "multiplication" in obj:
        a = _ref(ws, "algebras", obj["multiplication"], path + ".multiplication")
        return alg.multiplication_cocycle(a, scalar(obj.get("scale", 1)))
    a = _ref(ws, "algebras", obj["algebra"], path + ".algebra")
    m = _ref(ws, "bimodules", obj["bimodule"], path + ".bimodule")
    return alg.cocycle_from_json(obj, a.dim, m.module_dim)


def _parse_family(ws, name, obj, path):
    s = _ref(ws, "semigroups", obj["semigroup"], path + ".semigroup")
    kind = obj.get("kind", "twisted_o_operator")
    if kind not in KINDS:
        raise WorkspaceError(path + ".kind", f"unknown kind {kind!r}")
    for key, sec in (("algebra", "algebras"), ("bimodule", "bimodules"), ("cocycle", "cocycles")):
        if key in obj:
            _ref(ws, sec, obj[key], f"{path}.{key}")
    if "algebra" not in obj:
        raise WorkspaceError(path, "a family needs an 'algebra'")
    return family(s, _per_alpha(obj["maps"], s, path + ".maps"))


def _parse_family_algebra(ws, name, obj, path):
    s = _ref(ws, "semigroups", obj["semigroup"], path + ".semigroup")
    kind = obj.get("type", "ns")
    prec = _per_alpha(obj["prec"], s, path + ".prec")
    succ = _per_alpha(obj["succ"], s, path + ".succ")
    if kind == "ns":
        vee = _per_alpha(obj["vee"], s, path + ".vee", lead=2)
        return ns_family(s, prec, succ, vee)
    if kind == "dendriform":
        return dendriform_family(s, prec, succ)
    if kind == "tridendriform":
        return tridendriform_family(s, prec, succ, exact_array(obj["odot"]))
    raise WorkspaceError(path + ".type", f"unknown family algebra type {kind!r}")


def _parse_tensor_family(ws, name, obj, path):
    s = _ref(ws, "semigroups", obj["semigroup"], path + ".semigroup")
    _ref(ws, "algebras", obj["algebra"], path + ".algebra")
    return tensor_family(s, _per_alpha(obj["r"], s, path + ".r"))


def _parse_coalgebra(ws, name, obj, path):
    return coal.coalgebra_from_json(obj)


def _parse_cobimodule(ws, name, obj, path):
    if "self" in obj:
        return coal.self_cobimodule(_ref(ws, "coalgebras", obj["self"], path + ".self"))
    _ref(ws, "coalgebras", obj["coalgebra"], path + ".coalgebra")
    return coal.cobimodule_from_json(obj)


def _parse_cococycle(ws, name, obj, path):
    _ref(ws, "coalgebras", obj["coalgebra"], path + ".coalgebra")
    _ref(ws, "cobimodules", obj["cobimodule"], path + ".cobimodule")
    return coal.cococycle(obj["h"])


def _parse_cofamily(ws, name, obj, path):
    s = _ref(ws, "semigroups", obj["semigroup"], path + ".semigroup")
    _ref(ws, "coalgebras", obj["coalgebra"], path + ".coalgebra")
    _ref(ws, "cobimodules", obj["cobimodule"], path + ".cobimodule")
    if "cococycle" in obj:
        _ref(ws, "cococycles", obj["cococycle"], path + ".cococycle")
    return coal.cofamily(s, _per_alpha(obj["maps"], s, path + ".maps"))


def _parse_deformation(ws, name, obj, path):
    base = _ref(ws, "families", obj["family"], path + ".family")
    s = base.semigroup
    terms = [family(s, _per_alpha(t.get("maps", t) if isinstance(t, dict) else t, s, f"{path}.terms[{i}]"))
             for i, t in enumerate(obj["terms"])]
    if "order" in obj and int(obj["order"]) != len(terms) - 1:
        raise WorkspaceError(path + ".order", "declared order does not match the number of terms")
    return terms


def _parse_ns_deformation(ws, name, obj, path):
    base = _ref(ws, "family_algebras", obj["family_algebra"], path + ".family_algebra")
    s = base.semigroup
    out = []
    for i, t in enumerate(obj["terms"]):
        p = f"{path}.terms[{i}]"
        out.append(NSFamily(s, _per_alpha(t["prec"], s, p + ".prec"), _per_alpha(t["succ"], s, p + ".succ"),
                            _per_alpha(t["vee"], s, p + ".vee", lead=2)))
    return out


PARSERS = {
    "semigroups": _parse_semigroup, "algebras": _parse_algebra, "bimodules": _parse_bimodule,
    "cocycles": _parse_cocycle, "families": _parse_family, "family_algebras": _parse_family_algebra,
    "tensor_families": _parse_tensor_family, "coalgebras": _parse_coalgebra,
    "cobimodules": _parse_cobimodule, "cococycles": _parse_cococycle, "cofamilies": _parse_cofamily,
    "deformations": _parse_deformation, "ns_deformations": _parse_ns_deformation,
}


def load_workspace(data):
    """Workspace from an already-decoded JSON object."""
    if not isinstance(data, dict):
        raise WorkspaceError("$", "workspace must be a JSON object")
    unknown = [k for k in data if k not in SECTIONS and k != "requests"]
    if unknown:
        raise WorkspaceError(f"$.{unknown[0]}", "unknown section")
    ws = Workspace()
    for sec in SECTIONS:
        entries = data.get(sec, {})
        if not isinstance(entries, dict):
            raise WorkspaceError(f"$.{sec}", "section must be an object of named entries")
        for name, obj in entries.items():
            path = f"$.{sec}.{name}"
            if not isinstance(obj, dict):
                raise WorkspaceError(path, "entry must be an object")
            parsed = _wrap(path, PARSERS[sec], ws, name, obj, path)
            meta = {k: v for k, v in obj.items() if isinstance(v, (str, int)) and k not in ("dim",)}
            ws.add(sec, name, parsed, meta)
    reqs = data.get("requests", [])
    if not isinstance(reqs, list):
        raise WorkspaceError("$.requests", "requests must be a list")
    ws.requests = reqs
    return ws


def parse_workspace(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as e:
        raise WorkspaceError("$", f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise WorkspaceError("$", f"malformed JSON: {e.msg} at line {e.lineno}") from None
    return load_workspace(data)


# serialization

def _dump(sec, obj, meta):
    if sec == "semigroups":
        return obj.to_json()
    if sec == "algebras":
        return alg.algebra_to_json(obj)
    if sec == "bimodules":
        if "adjoint" in meta or "coadjoint" in meta:
            return dict(meta)
        out = alg.bimodule_to_json(obj)
        if "algebra" in meta:
            out["algebra"] = meta["algebra"]
        return out
    if sec == "cocycles":
        if "multiplication" in meta:
            return dict(meta)
        out = alg.cocycle_to_json(obj)
    elif sec == "families":
        out = family_to_json(obj)
    elif sec == "family_algebras":
        out = _dump_family_algebra(obj)
    elif sec == "tensor_families":
        out = tensor_family_to_json(obj)
    elif sec == "coalgebras":
        return coal.coalgebra_to_json(obj)
    elif sec == "cobimodules":
        out = coal.cobimodule_to_json(obj)
    elif sec == "cococycles":
        out = {"h": to_jsonable(obj.h)}
    elif sec == "cofamilies":
        out = {"maps": {str(a): to_jsonable(obj.maps[a]) for a in obj.semigroup.elements()}}
    elif sec == "deformations":
        out = {"order": len(obj) - 1, "terms": [family_to_json(t) for t in obj]}
    elif sec == "ns_deformations":
        out = {"terms": [ns_family_to_json(t) for t in obj]}
    else:
        raise KeyError(sec)
    out.update({k: v for k, v in meta.items() if k not in out})
    return out


def _dump_family_algebra(f):
    s = f.semigroup
    if isinstance(f, NSFamily):
        return ns_family_to_json(f)
    out = {"type": "dendriform" if isinstance(f, DendriformFamily) else "tridendriform",
           "dim": f.dim,
           "prec": {str(a): to_jsonable(f.prec[a]) for a in s.elements()},
           "succ": {str(a): to_jsonable(f.succ[a]) for a in s.elements()}}
    if isinstance(f, TridendriformFamily):
        out["odot"] = to_jsonable(f.odot)
    return out


def family_context(ws, name):
    """(family, algebra, bimodule, cocycle, kind, weight) for a family entry."""
    t = ws.objects["families"][name]
    meta = ws.meta["families"][name]
    a = ws.objects["algebras"][meta["algebra"]]
    m = ws.objects["bimodules"][meta["bimodule"]] if "bimodule" in meta else None
    h = ws.objects["cocycles"][meta["cocycle"]] if "cocycle" in meta else None
    kind = meta.get("kind", "twisted_o_operator")
    weight = meta.get("weight")
    return t, a, m, h, kind, None if weight is None else scalar(weight)


def corpus_workspace():
    """The built-in corpus as a JSON-ready workspace dict."""
    from .corpus import corpus
    ws = Workspace()
    seen = {}

    def name_for(sec, obj, stem):
        key = (sec, id(obj))
        if key not in seen:
            seen[key] = stem
            ws.add(sec, stem, obj)
        return seen[key]

    for inst in corpus():
        sname = name_for("semigroups", inst.semigroup, f"{inst.name}.semigroup")
        aname = name_for("algebras", inst.algebra, f"{inst.name}.algebra")
        mname = name_for("bimodules", inst.bimodule, f"{inst.name}.bimodule")
        ws.meta["bimodules"][mname]["algebra"] = aname
        meta = {"semigroup": sname, "algebra": aname, "bimodule": mname, "kind": "twisted_o_operator"}
        if inst.cocycle is not None:
            cname = name_for("cocycles", inst.cocycle, f"{inst.name}.cocycle")
            ws.meta["cocycles"][cname].update({"algebra": aname, "bimodule": mname})
            meta["cocycle"] = cname
        ws.add("families", inst.name, inst.family, meta)
    return ws.to_json()


def dump_workspace(ws, path):
    with open(path, "w") as fh:
        json.dump(ws.to_json() if isinstance(ws, Workspace) else ws, fh, indent=1, sort_keys=True)
        fh.write("\n")
