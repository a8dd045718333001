"""
JSON definition documents (schema id omega-pseudoalg/v1): strict parsing into
validated objects, and serialization of constructed structures.

Rationals are JSON integers or strings "p/q".  Operation tables are either
nested arrays indexed [a][b][i][j] (family tables [a][i][j]) or sparse
{"entries": [{"at": [...], "value": ...}]}; a value is a dense ambient vector
of H^{(x)2} (x) A or {"terms": [{"h": [...], "m": j, "c": r}, ...]}.
"""

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

import jsonschema

from .exactla import Q
from .hopf import (KindMismatch, NotAGroup, SemigroupError, make_group_algebra, make_hopf,
                   make_semigroup, make_substructure)
from .hspaces import DimensionMismatch, ModuleAxiomFailure, free_module, make_module, trivial_module
from .pseudo import (LinearityViolation, MissingOpTable, OmegaNotCommutative, ShapeMismatch,
                     adjoint_bimodule, make_bimodule, make_morphism, make_operator_family,
                     make_structure)
from .construct import make_ordinary
from .deform import JetInvalid, make_jet

SCHEMA_ID = "omega-pseudoalg/v1"
SECTIONS = ("hopf", "semigroups", "substructures", "modules", "structures", "ordinary",
            "bimodules", "operator_families", "jets", "morphisms")


class InputError(Exception):
    """Anything that makes a document unusable (exit status 2)."""


class ParseError(InputError):
    def __init__(self, pointer, message):
        super().__init__("%s: %s" % (pointer or "/", message))
        self.pointer = pointer
        self.message = message


class DanglingReference(InputError):
    def __init__(self, name, pointer=""):
        super().__init__("undefined name %r referenced at %s" % (name, pointer or "/"))
        self.name = name
        self.pointer = pointer


def load_schema():
    return json.loads(resources.files(__package__).joinpath("schema/omega-pseudoalg-v1.json")
                      .read_text(encoding="utf-8"))


_VALIDATOR = None


def _validator():
    global _VALIDATOR
    if _VALIDATOR is None:
        _VALIDATOR = jsonschema.Draft202012Validator(load_schema())
    return _VALIDATOR


def _pointer(path):
    return "".join("/" + str(p) for p in path)


@dataclass
class Document:
    source: str
    raw: dict
    hopf: dict = field(default_factory=dict)
    semigroups: dict = field(default_factory=dict)
    substructures: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    structures: dict = field(default_factory=dict)
    ordinary: dict = field(default_factory=dict)
    bimodules: dict = field(default_factory=dict)
    operator_families: dict = field(default_factory=dict)
    jets: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)

    def counts(self):
        return {s: len(getattr(self, s)) for s in SECTIONS}


# ---------------------------------------------------------------------------
# parsing

def _rat(x):
    return Fraction(x)


def _vec(v):
    return [_rat(c) for c in v]


def _mat(m):
    return [_vec(r) for r in m]


def _value(v):
    if isinstance(v, dict):
        out = {}
        for t in v["terms"]:
            k = (tuple(t["h"]), t["m"])
            out[k] = out.get(k, 0) + _rat(t["c"])
        return out
    return _vec(v)


def _is_value(v):
    return isinstance(v, dict) or (isinstance(v, list) and all(not isinstance(c, (list, dict)) for c in v))


def _table(raw, depth, ptr):
    """{index tuple: value} from a nested (depth levels) or sparse table."""
    out = {}
    if isinstance(raw, dict):
        for k, e in enumerate(raw["entries"]):
            at = tuple(e["at"])
            if len(at) != depth:
                raise ParseError("%s/entries/%d/at" % (ptr, k), "expected %d indices" % depth)
            if at in out:
                raise ParseError("%s/entries/%d/at" % (ptr, k), "duplicate entry")
            out[at] = _value(e["value"])
        return out

    def walk(node, prefix, p):
        if len(prefix) == depth:
            if not _is_value(node):
                raise ParseError(p, "expected a value at nesting depth %d" % depth)
            out[prefix] = _value(node)
            return
        if not isinstance(node, list) or not all(isinstance(c, (list, dict)) for c in node):
            raise ParseError(p, "table nested too shallowly (expected depth %d)" % depth)
        for i, child in enumerate(node):
            walk(child, prefix + (i,), "%s/%d" % (p, i))
    walk(raw, (), ptr)
    return out


def _pair_table(raw, ptr, k):
    flat = _table(raw, 4, ptr)
    out = {}
    for (a, b, i, j), v in flat.items():
        if a >= k or b >= k:
            raise ParseError(ptr, "index (%d, %d) outside the semigroup" % (a, b))
        out.setdefault((a, b), {})[(i, j)] = v
    return out


def _family_table(raw, ptr, k):
    flat = _table(raw, 3, ptr)
    out = {}
    for (a, i, j), v in flat.items():
        if a >= k:
            raise ParseError(ptr, "index %d outside the semigroup" % a)
        out.setdefault(a, {})[(i, j)] = v
    return out


def _ref(doc, section, name, ptr):
    obj = getattr(doc, section).get(name)
    if obj is None:
        raise DanglingReference(name, ptr)
    return obj


def _per_index(maps, k, ptr):
    if len(maps) != k:
        raise ParseError(ptr, "expected one matrix per semigroup element (%d)" % k)
    return {a: _mat(m) for a, m in enumerate(maps)}


MATH_ERRORS = (LinearityViolation, ModuleAxiomFailure, NotAGroup, SemigroupError, ShapeMismatch,
               DimensionMismatch, KindMismatch, MissingOpTable, OmegaNotCommutative, JetInvalid,
               ValueError, IndexError)


def _build(doc, section, name, entry):
    ptr = "/%s/%s" % (section, name)
    if section == "hopf":
        if "group" in entry:
            return make_group_algebra(entry["group"], name=name)
        d = entry["dim"]
        return make_hopf(d, [[_vec(v) for v in row] for row in entry["mult"]], _vec(entry["unit"]),
                         _mat(entry["comult"]), _vec(entry["counit"]), _mat(entry["antipode"]), name=name)
    if section == "semigroups":
        return make_semigroup(entry["table"], entry.get("unit"), entry.get("commutative"), entry.get("names"))
    if section == "substructures":
        return make_substructure(_ref(doc, "hopf", entry["hopf"], ptr + "/hopf"), _mat(entry["basis"]),
                                 entry["kind"])
    if section == "modules":
        h = _ref(doc, "hopf", entry["hopf"], ptr + "/hopf")
        if "free" in entry:
            return free_module(h, entry["free"], name=name)
        if "trivial" in entry:
            m = trivial_module(h, entry["trivial"])
            m.name = name
            return m
        return make_module(h, entry["dim"], [_mat(a) for a in entry["action"]], name=name)
    if section == "structures":
        M = _ref(doc, "modules", entry["module"], ptr + "/module")
        om = _ref(doc, "semigroups", entry["semigroup"], ptr + "/semigroup")
        fam = entry.get("family", False)
        conv = _family_table if fam else _pair_table
        tables = {op: conv(t, "%s/ops/%s" % (ptr, op), om.size) for op, t in entry["ops"].items()}
        return make_structure(M, om, tables, entry["variety"], fam, name)
    if section == "ordinary":
        om = _ref(doc, "semigroups", entry["semigroup"], ptr + "/semigroup")
        fam = entry.get("family", False)
        products = {}
        for op, t in entry["products"].items():
            p = "%s/products/%s" % (ptr, op)
            if len(t) != om.size or (not fam and any(len(r) != om.size for r in t)):
                raise ParseError(p, "expected one table per index" + ("" if fam else " pair"))
            products[op] = ({a: t[a] for a in range(om.size)} if fam else
                            {(a, b): t[a][b] for a in range(om.size) for b in range(om.size)})
        rb = _per_index(entry["rb"], om.size, ptr + "/rb") if "rb" in entry else None
        ops = _per_index(entry["operators"], om.size, ptr + "/operators") if "operators" in entry else None
        bim = None
        if "bimodule" in entry:
            bm = entry["bimodule"]
            bim = (bm["dim"], bm["left"], bm["right"])
        products = {op: {k: [[_vec(v) for v in row] for row in tab] for k, tab in t.items()}
                    for op, t in products.items()}
        if bim is not None:
            bim = (bim[0], [[_vec(v) for v in row] for row in bim[1]],
                   [[_vec(v) for v in row] for row in bim[2]])
        return make_ordinary(entry["dim"], om, products, entry["variety"], fam, rb,
                             _rat(entry.get("weight", 0)), bim, ops, name)
    if section == "bimodules":
        if "adjoint" in entry:
            return adjoint_bimodule(_ref(doc, "structures", entry["adjoint"], ptr + "/adjoint"))
        A = _ref(doc, "structures", entry["algebra"], ptr + "/algebra")
        M = _ref(doc, "modules", entry["module"], ptr + "/module")
        k = A.omega.size
        return make_bimodule(A, M, _pair_table(entry["left"], ptr + "/left", k),
                             _pair_table(entry["right"], ptr + "/right", k), name)
    if section == "operator_families":
        b = _ref(doc, "bimodules", entry["bimodule"], ptr + "/bimodule")
        om = _ref(doc, "semigroups", entry["semigroup"], ptr + "/semigroup")
        return make_operator_family(b.carrier, b.algebra.carrier, om,
                                    _per_index(entry["maps"], om.size, ptr + "/maps"), name)
    if section == "jets":
        base = _ref(doc, "structures", entry["base"], ptr + "/base")
        k = base.omega.size
        terms = [_pair_table(t, "%s/terms/%d" % (ptr, i), k) for i, t in enumerate(entry["terms"])]
        return make_jet(base, terms, name)
    if section == "morphisms":
        S = _ref(doc, "structures", entry["source"], ptr + "/source")
        T = _ref(doc, "structures", entry["target"], ptr + "/target")
        return make_morphism(S, T, _per_index(entry["maps"], S.omega.size, ptr + "/maps"), name)
    raise ParseError(ptr, "unknown section")


def _message(e):
    inst = e.instance
    if isinstance(inst, str) and re.fullmatch(r"-?[0-9]+/0+", inst):
        return "invalid rational %r (zero denominator)" % inst
    return e.message


def parse_document(raw, source="<memory>"):
    errors = sorted(_validator().iter_errors(raw), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        e = jsonschema.exceptions.best_match(errors)
        raise ParseError(_pointer(e.absolute_path), _message(e))
    doc = Document(source, raw)
    for section in SECTIONS:
        for name, entry in raw.get(section, {}).items():
            try:
                obj = _build(doc, section, name, entry)
            except InputError:
                raise
            except MATH_ERRORS as exc:
                raise ParseError("/%s/%s" % (section, name), "%s: %s" % (type(exc).__name__, exc)) from None
            if hasattr(obj, "name") and section not in ("modules",):
                try:
                    obj.name = name
                except (AttributeError, TypeError):
                    pass
            getattr(doc, section)[name] = obj
    return doc


def loads(text, source="<memory>"):
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("line %d column %d" % (exc.lineno, exc.colno), exc.msg) from None
    return parse_document(raw, source)


def load(path):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from None
    return loads(text, str(path))


# ---------------------------------------------------------------------------
# writing

def rat_json(x):
    x = Q(x)
    return int(x) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def _vec_json(v):
    return [rat_json(c) for c in v]


def _terms_json(terms):
    return {"terms": [{"h": list(t), "m": m, "c": rat_json(c)} for (t, m), c in sorted(terms.items())]}


def _table_json(tab, family=False):
    entries = []
    for key in sorted(tab):
        for (i, j) in sorted(tab[key]):
            v = tab[key][(i, j)]
            if v:
                at = ([key] if family else list(key)) + [i, j]
                entries.append({"at": at, "value": _terms_json(v)})
    return {"entries": entries}


def hopf_json(h):
    if h.group is not None:
        return {"group": [list(r) for r in h.group]}
    d = h.dim
    return {"dim": d,
            "mult": [[_vec_json(h.mult[i][j]) for j in range(d)] for i in range(d)],
            "unit": _vec_json(h.unit),
            "comult": [[rat_json(h.comult[i].get((j, k), 0)) for j in range(d) for k in range(d)]
                       for i in range(d)],
            "counit": _vec_json(h.counit),
            "antipode": [_vec_json(r) for r in h.antipode]}


def semigroup_json(om):
    out = {"table": [list(r) for r in om.table]}
    if om.unit is not None:
        out["unit"] = om.unit
    if om.names:
        out["names"] = list(om.names)
    return out


def module_json(m, hname):
    return {"hopf": hname, "dim": m.dim,
            "action": [[_vec_json(r) for r in mat] for mat in m.action]}


class Writer:
    """Accumulates a document; names are assigned per object identity."""

    def __init__(self, description=None):
        self.doc = {"schema": SCHEMA_ID}
        if description:
            self.doc["description"] = description
        self._names = {}

    def _name(self, obj, section, hint):
        key = (section, id(obj))
        if key in self._names:
            return self._names[key][0]
        taken = set(self.doc.get(section, {}))
        name, k = hint, 1
        while name in taken:
            k += 1
            name = "%s_%d" % (hint, k)
        self._names[key] = (name, obj)
        return name

    def _put(self, section, name, value):
        self.doc.setdefault(section, {})[name] = value

    def hopf(self, h):
        if ("hopf", id(h)) in self._names:
            return self._names[("hopf", id(h))][0]
        n = self._name(h, "hopf", h.name or "H")
        self._put("hopf", n, hopf_json(h))
        return n

    def semigroup(self, om):
        if ("semigroups", id(om)) in self._names:
            return self._names[("semigroups", id(om))][0]
        n = self._name(om, "semigroups", "Omega")
        self._put("semigroups", n, semigroup_json(om))
        return n

    def module(self, m):
        if ("modules", id(m)) in self._names:
            return self._names[("modules", id(m))][0]
        hn = self.hopf(m.hopf)
        n = self._name(m, "modules", _safe(m.name) or "M")
        self._put("modules", n, module_json(m, hn))
        return n

    def structure(self, s, name=None):
        if ("structures", id(s)) in self._names:
            return self._names[("structures", id(s))][0]
        mn, on = self.module(s.carrier), self.semigroup(s.omega)
        n = self._name(s, "structures", name or _safe(s.name) or "A")
        entry = {"module": mn, "semigroup": on, "variety": s.variety}
        if s.family:
            entry["family"] = True
            entry["ops"] = {op: _table_json(s.family_ops[op], True) for op in sorted(s.family_ops)}
        else:
            entry["ops"] = {op: _table_json(s.ops[op]) for op in sorted(s.ops)}
        self._put("structures", n, entry)
        return n

    def bimodule(self, b, name=None):
        an, mn = self.structure(b.algebra), self.module(b.carrier)
        n = self._name(b, "bimodules", name or _safe(b.name) or "M")
        self._put("bimodules", n, {"algebra": an, "module": mn, "left": _table_json(b.left),
                                   "right": _table_json(b.right)})
        return n

    def operator_family(self, t, b, name=None):
        bn, on = self.bimodule(b), self.semigroup(t.omega)
        n = self._name(t, "operator_families", name or _safe(t.name) or "T")
        self._put("operator_families", n, {
            "bimodule": bn, "semigroup": on,
            "maps": [[_vec_json(r) for r in t.maps[a]] for a in range(t.omega.size)]})
        return n

    def jet(self, j, name=None):
        bn = self.structure(j.base)
        n = self._name(j, "jets", name or _safe(j.name) or "J")
        self._put("jets", n, {"base": bn, "terms": [_table_json(t) for t in j.terms]})
        return n

    def text(self):
        return json.dumps(self.doc, indent=1, sort_keys=True, ensure_ascii=False) + "\n"

    def write(self, path):
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.text())


def _safe(name):
    """A document-friendly name derived from a structure label."""
    if not name:
        return None
    out = "".join(c if c.isalnum() or c in "_-" else "_" for c in name)
    return out.strip("_") or None
