"""
Command-line interface.

    omega-pseudoalg verify FILE [--structure NAME]
    omega-pseudoalg construct KIND FILE --out FILE [...]
    omega-pseudoalg cohomology FILE --structure NAME --degree N [--coefficients NAME]
    omega-pseudoalg deform FILE --jet NAME [--order S | --extend | --poisson]
    omega-pseudoalg report FILE [--format text|json]

Exit status: 0 all checks passed, 1 identity failures, 2 input errors.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import construct as C
from .cohomology import (DegreeTooHigh, NoUnitInOmega, cohomology_rank, operator_complex,
                         oop_cohomology_rank, verify_complex)
from .exactla import fstr
from .definition import (SCHEMA_ID, DanglingReference, InputError, Writer, load)
from .deform import (BaseNotCommutative, Extension, JetInvalid, JetOrderTooLow, adjoint_of,
                     check_jet, format_bracket, obstruction, poisson_extract, rigidity_report)
from .hopf import KindMismatch, verify_hopf
from .pseudo import (OmegaNotCommutative, ShapeMismatch, check_bimodule, check_morphism,
                     check_operator_family, check_variety)

CONSTRUCT_KINDS = ("pack", "current", "rb-lift", "dend-sum", "dend-prelie", "commutator",
                   "zinbiel", "oop", "poisson")
HOPF_AXIOMS = ("associativity", "unit", "coassociativity", "counit", "cocommutativity",
               "antipode", "bialgebra", "counit multiplicative", "unit coalgebra map")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


@dataclass
class Section:
    title: str
    ok: bool
    lines: list
    data: dict = field(default_factory=dict)

    def to_json(self):
        out = {"title": self.title, "ok": self.ok, "lines": self.lines}
        out.update(self.data)
        return out


def _report_section(rep):
    return Section(rep.title, rep.ok, rep.lines(), {"results": rep.to_json()["results"]})


def hopf_section(name, h):
    fails = verify_hopf(h)
    lines = []
    for ax in HOPF_AXIOMS:
        bad = [f for f in fails if f.axiom == ax]
        if bad:
            lines.append("%s: FAIL (%d witnesses)" % (ax, len(bad)))
            lines.extend("    %s fails at %r" % (ax, f.witness) for f in bad[:3])
        else:
            lines.append("%s: PASS" % ax)
    return Section("%s: Hopf axioms (dim %d)" % (name, h.dim), not fails, lines)


def ordinary_section(name, alg):
    lines, ok = [], True
    bad = C.classical_check(alg)
    lines.append("classical %s identities: %s" % (alg.variety, "PASS" if bad is None else
                                                  "FAIL at %r" % (bad,)))
    ok = ok and bad is None
    if alg.rb is not None:
        bad = C.check_rb_family(alg)
        lines.append("Rota-Baxter family identity: %s" % ("PASS" if bad is None else "FAIL at %r" % (bad,)))
        ok = ok and bad is None
    if alg.operators is not None and alg.bimodule is not None:
        bad = C.check_o_operator_family(alg)
        lines.append("O-operator family identity: %s" % ("PASS" if bad is None else "FAIL at %r" % (bad,)))
        ok = ok and bad is None
    return Section("%s: ordinary %s algebra (dim %d)" % (name, alg.variety, alg.dim), ok, lines)


def jet_section(j, order=None):
    r = check_jet(j, order)
    return Section(r.report.title, r.ok, r.lines(), {"results": r.report.to_json()["results"]})


def verify_sections(doc, only=None):
    if only is not None:
        if only not in doc.structures:
            raise DanglingReference(only, "--structure")
        return [_report_section(check_variety(doc.structures[only]))]
    out = []
    for name, h in doc.hopf.items():
        out.append(hopf_section(name, h))
    for name, s in doc.structures.items():
        out.append(_report_section(check_variety(s)))
    for name, alg in doc.ordinary.items():
        out.append(ordinary_section(name, alg))
    for name, b in doc.bimodules.items():
        rep = check_bimodule(b)
        rep.title = "%s: bimodule over %s" % (name, b.algebra.name)
        out.append(_report_section(rep))
    for name, t in doc.operator_families.items():
        b = doc.bimodules[doc.raw["operator_families"][name]["bimodule"]]
        out.append(_report_section(check_operator_family(t, b)))
    for name, j in doc.jets.items():
        out.append(jet_section(j))
    for name, f in doc.morphisms.items():
        out.append(_report_section(check_morphism(f)))
    return out


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify(args):
    doc = load(args.file)
    return verify_sections(doc, args.structure), None


def _pick(doc, section, name, flag):
    objs = getattr(doc, section)
    if name is None:
        if len(objs) != 1:
            raise InputError("%s is required (the document has %d %s)" % (flag, len(objs), section))
        return next(iter(objs.values()))
    if name not in objs:
        raise DanglingReference(name, flag)
    return objs[name]


def cmd_construct(args):
    doc = load(args.file)
    kind = args.kind
    w = Writer("%s construction from %s" % (kind, args.file))
    outs, extra = [], []
    if kind in ("current", "rb-lift"):
        alg = _pick(doc, "ordinary", args.algebra, "--algebra")
        h = _pick(doc, "hopf", args.hopf, "--hopf")
        if args.sub is not None:
            sub = _pick(doc, "substructures", args.sub, "--sub")
        else:
            sub = C.unit_substructure(h) if args.formula == "bialgebra" else C.whole_substructure(h)
        if kind == "current":
            S = C.current(h, sub, alg, args.formula)
        else:
            S = C.rota_baxter_lift(h, sub, alg)
        outs.append(S)
    elif kind == "oop":
        t = _pick(doc, "operator_families", args.operator, "--operator")
        tname = next(n for n, v in doc.operator_families.items() if v is t)
        b = doc.bimodules[doc.raw["operator_families"][tname]["bimodule"]]
        res = C.oop_induced(t, b, args.mode)
        if args.mode == "bimodule-back":
            S, back = res
            outs.append(S)
            w.bimodule(back, "induced_bimodule")
            extra.append(_report_section(check_bimodule(back)))
        else:
            outs.append(res)
    else:
        s = _pick(doc, "structures", args.structure, "--structure")
        if kind == "pack":
            outs.append(C.semigroup_pack(s, variety=s.variety if s.variety in ("associative", "commutative")
                                         else "associative"))
        elif kind == "dend-sum":
            outs.append(C.dendriform_sum(s))
        elif kind == "dend-prelie":
            outs.append(C.dendriform_to_prelie(s))
        elif kind == "commutator":
            outs.append(C.commutator_lie(s))
        elif kind == "zinbiel":
            outs.append(C.zinbiel_bridge(s, args.direction))
        elif kind == "poisson":
            outs.append(C.commutative_to_poisson(s))
    sections = []
    for S in outs:
        w.structure(S)
        sections.append(_report_section(check_variety(S)))
    sections.extend(extra)
    if args.out:
        w.write(args.out)
        sections.append(Section("output", True, ["wrote %s" % args.out]))
    return sections, None


def cmd_cohomology(args):
    doc = load(args.file)
    if args.operator is not None:
        t = _pick(doc, "operator_families", args.operator, "--operator")
        b = doc.bimodules[doc.raw["operator_families"][args.operator]["bimodule"]]
        oc = operator_complex(t, b)
        r = oop_cohomology_rank(oc, args.degree)
        title = "cohomology of operator family %s" % args.operator
        return [Section(title, True, [r.line()], _rank_json(r))], None
    s = _pick(doc, "structures", args.structure, "--structure")
    if args.coefficients is None:
        b = adjoint_of(s)
        cname = "adjoint"
    else:
        b = _pick(doc, "bimodules", args.coefficients, "--coefficients")
        cname = args.coefficients
        if b.algebra is not s:
            raise InputError("bimodule %s is not over %s" % (cname, s.name))
    r = cohomology_rank(s, b, args.degree)
    sections = [Section("cohomology of %s with %s coefficients" % (s.name, cname), True,
                        [r.line()], _rank_json(r))]
    if args.complex:
        cr = verify_complex(s, b, min(args.degree + 1, 3))
        sections.append(Section(cr.title, cr.ok, cr.lines()))
    return sections, None


def _rank_json(r):
    return {"degree": r.degree, "cochains": r.cochains, "cocycles": r.cocycles,
            "coboundaries": r.coboundaries, "cohomology": r.cohomology}


def cmd_deform(args):
    doc = load(args.file)
    j = _pick(doc, "jets", args.jet, "--jet")
    sections = []
    if args.poisson:
        try:
            P, rep = poisson_extract(j, with_report=True)
        except (BaseNotCommutative, JetOrderTooLow) as exc:
            return [Section("%s: Poisson extraction" % j.name, False, ["%s: %s" % (type(exc).__name__, exc)])], None
        except JetInvalid:
            return [jet_section(j), Section("%s: Poisson extraction" % j.name, False,
                                            ["jet fails its deformation equations"])], None
        sections.append(_report_section(rep))
        sections.append(Section("%s: bracket table" % P.name, True, format_bracket(P) or ["  (zero bracket)"]))
    elif args.extend:
        res = obstruction(j, verify=False) if check_jet(j).ok else None
        if res is None:
            return [jet_section(j)], None
        if isinstance(res, Extension):
            lines = ["obstruction: COBOUNDARY (extension to order %d found)" % (j.order + 1)]
            lines.extend(_table_lines(j.base, res.table))
            sections.append(Section("%s: extension" % j.name, True, lines))
            sections.append(jet_section(res.jet))
            if args.out:
                w = Writer("extension of %s from %s" % (j.name, args.file))
                w.jet(res.jet, j.name)
                w.write(args.out)
                sections.append(Section("output", True, ["wrote %s" % args.out]))
        else:
            sections.append(Section("%s: extension" % j.name, False, res.lines()))
    else:
        sections.append(jet_section(j, args.order))
    if args.rigidity:
        r = rigidity_report(j.base)
        sections.append(Section("%s: rigidity" % j.base.name, True, [r.line()],
                                {"rigid": r.rigid, "h2": r.h2}))
    return sections, None


def _table_lines(s, tab):
    out = []
    for (a, b) in sorted(tab):
        for (i, k) in sorted(tab[(a, b)]):
            terms = tab[(a, b)][(i, k)]
            if not terms:
                continue
            body = " + ".join("%s*[%s|e%d]" % (fstr(c), "(x)".join("h%d" % x for x in t), e)
                              for (t, e), c in sorted(terms.items()))
            out.append("  T(e%d, e%d)_{%s,%s} = %s" % (i, k, s.omega.label(a), s.omega.label(b), body))
    return out or ["  (zero)"]


def cmd_report(args):
    doc = load(args.file)
    return verify_sections(doc), None


# ---------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="omega-pseudoalg",
                                description="Exact checks for Omega-indexed H-pseudoalgebras.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)

    v = sub.add_parser("verify", help="run every checker on a definition file")
    v.add_argument("file")
    v.add_argument("--structure")
    common(v)

    c = sub.add_parser("construct", help="build a derived structure and write it out")
    c.add_argument("kind", choices=CONSTRUCT_KINDS)
    c.add_argument("file")
    c.add_argument("--out")
    c.add_argument("--structure")
    c.add_argument("--algebra", help="ordinary algebra (current, rb-lift)")
    c.add_argument("--hopf")
    c.add_argument("--sub", help="substructure of H (current, rb-lift)")
    c.add_argument("--formula", choices=("bialgebra", "coalgebra"), default="bialgebra")
    c.add_argument("--direction", choices=("to-dendriform", "to-zinbiel", "symmetrize"),
                   default="to-dendriform")
    c.add_argument("--operator")
    c.add_argument("--mode", choices=("omega-assoc", "bimodule-back", "dendriform"),
                   default="omega-assoc")
    common(c)

    h = sub.add_parser("cohomology", help="cochain complex ranks in one degree")
    h.add_argument("file")
    h.add_argument("--structure")
    h.add_argument("--degree", type=int, required=True)
    h.add_argument("--coefficients")
    h.add_argument("--operator", help="use the complex of an operator family instead")
    h.add_argument("--complex", action="store_true", help="also check d o d = 0 up to degree+1")
    common(h)

    d = sub.add_parser("deform", help="deformation jets")
    d.add_argument("file")
    d.add_argument("--jet")
    g = d.add_mutually_exclusive_group()
    g.add_argument("--order", type=int)
    g.add_argument("--extend", action="store_true")
    g.add_argument("--poisson", action="store_true")
    d.add_argument("--rigidity", action="store_true")
    d.add_argument("--out")
    common(d)

    r = sub.add_parser("report", help="full verification report")
    r.add_argument("file")
    common(r)
    return p


COMMANDS = {"verify": cmd_verify, "construct": cmd_construct, "cohomology": cmd_cohomology,
            "deform": cmd_deform, "report": cmd_report}

# failures of a hypothesis that come with a readable message (exit status 1)
CHECK_ERRORS = (C.VarietyCheckFailed, C.RBIdentityFailed, C.SymmetryHypothesisFailed,
                C.OperatorIdentityFailed, JetInvalid)
INPUT_ERRORS = (InputError, KindMismatch, OmegaNotCommutative, ShapeMismatch, DegreeTooHigh,
                NoUnitInOmega, JetOrderTooLow)


def render(sections, fmt, command, path, status):
    if fmt == "json":
        return json.dumps({"schema": SCHEMA_ID, "command": command, "file": path, "ok": status == 0,
                           "exit": status, "sections": [s.to_json() for s in sections]},
                          indent=1, sort_keys=True, ensure_ascii=False) + "\n"
    out = []
    for s in sections:
        out.append("[%s]" % s.title)
        out.extend(s.lines)
        out.append("")
    nbad = sum(1 for s in sections if not s.ok)
    out.append("RESULT: PASS" if status == 0 else "RESULT: FAIL (%d failing sections)" % nbad)
    return "\n".join(out) + "\n"


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format
    try:
        sections, _ = COMMANDS[args.command](args)
    except CHECK_ERRORS as exc:
        rep = getattr(exc, "report", None)
        sections = [_report_section(rep)] if rep is not None and hasattr(rep, "lines") else []
        sections.append(Section("%s failed" % args.command, False, ["%s: %s" % (type(exc).__name__, exc)]))
        sys.stdout.write(render(sections, fmt, args.command, args.file, EXIT_FAIL))
        return EXIT_FAIL
    except INPUT_ERRORS as exc:
        if fmt == "json":
            sys.stdout.write(json.dumps({"schema": SCHEMA_ID, "command": args.command, "file": args.file,
                                         "ok": False, "exit": EXIT_INPUT,
                                         "error": {"type": type(exc).__name__, "message": str(exc)}},
                                        indent=1, sort_keys=True, ensure_ascii=False) + "\n")
        sys.stderr.write("error: %s: %s\n" % (type(exc).__name__, exc))
        return EXIT_INPUT
    status = EXIT_OK if all(s.ok for s in sections) else EXIT_FAIL
    sys.stdout.write(render(sections, fmt, args.command, args.file, status))
    return status


if __name__ == "__main__":
    sys.exit(main())
