"""Batch command-line front end.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 precondition
violation, 5 disagreement with the bar-construction oracle.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Dict, List, Optional, Sequence

from . import chq, generate
from .chq import BettiProfile, ChainComplex
from .errors import PreconditionError, ValidationError
from .fincat import FinCategory, find_cycle, is_direct, over_category
from .hofrac import fractions_equal
from .io import (ParseError, Workspace, betti_to_json, complex_to_json, diagram_to_json,
                 load_workspace, map_to_json)
from .nerve import is_acyclic_cofinal_up_to, is_right_cofinal
from .oracle import bar_hocolim_betti
from .reedy import (base_change_check, colim_direct, hocolim, hocolim_absolute,
                    is_reedy_cofibrant, latching_object, reedy_replace, restrict)

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_PRECONDITION, EXIT_ORACLE = 0, 2, 3, 4, 5

DEFAULT_MAX_DIM = 4


def max_dim_cap() -> int:
    raw = os.environ.get("HOCOLIM_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"HOCOLIM_MAX_DIM must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParseError("HOCOLIM_MAX_DIM must be positive")
    return value


class Report:
    """Collects text lines and a JSON payload; only one of them is printed."""

    def __init__(self, as_json: bool, out=None):
        self.as_json = as_json
        self.out = out or sys.stdout
        self.lines: List[str] = []
        self.data: Dict[str, object] = {}

    def line(self, text: str):
        self.lines.append(text)

    def __setitem__(self, key, value):
        self.data[key] = value

    def emit(self):
        if self.as_json:
            self.out.write(json.dumps(self.data, indent=2) + "\n")
        else:
            for text in self.lines:
                self.out.write(text + "\n")


def betti_text(b: BettiProfile, c: Optional[ChainComplex] = None) -> str:
    """``deg n: b_n`` over the degree range of ``c`` (or the support of ``b``)."""
    if c is not None and not c.is_zero():
        return ", ".join(f"deg {n}: {b[n]}" for n in c.degrees())
    return str(b)


def betti_table(b: BettiProfile) -> str:
    """``deg n: b_n`` for every degree from ``min(0, support)`` to the top of the support."""
    if b.is_zero():
        return str(b)
    support = [n for n, _ in b.ranks]
    return ", ".join(f"deg {n}: {b[n]}" for n in range(min(0, support[0]), support[-1] + 1))


def _object(c: FinCategory, token: str) -> int:
    if token in c.object_labels:
        return c.object_labels.index(token)
    try:
        o = int(token)
    except ValueError:
        raise ParseError(f"unknown object {token!r}") from None
    if not 0 <= o < c.n_objects:
        raise ParseError(f"object {o} out of range")
    return o


def _dims(c: ChainComplex) -> str:
    if c.is_zero():
        return "0"
    return " ".join(f"{n}:{c.dim(n)}" for n in c.degrees())


# commands -------------------------------------------------------------------

def cmd_validate(ws: Workspace, args, rep: Report) -> int:
    counts = {s: len(getattr(ws, s)) for s in
              ("categories", "functors", "complexes", "maps", "diagrams", "fractions")}
    rep.line("ok: " + ", ".join(f"{n} {s}" for s, n in counts.items()))
    rep["ok"] = True
    rep["counts"] = counts
    return EXIT_OK


def cmd_is_direct(ws: Workspace, args, rep: Report) -> int:
    c = ws.only("categories", args.category)
    deg = is_direct(c)
    if deg is None:
        cycle = find_cycle(c)
        path = "→".join(str(o) for o in cycle)
        rep.line(f"not direct (cycle: {path})")
        rep["direct"] = False
        rep["cycle"] = cycle
    else:
        rep.line("direct (degrees: " + " ".join(str(deg[o]) for o in range(c.n_objects)) + ")")
        rep["direct"] = True
        rep["degrees"] = list(deg.degrees)
    return EXIT_OK


def cmd_latching(ws: Workspace, args, rep: Report) -> int:
    x = ws.get("diagrams", args.diagram)
    d = _object(x.shape, args.object)
    lat = latching_object(x, d)
    monic = chq.is_monic(lat.map)
    rep.line(f"latching category: {lat.category.category.n_objects} objects, "
             f"{lat.category.category.n_morphisms} morphisms")
    rep.line(f"latching object dims: {_dims(lat.complex)}")
    rep.line(f"latching object homology: {betti_text(chq.homology(lat.complex), lat.complex)}")
    rep.line(f"latching map monic: {str(monic).lower()}")
    rep["latching_object"] = complex_to_json(lat.complex)
    rep["latching_map"] = map_to_json(lat.map, "L", "X")
    rep["monic"] = monic
    return EXIT_OK


def cmd_reedy_check(ws: Workspace, args, rep: Report) -> int:
    x = ws.get("diagrams", args.diagram)
    result = is_reedy_cofibrant(x)
    if result.ok:
        rep.line("Reedy cofibrant")
    else:
        rep.line(f"not Reedy cofibrant (witness: object {x.shape.object_labels[result.witness]}; {result.reason})")
    rep["reedy_cofibrant"] = result.ok
    rep["witness"] = result.witness
    return EXIT_OK


def cmd_reedy_replace(ws: Workspace, args, rep: Report) -> int:
    x = ws.get("diagrams", args.diagram)
    repl = reedy_replace(x)
    c = x.shape
    for o in range(c.n_objects):
        rep.line(f"object {c.object_labels[o]}: dims {_dims(repl.diagram.objects[o])}")
    ok = repl.map.is_pointwise_quasi_iso()
    rep.line(f"pointwise quasi-iso: {str(ok).lower()}")
    name = args.name or f"{args.diagram}.replaced"
    payload = diagram_to_json(repl.diagram, name)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
        rep.line(f"wrote {args.output}")
    rep["workspace"] = payload
    rep["pointwise_quasi_iso"] = ok
    return EXIT_OK


def cmd_colim(ws: Workspace, args, rep: Report) -> int:
    x = ws.get("diagrams", args.diagram)
    apex, _ = colim_direct(x)
    b = chq.homology(apex)
    rep.line(f"colimit dims: {_dims(apex)}")
    rep.line(f"homology: {betti_text(b, apex)}")
    rep["colimit"] = complex_to_json(apex)
    rep["betti"] = betti_to_json(b)
    return EXIT_OK


def _compare(rep: Report, label: str, ours: BettiProfile, theirs: BettiProfile) -> bool:
    agree = ours == theirs
    if not agree:
        rep.line(f"{label}hocolim: {betti_table(ours)}")
        rep.line(f"{label}oracle:  {betti_table(theirs)}")
    return agree


def cmd_hocolim(ws: Workspace, args, rep: Report) -> int:
    x = ws.get("diagrams", args.diagram)
    if args.functor is None:
        apex = hocolim_absolute(x)
        b = chq.homology(apex)
        rep.line(f"betti: {betti_table(b)}")
        rep["betti"] = betti_to_json(b)
        if args.oracle_check:
            agree = _compare(rep, "", b, bar_hocolim_betti(x))
            rep.line(f"oracle-agreement: {str(agree).lower()}")
            rep["oracle_agreement"] = agree
            if not agree:
                rep["oracle_betti"] = betti_to_json(bar_hocolim_betti(x))
                return EXIT_ORACLE
        return EXIT_OK
    u = ws.get("functors", args.functor)
    if u.source is not x.shape:
        raise PreconditionError("functor source is not the diagram shape")
    result = hocolim(u, x)
    agree_all = True
    per_object = []
    for d2 in range(u.target.n_objects):
        apex = result.diagram.objects[d2]
        b = chq.homology(apex)
        label = u.target.object_labels[d2]
        rep.line(f"object {label}: {betti_table(b)}")
        entry = {"object": d2, "betti": betti_to_json(b)}
        if args.oracle_check:
            expected = bar_hocolim_betti(restrict(over_category(u, d2).projection, x))
            agree = _compare(rep, f"object {label} ", b, expected)
            agree_all &= agree
            entry["oracle_agreement"] = agree
            if not agree:
                entry["oracle_betti"] = betti_to_json(expected)
        per_object.append(entry)
    rep["objects"] = per_object
    if args.oracle_check:
        rep.line(f"oracle-agreement: {str(agree_all).lower()}")
        rep["oracle_agreement"] = agree_all
    return EXIT_OK if agree_all else EXIT_ORACLE


def cmd_oracle_hocolim(ws: Workspace, args, rep: Report) -> int:
    x = ws.get("diagrams", args.diagram)
    b = bar_hocolim_betti(x)
    rep.line(f"betti: {betti_table(b)}")
    rep["betti"] = betti_to_json(b)
    return EXIT_OK


def cmd_homology(ws: Workspace, args, rep: Report) -> int:
    c = ws.only("complexes", args.complex)
    b = chq.homology(c)
    rep.line(betti_text(b, c))
    rep["betti"] = betti_to_json(b, c.lo, c.hi)
    return EXIT_OK


def cmd_factorize(ws: Workspace, args, rep: Report) -> int:
    f = ws.only("maps", args.map)
    mono, r = chq.factorize(f)
    m = mono.target
    rep.line(f"middle dims: {_dims(m)}")
    rep.line(f"f' monic: {str(chq.is_monic(mono)).lower()}")
    rep.line(f"r quasi-iso: {str(chq.is_quasi_iso(r)).lower()}")
    rep.line(f"r∘f' = f: {str(r @ mono == f).lower()}")
    rep["middle"] = complex_to_json(m)
    rep["f_prime"] = map_to_json(mono, "A", "M")
    rep["r"] = map_to_json(r, "M", "B")
    return EXIT_OK


def cmd_homotopic(ws: Workspace, args, rep: Report) -> int:
    f, g = ws.get("maps", args.f), ws.get("maps", args.g)
    if f.source != g.source or f.target != g.target:
        raise PreconditionError("maps are not parallel")
    h = chq.solve_homotopy(f, g)
    rep.line("homotopic" if h is not None else "not homotopic")
    rep["homotopic"] = h is not None
    if h is not None:
        rep["homotopy"] = {str(n): [[str(v) for v in m.row(i)] for i in range(m.rows)]
                           for n, m in sorted(h.components.items()) if m.rows and m.cols}
    return EXIT_OK


def cmd_frac_eq(ws: Workspace, args, rep: Report) -> int:
    f1, f2 = ws.get("fractions", args.first), ws.get("fractions", args.second)
    if f1.src != f2.src or f1.dst != f2.dst:
        raise PreconditionError("fractions do not have the same source and target")
    eq = fractions_equal(f1, f2)
    rep.line("equal" if eq else "not equal")
    rep["equal"] = eq
    return EXIT_OK


def cmd_cofinal(ws: Workspace, args, rep: Report) -> int:
    u = ws.get("functors", args.functor)
    right = is_right_cofinal(u)
    acyclic = None
    n = None
    if args.acyclic_up_to is not None:
        n = min(args.acyclic_up_to, max_dim_cap())
        if n < args.acyclic_up_to:
            rep.line(f"note: acyclicity degree capped at {n} by HOCOLIM_MAX_DIM")
        acyclic = is_acyclic_cofinal_up_to(u, n)
    rows = []
    for d2 in range(u.target.n_objects):
        label = u.target.object_labels[d2]
        text = f"object {label}: {'ok' if right.verdicts[d2] else 'FAIL'} ({right.details[d2]})"
        row = {"object": d2, "right_cofinal": right.verdicts[d2], "detail": right.details[d2]}
        if acyclic is not None:
            text += f", acyclic<{n}: {'ok' if acyclic.verdicts[d2] else 'FAIL'} ({acyclic.details[d2]})"
            row["acyclic"] = acyclic.verdicts[d2]
            row["betti"] = acyclic.details[d2]
        rep.line(text)
        rows.append(row)
    verdict = bool(right) and (acyclic is None or bool(acyclic))
    rep.line(f"right cofinal: {str(bool(right)).lower()}")
    if acyclic is not None:
        rep.line(f"acyclic up to {n}: {str(bool(acyclic)).lower()}")
    rep["objects"] = rows
    rep["right_cofinal"] = bool(right)
    rep["verdict"] = verdict
    return EXIT_OK


def cmd_base_change(ws: Workspace, args, rep: Report) -> int:
    u = ws.get("functors", args.functor)
    if args.diagram is not None:
        x = ws.get("diagrams", args.diagram)
    else:
        matching = [x for x in ws.diagrams.values() if x.shape is u.source]
        if len(matching) != 1:
            raise ParseError("use --diagram to pick the diagram over the functor source")
        x = matching[0]
    d2 = _object(u.target, args.object)
    result = base_change_check(u, x, d2)
    rep.line(f"hocolim over (u|d2): {result.over_category_betti}")
    rep.line(f"relative hocolim at d2: {result.relative_betti}")
    rep.line(f"comparison quasi-iso: {str(result.comparison_is_quasi_iso).lower()}")
    rep.line(f"verdict: {str(result.verdict).lower()}")
    rep["over_category_betti"] = betti_to_json(result.over_category_betti)
    rep["relative_betti"] = betti_to_json(result.relative_betti)
    rep["comparison_is_quasi_iso"] = result.comparison_is_quasi_iso
    rep["verdict"] = result.verdict
    return EXIT_OK


def cmd_selftest(ws: Workspace, args, rep: Report) -> int:
    rng = random.Random(args.seed)
    agree = 0
    failures = []
    for k in range(args.count):
        shape = generate.random_shape(rng)
        x = generate.random_diagram(rng, shape)
        ours = chq.homology(hocolim_absolute(x))
        theirs = bar_hocolim_betti(x)
        if ours == theirs:
            agree += 1
        else:
            failures.append(k)
            rep.line(f"diagram {k}: hocolim {ours} / oracle {theirs}")
    factor_ok = 0
    for _ in range(args.count):
        a = generate.random_complex(rng)
        b = generate.random_complex(rng)
        f = generate.random_chain_map(rng, a, b)
        mono, r = chq.factorize(f)
        factor_ok += chq.is_monic(mono) and chq.is_quasi_iso(r) and r @ mono == f
    rep.line(f"seed {args.seed}: oracle agreement {agree}/{args.count}, "
             f"factorization {factor_ok}/{args.count}")
    rep["seed"] = args.seed
    rep["oracle_agreement"] = agree
    rep["factorization"] = factor_ok
    rep["count"] = args.count
    rep["failures"] = failures
    if agree != args.count:
        return EXIT_ORACLE
    return EXIT_OK if factor_ok == args.count else EXIT_VALIDATION


COMMANDS = {
    "validate": cmd_validate,
    "is-direct": cmd_is_direct,
    "latching": cmd_latching,
    "reedy-check": cmd_reedy_check,
    "reedy-replace": cmd_reedy_replace,
    "colim": cmd_colim,
    "hocolim": cmd_hocolim,
    "oracle-hocolim": cmd_oracle_hocolim,
    "homology": cmd_homology,
    "factorize": cmd_factorize,
    "homotopic": cmd_homotopic,
    "frac-eq": cmd_frac_eq,
    "cofinal": cmd_cofinal,
    "base-change": cmd_base_change,
    "selftest": cmd_selftest,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-i", "--input", action="append", dest="sub_inputs", default=None,
                        metavar="FILE", help="workspace JSON file (repeatable)")
    common.add_argument("--json", action="store_true", dest="sub_json", help="JSON report")

    parser = argparse.ArgumentParser(prog="cofcat", description=__doc__.splitlines()[0])
    parser.add_argument("-i", "--input", action="append", dest="inputs", default=[],
                        metavar="FILE", help="workspace JSON file (repeatable)")
    parser.add_argument("--json", action="store_true", help="JSON report")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text):
        return sub.add_parser(name, parents=[common], help=help_text)

    add("validate", "load and validate every input")
    p = add("is-direct", "test whether a category is direct")
    p.add_argument("category", nargs="?")
    p = add("latching", "latching object of a diagram at an object")
    p.add_argument("diagram")
    p.add_argument("object")
    p = add("reedy-check", "test Reedy cofibrancy")
    p.add_argument("diagram")
    p = add("reedy-replace", "Reedy cofibrant replacement")
    p.add_argument("diagram")
    p.add_argument("-o", "--output", help="write the replaced diagram as a workspace file")
    p.add_argument("--name", help="name of the replaced diagram in the output")
    p = add("colim", "colimit of a Reedy cofibrant diagram")
    p.add_argument("diagram")
    p = add("hocolim", "homotopy colimit homology")
    p.add_argument("diagram")
    p.add_argument("--functor", help="relative hocolim along this functor")
    p.add_argument("--oracle-check", action="store_true", help="compare with the bar oracle")
    p = add("oracle-hocolim", "hocolim homology from the bar construction")
    p.add_argument("diagram")
    p = add("homology", "Betti numbers of a complex")
    p.add_argument("complex", nargs="?")
    p = add("factorize", "monic + quasi-iso factorization of a map")
    p.add_argument("map", nargs="?")
    p = add("homotopic", "decide whether two maps are chain homotopic")
    p.add_argument("f")
    p.add_argument("g")
    p = add("frac-eq", "decide equality of two left fractions")
    p.add_argument("first")
    p.add_argument("second")
    p = add("cofinal", "right cofinality verdicts per target object")
    p.add_argument("functor")
    p.add_argument("--acyclic-up-to", type=int, metavar="N")
    p = add("base-change", "compare relative hocolim with hocolim over the slice")
    p.add_argument("functor")
    p.add_argument("object")
    p.add_argument("--diagram")
    p = add("selftest", "random oracle and factorization checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    inputs = list(args.inputs) + list(args.sub_inputs or [])
    rep = Report(args.json or args.sub_json, out)
    try:
        ws = load_workspace(inputs)
        code = COMMANDS[args.command](ws, args, rep)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except PreconditionError as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    rep.emit()
    return code


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
