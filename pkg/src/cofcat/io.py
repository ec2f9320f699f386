"""JSON interchange format.

A workspace file is a JSON object with optional sections ``categories``,
``functors``, ``complexes``, ``maps``, ``diagrams`` and ``fractions``, each a
mapping from names to definitions.  Rationals are strings ``"p/q"`` (plain
integers are accepted on input).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable

from .chq import BettiProfile, ChainComplex, ChainMap
from .errors import CofcatError, ValidationError
from .fincat import FinCategory, Functor, validate, validate_functor
from .hofrac import LeftFraction
from .ratlin import Matrix, format_rational
from .reedy import Diagram

__all__ = [
    "ParseError",
    "Workspace",
    "load_workspace",
    "category_from_json",
    "category_to_json",
    "complex_from_json",
    "complex_to_json",
    "map_from_json",
    "map_to_json",
    "betti_to_json",
    "diagram_to_json",
]


class ParseError(CofcatError):
    """Input is not valid JSON or does not follow the interchange schema."""


SECTIONS = ("categories", "functors", "complexes", "maps", "diagrams", "fractions")


def _matrix(rows, nrows: int, ncols: int) -> Matrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows")
    if not rows or all(not r for r in rows):
        if nrows and ncols:
            raise ValidationError(f"empty matrix where a {nrows}x{ncols} one is needed")
        return Matrix.zeros(nrows, ncols)
    try:
        m = Matrix.from_rows(rows)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix: {exc}") from None
    if m.shape != (nrows, ncols):
        raise ValidationError(f"matrix is {m.rows}x{m.cols}, expected {nrows}x{ncols}")
    return m


def _matrix_json(m: Matrix) -> list:
    return [[format_rational(x) for x in m.row(i)] for i in range(m.rows)]


def category_from_json(obj: Dict[str, Any]) -> FinCategory:
    try:
        n = int(obj["objects"])
        mors = sorted(obj["morphisms"], key=lambda m: int(m["id"]))
        ids = [int(m["id"]) for m in mors]
        if ids != list(range(len(mors))):
            raise ParseError("morphism ids must be 0..N-1")
        src = [int(m["src"]) for m in mors]
        dst = [int(m["dst"]) for m in mors]
        identity = [int(i) for i in obj["identity"]]
        compose = {}
        for entry in obj.get("compose", []):
            g, f, gf = (int(v) for v in entry)
            compose[(g, f)] = gf
        labels = [m.get("name", str(m["id"])) for m in mors]
        object_labels = obj.get("object_names")
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad category: {exc!r}") from None
    c = FinCategory(n, src, dst, identity, compose, labels=labels, object_labels=object_labels)
    bad = validate(c)
    if bad:
        raise ValidationError(bad)
    return c


def category_to_json(c: FinCategory) -> Dict[str, Any]:
    return {
        "objects": c.n_objects,
        "morphisms": [{"id": m, "src": c.src[m], "dst": c.dst[m], "name": c.labels[m]}
                      for m in range(c.n_morphisms)],
        "identity": list(c.identity),
        "compose": [[g, f, h] for (g, f), h in sorted(c.table.items())
                    if not (c.is_identity(g) or c.is_identity(f))],
    }


def complex_from_json(obj: Dict[str, Any]) -> ChainComplex:
    try:
        lo, hi = int(obj["lo"]), int(obj["hi"])
        dims_in = {int(k): int(v) for k, v in obj.get("dims", {}).items()}
        d_in = {int(k): v for k, v in obj.get("d", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad complex: {exc!r}") from None
    for n in dims_in:
        if not lo <= n <= hi and dims_in[n]:
            raise ValidationError(f"dimension given for degree {n} outside {lo}..{hi}")
    dims = [dims_in.get(n, 0) for n in range(lo, hi + 1)]

    def dim(n):
        return dims_in.get(n, 0) if lo <= n <= hi else 0

    diffs = {n: _matrix(rows, dim(n - 1), dim(n)) for n, rows in d_in.items()}
    return ChainComplex(lo, hi, dims, diffs)


def complex_to_json(c: ChainComplex) -> Dict[str, Any]:
    return {
        "lo": c.lo,
        "hi": c.hi,
        "dims": {str(n): c.dim(n) for n in c.degrees()},
        "d": {str(n): _matrix_json(c.d(n)) for n in range(c.lo + 1, c.hi + 1)
              if c.dim(n) and c.dim(n - 1)},
    }


def map_from_json(obj: Dict[str, Any], source: ChainComplex, target: ChainComplex) -> ChainMap:
    try:
        comps_in = {int(k): v for k, v in obj.get("f", {}).items()}
    except (TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"bad chain map: {exc!r}") from None
    comps = {n: _matrix(rows, target.dim(n), source.dim(n)) for n, rows in comps_in.items()}
    return ChainMap(source, target, comps)


def map_to_json(f: ChainMap, src: str = "src", dst: str = "dst") -> Dict[str, Any]:
    return {"src": src, "dst": dst,
            "f": {str(n): _matrix_json(m) for n, m in f.components.items() if m.rows and m.cols}}


def betti_to_json(b: BettiProfile, lo: int = None, hi: int = None) -> list:
    if lo is None:
        return [[n, r] for n, r in b.ranks]
    return [[n, b[n]] for n in range(lo, hi + 1)]


def diagram_to_json(x: Diagram, prefix: str) -> Dict[str, Any]:
    """A self-contained workspace holding ``x`` under the name ``prefix``."""
    c = x.shape
    complexes = {f"{prefix}.X{o}": complex_to_json(x.objects[o]) for o in range(c.n_objects)}
    maps = {f"{prefix}.m{m}": map_to_json(x.morphisms[m], f"{prefix}.X{c.src[m]}", f"{prefix}.X{c.dst[m]}")
            for m in range(c.n_morphisms) if not c.is_identity(m)}
    return {
        "categories": {f"{prefix}.shape": category_to_json(c)},
        "complexes": complexes,
        "maps": maps,
        "diagrams": {prefix: {
            "shape": f"{prefix}.shape",
            "objects": {str(o): f"{prefix}.X{o}" for o in range(c.n_objects)},
            "morphisms": {str(m): f"{prefix}.m{m}" for m in range(c.n_morphisms) if not c.is_identity(m)},
        }},
    }


@dataclass
class Workspace:
    categories: Dict[str, FinCategory] = field(default_factory=dict)
    functors: Dict[str, Functor] = field(default_factory=dict)
    complexes: Dict[str, ChainComplex] = field(default_factory=dict)
    maps: Dict[str, ChainMap] = field(default_factory=dict)
    diagrams: Dict[str, Diagram] = field(default_factory=dict)
    fractions: Dict[str, LeftFraction] = field(default_factory=dict)

    def get(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            raise ParseError(f"unknown name {name!r} in {section}")
        return table[name]

    def only(self, section: str, name: str = None):
        """The named entry, or the single entry of the section when ``name`` is None."""
        if name is not None:
            return self.get(section, name)
        table = getattr(self, section)
        if len(table) != 1:
            raise ParseError(f"specify which of the {len(table)} {section} to use")
        return next(iter(table.values()))


def _read(paths: Iterable[str]) -> Dict[str, Dict[str, Any]]:
    merged: Dict[str, Dict[str, Any]] = {s: {} for s in SECTIONS}
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"{path}: {exc}") from None
        if not isinstance(data, dict):
            raise ParseError(f"{path}: top level must be an object")
        for key, value in data.items():
            if key not in SECTIONS:
                raise ParseError(f"{path}: unknown section {key!r}")
            if not isinstance(value, dict):
                raise ParseError(f"{path}: section {key!r} must be an object")
            for name, entry in value.items():
                if name in merged[key] and merged[key][name] != entry:
                    raise ParseError(f"{path}: conflicting definitions of {name!r} in {key}")
                merged[key][name] = entry
    return merged


def load_workspace(paths: Iterable[str]) -> Workspace:
    raw = _read(paths)
    ws = Workspace()
    for name, obj in raw["categories"].items():
        ws.categories[name] = category_from_json(obj)
    for name, obj in raw["functors"].items():
        try:
            u = Functor(ws.get("categories", obj["src"]), ws.get("categories", obj["dst"]),
                        [int(v) for v in obj["objects"]], [int(v) for v in obj["morphisms"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad functor {name!r}: {exc!r}") from None
        bad = validate_functor(u)
        if bad:
            raise ValidationError(f"functor {name!r}: {bad}")
        ws.functors[name] = u
    for name, obj in raw["complexes"].items():
        try:
            ws.complexes[name] = complex_from_json(obj)
        except ValidationError as exc:
            raise ValidationError(f"complex {name!r}: {exc}") from None
    for name, obj in raw["maps"].items():
        try:
            f = map_from_json(obj, ws.get("complexes", obj["src"]), ws.get("complexes", obj["dst"]))
        except KeyError as exc:
            raise ParseError(f"bad chain map {name!r}: missing {exc}") from None
        except ValidationError as exc:
            raise ValidationError(f"chain map {name!r}: {exc}") from None
        ws.maps[name] = f
    for name, obj in raw["diagrams"].items():
        try:
            shape = ws.get("categories", obj["shape"])
            objects = [ws.get("complexes", obj["objects"][str(o)]) for o in range(shape.n_objects)]
            maps = {int(k): ws.get("maps", v) for k, v in obj.get("morphisms", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad diagram {name!r}: {exc!r}") from None
        try:
            ws.diagrams[name] = Diagram.from_generators(shape, objects, maps)
        except ValidationError as exc:
            raise ValidationError(f"diagram {name!r}: {exc}") from None
    for name, obj in raw["fractions"].items():
        try:
            f, s = ws.get("maps", obj["f"]), ws.get("maps", obj["s"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad fraction {name!r}: {exc!r}") from None
        if f.target != s.target:
            raise ValidationError(f"fraction {name!r}: numerator and denominator targets differ")
        ws.fractions[name] = LeftFraction(f, s)
    return ws
