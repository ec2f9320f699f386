"""Finite categories given by explicit composition tables, and the
combinatorial constructions built from them: over/under categories,
latching categories, Grothendieck constructions, sums, products and the
truncated category of chains ``Delta' D``.

Objects and morphisms are dense integer indices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import PreconditionError, ValidationError

__all__ = [
    "FinCategory",
    "Functor",
    "NaturalTransformation",
    "DegreeFunction",
    "SliceCategory",
    "validate",
    "validate_functor",
    "is_direct",
    "find_cycle",
    "over_category",
    "under_category",
    "latching_category",
    "grothendieck",
    "category_sum",
    "category_product",
    "delta_prime",
    "is_open_embedding",
    "is_closed_embedding",
    "full_subcategory",
    "terminal_functor",
    "object_inclusion",
]


_TERMINAL = None


class FinCategory:
    """A finite category.

    ``compose`` maps ``(g, f)`` to ``g . f`` for every composable pair
    (``dst(f) == src(g)``).  Identity composites are filled in when the
    caller leaves them out, so a table only needs the non-identity pairs.
    """

    __slots__ = ("n_objects", "src", "dst", "identity", "_compose", "labels", "object_labels",
                 "_hom", "_out", "_in")

    def __init__(self, n_objects: int, src: Sequence[int], dst: Sequence[int],
                 identity: Sequence[int], compose: Dict[Tuple[int, int], int],
                 labels: Optional[Sequence[str]] = None,
                 object_labels: Optional[Sequence[str]] = None):
        self.n_objects = n_objects
        self.src = tuple(src)
        self.dst = tuple(dst)
        self.identity = tuple(identity)
        if len(self.src) != len(self.dst):
            raise ValidationError("src and dst lists differ in length")
        if len(self.identity) != n_objects:
            raise ValidationError("need exactly one identity per object")
        table = dict(compose)
        n_mor = len(self.src)
        for o, i in enumerate(self.identity):
            if not 0 <= i < n_mor:
                raise ValidationError(f"identity of object {o} is not a morphism")
        for m in range(n_mor):
            for o in (self.src[m], self.dst[m]):
                if not 0 <= o < n_objects:
                    raise ValidationError(f"morphism {m} has endpoint {o} out of range")
            table.setdefault((m, self.identity[self.src[m]]), m)
            table.setdefault((self.identity[self.dst[m]], m), m)
        self._compose = table
        self.labels = tuple(labels) if labels is not None else tuple(str(m) for m in range(n_mor))
        self.object_labels = (tuple(object_labels) if object_labels is not None
                              else tuple(str(o) for o in range(n_objects)))
        hom: Dict[Tuple[int, int], List[int]] = {}
        out: List[List[int]] = [[] for _ in range(n_objects)]
        into: List[List[int]] = [[] for _ in range(n_objects)]
        for m in range(n_mor):
            hom.setdefault((self.src[m], self.dst[m]), []).append(m)
            out[self.src[m]].append(m)
            into[self.dst[m]].append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._out = tuple(tuple(v) for v in out)
        self._in = tuple(tuple(v) for v in into)

    # -- constructors --------------------------------------------------

    @classmethod
    def terminal(cls) -> "FinCategory":
        """The one-object category; shared, so functors into or out of it compose."""
        global _TERMINAL
        if _TERMINAL is None:
            _TERMINAL = cls(1, [0], [0], [0], {})
        return _TERMINAL

    @classmethod
    def empty(cls) -> "FinCategory":
        return cls(0, [], [], [], {})

    @classmethod
    def discrete(cls, n: int) -> "FinCategory":
        return cls(n, range(n), range(n), range(n), {})

    @classmethod
    def from_poset(cls, n: int, relations: Sequence[Tuple[int, int]]) -> "FinCategory":
        """Thin category of the preorder generated by ``relations`` (pairs a <= b)."""
        leq = [[i == j for j in range(n)] for i in range(n)]
        for a, b in relations:
            leq[a][b] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    for j in range(n):
                        if leq[k][j]:
                            leq[i][j] = True
        pairs = [(i, i) for i in range(n)] + [(i, j) for i in range(n) for j in range(n)
                                              if i != j and leq[i][j]]
        index = {p: k for k, p in enumerate(pairs)}
        compose = {}
        for (b, c) in pairs:
            for (a, b2) in pairs:
                if b2 == b:
                    compose[(index[(b, c)], index[(a, b)])] = index[(a, c)]
        labels = [f"{i}" if i == j else f"{i}<={j}" for i, j in pairs]
        return cls(n, [p[0] for p in pairs], [p[1] for p in pairs], list(range(n)), compose,
                   labels=labels)

    @classmethod
    def free(cls, n: int, edges: Sequence[Tuple[int, int]],
             names: Optional[Sequence[str]] = None) -> "FinCategory":
        """Free category on an acyclic multigraph; morphisms are paths."""
        names = list(names) if names is not None else [f"e{k}" for k in range(len(edges))]
        paths: List[Tuple[int, ...]] = []
        starts: List[int] = []
        ends: List[int] = []
        for o in range(n):
            paths.append(())
            starts.append(o)
            ends.append(o)
        frontier = [(e,) for e in range(len(edges))]
        while frontier:
            nxt = []
            for p in frontier:
                if len(p) > len(edges):
                    raise ValidationError("edges contain a cycle; free category is infinite")
                paths.append(p)
                starts.append(edges[p[0]][0])
                ends.append(edges[p[-1]][1])
                for e, (a, _) in enumerate(edges):
                    if a == edges[p[-1]][1]:
                        nxt.append(p + (e,))
            frontier = nxt
        index = {}
        for k, p in enumerate(paths):
            index[(starts[k], p)] = k
        compose = {}
        for g in range(len(paths)):
            for f in range(len(paths)):
                if ends[f] == starts[g]:
                    compose[(g, f)] = index[(starts[f], paths[f] + paths[g])]
        labels = [(".".join(names[e] for e in reversed(p)) if p else f"id{starts[k]}")
                  for k, p in enumerate(paths)]
        return cls(n, starts, ends, list(range(n)), compose, labels=labels)

    # -- queries -------------------------------------------------------

    @property
    def n_morphisms(self) -> int:
        return len(self.src)

    def compose(self, g: int, f: int) -> int:
        try:
            return self._compose[(g, f)]
        except KeyError:
            if self.dst[f] != self.src[g]:
                raise PreconditionError(f"morphisms {g} and {f} are not composable") from None
            raise ValidationError(f"composite {g} . {f} missing from table") from None

    def compose_path(self, morphisms: Sequence[int]) -> int:
        """Composite of ``f1, f2, ..., fk`` applied left to right (``fk . ... . f1``)."""
        acc = morphisms[0]
        for m in morphisms[1:]:
            acc = self.compose(m, acc)
        return acc

    @property
    def table(self) -> Dict[Tuple[int, int], int]:
        return dict(self._compose)

    def hom(self, a: int, b: int) -> Tuple[int, ...]:
        return self._hom.get((a, b), ())

    def out_of(self, a: int) -> Tuple[int, ...]:
        return self._out[a]

    def into(self, b: int) -> Tuple[int, ...]:
        return self._in[b]

    def is_identity(self, m: int) -> bool:
        return self.identity[self.src[m]] == m

    def nonidentity(self) -> List[int]:
        return [m for m in range(self.n_morphisms) if not self.is_identity(m)]

    def opposite(self) -> "FinCategory":
        table = {(f, g): h for (g, f), h in self._compose.items()}
        return FinCategory(self.n_objects, self.dst, self.src, self.identity, table,
                           labels=self.labels, object_labels=self.object_labels)

    def __repr__(self):
        return f"FinCategory(objects={self.n_objects}, morphisms={self.n_morphisms})"


def validate(c: FinCategory) -> Optional[str]:
    """None when ``c`` is a category, otherwise the first broken law."""
    n = c.n_morphisms
    for o in range(c.n_objects):
        i = c.identity[o]
        if c.src[i] != o or c.dst[i] != o:
            return f"identity {i} of object {o} is not an endomorphism of {o}"
    for (g, f), h in c._compose.items():
        if not (0 <= g < n and 0 <= f < n and 0 <= h < n):
            return f"composite entry ({g}, {f}) -> {h} refers to an unknown morphism"
        if c.dst[f] != c.src[g]:
            return f"table composes non-composable pair ({g}, {f})"
        if c.src[h] != c.src[f] or c.dst[h] != c.dst[g]:
            return f"composite {g}.{f} = {h} has wrong endpoints"
    for f in range(n):
        for g in c.out_of(c.dst[f]):
            if (g, f) not in c._compose:
                return f"composite {g}.{f} is missing"
    for f in range(n):
        if c.compose(c.identity[c.dst[f]], f) != f:
            return f"left identity law fails for morphism {f}"
        if c.compose(f, c.identity[c.src[f]]) != f:
            return f"right identity law fails for morphism {f}"
    for f in range(n):
        for g in c.out_of(c.dst[f]):
            gf = c.compose(g, f)
            for h in c.out_of(c.dst[g]):
                if c.compose(h, gf) != c.compose(c.compose(h, g), f):
                    return f"associativity fails for triple (h={h}, g={g}, f={f})"
    return None


class Functor:
    __slots__ = ("source", "target", "obj_map", "mor_map")

    def __init__(self, source: FinCategory, target: FinCategory,
                 obj_map: Sequence[int], mor_map: Sequence[int]):
        self.source = source
        self.target = target
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        if len(self.obj_map) != source.n_objects or len(self.mor_map) != source.n_morphisms:
            raise ValidationError("functor maps do not match the source category")

    @classmethod
    def identity(cls, c: FinCategory) -> "Functor":
        return cls(c, c, range(c.n_objects), range(c.n_morphisms))

    def __call__(self, m: int) -> int:
        return self.mor_map[m]

    def obj(self, o: int) -> int:
        return self.obj_map[o]

    def then(self, other: "Functor") -> "Functor":
        """``other . self``."""
        if other.source is not self.target:
            raise PreconditionError("functors are not composable")
        return Functor(self.source, other.target,
                       [other.obj_map[o] for o in self.obj_map],
                       [other.mor_map[m] for m in self.mor_map])

    def __eq__(self, other):
        return (isinstance(other, Functor) and self.source is other.source
                and self.target is other.target and self.obj_map == other.obj_map
                and self.mor_map == other.mor_map)

    def __hash__(self):
        return hash((id(self.source), id(self.target), self.obj_map, self.mor_map))

    def __repr__(self):
        return f"Functor(objects={list(self.obj_map)}, morphisms={list(self.mor_map)})"


def validate_functor(u: Functor) -> Optional[str]:
    c, d = u.source, u.target
    for o in u.obj_map:
        if not 0 <= o < d.n_objects:
            return f"object image {o} out of range"
    for m in range(c.n_morphisms):
        im = u.mor_map[m]
        if not 0 <= im < d.n_morphisms:
            return f"morphism image {im} out of range"
        if d.src[im] != u.obj_map[c.src[m]] or d.dst[im] != u.obj_map[c.dst[m]]:
            return f"morphism {m} is sent to a morphism with wrong endpoints"
    for o in range(c.n_objects):
        if u.mor_map[c.identity[o]] != d.identity[u.obj_map[o]]:
            return f"identity of object {o} is not preserved"
    for (g, f), h in c.table.items():
        if d.compose(u.mor_map[g], u.mor_map[f]) != u.mor_map[h]:
            return f"composite {g}.{f} is not preserved"
    return None


@dataclass(frozen=True)
class NaturalTransformation:
    """``alpha: u => v`` with ``components[d]: u(d) -> v(d)`` in the target."""

    source: Functor
    target: Functor
    components: Tuple[int, ...]

    def __post_init__(self):
        u, v = self.source, self.target
        if u.source is not v.source or u.target is not v.target:
            raise ValidationError("natural transformation between functors with different endpoints")
        d2 = u.target
        if len(self.components) != u.source.n_objects:
            raise ValidationError("one component per source object required")
        for o, a in enumerate(self.components):
            if d2.src[a] != u.obj(o) or d2.dst[a] != v.obj(o):
                raise ValidationError(f"component at {o} has wrong endpoints")
        for f in range(u.source.n_morphisms):
            s, t = u.source.src[f], u.source.dst[f]
            if d2.compose(v(f), self.components[s]) != d2.compose(self.components[t], u(f)):
                raise ValidationError(f"naturality square fails at morphism {f}")

    @classmethod
    def identity(cls, u: Functor) -> "NaturalTransformation":
        return cls(u, u, tuple(u.target.identity[u.obj(o)] for o in range(u.source.n_objects)))

    def then(self, other: "NaturalTransformation") -> "NaturalTransformation":
        """Vertical composite ``other . self``."""
        d2 = self.source.target
        return NaturalTransformation(self.source, other.target, tuple(
            d2.compose(b, a) for a, b in zip(self.components, other.components)))


@dataclass(frozen=True)
class DegreeFunction:
    degrees: Tuple[int, ...]

    def __getitem__(self, o: int) -> int:
        return self.degrees[o]

    def strata(self) -> List[List[int]]:
        """Objects grouped by degree, ascending index inside each group."""
        top = max(self.degrees, default=-1)
        return [[o for o, k in enumerate(self.degrees) if k == n] for n in range(top + 1)]


def find_cycle(c: FinCategory) -> Optional[List[int]]:
    """A cycle of objects joined by nonidentity arrows, or None."""
    adj = [sorted({c.dst[m] for m in c.out_of(o) if not c.is_identity(m)}) for o in range(c.n_objects)]
    color = [0] * c.n_objects
    stack_path: List[int] = []

    def visit(o):
        color[o] = 1
        stack_path.append(o)
        for p in adj[o]:
            if color[p] == 1:
                return stack_path[stack_path.index(p):] + [p]
            if color[p] == 0:
                found = visit(p)
                if found:
                    return found
        stack_path.pop()
        color[o] = 2
        return None

    for o in range(c.n_objects):
        if color[o] == 0:
            found = visit(o)
            if found:
                return found
    return None


def is_direct(c: FinCategory) -> Optional[DegreeFunction]:
    """The minimal degree function (longest nonidentity path ending at each
    object), or None when nonidentity arrows form a cycle."""
    if find_cycle(c) is not None:
        return None
    deg: List[Optional[int]] = [None] * c.n_objects

    def depth(o):
        if deg[o] is None:
            preds = [c.src[m] for m in c.into(o) if not c.is_identity(m)]
            deg[o] = max((depth(p) + 1 for p in preds), default=0)
        return deg[o]

    return DegreeFunction(tuple(depth(o) for o in range(c.n_objects)))


def require_direct(c: FinCategory) -> DegreeFunction:
    deg = is_direct(c)
    if deg is None:
        raise PreconditionError("category is not direct")
    return deg


@dataclass(frozen=True)
class SliceCategory:
    """An over- or under-category together with its structure maps.

    ``objects[k] = (d1, g)``.  For ``(u | d2)`` the leg ``g`` is a morphism
    ``u(d1) -> d2`` of the target; for ``(d2 | u)`` it is ``d2 -> u(d1)``.
    ``arrows[m]`` is the source morphism underlying slice morphism ``m``.
    """

    category: FinCategory
    projection: Functor
    objects: Tuple[Tuple[int, int], ...]
    arrows: Tuple[int, ...]

    @property
    def legs(self) -> Tuple[int, ...]:
        return tuple(g for _, g in self.objects)

    def index(self, d1: int, g: int) -> int:
        return self.objects.index((d1, g))


def _slice(u: Functor, objects: List[Tuple[int, int]], allowed) -> SliceCategory:
    c1 = u.source
    index = {ob: k for k, ob in enumerate(objects)}
    src, dst, arrows, labels = [], [], [], []
    identity = [None] * len(objects)
    lookup = {}
    for a, (d1, g) in enumerate(objects):
        for f in c1.out_of(d1):
            d1b = c1.dst[f]
            for b, (e1, h) in enumerate(objects):
                if e1 == d1b and allowed(f, g, h):
                    lookup[(a, b, f)] = len(src)
                    if c1.is_identity(f) and a == b:
                        identity[a] = len(src)
                    src.append(a)
                    dst.append(b)
                    arrows.append(f)
                    labels.append(c1.labels[f])
    compose = {}
    for m1 in range(len(src)):
        for m2 in range(len(src)):
            if dst[m1] == src[m2]:
                f = c1.compose(arrows[m2], arrows[m1])
                compose[(m2, m1)] = lookup[(src[m1], dst[m2], f)]
    cat = FinCategory(len(objects), src, dst, identity, compose, labels=labels,
                      object_labels=[f"({c1.object_labels[d]},{u.target.labels[g]})" for d, g in objects])
    proj = Functor(cat, c1, [d for d, _ in objects], arrows)
    return SliceCategory(cat, proj, tuple(objects), tuple(arrows))


def over_category(u: Functor, d2: int) -> SliceCategory:
    """``(u | d2)``: pairs ``(d1, g: u d1 -> d2)``; a morphism is ``f: d1 -> d1'``
    with ``g' . u(f) = g``."""
    c1, c2 = u.source, u.target
    if not 0 <= d2 < c2.n_objects:
        raise PreconditionError(f"object {d2} not in target category")
    objects = [(d1, g) for d1 in range(c1.n_objects) for g in c2.hom(u.obj(d1), d2)]
    return _slice(u, objects, lambda f, g, h: c2.compose(h, u(f)) == g)


def under_category(u: Functor, d2: int) -> SliceCategory:
    """``(d2 | u)``: pairs ``(d1, g: d2 -> u d1)``; a morphism is ``f: d1 -> d1'``
    with ``u(f) . g = g'``."""
    c1, c2 = u.source, u.target
    if not 0 <= d2 < c2.n_objects:
        raise PreconditionError(f"object {d2} not in target category")
    objects = [(d1, g) for d1 in range(c1.n_objects) for g in c2.hom(d2, u.obj(d1))]
    return _slice(u, objects, lambda f, g, h: c2.compose(u(f), g) == h)


def full_subcategory(c: FinCategory, objs: Sequence[int]) -> Tuple[FinCategory, Functor]:
    objs = list(objs)
    pos = {o: k for k, o in enumerate(objs)}
    mors = [m for m in range(c.n_morphisms) if c.src[m] in pos and c.dst[m] in pos]
    mpos = {m: k for k, m in enumerate(mors)}
    compose = {(mpos[g], mpos[f]): mpos[c.compose(g, f)]
               for f in mors for g in c.out_of(c.dst[f]) if g in mpos}
    sub = FinCategory(len(objs), [pos[c.src[m]] for m in mors], [pos[c.dst[m]] for m in mors],
                      [mpos[c.identity[o]] for o in objs], compose,
                      labels=[c.labels[m] for m in mors],
                      object_labels=[c.object_labels[o] for o in objs])
    return sub, Functor(sub, c, objs, mors)


def latching_category(c: FinCategory, d: int, degrees: Optional[DegreeFunction] = None) -> SliceCategory:
    """``d(c | d)``: the over-category of ``d`` without its identity object."""
    if degrees is None:
        degrees = require_direct(c)
    elif is_direct(c) is None:
        raise PreconditionError("category is not direct")
    full = over_category(Functor.identity(c), d)
    keep = [k for k, (d1, g) in enumerate(full.objects) if g != c.identity[d]]
    sub, inc = full_subcategory(full.category, keep)
    return SliceCategory(sub, inc.then(full.projection),
                         tuple(full.objects[k] for k in keep),
                         tuple(full.arrows[m] for m in inc.mor_map))


def terminal_functor(c: FinCategory, point: Optional[FinCategory] = None) -> Functor:
    point = point or FinCategory.terminal()
    return Functor(c, point, [0] * c.n_objects, [0] * c.n_morphisms)


def object_inclusion(c: FinCategory, d: int, point: Optional[FinCategory] = None) -> Functor:
    return Functor(point or FinCategory.terminal(), c, [d], [c.identity[d]])


@dataclass(frozen=True)
class Grothendieck:
    category: FinCategory
    projection: Functor
    objects: Tuple[Tuple[int, int], ...]
    morphisms: Tuple[Tuple[int, int], ...]


def grothendieck(base: FinCategory, fibers: Sequence[FinCategory],
                 transition: Sequence[Functor]) -> Grothendieck:
    """Objects ``(d, x)`` with ``x`` in ``fibers[d]``; morphisms ``(f, phi)``
    with ``phi: H(f) x -> x'``; ``(g, psi)(f, phi) = (g f, psi . H(g) phi)``."""
    if len(fibers) != base.n_objects or len(transition) != base.n_morphisms:
        raise ValidationError("need one fiber per object and one functor per morphism")
    for m, h in enumerate(transition):
        if h.source is not fibers[base.src[m]] or h.target is not fibers[base.dst[m]]:
            raise ValidationError(f"transition functor of morphism {m} has wrong endpoints")
        bad = validate_functor(h)
        if bad:
            raise ValidationError(f"transition functor of morphism {m}: {bad}")
    for o in range(base.n_objects):
        if transition[base.identity[o]] != Functor.identity(fibers[o]):
            raise ValidationError(f"H(id_{o}) is not the identity functor")
    for (g, f), gf in base.table.items():
        if transition[f].then(transition[g]) != transition[gf]:
            raise ValidationError(f"H is not functorial on the composite {g}.{f}")
    objects = [(d, x) for d in range(base.n_objects) for x in range(fibers[d].n_objects)]
    opos = {ob: k for k, ob in enumerate(objects)}
    morphisms, src, dst = [], [], []
    for f in range(base.n_morphisms):
        a, b = base.src[f], base.dst[f]
        hf = transition[f]
        for x in range(fibers[a].n_objects):
            for phi in fibers[b].out_of(hf.obj(x)):
                morphisms.append((f, phi))
                src.append(opos[(a, x)])
                dst.append(opos[(b, fibers[b].dst[phi])])
    mpos = {m: k for k, m in enumerate(morphisms)}
    compose = {}
    for k1, (f, phi) in enumerate(morphisms):
        for k2, (g, psi) in enumerate(morphisms):
            if dst[k1] == src[k2]:
                fib = fibers[base.dst[g]]
                compose[(k2, k1)] = mpos[(base.compose(g, f),
                                          fib.compose(psi, transition[g](phi)))]
    identity = [mpos[(base.identity[d], fibers[d].identity[x])] for d, x in objects]
    cat = FinCategory(len(objects), src, dst, identity, compose,
                      labels=[f"({base.labels[f]},{fibers[base.dst[f]].labels[p]})" for f, p in morphisms])
    proj = Functor(cat, base, [d for d, _ in objects], [f for f, _ in morphisms])
    return Grothendieck(cat, proj, tuple(objects), tuple(morphisms))


@dataclass(frozen=True)
class SumCategory:
    category: FinCategory
    injections: Tuple[Functor, ...]


def category_sum(cs: Sequence[FinCategory]) -> SumCategory:
    src, dst, identity, compose, labels, olabels = [], [], [], {}, [], []
    obase = mbase = 0
    offsets = []
    for c in cs:
        offsets.append((obase, mbase))
        src += [obase + s for s in c.src]
        dst += [obase + t for t in c.dst]
        identity += [mbase + i for i in c.identity]
        compose.update({(mbase + g, mbase + f): mbase + h for (g, f), h in c.table.items()})
        labels += [f"{len(offsets) - 1}:{lab}" for lab in c.labels]
        olabels += [f"{len(offsets) - 1}:{lab}" for lab in c.object_labels]
        obase += c.n_objects
        mbase += c.n_morphisms
    total = FinCategory(obase, src, dst, identity, compose, labels=labels, object_labels=olabels)
    injections = tuple(Functor(c, total, [ob + o for o in range(c.n_objects)],
                               [mb + m for m in range(c.n_morphisms)])
                       for c, (ob, mb) in zip(cs, offsets))
    return SumCategory(total, injections)


@dataclass(frozen=True)
class ProductCategory:
    category: FinCategory
    projections: Tuple[Functor, ...]
    objects: Tuple[Tuple[int, ...], ...]
    morphisms: Tuple[Tuple[int, ...], ...]


def category_product(cs: Sequence[FinCategory]) -> ProductCategory:
    objects = list(itertools.product(*[range(c.n_objects) for c in cs]))
    morphisms = list(itertools.product(*[range(c.n_morphisms) for c in cs]))
    opos = {o: k for k, o in enumerate(objects)}
    mpos = {m: k for k, m in enumerate(morphisms)}
    src = [opos[tuple(c.src[x] for c, x in zip(cs, m))] for m in morphisms]
    dst = [opos[tuple(c.dst[x] for c, x in zip(cs, m))] for m in morphisms]
    identity = [mpos[tuple(c.identity[x] for c, x in zip(cs, o))] for o in objects]
    compose = {}
    for k1, f in enumerate(morphisms):
        for k2, g in enumerate(morphisms):
            if dst[k1] == src[k2]:
                compose[(k2, k1)] = mpos[tuple(c.compose(b, a) for c, a, b in zip(cs, f, g))]
    total = FinCategory(len(objects), src, dst, identity, compose)
    projections = tuple(Functor(total, c, [o[i] for o in objects], [m[i] for m in morphisms])
                        for i, c in enumerate(cs))
    return ProductCategory(total, projections, tuple(objects), tuple(morphisms))


@dataclass(frozen=True)
class Chain:
    """A functor ``[k] -> D``: objects ``d_0..d_k`` and arrows ``f_i: d_{i-1} -> d_i``."""

    objects: Tuple[int, ...]
    arrows: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)


@dataclass(frozen=True)
class DeltaPrime:
    category: FinCategory
    terminal_projection: Functor
    chains: Tuple[Chain, ...]
    degrees: DegreeFunction


def _chains(c: FinCategory, k: int) -> List[Chain]:
    out = [Chain((o,), ()) for o in range(c.n_objects)]
    level = out
    for _ in range(k):
        level = [Chain(ch.objects + (c.dst[f],), ch.arrows + (f,))
                 for ch in level for f in c.out_of(ch.objects[-1])]
        out = out + level
    return out


def delta_prime(c: FinCategory, max_len: int) -> DeltaPrime:
    """Chains of length <= ``max_len`` with injective order-preserving maps
    of commuting triangles between them; degree = chain length."""
    if max_len < 0:
        raise PreconditionError("max_len must be non-negative")
    chains = _chains(c, max_len)
    cpos = {ch: k for k, ch in enumerate(chains)}

    def segment(ch: Chain, a: int, b: int) -> int:
        if a == b:
            return c.identity[ch.objects[a]]
        return c.compose_path(ch.arrows[a:b])

    src, dst, maps = [], [], []
    lookup = {}
    for a, s in enumerate(chains):
        for b, t in enumerate(chains):
            if s.length > t.length:
                continue
            for i in itertools.combinations(range(t.length + 1), s.length + 1):
                if any(s.objects[j] != t.objects[i[j]] for j in range(s.length + 1)):
                    continue
                if any(s.arrows[j - 1] != segment(t, i[j - 1], i[j]) for j in range(1, s.length + 1)):
                    continue
                lookup[(a, b, i)] = len(src)
                src.append(a)
                dst.append(b)
                maps.append(i)
    identity = [lookup[(k, k, tuple(range(ch.length + 1)))] for k, ch in enumerate(chains)]
    compose = {}
    for m1 in range(len(src)):
        for m2 in range(len(src)):
            if dst[m1] == src[m2]:
                i, j = maps[m1], maps[m2]
                compose[(m2, m1)] = lookup[(src[m1], dst[m2], tuple(j[x] for x in i))]
    labels = [f"{list(i)}" for i in maps]
    olabels = ["(" + "->".join(str(o) for o in ch.objects) + ")" for ch in chains]
    cat = FinCategory(len(chains), src, dst, identity, compose, labels=labels, object_labels=olabels)
    pt_mor = [segment(chains[b], maps[m][-1], chains[b].length) for m, b in enumerate(dst)]
    proj = Functor(cat, c, [ch.objects[-1] for ch in chains], pt_mor)
    return DeltaPrime(cat, proj, tuple(chains), DegreeFunction(tuple(ch.length for ch in chains)))


def _is_embedding(u: Functor) -> bool:
    if len(set(u.obj_map)) != len(u.obj_map) or len(set(u.mor_map)) != len(u.mor_map):
        return False
    c1, c2 = u.source, u.target
    for a in range(c1.n_objects):
        for b in range(c1.n_objects):
            if len(c1.hom(a, b)) != len(c2.hom(u.obj(a), u.obj(b))):
                return False
    return True


def is_open_embedding(u: Functor) -> bool:
    """Full embedding such that every morphism into the image lies in it."""
    if not _is_embedding(u):
        return False
    image = set(u.obj_map)
    c2 = u.target
    return all(c2.src[m] in image for o in image for m in c2.into(o))


def is_closed_embedding(u: Functor) -> bool:
    """Full embedding such that every morphism out of the image lies in it."""
    if not _is_embedding(u):
        return False
    image = set(u.obj_map)
    c2 = u.target
    return all(c2.dst[m] in image for o in image for m in c2.out_of(o))
