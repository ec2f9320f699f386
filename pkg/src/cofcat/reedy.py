"""Diagrams of chain complexes over finite categories.

Colimits over a finite direct category are built stratum by stratum: the
colimit over objects of degree < n is pushed out along the sum of the
latching maps of the degree-n objects.  Latching objects are themselves
colimits over latching categories, computed recursively.  Homotopy colimits
are colimits of a Reedy cofibrant replacement.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import chq
from .chq import BettiProfile, ChainComplex, ChainMap
from .errors import PreconditionError, ValidationError
from .fincat import (
    DegreeFunction,
    FinCategory,
    Functor,
    NaturalTransformation,
    SliceCategory,
    category_sum,
    is_direct,
    latching_category,
    over_category,
    terminal_functor,
)
from .ratlin import Matrix, quotient_basis, solve

__all__ = [
    "Diagram",
    "DiagramMap",
    "Cocone",
    "LatchingObject",
    "ReedyReport",
    "Replacement",
    "RelativeColimit",
    "BaseChangeReport",
    "induced_map",
    "restrict",
    "whisker",
    "latching_object",
    "is_reedy_cofibrant",
    "is_reedy_cofibration",
    "colim_direct",
    "colim_quotient",
    "colim_map",
    "reedy_replace",
    "colim_relative",
    "hocolim",
    "hocolim_absolute",
    "base_change_check",
    "diagram_sum",
]


class Diagram:
    """A functor from ``shape`` into chain complexes."""

    __slots__ = ("shape", "objects", "morphisms")

    def __init__(self, shape: FinCategory, objects: Sequence[ChainComplex],
                 morphisms: Sequence[ChainMap], check: bool = True):
        self.shape = shape
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        if len(self.objects) != shape.n_objects or len(self.morphisms) != shape.n_morphisms:
            raise ValidationError("diagram does not match its shape")
        if check:
            bad = self.failure()
            if bad:
                raise ValidationError(bad)

    def failure(self) -> Optional[str]:
        c = self.shape
        for m, f in enumerate(self.morphisms):
            if f.source != self.objects[c.src[m]] or f.target != self.objects[c.dst[m]]:
                return f"map at morphism {c.labels[m]} has wrong endpoints"
        for o in range(c.n_objects):
            if self.morphisms[c.identity[o]] != ChainMap.identity(self.objects[o]):
                return f"identity of object {o} is not sent to an identity"
        for (g, f), h in c.table.items():
            if c.is_identity(g) or c.is_identity(f):
                continue
            if self.morphisms[g] @ self.morphisms[f] != self.morphisms[h]:
                return f"composite {c.labels[g]}.{c.labels[f]} is not preserved"
        return None

    @classmethod
    def from_generators(cls, shape: FinCategory, objects: Sequence[ChainComplex],
                        maps: Dict[int, ChainMap], check: bool = True) -> "Diagram":
        """Fill in identities and every composite of the given maps."""
        known = dict(maps)
        for o in range(shape.n_objects):
            known.setdefault(shape.identity[o], ChainMap.identity(objects[o]))
        changed = True
        while changed and len(known) < shape.n_morphisms:
            changed = False
            for (g, f), h in shape.table.items():
                if h not in known and g in known and f in known:
                    known[h] = known[g] @ known[f]
                    changed = True
        missing = [shape.labels[m] for m in range(shape.n_morphisms) if m not in known]
        if missing:
            raise ValidationError(f"no map determined for morphisms {missing}")
        return cls(shape, objects, [known[m] for m in range(shape.n_morphisms)], check=check)

    def at(self, m: int) -> ChainMap:
        return self.morphisms[m]

    def __repr__(self):
        return f"Diagram({self.shape!r})"


@dataclass(frozen=True)
class DiagramMap:
    source: Diagram
    target: Diagram
    components: Tuple[ChainMap, ...]

    def failure(self) -> Optional[str]:
        c = self.source.shape
        if self.target.shape is not c:
            return "diagrams have different shapes"
        for m in range(c.n_morphisms):
            a, b = c.src[m], c.dst[m]
            if self.components[b] @ self.source.at(m) != self.target.at(m) @ self.components[a]:
                return f"naturality fails at morphism {c.labels[m]}"
        return None

    def is_pointwise_quasi_iso(self) -> bool:
        return all(chq.is_quasi_iso(f) for f in self.components)

    def pointwise_homology(self) -> List[Tuple[BettiProfile, BettiProfile, bool]]:
        return [(chq.homology(f.source), chq.homology(f.target), chq.is_quasi_iso(f))
                for f in self.components]


@dataclass(frozen=True)
class Cocone:
    diagram: Diagram
    apex: ChainComplex
    legs: Tuple[ChainMap, ...]

    def failure(self) -> Optional[str]:
        c = self.diagram.shape
        for m in range(c.n_morphisms):
            if self.legs[c.dst[m]] @ self.diagram.at(m) != self.legs[c.src[m]]:
                return f"cocone leg does not commute with morphism {c.labels[m]}"
        return None


def induced_map(legs: Sequence[ChainMap], apex: ChainComplex,
                target_legs: Sequence[ChainMap], target: ChainComplex) -> ChainMap:
    """The unique map ``apex -> target`` with ``m . legs[k] = target_legs[k]``.

    ``legs`` must be jointly surjective, as the legs of a colimit are.
    """
    comps = {}
    for n in apex.degrees():
        if not target.dim(n):
            continue
        lam = Matrix.hstack([leg.at(n) for leg in legs], rows=apex.dim(n))
        rhs = Matrix.hstack([t.at(n) for t in target_legs], rows=target.dim(n))
        x = solve(lam.T, rhs.T)
        if x is None:
            raise ValidationError("target legs do not factor through the colimit")
        comps[n] = x.T
    return ChainMap(apex, target, comps, check=False)


def restrict(u: Functor, x: Diagram) -> Diagram:
    """``u* X``: the diagram ``d1 -> X(u d1)`` over the source of ``u``."""
    if u.target is not x.shape:
        raise PreconditionError("functor target is not the diagram shape")
    return Diagram(u.source, [x.objects[u.obj(o)] for o in range(u.source.n_objects)],
                   [x.morphisms[u(m)] for m in range(u.source.n_morphisms)], check=False)


def whisker(alpha: NaturalTransformation, x: Diagram) -> DiagramMap:
    """``u* X -> v* X`` with components ``X(alpha_d)``."""
    return DiagramMap(restrict(alpha.source, x), restrict(alpha.target, x),
                      tuple(x.morphisms[a] for a in alpha.components))


def _degrees(c: FinCategory) -> DegreeFunction:
    deg = is_direct(c)
    if deg is None:
        raise PreconditionError("diagram shape is not a direct category")
    return deg


@dataclass(frozen=True)
class LatchingObject:
    category: SliceCategory
    complex: ChainComplex
    map: ChainMap
    cocone: Cocone


def colim_quotient(x: Diagram) -> Tuple[ChainComplex, Cocone]:
    """Colimit of any finite diagram: the sum of all ``X_o`` modulo
    ``inj_b X_m(v) - inj_a(v)`` for every morphism ``m: a -> b``."""
    c = x.shape
    total = chq.direct_sum(list(x.objects))
    degrees = total.complex.degrees()
    proj: Dict[int, Matrix] = {}
    sect: Dict[int, Matrix] = {}
    for n in degrees:
        rel = [total.injections[c.dst[m]].at(n) @ x.morphisms[m].at(n) - total.injections[c.src[m]].at(n)
               for m in c.nonidentity() if x.objects[c.src[m]].dim(n)]
        sub = Matrix.hstack(rel, rows=total.complex.dim(n)) if rel else Matrix.zeros(total.complex.dim(n), 0)
        proj[n], sect[n] = quotient_basis(sub, total.complex.dim(n))
    diffs = {n: proj[n - 1] @ total.complex.d(n) @ sect[n] for n in degrees if n - 1 in proj}
    apex = ChainComplex.from_dims({n: proj[n].rows for n in degrees}, diffs, check=False)
    to_apex = ChainMap(total.complex, apex, {n: proj[n] for n in degrees if apex.dim(n)}, check=False)
    return apex, Cocone(x, apex, tuple(to_apex @ inj for inj in total.injections))


def latching_object(x: Diagram, d: int, degrees: Optional[DegreeFunction] = None) -> LatchingObject:
    """``LX_d`` as the colimit over the latching category, with ``i_d: LX_d -> X_d``."""
    degrees = degrees or _degrees(x.shape)
    lat = latching_category(x.shape, d, degrees)
    y = restrict(lat.projection, x)
    apex, cocone = colim_quotient(y)
    i_d = induced_map(cocone.legs, apex, [x.morphisms[g] for _, g in lat.objects], x.objects[d])
    return LatchingObject(lat, apex, i_d, cocone)


@dataclass(frozen=True)
class ReedyReport:
    ok: bool
    witness: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _order(degrees: DegreeFunction) -> List[int]:
    return [o for stratum in degrees.strata() for o in stratum]


def is_reedy_cofibrant(x: Diagram) -> ReedyReport:
    """Every latching map ``LX_d -> X_d`` is monic; the witness is the first
    failing object in degree order."""
    degrees = _degrees(x.shape)
    for d in _order(degrees):
        lat = latching_object(x, d, degrees)
        if not chq.is_monic(lat.map):
            return ReedyReport(False, d, f"latching map at object {x.shape.object_labels[d]} is not monic")
    return ReedyReport(True)


def colim_direct(x: Diagram) -> Tuple[ChainComplex, Cocone]:
    """Colimit of a Reedy cofibrant diagram over a finite direct category."""
    degrees = _degrees(x.shape)
    current = chq.zero()
    legs: Dict[int, ChainMap] = {}
    for stratum in degrees.strata():
        if not stratum:
            continue
        lats, to_current = [], []
        for d in stratum:
            lat = latching_object(x, d, degrees)
            if not chq.is_monic(lat.map):
                raise PreconditionError(
                    f"diagram is not Reedy cofibrant at object {x.shape.object_labels[d]}")
            lats.append(lat)
            to_current.append(induced_map(lat.cocone.legs, lat.complex,
                                          [legs[d1] for d1, _ in lat.category.objects], current))
        lsum = chq.direct_sum([lat.complex for lat in lats])
        xsum = chq.direct_sum([x.objects[d] for d in stratum])
        latching_sum = chq.block_map(lsum, xsum, [[lat.map if i == j else None for j, lat in enumerate(lats)]
                                                  for i in range(len(lats))])
        f_k = ChainMap.zero(lsum.complex, current)
        for inj_proj, f in zip(lsum.projections, to_current):
            f_k = f_k + f @ inj_proj
        current, to_x, to_old = chq.pushout(latching_sum, f_k, check=False)
        legs = {d1: to_old @ leg for d1, leg in legs.items()}
        for k, d in enumerate(stratum):
            legs[d] = to_x @ xsum.injections[k]
    cocone = Cocone(x, current, tuple(legs[o] for o in range(x.shape.n_objects)))
    return current, cocone


def colim_map(phi: DiagramMap, source_colim: Optional[Tuple[ChainComplex, Cocone]] = None,
              target_colim: Optional[Tuple[ChainComplex, Cocone]] = None) -> ChainMap:
    """``colim phi`` for a map of Reedy cofibrant diagrams."""
    sa, sc = source_colim or colim_direct(phi.source)
    ta, tc = target_colim or colim_direct(phi.target)
    return induced_map(sc.legs, sa, [leg @ f for leg, f in zip(tc.legs, phi.components)], ta)


def is_reedy_cofibration(phi: DiagramMap) -> ReedyReport:
    """Every relative latching map ``X_d u_{LX_d} LY_d -> Y_d`` is monic.

    The source diagram must be Reedy cofibrant.
    """
    x, y = phi.source, phi.target
    degrees = _degrees(x.shape)
    for d in _order(degrees):
        lx = latching_object(x, d, degrees)
        ly = latching_object(y, d, degrees)
        lphi = induced_map(lx.cocone.legs, lx.complex,
                           [ly.cocone.legs[k] @ phi.components[d1]
                            for k, (d1, _) in enumerate(lx.category.objects)], ly.complex)
        glued, to_x, to_ly = chq.pushout(lx.map, lphi)
        rel = induced_map([to_x, to_ly], glued, [phi.components[d], ly.map], y.objects[d])
        if not chq.is_monic(rel):
            return ReedyReport(False, d, f"relative latching map at object {x.shape.object_labels[d]} is not monic")
    return ReedyReport(True)


@dataclass(frozen=True)
class Replacement:
    diagram: Diagram
    map: DiagramMap


def reedy_replace(x: Diagram) -> Replacement:
    """Reedy cofibrant ``X'`` with a pointwise quasi-iso ``X' -> X``.

    In degree order, the composite ``LX'_d -> X_d`` is factored as a monic
    followed by a quasi-iso; the monic part becomes the latching map of ``X'``.
    """
    degrees = _degrees(x.shape)
    c = x.shape
    objects: Dict[int, ChainComplex] = {}
    maps: Dict[int, ChainMap] = {}
    to_x: Dict[int, ChainMap] = {}
    for d in _order(degrees):
        lat = latching_category(c, d, degrees)
        partial = Diagram(lat.category, [objects[d1] for d1, _ in lat.objects],
                          [maps[f] for f in lat.arrows], check=False)
        apex, cocone = colim_direct(partial)
        comp = induced_map(cocone.legs, apex,
                           [x.morphisms[g] @ to_x[d1] for d1, g in lat.objects], x.objects[d])
        mono, r = chq.factorize(comp)
        objects[d] = mono.target
        to_x[d] = r
        maps[c.identity[d]] = ChainMap.identity(mono.target)
        for k, (_, g) in enumerate(lat.objects):
            maps[g] = mono @ cocone.legs[k]
    replaced = Diagram(c, [objects[o] for o in range(c.n_objects)],
                       [maps[m] for m in range(c.n_morphisms)], check=False)
    return Replacement(replaced, DiagramMap(replaced, x, tuple(to_x[o] for o in range(c.n_objects))))


@dataclass(frozen=True)
class RelativeColimit:
    diagram: Diagram
    cocones: Tuple[Cocone, ...]
    slices: Tuple[SliceCategory, ...]


def colim_relative(u: Functor, x: Diagram) -> RelativeColimit:
    """``colim^u X`` with value ``colim`` over ``(u | d2)`` at each ``d2``."""
    if u.source is not x.shape:
        raise PreconditionError("functor source is not the diagram shape")
    if is_direct(u.source) is None:
        raise PreconditionError("relative colimits need a direct source category")
    c2 = u.target
    slices, apexes, cocones = [], [], []
    for d2 in range(c2.n_objects):
        sl = over_category(u, d2)
        apex, cocone = colim_direct(restrict(sl.projection, x))
        slices.append(sl)
        apexes.append(apex)
        cocones.append(cocone)
    arrows = []
    for h in range(c2.n_morphisms):
        a, b = c2.src[h], c2.dst[h]
        if c2.is_identity(h):
            arrows.append(ChainMap.identity(apexes[a]))
            continue
        targets = [cocones[b].legs[slices[b].index(d1, c2.compose(h, g))] for d1, g in slices[a].objects]
        arrows.append(induced_map(cocones[a].legs, apexes[a], targets, apexes[b]))
    return RelativeColimit(Diagram(c2, apexes, arrows, check=False), tuple(cocones), tuple(slices))


def hocolim(u: Functor, x: Diagram) -> RelativeColimit:
    """``colim^u`` of a Reedy cofibrant replacement of ``x``."""
    return colim_relative(u, reedy_replace(x).diagram)


def hocolim_absolute(x: Diagram) -> ChainComplex:
    return hocolim(terminal_functor(x.shape), x).diagram.objects[0]


@dataclass(frozen=True)
class BaseChangeReport:
    over_category_betti: BettiProfile
    relative_betti: BettiProfile
    comparison_is_quasi_iso: bool

    @property
    def verdict(self) -> bool:
        return self.comparison_is_quasi_iso and self.over_category_betti == self.relative_betti


def base_change_check(u: Functor, x: Diagram, d2: int) -> BaseChangeReport:
    """Compare hocolim over ``(u | d2)`` with the ``d2`` value of ``hocolim^u``.

    The comparison map is ``colim`` of a Reedy replacement of the restricted
    replaced diagram, mapping onto that diagram; its source is a homotopy
    colimit of ``x`` over ``(u | d2)``.
    """
    if u.source is not x.shape:
        raise PreconditionError("functor source is not the diagram shape")
    sl = over_category(u, d2)
    replaced = reedy_replace(x).diagram
    pulled = restrict(sl.projection, replaced)
    relative = colim_direct(pulled)
    direct = hocolim_absolute(restrict(sl.projection, x))
    again = reedy_replace(pulled)
    comparison = colim_map(again.map, target_colim=relative)
    return BaseChangeReport(chq.homology(direct), chq.homology(relative[0]),
                            chq.is_quasi_iso(comparison))


def diagram_sum(diagrams: Sequence[Diagram]) -> Tuple[Diagram, FinCategory]:
    """The diagram over the disjoint sum of the shapes."""
    total = category_sum([x.shape for x in diagrams]).category
    objects, maps = [], []
    for x in diagrams:
        objects.extend(x.objects)
        maps.extend(x.morphisms)
    return Diagram(total, objects, maps, check=False), total
