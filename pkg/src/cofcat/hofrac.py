"""Morphisms of the homotopy category of chain complexes as left fractions.

A left fraction ``s^-1 f`` from ``A`` to ``B`` is a chain map ``f: A -> B'``
together with a quasi-isomorphism ``s: B -> B'``.  Equality of fractions is
decided by inverting the denominators up to homotopy and solving for a
chain homotopy between the resulting maps ``A -> B``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from . import chq
from .chq import ChainComplex, ChainHomotopy, ChainMap
from .errors import PreconditionError, ValidationError
from .ratlin import Matrix, inverse

__all__ = [
    "LeftFraction",
    "HomotopyInverse",
    "fraction",
    "identity_fraction",
    "compose",
    "invert_quasi_iso",
    "fractions_equal",
    "normalize",
    "homology_action",
    "as_map",
]


@dataclass(frozen=True)
class LeftFraction:
    numerator: ChainMap
    denominator: ChainMap

    @property
    def src(self) -> ChainComplex:
        return self.numerator.source

    @property
    def dst(self) -> ChainComplex:
        return self.denominator.source

    @property
    def aux(self) -> ChainComplex:
        return self.numerator.target


def fraction(f: ChainMap, s: ChainMap) -> LeftFraction:
    if f.target != s.target:
        raise PreconditionError("numerator and denominator must share a target")
    if not chq.is_quasi_iso(s):
        raise PreconditionError("denominator is not a quasi-isomorphism")
    return LeftFraction(f, s)


def identity_fraction(a: ChainComplex) -> LeftFraction:
    ident = ChainMap.identity(a)
    return LeftFraction(ident, ident)


def compose(second: LeftFraction, first: LeftFraction) -> LeftFraction:
    """``t^-1 g . s^-1 f = (t' t)^-1 (g' f)``.

    The square completing ``s: B -> B'`` and ``g: B -> C'`` is the double
    mapping cylinder ``B' u_B IB u_B C'``, glued along ``i0`` and ``i1``.
    """
    if first.dst != second.src:
        raise PreconditionError("fractions are not composable")
    s, g = first.denominator, second.numerator
    cyl = chq.cylinder(s.source)
    glued, leg_cyl, leg_c = chq.pushout(cyl.i1, g)
    total, leg_glued, g_prime = chq.pushout(leg_cyl @ cyl.i0, s)
    t_prime = leg_glued @ leg_c
    return LeftFraction(g_prime @ first.numerator, t_prime @ second.denominator)


@dataclass(frozen=True)
class HomotopyInverse:
    s: ChainMap
    g: ChainMap
    h_left: ChainHomotopy
    h_right: ChainHomotopy

    def check(self) -> bool:
        return (self.h_left.f == self.g @ self.s and self.h_left.g == ChainMap.identity(self.s.source)
                and self.h_right.f == self.s @ self.g
                and self.h_right.g == ChainMap.identity(self.s.target)
                and self.h_left.check() and self.h_right.check())


def invert_quasi_iso(s: ChainMap) -> HomotopyInverse:
    """Homotopy inverse ``g`` of a quasi-isomorphism ``s: B -> B'``.

    ``g`` sends ``B'`` to its homology coordinates, applies the inverse of
    ``H(s)`` and includes the result as cycles of ``B``.
    """
    if not chq.is_quasi_iso(s):
        raise PreconditionError("map is not a quasi-isomorphism")
    b, b2 = s.source, s.target
    if all(b.dim(n) == b2.dim(n) for n in chq.degree_span(b, b2)):
        # a quasi-iso with square components is an isomorphism iff every
        # component has full rank; then invert it on the nose
        if chq.is_monic(s):
            g = ChainMap(b2, b, {n: inverse(s.at(n)) for n in b.degrees() if b.dim(n)})
            return HomotopyInverse(s, g, ChainHomotopy(g @ s, ChainMap.identity(b), {}),
                                   ChainHomotopy(s @ g, ChainMap.identity(b2), {}))
    sb, sb2 = b.splitting, b2.splitting
    comps: Dict[int, Matrix] = {}
    for n in b.degrees():
        h = sb.iota[n].cols
        if not h:
            continue
        on_homology = sb2.pi[n] @ s.at(n) @ sb.iota[n]
        comps[n] = sb.iota[n] @ inverse(on_homology) @ sb2.pi[n]
    g = ChainMap(b2, b, comps)
    h_left = chq.solve_homotopy(g @ s, ChainMap.identity(b))
    h_right = chq.solve_homotopy(s @ g, ChainMap.identity(b2))
    if h_left is None or h_right is None:
        raise ValidationError("homotopy inverse construction failed")
    return HomotopyInverse(s, g, h_left, h_right)


def as_map(fr: LeftFraction) -> ChainMap:
    """A chain map ``src -> dst`` representing the fraction."""
    return invert_quasi_iso(fr.denominator).g @ fr.numerator


def fractions_equal(f1: LeftFraction, f2: LeftFraction) -> bool:
    if f1.src != f2.src or f1.dst != f2.dst:
        raise PreconditionError("fractions have different endpoints")
    return chq.solve_homotopy(as_map(f1), as_map(f2)) is not None


def homology_action(fr: LeftFraction) -> Dict[int, Matrix]:
    """``H(s)^-1 H(f)`` computed on homology bases, without any homotopy solve."""
    hf = chq.homology_map(fr.numerator)
    hs = chq.homology_map(fr.denominator)
    sa, sb = fr.src.splitting, fr.dst.splitting
    out = {}
    for n in chq.degree_span(fr.src, fr.dst):
        ha = sa.iota[n].cols if n in sa.iota else 0
        hb = sb.iota[n].cols if n in sb.iota else 0
        out[n] = inverse(hs[n]) @ hf[n] if ha and hb else Matrix.zeros(hb, ha)
    return out


def normalize(fr: LeftFraction) -> LeftFraction:
    """Equivalent fraction ``t^-1 g`` with ``g``, ``g + t`` monic and ``t`` a
    monic quasi-iso, from factorizing ``f + s: A + B -> B'``."""
    s = chq.direct_sum([fr.src, fr.dst])
    u, _ = chq.factorize(s.copair([fr.numerator, fr.denominator]))
    return LeftFraction(u @ s.injections[0], u @ s.injections[1])
