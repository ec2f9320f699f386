"""Homotopy colimit homology from the normalized simplicial replacement.

Independent of the Reedy machinery: no replacements, no pushouts, only the
bar total complex ``Tot_n = sum_{p+q=n} sum_{p-chains s} X_{s(0), q}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .chq import BettiProfile, ChainComplex, homology
from .errors import PreconditionError
from .fincat import FinCategory, is_direct
from .ratlin import Fraction, Matrix
from .reedy import Diagram

__all__ = ["BarComplex", "bar_complex", "bar_hocolim_betti"]


@dataclass(frozen=True)
class BarComplex:
    shape: FinCategory
    basis: Tuple[Tuple[Tuple[int, ...], ...], ...]
    total: ChainComplex


def _chains(c: FinCategory) -> List[List[Tuple[int, ...]]]:
    """Nondegenerate chains: objects, then strings of composable nonidentity arrows."""
    nonid = c.nonidentity()
    levels = [[(o,) for o in range(c.n_objects)]]
    current = [(m,) for m in nonid]
    while current:
        levels.append(current)
        current = [s + (m,) for s in current for m in nonid if c.src[m] == c.dst[s[-1]]]
    return levels


def bar_complex(x: Diagram) -> BarComplex:
    """Faces: ``d_0`` pushes along the first arrow, inner faces compose,
    the last face drops the final object; ``d = d_bar + (-1)^p d_X``."""
    c = x.shape
    if is_direct(c) is None:
        raise PreconditionError("bar oracle needs a direct shape")
    levels = _chains(c)

    def first(p, s):
        return s[0] if p == 0 else c.src[s[0]]

    # blocks[(p, q)]: ordered list of (chain, offset) inside Tot_{p+q}
    lo = min((x.objects[o].lo for o in range(c.n_objects) if not x.objects[o].is_zero()), default=0)
    hi = max((x.objects[o].hi for o in range(c.n_objects) if not x.objects[o].is_zero()), default=-1)
    top_p = len(levels) - 1
    offsets: Dict[Tuple[int, int, Tuple[int, ...]], int] = {}
    dims: Dict[int, int] = {}
    for n in range(lo, hi + top_p + 1):
        off = 0
        for p in range(0, top_p + 1):
            q = n - p
            for s in levels[p]:
                k = x.objects[first(p, s)].dim(q)
                if k:
                    offsets[(p, q, s)] = off
                    off += k
        dims[n] = off

    diffs = {}
    for n in range(lo + 1, hi + top_p + 1):
        rows = [[Fraction(0)] * dims[n] for _ in range(dims[n - 1])]

        def add(block: Matrix, r0: int, c0: int, sign: int):
            for i in range(block.rows):
                row = rows[r0 + i]
                for j, v in enumerate(block.row(i)):
                    if v:
                        row[c0 + j] += sign * v

        for p in range(0, top_p + 1):
            q = n - p
            for s in levels[p]:
                key = (p, q, s)
                if key not in offsets:
                    continue
                col = offsets[key]
                obj = first(p, s)
                xo = x.objects[obj]
                # internal differential
                tgt = (p, q - 1, s)
                if tgt in offsets:
                    add(xo.d(q), offsets[tgt], col, -1 if p % 2 else 1)
                if p == 0:
                    continue
                for i in range(p + 1):
                    sign = -1 if i % 2 else 1
                    if i == 0:
                        face = (c.dst[s[0]],) if p == 1 else s[1:]
                        block = x.morphisms[s[0]].at(q)
                    elif i == p:
                        face = (c.src[s[-1]],) if p == 1 else s[:-1]
                        block = Matrix.identity(xo.dim(q))
                    else:
                        face = s[:i - 1] + (c.compose(s[i], s[i - 1]),) + s[i + 1:]
                        block = Matrix.identity(xo.dim(q))
                    tgt = (p - 1, q, face)
                    if tgt in offsets:
                        add(block, offsets[tgt], col, sign)
        diffs[n] = Matrix.from_rows(rows, cols=dims[n])
    total = ChainComplex.from_dims(dims, diffs)
    return BarComplex(c, tuple(tuple(l) for l in levels), total)


def bar_hocolim_betti(x: Diagram) -> BettiProfile:
    return homology(bar_complex(x).total)
