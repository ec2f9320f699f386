"""Normalized chains on the nerve of a finite category, and cofinality tests."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .chq import BettiProfile, ChainComplex, homology
from .fincat import FinCategory, Functor, under_category
from .ratlin import Fraction, Matrix

__all__ = [
    "NerveComplex",
    "nerve_chains",
    "nerve_betti",
    "is_connected",
    "CofinalityReport",
    "is_right_cofinal",
    "is_acyclic_cofinal_up_to",
]


@dataclass(frozen=True)
class NerveComplex:
    max_dim: int
    basis: Tuple[Tuple[Tuple[int, ...], ...], ...]
    differentials: Dict[int, Matrix]

    def as_complex(self) -> ChainComplex:
        dims = {p: len(b) for p, b in enumerate(self.basis)}
        return ChainComplex.from_dims(dims, self.differentials)


def _strings(c: FinCategory, max_dim: int) -> List[List[Tuple[int, ...]]]:
    nonid = [m for m in range(c.n_morphisms) if not c.is_identity(m)]
    levels = [[(o,) for o in range(c.n_objects)]]
    if max_dim >= 1:
        levels.append([(m,) for m in nonid])
    for _ in range(2, max_dim + 1):
        levels.append([s + (m,) for s in levels[-1] for m in nonid if c.src[m] == c.dst[s[-1]]])
    return levels


def nerve_chains(c: FinCategory, max_dim: int) -> NerveComplex:
    """Strings of ``p`` composable nonidentity arrows in dimension ``p``
    (objects in dimension 0).  A face that composes to an identity is
    degenerate and contributes zero."""
    levels = _strings(c, max_dim)
    index = [{s: k for k, s in enumerate(level)} for level in levels]
    diffs = {}
    one = Fraction(1)
    for p in range(1, max_dim + 1):
        rows = [[Fraction(0)] * len(levels[p]) for _ in levels[p - 1]]
        for col, s in enumerate(levels[p]):
            if p == 1:
                m = s[0]
                rows[index[0][(c.dst[m],)]][col] += one
                rows[index[0][(c.src[m],)]][col] -= one
                continue
            for i in range(p + 1):
                if i == 0:
                    face = s[1:]
                elif i == p:
                    face = s[:-1]
                else:
                    comp = c.compose(s[i], s[i - 1])
                    if c.is_identity(comp):
                        continue
                    face = s[:i - 1] + (comp,) + s[i + 1:]
                rows[index[p - 1][face]][col] += one if i % 2 == 0 else -one
        diffs[p] = Matrix.from_rows(rows, cols=len(levels[p]))
    return NerveComplex(max_dim, tuple(tuple(l) for l in levels), diffs)


def nerve_betti(c: FinCategory, max_dim: int) -> Tuple[int, ...]:
    """Betti numbers ``b_0 .. b_{max_dim-1}`` of the nerve."""
    betti = homology(nerve_chains(c, max_dim).as_complex())
    return tuple(betti[p] for p in range(max_dim))


def is_connected(c: FinCategory) -> bool:
    """Nonempty with a connected underlying graph."""
    if c.n_objects == 0:
        return False
    parent = list(range(c.n_objects))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for m in range(c.n_morphisms):
        parent[find(c.src[m])] = find(c.dst[m])
    return len({find(o) for o in range(c.n_objects)}) == 1


@dataclass(frozen=True)
class CofinalityReport:
    verdicts: Tuple[bool, ...]
    details: Tuple[str, ...]

    def __bool__(self):
        return all(self.verdicts)

    @property
    def failing(self) -> List[int]:
        return [d for d, ok in enumerate(self.verdicts) if not ok]


def is_right_cofinal(u: Functor) -> CofinalityReport:
    """Every under-category ``(d2 | u)`` is nonempty and connected."""
    verdicts, details = [], []
    for d2 in range(u.target.n_objects):
        under = under_category(u, d2).category
        if under.n_objects == 0:
            verdicts.append(False)
            details.append("empty")
        elif not is_connected(under):
            verdicts.append(False)
            details.append("disconnected")
        else:
            verdicts.append(True)
            details.append("connected")
    return CofinalityReport(tuple(verdicts), tuple(details))


def is_acyclic_cofinal_up_to(u: Functor, n: int) -> CofinalityReport:
    """Every ``(d2 | u)`` has ``b_0 = 1`` and vanishing reduced homology below ``n``.

    Only a necessary condition for contractibility of the nerve.
    """
    verdicts, details = [], []
    top = max(n, 1)
    for d2 in range(u.target.n_objects):
        betti = nerve_betti(under_category(u, d2).category, top)
        ok = betti[0] == 1 and all(b == 0 for b in betti[1:n])
        verdicts.append(ok)
        details.append("betti " + " ".join(str(b) for b in betti))
    return CofinalityReport(tuple(verdicts), tuple(details))
