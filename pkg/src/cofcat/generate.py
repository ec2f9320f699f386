"""Seeded random test data: complexes, chain maps, direct shapes, diagrams.

Every generator takes a :class:`random.Random` so runs are reproducible.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import chq
from .chq import ChainComplex, ChainMap
from .fincat import FinCategory, Functor, is_direct, validate_functor
from .ratlin import Matrix, inverse, rank
from .reedy import Diagram, restrict

__all__ = [
    "random_matrix",
    "random_invertible",
    "random_complex",
    "complex_with_betti",
    "random_chain_map",
    "random_quasi_iso",
    "random_monic",
    "RandomShape",
    "random_shape",
    "random_diagram",
    "random_thin_functor",
    "chain_poset",
]


def random_matrix(rng: random.Random, rows: int, cols: int, spread: int = 2) -> Matrix:
    return Matrix(rows, cols, [rng.randint(-spread, spread) for _ in range(rows * cols)])


def random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = random_matrix(rng, n, n)
        if rank(m) == n:
            return m


def complex_with_betti(rng: random.Random, betti: Dict[int, int], disks: Sequence[int] = (),
                       twist: bool = True) -> ChainComplex:
    """Homology ``betti`` plus one acyclic ``Q -> Q`` piece in degrees ``(n, n-1)`` per entry of ``disks``."""
    dims: Dict[int, int] = dict(betti)
    for n in disks:
        dims[n] = dims.get(n, 0) + 1
        dims[n - 1] = dims.get(n - 1, 0) + 1
    # standard form: per degree [homology | disk tops | disk bottoms]
    tops: Dict[int, List[int]] = {}
    bottoms: Dict[int, List[int]] = {}
    used = {n: betti.get(n, 0) for n in dims}
    pairs = []
    for n in disks:
        tops.setdefault(n, []).append(used[n])
        used[n] += 1
        bottoms.setdefault(n - 1, []).append(used[n - 1])
        used[n - 1] += 1
        pairs.append((n, tops[n][-1], bottoms[n - 1][-1]))
    diffs = {n: [[0] * dims.get(n, 0) for _ in range(dims.get(n - 1, 0))] for n in dims}
    for n, t, b in pairs:
        diffs[n][b][t] = 1
    mats = {n: Matrix.from_rows(rows, cols=dims.get(n, 0)) for n, rows in diffs.items()}
    if twist:
        basis = {n: random_invertible(rng, k) for n, k in dims.items() if k}
        twisted = {}
        for n, m in mats.items():
            if dims.get(n) and dims.get(n - 1):
                twisted[n] = basis[n - 1] @ m @ inverse(basis[n])
        mats = twisted
    return ChainComplex.from_dims(dims, {n: m for n, m in mats.items() if m.rows and m.cols})


def random_complex(rng: random.Random, lo: int = 0, hi: int = 3, max_dim: int = 3) -> ChainComplex:
    """Random complex in degrees ``lo..hi`` with every dimension at most ``max_dim``."""
    dims = {n: 0 for n in range(lo, hi + 1)}
    betti: Dict[int, int] = {}
    disks: List[int] = []
    for _ in range(rng.randint(0, 2 * (hi - lo + 1))):
        n = rng.randint(lo, hi)
        if rng.random() < 0.5 and n - 1 >= lo:
            if dims[n] < max_dim and dims[n - 1] < max_dim:
                disks.append(n)
                dims[n] += 1
                dims[n - 1] += 1
        elif dims[n] < max_dim:
            betti[n] = betti.get(n, 0) + 1
            dims[n] += 1
    return complex_with_betti(rng, betti, disks)


def random_chain_map(rng: random.Random, a: ChainComplex, b: ChainComplex,
                     on_homology: Optional[Dict[int, Matrix]] = None, spread: int = 1) -> ChainMap:
    """``iota_B R pi_A + d h + h d`` for random ``R`` (or the given one) and random ``h``."""
    sa, sb = a.splitting, b.splitting
    comps = {}
    h = {n: random_matrix(rng, b.dim(n + 1), a.dim(n), spread) for n in range(a.lo - 1, a.hi + 1)}
    for n in range(min(a.lo, b.lo), max(a.hi, b.hi) + 1):
        if not (a.dim(n) and b.dim(n)):
            continue
        m = b.d(n + 1) @ h.get(n, Matrix.zeros(b.dim(n + 1), a.dim(n)))
        m = m + h.get(n - 1, Matrix.zeros(b.dim(n), a.dim(n - 1))) @ a.d(n)
        ha, hb = sa.iota[n].cols, sb.iota[n].cols
        if ha and hb:
            r = on_homology[n] if on_homology is not None else random_matrix(rng, hb, ha, spread)
            m = m + sb.iota[n] @ r @ sa.pi[n]
        comps[n] = m
    return ChainMap(a, b, comps)


def random_quasi_iso(rng: random.Random, a: ChainComplex, max_extra: int = 2) -> ChainMap:
    """A quasi-isomorphism from ``a`` into a fresh complex with the same homology."""
    betti = dict(chq.homology(a).ranks)
    degrees = list(range(a.lo, a.hi + 2)) if not a.is_zero() else [0, 1]
    disks = [rng.choice(degrees) for _ in range(rng.randint(0, max_extra))]
    b = complex_with_betti(rng, betti, disks)
    return random_chain_map(rng, a, b, on_homology={n: random_invertible(rng, k) for n, k in betti.items()})


def random_monic(rng: random.Random, a: ChainComplex, extra: Optional[ChainComplex] = None) -> ChainMap:
    """``(alpha, 1): A -> Z + A`` for random ``Z`` and chain map ``alpha``."""
    z = extra if extra is not None else random_complex(rng, 0, 2, 2)
    s = chq.direct_sum([z, a])
    alpha = random_chain_map(rng, a, z)
    return s.pair([alpha, ChainMap.identity(a)])


@dataclass(frozen=True)
class RandomShape:
    category: FinCategory
    kind: str
    edges: Tuple[int, ...] = ()


def chain_poset(m: int) -> FinCategory:
    return FinCategory.from_poset(m + 1, [(i, i + 1) for i in range(m)])


def _random_dag_edges(rng: random.Random, n: int, count: int, parallel: bool) -> List[Tuple[int, int]]:
    order = list(range(n))
    edges = []
    for _ in range(count):
        a, b = sorted(rng.sample(order, 2)) if n >= 2 else (0, 0)
        if a == b:
            break
        if (a, b) in edges and not parallel:
            continue
        edges.append((a, b))
    return edges


def random_shape(rng: random.Random, max_objects: int = 6, max_arrows: int = 8) -> RandomShape:
    """A direct category with at most ``max_arrows`` nonidentity morphisms:
    either free on a random DAG or a random finite poset."""
    while True:
        n = rng.randint(1, max_objects)
        kind = rng.choice(["free", "poset"])
        edges = _random_dag_edges(rng, n, rng.randint(0, min(max_arrows, 2 * n)), parallel=kind == "free")
        if kind == "free":
            try:
                c = FinCategory.free(n, edges)
            except Exception:
                continue
            gens = tuple(range(n, n + len(edges)))
        else:
            c = FinCategory.from_poset(n, edges)
            gens = ()
        if c.n_morphisms - c.n_objects <= max_arrows:
            return RandomShape(c, kind, gens)


def random_monotone(rng: random.Random, source: FinCategory, target: FinCategory) -> List[int]:
    """Object map such that every arrow of ``source`` has an arrow between the images."""
    deg = is_direct(source)
    order = [o for stratum in deg.strata() for o in stratum]
    image: Dict[int, int] = {}
    for o in order:
        preds = [image[source.src[m]] for m in source.into(o) if not source.is_identity(m)]
        options = [t for t in range(target.n_objects) if all(target.hom(p, t) for p in preds)]
        image[o] = rng.choice(options)
    return [image[o] for o in range(source.n_objects)]


def random_thin_functor(rng: random.Random, source: FinCategory, target: FinCategory) -> Functor:
    """Random functor into a thin category ``target`` (one morphism per hom-set)."""
    obj = random_monotone(rng, source, target)
    mor = [target.hom(obj[source.src[m]], obj[source.dst[m]])[0] for m in range(source.n_morphisms)]
    u = Functor(source, target, obj, mor)
    assert validate_functor(u) is None
    return u


def random_diagram(rng: random.Random, shape: RandomShape, lo: int = 0, hi: int = 3,
                   max_dim: int = 3) -> Diagram:
    c = shape.category
    if shape.kind == "free":
        objects = [random_complex(rng, lo, hi, max_dim) for _ in range(c.n_objects)]
        maps = {m: random_chain_map(rng, objects[c.src[m]], objects[c.dst[m]]) for m in shape.edges}
        return Diagram.from_generators(c, objects, maps)
    # pull back a random diagram on a chain along a monotone map
    top = rng.randint(0, 3)
    chain = chain_poset(top)
    u = random_thin_functor(rng, c, chain)
    objects = [random_complex(rng, lo, hi, max_dim) for _ in range(top + 1)]
    maps = {chain.hom(i, i + 1)[0]: random_chain_map(rng, objects[i], objects[i + 1]) for i in range(top)}
    return restrict(u, Diagram.from_generators(chain, objects, maps))
