"""Bounded chain complexes of finite-dimensional rational vector spaces.

Grading is homological: ``d_n`` goes from degree ``n`` to degree ``n - 1``.
Cofibrations are degreewise injective chain maps, weak equivalences are
quasi-isomorphisms.  Shifts use ``A[k]_n = A_{n-k}`` with differential
``(-1)^k d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import PreconditionError, ValidationError
from .ratlin import Matrix, extend_basis, inverse, kernel_basis, quotient_basis, rank, solve

__all__ = [
    "ChainComplex",
    "ChainMap",
    "ChainHomotopy",
    "BettiProfile",
    "DirectSum",
    "Splitting",
    "homology",
    "is_monic",
    "is_epic",
    "is_quasi_iso",
    "cone",
    "pushout",
    "factorize",
    "cylinder",
    "brown_factorize",
    "solve_homotopy",
    "shift",
    "direct_sum",
    "zero",
    "degree_span",
    "splitting",
    "homology_map",
]


class ChainComplex:
    """Complex concentrated in degrees ``lo..hi``.

    ``diffs[n]`` is the matrix of ``d_n`` (``dim(n-1)`` rows, ``dim(n)`` columns).
    """

    __slots__ = ("lo", "hi", "_dims", "_diffs", "__dict__")

    def __init__(self, lo: int, hi: int, dims: Sequence[int], diffs: Mapping[int, Matrix] = None,
                 check: bool = True):
        dims = tuple(dims)
        if hi < lo:
            lo, hi, dims = 0, -1, ()
        if len(dims) != hi - lo + 1:
            raise ValidationError("dims must list one dimension per degree in lo..hi")
        self.lo, self.hi, self._dims = lo, hi, dims
        diffs = dict(diffs or {})
        stored = {}
        for n in range(lo + 1, hi + 1):
            m = diffs.pop(n, None)
            shape = (self.dim(n - 1), self.dim(n))
            if m is None:
                m = Matrix.zeros(*shape)
            elif m.shape != shape:
                raise ValidationError(f"d_{n} has shape {m.shape}, expected {shape}")
            stored[n] = m
        for n, m in diffs.items():
            if m.rows and m.cols and not m.is_zero():
                raise ValidationError(f"nonzero d_{n} outside degrees {lo}..{hi}")
        self._diffs = stored
        if check:
            for n in range(lo + 2, hi + 1):
                if not (stored[n - 1] @ stored[n]).is_zero():
                    raise ValidationError(f"d_{n - 1} . d_{n} != 0")

    @classmethod
    def from_dims(cls, dims: Mapping[int, int], diffs: Mapping[int, Matrix] = None,
                  check: bool = True) -> "ChainComplex":
        nz = [n for n, k in dims.items() if k]
        if not nz:
            return zero()
        lo, hi = min(nz), max(nz)
        return cls(lo, hi, [dims.get(n, 0) for n in range(lo, hi + 1)], diffs, check=check)

    @classmethod
    def point(cls, degree: int = 0, dim: int = 1) -> "ChainComplex":
        """``Q^dim`` concentrated in one degree."""
        return cls(degree, degree, [dim]) if dim else zero()

    def dim(self, n: int) -> int:
        if self.lo <= n <= self.hi:
            return self._dims[n - self.lo]
        return 0

    def d(self, n: int) -> Matrix:
        m = self._diffs.get(n)
        if m is None:
            return Matrix.zeros(self.dim(n - 1), self.dim(n))
        return m

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def dims(self) -> Dict[int, int]:
        return {n: self.dim(n) for n in self.degrees()}

    def total_dim(self) -> int:
        return sum(self._dims)

    def is_zero(self) -> bool:
        return self.total_dim() == 0

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return all(self.dim(n) == other.dim(n) for n in range(lo, hi + 1)) and all(
            self.d(n) == other.d(n) for n in range(lo, hi + 2))

    def __hash__(self):
        return hash(tuple((n, self.dim(n)) for n in self.degrees() if self.dim(n)))

    def __repr__(self):
        body = ", ".join(f"{n}:{self.dim(n)}" for n in self.degrees())
        return f"ChainComplex({{{body}}})"

    @cached_property
    def splitting(self) -> "Splitting":
        return splitting(self)


def zero() -> ChainComplex:
    return ChainComplex(0, -1, [])


def degree_span(*cs: ChainComplex) -> range:
    """Smallest degree range covering every nonzero complex in ``cs``."""
    nonzero = [c for c in cs if not c.is_zero()]
    if not nonzero:
        return range(0)
    return range(min(c.lo for c in nonzero), max(c.hi for c in nonzero) + 1)


class ChainMap:
    """Degreewise matrices ``f_n: source_n -> target_n`` commuting with ``d``."""

    __slots__ = ("source", "target", "_comps")

    def __init__(self, source: ChainComplex, target: ChainComplex,
                 components: Mapping[int, Matrix], check: bool = True):
        self.source, self.target = source, target
        comps = {}
        for n, m in components.items():
            shape = (target.dim(n), source.dim(n))
            if m.shape != shape:
                if m.rows == 0 or m.cols == 0 or m.is_zero():
                    continue
                raise ValidationError(f"component f_{n} has shape {m.shape}, expected {shape}")
            if shape[0] and shape[1]:
                comps[n] = m
        self._comps = comps
        if check:
            bad = self.commutation_failure()
            if bad is not None:
                raise ValidationError(f"not a chain map: d f != f d in degree {bad}")

    def commutation_failure(self) -> Optional[int]:
        for n in degree_span(self.source, self.target):
            if self.target.d(n) @ self.at(n) != self.at(n - 1) @ self.source.d(n):
                return n
        return None

    @classmethod
    def identity(cls, c: ChainComplex) -> "ChainMap":
        return cls(c, c, {n: Matrix.identity(c.dim(n)) for n in c.degrees()}, check=False)

    @classmethod
    def zero(cls, source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return cls(source, target, {}, check=False)

    def at(self, n: int) -> Matrix:
        m = self._comps.get(n)
        if m is None:
            return Matrix.zeros(self.target.dim(n), self.source.dim(n))
        return m

    @property
    def components(self) -> Dict[int, Matrix]:
        return {n: self.at(n) for n in degree_span(self.source, self.target)}

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """``self . other``."""
        if other.target != self.source:
            raise PreconditionError("chain maps are not composable")
        return ChainMap(other.source, self.target,
                        {n: self.at(n) @ other.at(n) for n in degree_span(other.source, self.target)},
                        check=False)

    def _parallel(self, other: "ChainMap"):
        if self.source != other.source or self.target != other.target:
            raise PreconditionError("chain maps are not parallel")

    def __add__(self, other: "ChainMap") -> "ChainMap":
        self._parallel(other)
        return ChainMap(self.source, self.target,
                        {n: self.at(n) + other.at(n) for n in degree_span(self.source, self.target)},
                        check=False)

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        self._parallel(other)
        return ChainMap(self.source, self.target,
                        {n: self.at(n) - other.at(n) for n in degree_span(self.source, self.target)},
                        check=False)

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: -m for n, m in self._comps.items()}, check=False)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.source, self.target, {n: m.scale(c) for n, m in self._comps.items()},
                        check=False)

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        if self.source != other.source or self.target != other.target:
            return False
        return all(self.at(n) == other.at(n) for n in degree_span(self.source, self.target))

    def __hash__(self):
        return hash((hash(self.source), hash(self.target)))

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self._comps.values())

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


@dataclass(frozen=True)
class ChainHomotopy:
    """``f - g = d h + h d`` with ``components[n]: source_n -> target_{n+1}``."""

    f: ChainMap
    g: ChainMap
    components: Mapping[int, Matrix]

    def at(self, n: int) -> Matrix:
        m = self.components.get(n)
        if m is None:
            return Matrix.zeros(self.f.target.dim(n + 1), self.f.source.dim(n))
        return m

    def check(self) -> bool:
        a, b = self.f.source, self.f.target
        for n in degree_span(a, b):
            lhs = self.f.at(n) - self.g.at(n)
            rhs = b.d(n + 1) @ self.at(n) + self.at(n - 1) @ a.d(n)
            if lhs != rhs:
                return False
        return True

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components.values())


@dataclass(frozen=True)
class BettiProfile:
    """Ranks of homology, keyed by degree; zero ranks are not stored."""

    ranks: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_mapping(cls, ranks: Mapping[int, int]) -> "BettiProfile":
        return cls(tuple(sorted((n, b) for n, b in ranks.items() if b)))

    def __getitem__(self, n: int) -> int:
        return dict(self.ranks).get(n, 0)

    def sequence(self, lo: int = 0, hi: Optional[int] = None) -> Tuple[int, ...]:
        if hi is None:
            hi = max((n for n, _ in self.ranks), default=lo)
        return tuple(self[n] for n in range(lo, hi + 1))

    def __add__(self, other: "BettiProfile") -> "BettiProfile":
        out: Dict[int, int] = dict(self.ranks)
        for n, b in other.ranks:
            out[n] = out.get(n, 0) + b
        return BettiProfile.from_mapping(out)

    def is_zero(self) -> bool:
        return not self.ranks

    def __str__(self):
        if not self.ranks:
            return "acyclic"
        return ", ".join(f"deg {n}: {b}" for n, b in self.ranks)


def homology(c: ChainComplex) -> BettiProfile:
    ranks = {}
    for n in c.degrees():
        ranks[n] = c.dim(n) - rank(c.d(n)) - rank(c.d(n + 1))
    return BettiProfile.from_mapping(ranks)


def is_monic(f: ChainMap) -> bool:
    return all(rank(f.at(n)) == f.source.dim(n) for n in f.source.degrees())


def is_epic(f: ChainMap) -> bool:
    return all(rank(f.at(n)) == f.target.dim(n) for n in f.target.degrees())


def cone(f: ChainMap) -> ChainComplex:
    """``Cone_n = A_{n-1} + B_n`` with ``d(a, b) = (-d a, f a + d b)``."""
    a, b = f.source, f.target
    degrees = degree_span(shift(a, 1), b)
    dims = {n: a.dim(n - 1) + b.dim(n) for n in degrees}
    diffs = {}
    for n in degrees:
        top = Matrix.hstack([-a.d(n - 1), Matrix.zeros(a.dim(n - 2), b.dim(n))])
        bottom = Matrix.hstack([f.at(n - 1), b.d(n)])
        diffs[n] = Matrix.vstack([top, bottom])
    return ChainComplex.from_dims(dims, diffs, check=False)


def is_quasi_iso(f: ChainMap) -> bool:
    """True iff the mapping cone of ``f`` is acyclic."""
    return homology(cone(f)).is_zero()


def shift(c: ChainComplex, k: int) -> ChainComplex:
    """``A[k]_n = A_{n-k}``, differential ``(-1)^k d``."""
    if c.is_zero():
        return c
    sign = -1 if k % 2 else 1
    return ChainComplex(c.lo + k, c.hi + k, [c.dim(n) for n in c.degrees()],
                        {n + k: c.d(n).scale(sign) for n in range(c.lo + 1, c.hi + 1)}, check=False)


@dataclass(frozen=True)
class DirectSum:
    complex: ChainComplex
    injections: Tuple[ChainMap, ...]
    projections: Tuple[ChainMap, ...]

    def copair(self, maps: Sequence[ChainMap]) -> ChainMap:
        """The map out of the sum restricting to ``maps[i]`` on summand ``i``."""
        if len(maps) != len(self.injections):
            raise PreconditionError("one map per summand required")
        if not maps:
            raise PreconditionError("copair of an empty sum needs a target; use ChainMap.zero")
        target = maps[0].target
        for m, inj in zip(maps, self.injections):
            if m.source != inj.source or m.target != target:
                raise PreconditionError("copair maps must share a target and match the summands")
        degrees = degree_span(self.complex, target)
        return ChainMap(self.complex, target,
                        {n: Matrix.hstack([m.at(n) for m in maps], rows=target.dim(n)) for n in degrees},
                        check=False)

    def pair(self, maps: Sequence[ChainMap]) -> ChainMap:
        """The map into the sum with components ``maps[i]``."""
        source = maps[0].source
        degrees = degree_span(source, self.complex)
        return ChainMap(source, self.complex,
                        {n: Matrix.vstack([m.at(n) for m in maps], cols=source.dim(n)) for n in degrees},
                        check=False)


def direct_sum(cs: Sequence[ChainComplex]) -> DirectSum:
    cs = list(cs)
    degrees = degree_span(*cs) if cs else range(0)
    dims = {n: sum(c.dim(n) for c in cs) for n in degrees}
    diffs = {n: Matrix.block_diag([c.d(n) for c in cs]) for n in degrees}
    total = ChainComplex.from_dims(dims, diffs, check=False)
    injections, projections = [], []
    for i, c in enumerate(cs):
        inj, proj = {}, {}
        for n in degrees:
            blocks = [Matrix.identity(c.dim(n)) if j == i else Matrix.zeros(other.dim(n), c.dim(n))
                      for j, other in enumerate(cs)]
            inj[n] = Matrix.vstack(blocks, cols=c.dim(n))
            proj[n] = inj[n].T
        injections.append(ChainMap(c, total, inj, check=False))
        projections.append(ChainMap(total, c, proj, check=False))
    return DirectSum(total, tuple(injections), tuple(projections))


def block_map(source: DirectSum, target: DirectSum, blocks: Sequence[Sequence[Optional[ChainMap]]]) -> ChainMap:
    """Matrix of chain maps between two sums; ``blocks[i][j]`` goes from summand j to summand i."""
    result = ChainMap.zero(source.complex, target.complex)
    for i, row in enumerate(blocks):
        for j, m in enumerate(row):
            if m is not None:
                result = result + target.injections[i] @ m @ source.projections[j]
    return result


def pushout(f: ChainMap, g: ChainMap, check: bool = True) -> Tuple[ChainComplex, ChainMap, ChainMap]:
    """Pushout of ``B <-f- A -g-> C`` along a monic ``f``.

    ``D_n = (B_n + C_n) / {(f a, -g a)}``; returns ``(D, B -> D, C -> D)``.
    """
    if f.source != g.source:
        raise PreconditionError("pushout legs must share a source")
    if check and not is_monic(f):
        raise PreconditionError("pushout requires a monic leg")
    b, c = f.target, g.target
    degrees = degree_span(b, c)
    proj: Dict[int, Matrix] = {}
    sect: Dict[int, Matrix] = {}
    for n in degrees:
        sub = Matrix.vstack([f.at(n), -g.at(n)], cols=f.source.dim(n))
        proj[n], sect[n] = quotient_basis(sub, b.dim(n) + c.dim(n))
    dims = {n: proj[n].rows for n in degrees}
    diffs = {}
    for n in degrees:
        if n - 1 in proj:
            diffs[n] = proj[n - 1] @ Matrix.block_diag([b.d(n), c.d(n)]) @ sect[n]
    d = ChainComplex.from_dims(dims, diffs, check=False)
    to_b, to_c = {}, {}
    for n in degrees:
        pb = proj[n].block(0, proj[n].rows, 0, b.dim(n))
        pc = proj[n].block(0, proj[n].rows, b.dim(n), b.dim(n) + c.dim(n))
        to_b[n], to_c[n] = pb, pc
    return d, ChainMap(b, d, to_b, check=False), ChainMap(c, d, to_c, check=False)


def factorize(f: ChainMap) -> Tuple[ChainMap, ChainMap]:
    """Mapping-cylinder factorization ``f = r . f'`` with ``f'`` monic and ``r`` a quasi-iso.

    ``M_n = A_n + A_{n-1} + B_n``, ``d(x, y, z) = (d x + y, -d y, d z - f y)``,
    ``f'(x) = (x, 0, 0)``, ``r(x, y, z) = f x + z``.
    """
    a, b = f.source, f.target
    degrees = degree_span(a, shift(a, 1), b)
    dims = {n: a.dim(n) + a.dim(n - 1) + b.dim(n) for n in degrees}
    diffs = {}
    for n in degrees:
        an, an1, an2, bn, bn1 = a.dim(n), a.dim(n - 1), a.dim(n - 2), b.dim(n), b.dim(n - 1)
        row_x = Matrix.hstack([a.d(n), Matrix.identity(an1), Matrix.zeros(an1, bn)], rows=an1)
        row_y = Matrix.hstack([Matrix.zeros(an2, an), -a.d(n - 1), Matrix.zeros(an2, bn)], rows=an2)
        row_z = Matrix.hstack([Matrix.zeros(bn1, an), -f.at(n - 1), b.d(n)], rows=bn1)
        diffs[n] = Matrix.vstack([row_x, row_y, row_z], cols=an + an1 + bn)
    m = ChainComplex.from_dims(dims, diffs, check=False)
    incl, retr = {}, {}
    for n in degrees:
        an, an1, bn = a.dim(n), a.dim(n - 1), b.dim(n)
        incl[n] = Matrix.vstack([Matrix.identity(an), Matrix.zeros(an1, an), Matrix.zeros(bn, an)], cols=an)
        retr[n] = Matrix.hstack([f.at(n), Matrix.zeros(bn, an1), Matrix.identity(bn)], rows=bn)
    return ChainMap(a, m, incl, check=False), ChainMap(m, b, retr, check=False)


@dataclass(frozen=True)
class Cylinder:
    complex: ChainComplex
    i0: ChainMap
    i1: ChainMap
    p: ChainMap


def cylinder(a: ChainComplex) -> Cylinder:
    """Cylinder from factorizing the codiagonal ``A + A -> A``."""
    s = direct_sum([a, a])
    ident = ChainMap.identity(a)
    inc, p = factorize(s.copair([ident, ident]))
    return Cylinder(p.source, inc @ s.injections[0], inc @ s.injections[1], p)


@dataclass(frozen=True)
class BrownFactorization:
    f_prime: ChainMap
    r: ChainMap
    s: ChainMap


def brown_factorize(f: ChainMap) -> BrownFactorization:
    """``f = r f'`` and ``r s = 1_B`` with ``s`` a monic quasi-iso, from
    factorizing ``f + 1_B: A + B -> B``."""
    s = direct_sum([f.source, f.target])
    inc, r = factorize(s.copair([f, ChainMap.identity(f.target)]))
    return BrownFactorization(inc @ s.injections[0], r, inc @ s.injections[1])


@dataclass(frozen=True)
class Splitting:
    """Per degree an adapted basis ``C_n = W_n + H_n + B_n``.

    ``B_n = d(W_{n+1})`` are the boundaries, ``H_n`` completes them to the
    cycles, and ``d`` maps ``W_n`` isomorphically onto ``B_{n-1}``.  From it
    come ``sigma`` (inverse of ``d`` on boundaries, zero elsewhere), the
    projection ``e = 1 - d sigma - sigma d`` onto ``H`` and the harmonic
    coordinate maps ``pi``/``iota``.
    """

    complex: ChainComplex
    sigma: Dict[int, Matrix]
    pi: Dict[int, Matrix]
    iota: Dict[int, Matrix]

    def e(self, n: int) -> Matrix:
        return self.iota[n] @ self.pi[n]

    def sigma_at(self, n: int) -> Matrix:
        m = self.sigma.get(n)
        if m is None:
            return Matrix.zeros(self.complex.dim(n + 1), self.complex.dim(n))
        return m


def splitting(c: ChainComplex) -> Splitting:
    w: Dict[int, Matrix] = {}
    for n in c.degrees():
        cycles = kernel_basis(c.d(n))
        eye = Matrix.identity(c.dim(n))
        w[n] = eye.select_columns(extend_basis(cycles, eye))
    sigma, pi, iota = {}, {}, {}
    for n in c.degrees():
        wn = w[n]
        bn = c.d(n + 1) @ w[n + 1] if n + 1 in w else Matrix.zeros(c.dim(n), 0)
        cycles = kernel_basis(c.d(n))
        hn = cycles.select_columns(extend_basis(bn, cycles))
        basis = Matrix.hstack([wn, hn, bn], rows=c.dim(n))
        inv = inverse(basis)
        k_w, k_h = wn.cols, hn.cols
        pi[n] = inv.block(k_w, k_w + k_h, 0, c.dim(n))
        iota[n] = hn
        b_coords = inv.block(k_w + k_h, c.dim(n), 0, c.dim(n))
        if n + 1 in w:
            sigma[n] = w[n + 1] @ b_coords
    return Splitting(c, sigma, pi, iota)


def homology_map(f: ChainMap) -> Dict[int, Matrix]:
    """Induced maps on homology in the harmonic bases of the splittings."""
    sa, sb = f.source.splitting, f.target.splitting
    out = {}
    for n in degree_span(f.source, f.target):
        pi = sb.pi.get(n, Matrix.zeros(0, f.target.dim(n)))
        iota = sa.iota.get(n, Matrix.zeros(f.source.dim(n), 0))
        out[n] = pi @ f.at(n) @ iota
    return out


def solve_homotopy(f: ChainMap, g: ChainMap) -> Optional[ChainHomotopy]:
    """A chain homotopy ``h`` with ``f - g = d h + h d``, or None if none exists.

    Over a field ``phi = f - g`` is null-homotopic iff ``e_B phi e_A = 0``,
    and then ``h = sigma_B phi + e_B phi sigma_A`` works.
    """
    if f.source != g.source or f.target != g.target:
        raise PreconditionError("solve_homotopy needs parallel maps")
    a, b = f.source, f.target
    phi = f - g
    if phi.is_zero():
        return ChainHomotopy(f, g, {})
    if any(not m.is_zero() for m in homology_map(phi).values() if m.rows and m.cols):
        return None
    sa, sb = a.splitting, b.splitting
    comps = {}
    for n in a.degrees():
        h = sb.sigma_at(n) @ phi.at(n)
        if b.dim(n + 1) and a.dim(n + 1):
            h = h + sb.e(n + 1) @ phi.at(n + 1) @ sa.sigma_at(n)
        comps[n] = h
    hom = ChainHomotopy(f, g, comps)
    assert hom.check(), "constructed homotopy fails its identity"
    return hom
