import random

import pytest

from conftest import chain3, circle, point, span_category, suspension
from cofcat import chq
from cofcat.chq import ChainComplex, ChainMap
from cofcat.errors import PreconditionError, ValidationError
from cofcat.fincat import (FinCategory, Functor, NaturalTransformation, grothendieck,
                           object_inclusion, over_category, terminal_functor)
from cofcat.generate import (random_chain_map, random_complex, random_diagram, random_monic,
                             random_shape, random_thin_functor, chain_poset)
from cofcat.oracle import bar_hocolim_betti
from cofcat.ratlin import Matrix
from cofcat.reedy import (Diagram, DiagramMap, base_change_check, colim_direct, colim_map,
                          colim_quotient, colim_relative, diagram_sum, hocolim, hocolim_absolute,
                          is_reedy_cofibrant, is_reedy_cofibration, latching_object, reedy_replace,
                          restrict, whisker)


def monic_span(rng, shape=None):
    x0 = random_complex(rng, 0, 2, 2)
    a, b = random_monic(rng, x0), random_monic(rng, x0)
    return Diagram.from_generators(shape or span_category(), [x0, a.target, b.target], {3: a, 4: b})


def chain_diagram(rng, top):
    chain = chain_poset(top)
    objs = [random_complex(rng, 0, 2, 2) for _ in range(top + 1)]
    maps = {chain.hom(i, i + 1)[0]: random_chain_map(rng, objs[i], objs[i + 1]) for i in range(top)}
    return Diagram.from_generators(chain, objs, maps)


def random_cofibrant(rng, **kw):
    return reedy_replace(random_diagram(rng, random_shape(rng), **kw)).diagram


def test_diagram_validation():
    s1, pt = circle(), point()
    # wrong endpoints
    with pytest.raises(ValidationError):
        Diagram.from_generators(span_category(), [s1, pt, pt], {3: ChainMap.identity(pt),
                                                                4: ChainMap.zero(s1, pt)})
    # b is not determined
    with pytest.raises(ValidationError):
        Diagram.from_generators(span_category(), [s1, pt, pt], {3: ChainMap.zero(s1, pt)})


def test_restrict_examples():
    x = suspension()
    assert restrict(Functor.identity(x.shape), x).objects == x.objects
    assert restrict(object_inclusion(x.shape, 1), x).objects == (point(),)
    rng = random.Random(1)
    for _ in range(10):
        shape = random_shape(rng).category
        y = chain_diagram(rng, 1)
        mid = chain_poset(3)
        v = random_thin_functor(rng, shape, mid)
        u = random_thin_functor(rng, mid, y.shape)
        lhs = restrict(v.then(u), y)
        rhs = restrict(v, restrict(u, y))
        assert lhs.objects == rhs.objects and lhs.morphisms == rhs.morphisms


def test_whisker_examples():
    x = suspension()
    u = object_inclusion(x.shape, 0)
    ident = whisker(NaturalTransformation.identity(u), x)
    assert ident.components == (ChainMap.identity(circle()),)
    v = object_inclusion(x.shape, 1)
    alpha = NaturalTransformation(u, v, (3,))
    phi = whisker(alpha, x)
    assert phi.components == (x.morphisms[3],)
    assert phi.source.objects == (circle(),) and phi.target.objects == (point(),)
    assert phi.failure() is None


def test_whisker_of_composite_is_composite():
    c = chain3()
    rng = random.Random(2)
    objs = [random_complex(rng) for _ in range(3)]
    x = Diagram.from_generators(c, objs, {3: random_chain_map(rng, objs[0], objs[1]),
                                          4: random_chain_map(rng, objs[1], objs[2])})
    u0, u1, u2 = (object_inclusion(c, o) for o in range(3))
    a = NaturalTransformation(u0, u1, (3,))
    b = NaturalTransformation(u1, u2, (4,))
    composite = whisker(a.then(b), x)
    assert composite.components[0] == whisker(b, x).components[0] @ whisker(a, x).components[0]


def test_latching_examples():
    x = suspension()
    assert latching_object(x, 0).complex.is_zero()
    lat = latching_object(x, 1)
    assert lat.complex.dims == circle().dims
    assert lat.map == x.morphisms[3]
    rng = random.Random(3)
    objs = [random_complex(rng) for _ in range(3)]
    y = Diagram.from_generators(chain3(), objs, {3: random_chain_map(rng, objs[0], objs[1]),
                                                 4: random_chain_map(rng, objs[1], objs[2])})
    lat = latching_object(y, 2)
    # the latching category has a terminal object, so LY_2 = Y_1
    assert lat.complex.dims == objs[1].dims
    assert chq.is_quasi_iso(lat.cocone.legs[[d for d, _ in lat.category.objects].index(1)])


def test_reedy_cofibrant_examples():
    rng = random.Random(4)
    assert is_reedy_cofibrant(monic_span(rng))
    report = is_reedy_cofibrant(suspension())
    assert not report and report.witness == 1
    disc = FinCategory.discrete(3)
    objs = [random_complex(rng) for _ in range(3)]
    assert is_reedy_cofibrant(Diagram(disc, objs, [ChainMap.identity(o) for o in objs]))


def test_colim_examples():
    rng = random.Random(5)
    c = random_complex(rng)
    apex, cocone = colim_direct(Diagram(FinCategory.terminal(), [c], [ChainMap.identity(c)]))
    assert apex == c
    pt, q2 = point(), ChainComplex.point(dim=2)
    e1 = ChainMap(pt, q2, {0: Matrix.from_rows([[1], [0]])})
    x = Diagram.from_generators(span_category(), [pt, q2, q2], {3: e1, 4: e1})
    apex, cocone = colim_direct(x)
    assert apex.dims == {0: 3}
    assert cocone.failure() is None
    with pytest.raises(PreconditionError):
        colim_direct(suspension())


def test_colim_with_terminal_object():
    rng = random.Random(6)
    for _ in range(10):
        n = rng.randint(1, 4)
        shape = FinCategory.from_poset(n + 1, [(i, n) for i in range(n)])
        objs = [random_complex(rng, 0, 2, 2) for _ in range(n)]
        top = chq.direct_sum(objs + [random_complex(rng, 0, 2, 2)])
        x = Diagram.from_generators(shape, objs + [top.complex],
                                    {shape.hom(i, n)[0]: top.injections[i] for i in range(n)})
        apex, cocone = colim_direct(x)
        assert chq.is_quasi_iso(cocone.legs[n])


def test_colim_direct_agrees_with_quotient():
    rng = random.Random(7)
    for _ in range(20):
        x = random_cofibrant(rng)
        apex, cocone = colim_direct(x)
        other, other_cocone = colim_quotient(x)
        assert cocone.failure() is None and other_cocone.failure() is None
        assert apex.dims == other.dims
        comparison = colim_map(DiagramMap(x, x, tuple(ChainMap.identity(o) for o in x.objects)),
                               (apex, cocone), (other, other_cocone))
        assert chq.is_monic(comparison) and chq.is_epic(comparison)


def test_reedy_replace_examples():
    rng = random.Random(8)
    x = monic_span(rng)
    repl = reedy_replace(x)
    assert is_reedy_cofibrant(repl.diagram)
    assert repl.map.is_pointwise_quasi_iso() and repl.map.failure() is None
    repl = reedy_replace(suspension())
    assert repl.diagram.objects[0].dims == {0: 1, 1: 1}
    assert repl.diagram.objects[1].dims == {0: 2, 1: 2, 2: 1}
    disc = FinCategory.discrete(2)
    objs = [random_complex(rng) for _ in range(2)]
    repl = reedy_replace(Diagram(disc, objs, [ChainMap.identity(o) for o in objs]))
    assert repl.map.is_pointwise_quasi_iso()


def test_reedy_replace_contract_on_random_diagrams():
    rng = random.Random(9)
    for _ in range(20):
        x = random_diagram(rng, random_shape(rng))
        repl = reedy_replace(x)
        assert is_reedy_cofibrant(repl.diagram)
        assert repl.diagram.failure() is None
        assert repl.map.failure() is None
        assert repl.map.is_pointwise_quasi_iso()


def test_colim_relative_examples():
    rng = random.Random(10)
    x = random_cofibrant(rng)
    rel = colim_relative(terminal_functor(x.shape), x)
    assert rel.diagram.objects[0].dims == colim_direct(x)[0].dims
    rel = colim_relative(Functor.identity(x.shape), x)
    for o in range(x.shape.n_objects):
        leg = rel.cocones[o].legs[rel.slices[o].index(o, x.shape.identity[o])]
        assert chq.is_monic(leg) and chq.is_epic(leg)


def test_colim_relative_then_colim_is_colim():
    # span -> arrow collapsing 1 and 2
    span = span_category()
    arrow = FinCategory.free(2, [(0, 1)])
    u = Functor(span, arrow, [0, 1, 1], [0, 1, 1, 2, 2])
    rng = random.Random(11)
    for _ in range(5):
        x = monic_span(rng, span)
        rel = colim_relative(u, x)
        assert rel.diagram.failure() is None
        assert colim_quotient(rel.diagram)[0].dims == colim_direct(x)[0].dims


def test_grothendieck_colimit_is_iterated():
    base = FinCategory.free(2, [(0, 1)])
    fiber = span_category()
    g = grothendieck(base, [fiber, fiber], [Functor.identity(fiber)] * 3)
    rng = random.Random(12)
    for _ in range(5):
        y = chain_diagram(rng, 2)
        x = reedy_replace(restrict(random_thin_functor(rng, g.category, y.shape), y)).diagram
        rel = colim_relative(g.projection, x)
        whole, _ = colim_direct(x)
        outer, _ = colim_quotient(rel.diagram)
        assert outer.dims == whole.dims
        assert chq.homology(outer) == chq.homology(whole)
        # the value over each base object is the colimit over its over-category
        for b in range(base.n_objects):
            sl = over_category(g.projection, b)
            assert rel.diagram.objects[b].dims == colim_quotient(restrict(sl.projection, x))[0].dims


def test_hocolim_examples():
    assert chq.homology(hocolim_absolute(suspension())).sequence(0, 2) == (1, 0, 1)
    rng = random.Random(13)
    for _ in range(5):
        n = rng.randint(1, 3)
        shape = FinCategory.from_poset(n + 1, [(i, n) for i in range(n)])
        objs = [random_complex(rng, 0, 2, 2) for _ in range(n + 1)]
        maps = {shape.hom(i, n)[0]: random_chain_map(rng, objs[i], objs[n]) for i in range(n)}
        x = Diagram.from_generators(shape, objs, maps)
        assert chq.homology(hocolim_absolute(x)) == chq.homology(objs[n])
    c = random_complex(rng)
    ident = ChainMap.identity(c)
    x = Diagram.from_generators(chain3(), [c, c, c], {3: ident, 4: ident})
    assert chq.homology(hocolim_absolute(x)) == chq.homology(c)


def test_hocolim_relative_matches_oracle_per_object():
    rng = random.Random(14)
    for _ in range(10):
        shape = random_shape(rng)
        x = random_diagram(rng, shape)
        target = chain_poset(rng.randint(0, 2))
        u = random_thin_functor(rng, shape.category, target)
        rel = hocolim(u, x)
        for d2 in range(target.n_objects):
            expected = bar_hocolim_betti(restrict(over_category(u, d2).projection, x))
            assert chq.homology(rel.diagram.objects[d2]) == expected


def test_base_change_examples():
    rng = random.Random(15)
    x = random_diagram(rng, random_shape(rng))
    for d2 in range(x.shape.n_objects):
        report = base_change_check(Functor.identity(x.shape), x, d2)
        assert report.verdict
        assert report.relative_betti == chq.homology(x.objects[d2])
    report = base_change_check(terminal_functor(x.shape), x, 0)
    assert report.verdict and report.relative_betti == bar_hocolim_betti(x)
    s = suspension()
    report = base_change_check(terminal_functor(s.shape), s, 0)
    assert report.verdict
    assert report.over_category_betti.sequence(0, 2) == (1, 0, 1)


def test_reedy_cofibration():
    rng = random.Random(16)
    x = random_cofibrant(rng)
    ident = DiagramMap(x, x, tuple(ChainMap.identity(o) for o in x.objects))
    assert is_reedy_cofibration(ident)
    zeros = [chq.zero() for _ in x.objects]
    empty = Diagram(x.shape, zeros, [ChainMap.identity(z) for z in
                                     (zeros[x.shape.src[m]] for m in range(x.shape.n_morphisms))])
    from_zero = DiagramMap(empty, x, tuple(ChainMap.zero(z, o) for z, o in zip(zeros, x.objects)))
    assert is_reedy_cofibration(from_zero)
    s = suspension()
    from_zero = DiagramMap(Diagram(s.shape, [chq.zero()] * 3, [ChainMap.identity(chq.zero())] * 5),
                           s, tuple(ChainMap.zero(chq.zero(), o) for o in s.objects))
    assert not is_reedy_cofibration(from_zero)


def test_diagram_sum_hocolim_is_sum():
    rng = random.Random(17)
    parts = [random_diagram(rng, random_shape(rng, 3, 3)) for _ in range(3)]
    total, _ = diagram_sum(parts)
    expected = chq.homology(hocolim_absolute(parts[0]))
    for p in parts[1:]:
        expected = expected + chq.homology(hocolim_absolute(p))
    assert chq.homology(hocolim_absolute(total)) == expected
