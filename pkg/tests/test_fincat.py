import random

import networkx as nx
import pytest

from conftest import arrow_category, chain3, iso_pair, span_category
from cofcat.errors import PreconditionError, ValidationError
from cofcat.fincat import (FinCategory, Functor, NaturalTransformation, category_product,
                           category_sum, delta_prime, find_cycle, full_subcategory, grothendieck,
                           is_closed_embedding, is_direct, is_open_embedding, latching_category,
                           object_inclusion, over_category, terminal_functor, under_category,
                           validate, validate_functor)
from cofcat.generate import random_shape, random_thin_functor, chain_poset


def test_validate_examples():
    assert validate(FinCategory.terminal()) is None
    assert validate(span_category()) is None
    assert validate(iso_pair()) is None


def test_validate_names_the_bad_composite():
    c = FinCategory.from_poset(3, [(0, 1), (1, 2)])
    # morphisms 3: 0<=1, 4: 0<=2, 5: 1<=2; declare 5.3 = 3 instead of 4
    table = dict(c.table)
    table[(5, 3)] = 3
    broken = FinCategory(3, c.src, c.dst, c.identity, table)
    msg = validate(broken)
    assert msg is not None and "5.3" in msg


def test_validate_catches_missing_and_associativity():
    # a monoid {1, x} with x.x missing
    missing = FinCategory(1, [0, 0], [0, 0], [0], {})
    assert "missing" in validate(missing)
    # {1, x, y}: x.x = y, x.y = x, y.x = y, y.y = y is not associative
    bad = FinCategory(1, [0, 0, 0], [0, 0, 0], [0], {(1, 1): 2, (1, 2): 1, (2, 1): 2, (2, 2): 2})
    assert "associativity" in validate(bad)


def test_constructor_rejects_bad_endpoints():
    with pytest.raises(ValidationError):
        FinCategory(1, [0, 3], [0, 0], [0], {})
    with pytest.raises(ValidationError):
        FinCategory.free(2, [(0, 1), (1, 0)])


def test_is_direct_examples():
    assert is_direct(span_category()).degrees == (0, 1, 1)
    assert is_direct(iso_pair()) is None
    assert find_cycle(iso_pair()) == [0, 1, 0]
    assert is_direct(FinCategory.terminal()).degrees == (0,)


def test_is_direct_matches_longest_paths():
    rng = random.Random(5)
    for _ in range(40):
        shape = random_shape(rng)
        c = shape.category
        g = nx.DiGraph()
        g.add_nodes_from(range(c.n_objects))
        g.add_edges_from((c.src[m], c.dst[m]) for m in c.nonidentity())
        deg = is_direct(c)
        assert validate(c) is None
        for o in range(c.n_objects):
            longest = max((len(p) - 1 for s in g.nodes for p in nx.all_simple_paths(g, s, o)), default=0)
            assert deg[o] == longest
        for m in c.nonidentity():
            assert deg[c.src[m]] < deg[c.dst[m]]


def test_over_category_examples():
    pt = FinCategory.terminal()
    sl = over_category(Functor.identity(pt), 0)
    assert sl.category.n_objects == 1 and sl.category.n_morphisms == 1
    span = span_category()
    sl = over_category(Functor.identity(span), 1)
    assert sorted(sl.objects) == [(0, 3), (1, 1)]
    assert len(sl.category.nonidentity()) == 1
    # point at the terminal object 2 of a chain: one object per map 2 -> d2
    c = chain3()
    u = object_inclusion(c, 2)
    assert [over_category(u, d).category.n_objects for d in range(3)] == [0, 0, 1]
    assert [under_category(u, d).category.n_objects for d in range(3)] == [1, 1, 1]


def test_under_category_examples():
    span = span_category()
    sl = under_category(Functor.identity(span), 0)
    assert sl.category.n_objects == 3
    assert len(sl.category.nonidentity()) == 2
    sl = under_category(Functor.identity(span), 1)
    assert sl.objects == ((1, 1),)
    # (1 | inclusion of 0) is empty
    assert under_category(object_inclusion(span, 0), 1).category.n_objects == 0


def test_slices_are_categories_and_projections_are_functors():
    rng = random.Random(11)
    for _ in range(25):
        shape = random_shape(rng)
        target = chain_poset(rng.randint(0, 3))
        u = random_thin_functor(rng, shape.category, target)
        for d2 in range(target.n_objects):
            for sl in (over_category(u, d2), under_category(u, d2)):
                assert validate(sl.category) is None
                assert validate_functor(sl.projection) is None


def test_latching_category_examples():
    span = span_category()
    assert latching_category(span, 0).category.n_objects == 0
    lat = latching_category(span, 1)
    assert lat.objects == ((0, 3),)
    lat = latching_category(chain3(), 2)
    assert lat.category.n_objects == 2
    assert len(lat.category.nonidentity()) == 1
    with pytest.raises(PreconditionError):
        latching_category(iso_pair(), 0)


def test_grothendieck_of_constant_functor_is_product():
    base = span_category()
    fiber = arrow_category()
    ident = Functor.identity(fiber)
    g = grothendieck(base, [fiber] * 3, [ident] * base.n_morphisms)
    prod = category_product([base, fiber]).category
    assert g.category.n_objects == prod.n_objects
    assert g.category.n_morphisms == prod.n_morphisms
    # the identification (d, x) <-> (d, x) preserves hom-set sizes
    for a, (d, x) in enumerate(g.objects):
        for b, (e, y) in enumerate(g.objects):
            pa = d * fiber.n_objects + x
            pb = e * fiber.n_objects + y
            assert len(g.category.hom(a, b)) == len(prod.hom(pa, pb))
    assert validate(g.category) is None


def test_grothendieck_over_terminal_is_fiber():
    fiber = span_category()
    g = grothendieck(FinCategory.terminal(), [fiber], [Functor.identity(fiber)])
    assert g.category.n_objects == 3 and g.category.n_morphisms == fiber.n_morphisms


def test_grothendieck_arrow_with_inclusion():
    base = arrow_category()
    pt, two = FinCategory.terminal(), FinCategory.discrete(2)
    inc = Functor(pt, two, [0], [0])
    g = grothendieck(base, [pt, two], [Functor.identity(pt), Functor.identity(two), inc])
    assert g.category.n_objects == 3
    assert len(g.category.nonidentity()) == 1
    assert validate_functor(g.projection) is None


def test_grothendieck_rejects_non_functorial_data():
    base = arrow_category()
    pt, two = FinCategory.terminal(), FinCategory.discrete(2)
    with pytest.raises(ValidationError):
        grothendieck(base, [pt, two], [Functor.identity(pt), Functor(two, two, [1, 0], [1, 0]),
                                       Functor(pt, two, [0], [0])])


def test_sum_and_product_examples():
    pt = FinCategory.terminal()
    s = category_sum([pt, pt])
    assert s.category.n_objects == 2 and s.category.n_morphisms == 2
    assert all(validate_functor(i) is None for i in s.injections)
    assert category_product([pt, pt]).category.n_objects == 1
    p = category_product([span_category(), arrow_category()])
    assert p.category.n_objects == 6
    assert validate(p.category) is None
    assert all(validate_functor(q) is None for q in p.projections)


def test_delta_prime_examples():
    span = span_category()
    d0 = delta_prime(span, 0)
    assert d0.category.n_objects == 3 and d0.category.n_morphisms == 3
    assert delta_prime(FinCategory.terminal(), 1).category.n_objects == 2
    d1 = delta_prime(span, 1)
    assert d1.category.n_objects == 8
    assert sorted(d1.degrees.degrees) == [0, 0, 0, 1, 1, 1, 1, 1]
    assert validate(d1.category) is None
    assert validate_functor(d1.terminal_projection) is None
    assert is_direct(d1.category) is not None


def test_embeddings():
    span = span_category()
    assert is_open_embedding(Functor.identity(span))
    assert is_closed_embedding(Functor.identity(span))
    low, inc_low = full_subcategory(span, [0])
    assert is_open_embedding(inc_low)
    assert not is_closed_embedding(inc_low)
    one, inc_one = full_subcategory(span, [1])
    assert is_closed_embedding(inc_one)
    assert not is_open_embedding(inc_one)
    assert not is_open_embedding(terminal_functor(span))


def test_natural_transformations():
    c = arrow_category()
    pt = FinCategory.terminal()
    at0, at1 = object_inclusion(c, 0), object_inclusion(c, 1)
    alpha = NaturalTransformation(at0, at1, (2,))
    assert NaturalTransformation.identity(at0).then(alpha) == alpha
    with pytest.raises(ValidationError):
        NaturalTransformation(at1, at0, (2,))
    assert terminal_functor(c).target.n_objects == pt.n_objects


def test_functor_composition_and_opposite():
    span = span_category()
    u = terminal_functor(span)
    assert Functor.identity(span).then(u) == u
    op = span.opposite()
    assert validate(op) is None
    assert is_direct(op) is not None and is_direct(op).degrees == (1, 0, 0)
