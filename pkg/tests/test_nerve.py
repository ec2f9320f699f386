import random

from conftest import arrow_category, chain3, span_category
from cofcat.fincat import (FinCategory, Functor, category_sum, delta_prime, is_direct,
                           object_inclusion, over_category, terminal_functor)
from cofcat.generate import chain_poset, random_shape, random_thin_functor
from cofcat.nerve import (is_acyclic_cofinal_up_to, is_connected, is_right_cofinal,
                          nerve_betti, nerve_chains)
from cofcat.ratlin import Matrix


def test_nerve_of_terminal():
    n = nerve_chains(FinCategory.terminal(), 2)
    assert [len(b) for b in n.basis] == [1, 0, 0]


def test_nerve_of_arrow():
    n = nerve_chains(arrow_category(), 2)
    assert [len(b) for b in n.basis] == [2, 1, 0]
    d1 = n.differentials[1]
    assert sorted(d1.column(0)) == [-1, 1]


def test_nerve_of_span():
    n = nerve_chains(span_category(), 1)
    assert [len(b) for b in n.basis] == [3, 2]


def test_nerve_betti_examples():
    assert nerve_betti(chain3(), 3) == (1, 0, 0)
    assert nerve_betti(FinCategory.discrete(2), 1) == (2,)
    assert nerve_betti(span_category(), 2) == (1, 0)


def test_nerve_differential_squares_to_zero():
    rng = random.Random(3)
    for _ in range(20):
        c = random_shape(rng).category
        n = nerve_chains(c, 4)
        for p in range(2, 5):
            assert (n.differentials[p - 1] @ n.differentials[p]).is_zero()


def test_nerve_euler_characteristic():
    # a direct category has a finite nerve; chi of chains equals chi of homology
    rng = random.Random(4)
    for _ in range(30):
        c = random_shape(rng).category
        top = max(is_direct(c).degrees) + 1
        n = nerve_chains(c, top + 1)
        betti = nerve_betti(c, top + 1)
        chi_chains = sum((-1) ** p * len(b) for p, b in enumerate(n.basis))
        assert chi_chains == sum((-1) ** p * b for p, b in enumerate(betti))


def test_terminal_or_initial_object_gives_contractible_nerve():
    rng = random.Random(6)
    for _ in range(20):
        n = rng.randint(1, 5)
        rel = [tuple(sorted(rng.sample(range(n), 2))) for _ in range(rng.randint(0, 6))] if n > 1 else []
        # adjoin a top element n
        cat = FinCategory.from_poset(n + 1, rel + [(i, n) for i in range(n)])
        assert nerve_betti(cat, n + 2) == (1,) + (0,) * (n + 1)
    assert nerve_betti(span_category(), 3) == (1, 0, 0)  # 0 is initial


def test_two_loops_have_first_homology():
    # two parallel arrows a, b: 0 -> 1 form a circle
    c = FinCategory.free(2, [(0, 1), (0, 1)])
    assert nerve_betti(c, 2) == (1, 1)


def test_connectedness():
    assert is_connected(span_category())
    assert not is_connected(FinCategory.discrete(2))
    assert not is_connected(FinCategory.empty())


def test_right_cofinal_examples():
    span = span_category()
    assert is_right_cofinal(Functor.identity(span))
    c = chain3()
    assert is_right_cofinal(object_inclusion(c, 2))
    report = is_right_cofinal(object_inclusion(span, 0))
    assert not report
    assert 1 in report.failing
    assert report.details[1] == "empty"


def test_disconnected_under_category():
    two = FinCategory.discrete(2)
    report = is_right_cofinal(terminal_functor(two))
    assert not report and report.details == ("disconnected",)


def test_acyclic_cofinal_examples():
    # inclusion of a terminal object is a right adjoint
    c = chain3()
    for n in range(1, 4):
        assert is_acyclic_cofinal_up_to(object_inclusion(c, 2), n)
    # span -> point is right adjoint to the inclusion of the initial object 0
    assert is_acyclic_cofinal_up_to(terminal_functor(span_category()), 3)
    report = is_acyclic_cofinal_up_to(terminal_functor(FinCategory.discrete(2)), 2)
    assert not report and report.details[0].startswith("betti 2")


def test_acyclic_cofinal_sees_a_circle():
    c = FinCategory.free(2, [(0, 1), (0, 1)])
    u = terminal_functor(c)
    assert is_right_cofinal(u)
    assert not is_acyclic_cofinal_up_to(u, 2)


def _fiber_inclusion(dp, d):
    """Inclusion of the fiber of the terminal projection over ``d`` into ``(p_t | d)``."""
    c = dp.category
    p = dp.terminal_projection
    base = p.target
    objs = [k for k in range(c.n_objects) if p.obj(k) == d]
    pos = {k: i for i, k in enumerate(objs)}
    mors = [m for m in range(c.n_morphisms)
            if c.src[m] in pos and c.dst[m] in pos and p(m) == base.identity[d]]
    mpos = {m: i for i, m in enumerate(mors)}
    fiber = FinCategory(len(objs), [pos[c.src[m]] for m in mors], [pos[c.dst[m]] for m in mors],
                        [mpos[c.identity[k]] for k in objs],
                        {(mpos[g], mpos[f]): mpos[c.compose(g, f)]
                         for f in mors for g in mors if c.dst[f] == c.src[g]})
    sl = over_category(p, d)
    index = {ob: i for i, ob in enumerate(sl.objects)}
    obj_map = [index[(k, base.identity[d])] for k in objs]
    mor_map = []
    for m in mors:
        a, b = obj_map[pos[c.src[m]]], obj_map[pos[c.dst[m]]]
        mor_map.append(next(k for k in range(sl.category.n_morphisms)
                            if sl.category.src[k] == a and sl.category.dst[k] == b and sl.arrows[k] == m))
    return Functor(fiber, sl.category, obj_map, mor_map)


def test_delta_prime_fiber_inclusion_small_cases():
    for max_len in (1, 2):
        dp = delta_prime(FinCategory.terminal(), max_len)
        u = _fiber_inclusion(dp, 0)
        assert is_right_cofinal(u)
        assert is_acyclic_cofinal_up_to(u, 2)
    # over the initial object of the arrow category nothing is cut off
    dp = delta_prime(arrow_category(), 2)
    assert is_acyclic_cofinal_up_to(_fiber_inclusion(dp, 0), 2)


def test_delta_prime_truncation_breaks_cofinality_at_the_top():
    # a maximal-length chain ending at 0, followed by a: 0 -> 1, does not
    # extend to a chain ending at 1 inside the truncation
    dp = delta_prime(arrow_category(), 1)
    report = is_right_cofinal(_fiber_inclusion(dp, 1))
    assert not report and "empty" in report.details
