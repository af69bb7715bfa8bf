from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import gen
import laws
from cowordisms import cowordism as cw
from cowordisms.cowordism import Boundary, BoundaryMismatch, Cowordism
from cowordisms.multiword import CyclicWord

RANDOMS = st.randoms(use_true_random=False)


@pytest.mark.parametrize("law", laws.CATEGORY_LAWS + laws.COMPACTNESS_LAWS + (laws.name_roundtrip,),
                         ids=lambda f: f.__name__)
@settings(max_examples=150, deadline=None)
@given(rng=RANDOMS)
def test_law(law, rng):
    law(rng)


@settings(max_examples=200, deadline=None)
@given(rng=RANDOMS)
def test_partial_pair_is_gluing(rng):
    a, u, b = gen.boundary(rng, 2), gen.balanced_tags(rng, 4), gen.boundary(rng, 2)
    # tau: 1 -> A (x) U needs A balanced; pad with its dual
    a = a + a.dual()
    b = b + b.dual()
    tau = gen.point(rng, a + u)
    sigma = gen.point(rng, u.dual() + b)
    assert cw.partial_pair(tau, sigma, u) == laws.glue_points(tau, sigma, len(u))


@settings(max_examples=200, deadline=None)
@given(rng=RANDOMS)
def test_letters_conserved_by_composition(rng):
    f, g = gen.chain(rng, 2)
    assert cw.compose(f, g).letter_count() == f.letter_count() + g.letter_count()


@settings(max_examples=100, deadline=None)
@given(rng=RANDOMS)
def test_pattern_is_functorial(rng):
    f, g = gen.chain(rng, 2)
    assert cw.pattern(cw.compose(f, g)) == cw.compose(cw.pattern(f), cw.pattern(g))


def test_points_run_left_to_right():
    w = cw.point(Boundary.of("LR"), [(0, 1, "ab")])
    assert w.edges == (((cw.TGT, 0), (cw.TGT, 1), ("a", "b")),)
    with pytest.raises(ValueError):
        cw.point(Boundary.of("LR"), [(1, 0, "ab")])


def test_john_likes_mary_as_cowordisms():
    x = Boundary.of("LR")
    john = cw.point(x, [(0, 1, ("John",))])
    likes = Cowordism(x, x, (((cw.TGT, 0), (cw.SRC, 0), ()), ((cw.SRC, 1), (cw.TGT, 1), ("likes",))))
    mary = Cowordism(x, x, (((cw.TGT, 0), (cw.SRC, 0), ()), ((cw.SRC, 1), (cw.TGT, 1), ("Mary",))))
    out = cw.compose_all(john, likes, mary)
    assert cw.point_edges(out) == [(0, 1, ("John", "likes", "Mary"))]


def test_counit_of_point_closes_loop():
    x = Boundary.of("LR")
    xy = cw.point(x, [(0, 1, "xy")])
    # capping the two ends of a single edge with each other yields the loop [xy]
    cap = cw.Cowordism(x, cw.UNIT, (((cw.SRC, 1), (cw.SRC, 0), ()),))
    out = cw.compose(xy, cap)
    assert out.edges == () and out.cycles == (CyclicWord.of("xy"),)


def test_mismatch_rejected():
    f = cw.identity(Boundary.of("LR"))
    g = cw.identity(Boundary.of("RL"))
    with pytest.raises(BoundaryMismatch):
        cw.compose(f, g)


def test_str_form():
    f = cw.point(Boundary.of("LR"), [(0, 1, "ab")], ["c"])
    assert str(f) == '1 -> LR {t0->t1:"ab", [c]}'


def test_permute_matches_symmetry():
    x, y = Boundary.of("LRR"), Boundary.of("L")
    assert cw.permute([x, y], [1, 0]) == cw.symmetry(x, y)
