import itertools

import pytest
from hypothesis import given, strategies as st

from extq.affine import affine_group, alcove_walls, apply_dot, bruhat_leq, element_for_weight, generators, parse_word
from extq.errors import NotLinked, NotRegular
from extq.rootdata import dominance_lt, make_context


def ball(g, r):
    return [g.element(g.canonical_of(k)) for k in g.ids_up_to(r)]


def test_generators_are_involutions():
    for t, n, ell in [("A", 1, 3), ("A", 2, 4), ("C", 2, 5), ("G", 2, 7)]:
        ctx = make_context(t, n, ell)
        gens = generators(ctx)
        assert len(gens) == n + 1
        g = affine_group(ctx)
        for s in gens:
            assert s.length == 1
            assert (s * s) == g.identity
        minus_rho = tuple(-1 for _ in range(n))
        for s in gens[1:]:
            assert apply_dot(s, minus_rho) == minus_rho


def test_dot_examples():
    ctx = make_context("A", 1, 3)
    g = affine_group(ctx)
    s0, s1 = g.from_word((0,)), g.from_word((1,))
    assert apply_dot(s0, (0,)) == (4,)
    assert apply_dot(s1, (1,)) == (-3,)
    assert apply_dot(g.from_word((0, 1)), (1,)) == (7,)
    assert g.apply_dot(g.identity, (5,)) == (5,)


@given(st.lists(st.integers(0, 2), max_size=8), st.lists(st.integers(0, 2), max_size=8),
       st.lists(st.integers(-6, 6), min_size=2, max_size=2))
def test_dot_action_is_compatible_with_composition(u, v, lam):
    g = affine_group(make_context("A", 2, 4))
    a, b = g.from_word(u), g.from_word(v)
    assert g.apply_dot(a * b, lam) == g.apply_dot(a, g.apply_dot(b, lam))


def test_length_examples():
    g = affine_group(make_context("A", 1, 3))
    assert g.identity.length == 0
    assert g.from_word((0, 1, 0)).length == 3
    assert g.from_word((0, 0)).length == 0


@pytest.mark.parametrize("t,n,ell", [("A", 1, 3), ("A", 2, 3), ("C", 2, 5), ("C", 2, 2)])
def test_hyperplane_length_equals_bfs_length(t, n, ell):
    g = affine_group(make_context(t, n, ell))
    seen = {g.base: 0}
    frontier = [g.base]
    for r in range(1, 11):
        nxt = []
        for v in frontier:
            for s in range(n + 1):
                u = g.reflect_gen(s, v)
                if u not in seen:
                    seen[u] = r
                    nxt.append(u)
        frontier = nxt
    for v, r in seen.items():
        assert g.length_of(v) == r
        assert len(g.word_of(v)) == r


def test_canonical_is_regular():
    g = affine_group(make_context("C", 2, 5))
    for e in ball(g, 8):
        for b in g.rs.positive_roots:
            assert b.pair(e.canonical) % g.unit != 0


@given(st.lists(st.integers(0, 2), max_size=12), st.integers(0, 2))
def test_length_changes_by_one(word, s):
    g = affine_group(make_context("C", 2, 5))
    u = g.from_word(word)
    v = g.from_word(u.word + (s,))
    assert abs(v.length - u.length) == 1
    assert g.from_word(u.word) == u
    assert len(u.word) == u.length


def test_bruhat_dihedral_total_per_length():
    g = affine_group(make_context("A", 1, 3))
    elems = ball(g, 10)
    for y in elems:
        for w in elems:
            assert bruhat_leq(y, w) == (y.length < w.length or y == w)


def test_bruhat_basic_order_properties():
    g = affine_group(make_context("A", 2, 3))
    elems = ball(g, 5)
    for w in elems:
        assert bruhat_leq(g.identity, w)
        for y in elems:
            if y.length == w.length:
                assert bruhat_leq(y, w) == (y == w)


def test_bruhat_choice_independence_a2():
    g = affine_group(make_context("A", 2, 3))
    elems = ball(g, 8)
    for w in elems:
        for y in elems:
            if y.length <= w.length:
                a = g.bruhat_leq(y.canonical, w.canonical, min)
                b = g.bruhat_leq(y.canonical, w.canonical, max)
                assert a == b


@pytest.mark.parametrize("t,n,ell,r", [("A", 2, 3, 6), ("C", 2, 5, 6), ("G", 2, 7, 5)])
def test_ideals_match_lifting_recursion(t, n, ell, r):
    g = affine_group(make_context(t, n, ell))
    ids = g.ids_up_to(r)
    for w in ids:
        ideal = g.ideal(w)
        for y in ids:
            assert (y in ideal) == g.bruhat_leq(g.canonical_of(y), g.canonical_of(w))


def test_element_for_weight_examples():
    ctx = make_context("A", 1, 3)
    g = affine_group(ctx)
    assert element_for_weight((-3,), (-3,), ctx) == g.identity
    assert element_for_weight((1,), (-3,), ctx).word == (1,)
    assert element_for_weight((3,), (-3,), ctx).word == (0, 1)
    with pytest.raises(NotRegular):
        element_for_weight((2,), (-3,), ctx)
    with pytest.raises(NotLinked):
        element_for_weight((0,), (-3,), ctx)


@pytest.mark.parametrize("t,n,ell,base", [("A", 1, 3, (-3,)), ("A", 2, 4, (-2, -2)), ("C", 2, 5, (-3, -2))])
def test_element_for_weight_inverts_dot(t, n, ell, base):
    ctx = make_context(t, n, ell)
    g = affine_group(ctx)
    for e in ball(g, 10 if n == 1 else 7):
        assert g.element_for_weight(g.apply_dot(e, base), base) == e


def _facet_walls(g, mu):
    """The facet test: a candidate hyperplane is a wall iff the segment to the reflected point crosses one hyperplane."""
    rs, ell, h = g.rs, g.ell, g.h
    unit = h * ell
    v = tuple(h * (x + 1) for x in mu)
    found = set()
    for beta in rs.positive_roots:
        p = beta.pair(v)
        for m in {p // unit, -((-p) // unit)}:
            r = tuple(x - (p - m * unit) * b for x, b in zip(v, beta.weight))
            crossings = 0
            for gamma in rs.positive_roots:
                a, b = sorted((gamma.pair(v), gamma.pair(r)))
                crossings += sum(1 for k in range(a // unit, b // unit + 2) if a < k * unit < b)
            if crossings == 1:
                found.add((beta.simple_coords, m))
    return found


@pytest.mark.parametrize("t,n,ell", [("A", 1, 3), ("A", 2, 4), ("C", 2, 5), ("G", 2, 7), ("B", 3, 6)])
def test_walls_match_facet_oracle(t, n, ell):
    ctx = make_context(t, n, ell)
    g = affine_group(ctx)
    box = itertools.product(range(-4, 3 * ell), repeat=n) if n < 3 else itertools.product(range(-2, ell + 2), repeat=n)
    checked = 0
    for mu in box:
        if not ctx.is_regular(mu):
            continue
        walls = alcove_walls(mu, ctx)
        assert len(walls) == n + 1
        assert {(w.root.simple_coords, w.level) for w, _ in walls} == _facet_walls(g, mu)
        for w, lower in walls:
            img = w.apply(mu)
            assert w.apply(img) == tuple(mu)
            assert lower == dominance_lt(img, mu, ctx.root_system)
        checked += 1
    assert checked > 0


def test_walls_examples():
    ctx = make_context("A", 1, 3)
    walls = alcove_walls((3,), ctx)
    assert sorted((w.level, low) for w, low in walls) == [(1, True), (2, False)]
    c2 = make_context("C", 2, 5)
    lower = sorted((w.root.simple_coords, w.level) for w, low in alcove_walls((0, 0), c2) if low)
    assert lower == [((0, 1), 0), ((1, 0), 0)]


@pytest.mark.parametrize("t,n,ell", [("A", 1, 3), ("A", 2, 4), ("C", 2, 5)])
def test_wall_reflections_are_adjacent(t, n, ell):
    ctx = make_context(t, n, ell)
    g = affine_group(ctx)
    base = tuple(ell // g.h - 1 if ell >= g.h else 0 for _ in range(n))
    base = tuple(x - 1 for x in g.orbit_representative(base))  # a point of A^+
    for e in ball(g, 6):
        mu = g.apply_dot(e, base)
        for w, _ in alcove_walls(mu, ctx):
            other = g.element_for_weight(w.apply(mu), base)
            assert abs(other.length - e.length) == 1


def test_parse_word():
    assert parse_word("e") == ()
    assert parse_word("s0 s1 s0") == (0, 1, 0)
    assert parse_word("0,1") == (0, 1)
    with pytest.raises(ValueError):
        parse_word("t1")


def test_antidominant_base_and_linkage():
    ctx = make_context("A", 1, 3)
    g = affine_group(ctx)
    assert g.antidominant_base((0,)) == (-2,)
    assert g.antidominant_base((4,)) == (-2,)
    assert g.linked((0,), (4,)) and g.linked((0,), (6,))
    assert not g.linked((0,), (1,))
