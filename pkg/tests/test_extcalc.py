import itertools

import pytest
from hypothesis import assume, given, strategies as st

from extq.errors import (
    EqualRestrictedParts,
    EqualWeights,
    NotDominant,
    NotRegular,
    NotRestricted,
    PreconditionLtooSmall,
)
from extq.extcalc import Case, check_A0_bound, e1_multiplicities, ext_dimension, ext_regular_pair
from extq.kl import KLTable
from extq.rootdata import make_context
from oracles import a1_alcove_oracle, a1_closed_form


def test_closed_forms_agree():
    for ell in (3, 5, 7):
        for lam in range(40):
            for mu in range(40):
                assert a1_closed_form(lam, mu, ell) == a1_alcove_oracle(lam, mu, ell)


def test_regular_pair_examples(a1_3):
    ctx, table = a1_3
    r = ext_regular_pair((0,), (1,), ctx, table)
    assert (r.dimension, r.case_tag) == (0, Case.UNLINKED)
    r = ext_regular_pair((0,), (4,), ctx, table)
    assert (r.dimension, r.case_tag) == (1, Case.KL_MU)
    assert r.presentation is not None and r.consistent
    r = ext_regular_pair((0,), (10,), ctx, table)
    assert (r.dimension, r.case_tag) == (0, Case.KL_MU)


def test_regular_pair_errors(a1_3):
    ctx, table = a1_3
    with pytest.raises(NotRegular):
        ext_regular_pair((2,), (4,), ctx, table)
    with pytest.raises(EqualWeights):
        ext_regular_pair((4,), (4,), ctx, table)
    with pytest.raises(NotDominant):
        ext_regular_pair((-1,), (4,), ctx, table)
    c2 = make_context("C", 2, 3)
    with pytest.raises(PreconditionLtooSmall):
        ext_regular_pair((0, 0), (1, 0), c2, KLTable(c2))


def test_e1_examples(a1_3):
    ctx, table = a1_3
    assert e1_multiplicities((1,), (0,), ctx, table).nonzero == {(1,): 1}
    assert e1_multiplicities((0,), (1,), ctx, table).nonzero == {(1,): 1}
    e = e1_multiplicities((0,), (1,), ctx, table)
    assert set(e.values) | set(e.not_covered) <= set(ctx.A0)
    with pytest.raises(NotRestricted):
        e1_multiplicities((3,), (0,), ctx, table)
    with pytest.raises(EqualRestrictedParts):
        e1_multiplicities((1,), (1,), ctx, table)


def test_e1_singular_inputs_are_not_covered(a1_3):
    ctx, table = a1_3
    e = e1_multiplicities((2,), (0,), ctx, table)
    assert set(e.not_covered) == set(ctx.A0) and not e.values
    assert e.get((0,)) is None


def test_ext_dimension_examples(a1_3):
    ctx, table = a1_3
    r = ext_dimension((5,), (5,), ctx, table)
    assert (r.dimension, r.case_tag) == (0, Case.SELF_EXT)
    r = ext_dimension((1,), (3,), ctx, table)
    assert (r.dimension, r.case_tag) == (1, Case.GENERAL_SUM)
    assert [(c.nu, c.e1_mult, c.tensor_mult) for c in r.contributions if c.e1_mult and c.tensor_mult] == [((1,), 1, 1)]
    r = ext_dimension((3,), (6,), ctx, table)
    assert (r.dimension, r.case_tag) == (0, Case.SAME_RESTRICTED_PART)
    assert ext_dimension((0,), (1,), ctx, table).case_tag == Case.UNLINKED
    with pytest.raises(NotDominant):
        ext_dimension((0,), (-2,), ctx, table)


def test_general_sum_invariant(c2_5):
    ctx, table = c2_5
    seen = 0
    for lam, mu in itertools.product(itertools.product(range(7), repeat=2), repeat=2):
        r = ext_dimension(lam, mu, ctx, table)
        if r.case_tag == Case.GENERAL_SUM:
            assert r.dimension == sum(c.e1_mult * c.tensor_mult for c in r.contributions)
            seen += r.dimension > 0
        elif r.covered:
            assert r.dimension == 0
        else:
            assert r.dimension is None and r.note
    assert seen > 0


def test_very_special_equal_restricted_parts_not_covered():
    ctx = make_context("C", 2, 2)
    table = KLTable(ctx)
    r = ext_dimension((1, 0), (3, 0), ctx, table)
    assert r.case_tag == Case.NOT_COVERED and r.dimension is None
    assert ext_dimension((1, 0), (1, 0), ctx, table).case_tag == Case.SELF_EXT
    with pytest.raises(PreconditionLtooSmall):
        ext_dimension((1, 0), (0, 0), ctx, table)


@pytest.mark.parametrize("ell", [3, 5])
def test_a1_matches_closed_form(ell, request):
    ctx, table = request.getfixturevalue(f"a1_{ell}")
    for lam in range(21):
        for mu in range(21):
            r = ext_dimension((lam,), (mu,), ctx, table)
            assert r.covered
            assert r.dimension == a1_closed_form(lam, mu, ell), (lam, mu)


@given(st.lists(st.integers(0, 12), min_size=2, max_size=2), st.lists(st.integers(0, 12), min_size=2, max_size=2))
def test_symmetry_c2(c2_5, lam, mu):
    ctx, table = c2_5
    a, b = ext_dimension(lam, mu, ctx, table), ext_dimension(mu, lam, ctx, table)
    if a.covered and b.covered:
        assert a.dimension == b.dimension


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_linkage_vanishing_a2(a2_4, a, b, c, d):
    ctx, table = a2_4
    lam, mu = (a, b), (c, d)
    assume(lam != mu)
    if not table.group.linked(lam, mu):
        assert ext_dimension(lam, mu, ctx, table).dimension == 0


@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 12), st.integers(0, 12))
def test_presentations_consistent_c2(c2_5, a, b, c, d):
    ctx, table = c2_5
    lam, mu = (a, b), (c, d)
    assume(lam != mu and ctx.is_regular(lam) and ctx.is_regular(mu))
    r = ext_regular_pair(lam, mu, ctx, table)
    s = ext_regular_pair(mu, lam, ctx, table)
    assert r.consistent and s.consistent
    if r.covered and s.covered:
        assert r.dimension == s.dimension
    if r.covered:
        assert r.dimension in r.presentation_values or r.case_tag == Case.UNLINKED


def test_check_a0_bound_a1(a1_3, a1_5):
    rep = check_A0_bound(*a1_3)
    assert rep.passed and rep.nonzero_tables == 2 and rep.not_covered == 0
    assert rep.tables == {((0,), (1,)): {(1,): 1}, ((1,), (0,)): {(1,): 1}}
    rep5 = check_A0_bound(*a1_5)
    assert rep5.passed and not rep5.violations and rep5.nonzero_tables == 4


def test_check_a0_bound_vacuous():
    ctx = make_context("A", 1, 2)
    rep = check_A0_bound(ctx, KLTable(ctx))
    assert rep.pairs == 0 and rep.passed
