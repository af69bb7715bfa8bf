from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cowordisms import cowordism as cw
from cowordisms import llg, ssp


def test_bullet_convention_golden():
    assert llg.word_str(ssp.irreducible_list([1, -1])) == "•+•-"
    assert llg.word_str(ssp.irreducible_list([0, 2, -3])) == "••++•---"
    assert ssp.irreducible_list([]) == ()


def test_numerals():
    assert ssp.numeral(0) == ()
    assert ssp.numeral(3) == ("+",) * 3
    assert ssp.numeral(-2) == ("-", "-")


def test_oracle_requires_nonempty_subsequence():
    assert ssp.ssp_oracle([0])
    assert ssp.ssp_oracle([2, 5, -2])
    assert not ssp.ssp_oracle([1, 1])
    assert not ssp.ssp_oracle([])


def test_grammar_is_valid_and_tensor_only_in_push():
    g = ssp.ssp_grammar()
    assert llg.validate(g) == []
    from cowordisms import mll

    assert [e.name for e in g.lexicon if mll.has_tensor(e.formula)] == ["push"]


def test_builtin_shapes():
    f = ssp.builtin_cowordisms()
    assert f["push"].source == cw.Boundary.of("LRLR")
    assert str(f["close"]) == '1 -> LR {t0->t1:"•"}'
    assert cw.compose(f["close"], f["push_plus"]) == cw.point(ssp.ATOM, [(0, 1, "•+")])


def test_small_language_golden():
    words = {llg.word_str(w) for w in llg.language(ssp.ssp_grammar(), 6)}
    # genuine lists: a lone zero, or a cancelling pair; deceptive slots hold any signs
    assert words == {
        "•", "•+•-", "•-•+", "••", "•••",
        "••+", "••-", "••++", "••+-", "••-+", "••--",
    }


def test_cons_reads_second_list_first():
    g = ssp.ssp_grammar()
    assert llg.member(g, ssp.irreducible_list([0, 1]), 12)[0]
    # a deceptive slot only follows the genuine list
    assert not llg.member(g, ssp.irreducible_list([1, 0]), 12)[0]


@pytest.mark.parametrize("k", range(0, 4))
def test_grammar_matches_its_characterization(k):
    g = ssp.ssp_grammar()
    for s in itertools.product(range(-3, 4), repeat=k):
        w = ssp.irreducible_list(s)
        ok, _ = llg.member(g, w, ssp.member_bound(w))
        assert ok == ssp.grammar_characterization(s), s


def test_characterization_differs_from_oracle():
    # the first entry is forced into the zero-sum subsequence
    assert ssp.ssp_oracle([1, 0]) and not ssp.grammar_characterization([1, 0])
    assert ssp.grammar_characterization([0, 1])


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-4, 4), max_size=6))
def test_characterization_implies_oracle(s):
    if ssp.grammar_characterization(s):
        assert ssp.ssp_oracle(s)
    # and any zero-sum instance can be rotated so the characterization holds
    if ssp.ssp_oracle(s):
        assert any(ssp.grammar_characterization(s[i:] + s[:i]) for i in range(len(s)))


def test_member_bound_is_sufficient_for_witnesses():
    g = ssp.ssp_grammar()
    for s in [(0,), (1, -1), (2, -1, -1), (-3, 1, 2)]:
        w = ssp.irreducible_list(s)
        ok, d = llg.member(g, w, ssp.member_bound(w))
        assert ok and len(d.axioms) <= ssp.member_bound(w)
        assert llg.read_word(llg.value_of(d, g)) == w


def test_sign_audit_of_generated_lists():
    # push adds one + and one -; only deceptive pushes can unbalance a list
    g = ssp.ssp_grammar()
    names = [e.name for e in g.lexicon]
    for d, v in llg.derivations(g, llg.start_formula(g), 8):
        used = [names[i] for i in d.axioms]
        counts = v.letter_count()
        assert counts["+"] - counts["-"] == used.count("push_plus") - used.count("push_minus")
        assert counts["•"] == used.count("close") + used.count("close_P")
