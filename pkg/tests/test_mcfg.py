from __future__ import annotations

import itertools
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import laws
from cowordisms import cowordism as cw
from cowordisms import data_path, llg, mcfg, ssp
from cowordisms.llg import GrammarSyntaxError, parse_llg
from cowordisms.mcfg import PredicateFormula, parse_mcfg


def load(name):
    return parse_mcfg(open(data_path(name)).read(), name)


def anbn_oracle(max_len):
    return {("a",) * n + ("b",) * n for n in range(max_len // 2 + 1)}


def copy_oracle(max_len):
    out = set()
    for n in range(max_len // 2 + 1):
        for w in itertools.product("ab", repeat=n):
            out.add(w + w)
    return out


def test_derive_matches_frozen_oracles():
    assert mcfg.mcfg_language(load("anbn.mcfg"), max_len=12) == anbn_oracle(12)
    assert mcfg.mcfg_language(load("copy.mcfg"), max_len=12) == copy_oracle(12)
    assert len(copy_oracle(12)) == 127


@pytest.mark.parametrize("name", ["anbn.mcfg", "copy.mcfg"])
def test_four_routes_agree(name):
    routes = laws.mcfg_routes(load(name), 10, 12)
    first = routes["derive"]
    for route, words in routes.items():
        assert words == first, route


MIX = """
# a two-coordinate grammar that swaps coordinates and uses an empty-word rule
terminals a b c;
start S;
S(x2 c x1) :- A(x1, x2).
A(a x1, x2 b) :- A(x1, x2).
A(x1 x3, x2 x4) :- A(x1, x2), B(x3, x4).
A(eps, eps).
B(c, eps).
"""


def test_four_routes_on_a_swapping_grammar():
    g = parse_mcfg(MIX)
    routes = laws.mcfg_routes(g, 6, 14)
    assert len(routes["derive"]) > 5
    for route, words in routes.items():
        assert words == routes["derive"], route


@pytest.mark.parametrize("name", ["anbn.mcfg", "copy.mcfg"])
def test_substitution_lemma(name):
    g = load(name)
    facts = mcfg.derive(g, max_len=8)
    by_nt = {}
    for f in facts:
        by_nt.setdefault(f.nonterminal, []).append(f)
    for p in g.productions:
        pools = [by_nt.get(b, []) for b, _ in p.body]
        for combo in itertools.islice(itertools.product(*pools), 50):
            args = tuple(f.words for f in combo)
            lhs = mcfg.represent(PredicateFormula(p.head, mcfg._apply(p, args)))
            point = cw.tensor_all(mcfg.represent(f) for f in combo)
            rhs = cw.compose(point, mcfg.graph_of(g, p)) if combo else mcfg.graph_of(g, p)
            assert lhs == rhs


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.sampled_from("ab"), max_size=3).map(tuple), min_size=1, max_size=3))
def test_read_tuple_inverts_represent(words):
    f = PredicateFormula("A", tuple(words))
    assert mcfg.read_tuple(mcfg.represent(f)) == f.words


def test_mcfg_to_llg_names_and_types():
    g = mcfg.mcfg_to_llg(load("anbn.mcfg"))
    assert [e.name for e in g.lexicon] == ["p1", "p2", "p3"]
    assert str(g.lexicon[0].formula) == "A^ @ S"
    assert g.atoms["A"] == cw.Boundary.of("LRLR")


def test_format_parse_roundtrip():
    for name in ["anbn.mcfg", "copy.mcfg"]:
        g = load(name)
        again = parse_mcfg(mcfg.format_mcfg(g))
        assert again.productions == g.productions and again.start == g.start


def test_disambiguate_splits_pattern_types():
    ext = mcfg.tensorfree_llg_to_extended(mcfg.mcfg_to_llg(load("copy.mcfg")))
    patt = mcfg.possible_patterns(ext)
    dis = mcfg.disambiguate(ext)
    for t, ps in mcfg.possible_patterns(dis).items():
        assert len(ps) <= 1, t
    assert sum(len(ps) for ps in patt.values()) >= len([t for t in dis.types if "#" not in t])


def test_empty_language_gives_empty_grammar():
    text = "alphabet a;\natom S = LR;\natom T = LR;\nstart S;\naxiom f : T -o S { edges: p3->p1:\"\", p2->p4:\"a\"; }\n"
    g = parse_llg(text)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        out = mcfg.llg_to_mcfg(g)
    assert out.productions == [] and caught
    assert mcfg.mcfg_language(out, max_len=5) == set() == llg.language(g, 5)


def test_tensor_lexicon_rejected_with_entry_name():
    with pytest.raises(mcfg.NotTensorFree) as info:
        mcfg.llg_to_mcfg(ssp.ssp_grammar())
    assert info.value.entry == "push"


def test_tensorfree_ssp_fragment_roundtrips():
    # drop push: what remains is tensor-free and generates lists of bullets
    g = ssp.ssp_grammar()
    g.lexicon = [e for e in g.lexicon if e.name != "push"]
    back = mcfg.llg_to_mcfg(g)
    assert mcfg.mcfg_language(back, max_len=4) == llg.language(g, 9, max_len=4)


@pytest.mark.parametrize(
    "text,line",
    [
        ("terminals a;\nstart S;\nS(x) :- A(x, y).\nA(x1) :- B(x1).\nB(a).\n", 4),
        ("terminals a;\nS(a).\n", 1),
        ("terminals a;\nstart S;\nS(q).\n", 3),
        ("terminals a;\nstart S;\nS(a)\n", 3),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(GrammarSyntaxError) as info:
        parse_mcfg(text, "g.mcfg")
    assert info.value.line == line
