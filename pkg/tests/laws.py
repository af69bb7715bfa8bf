"""Category and compactness laws, one function per law, each drawing its own data.

Every function raises AssertionError on a counterexample.  They are shared by
the property tests and the acceptance gate.
"""

from __future__ import annotations

import random

import gen
from cowordisms import cowordism as cw
from cowordisms import mll
from cowordisms.multiword import contract, contract_many, disjoint_union


def identity_law(rng: random.Random):
    f = gen.morphism(rng)
    assert cw.compose(cw.identity(f.source), f) == f
    assert cw.compose(f, cw.identity(f.target)) == f


def associativity(rng: random.Random):
    f, g, h = gen.chain(rng, 3)
    assert cw.compose(cw.compose(f, g), h) == cw.compose(f, cw.compose(g, h))


def tensor_bifunctorial(rng: random.Random):
    f1, g1 = gen.chain(rng, 2, max_ports=3)
    f2, g2 = gen.chain(rng, 2, max_ports=3)
    lhs = cw.compose(cw.tensor(f1, f2), cw.tensor(g1, g2))
    rhs = cw.tensor(cw.compose(f1, g1), cw.compose(f2, g2))
    assert lhs == rhs
    x, y = f1.source, f2.source
    assert cw.tensor(cw.identity(x), cw.identity(y)) == cw.identity(x + y)


def symmetry_involution(rng: random.Random):
    x, y = gen.boundary(rng, 3), gen.boundary(rng, 3)
    assert cw.compose(cw.symmetry(x, y), cw.symmetry(y, x)) == cw.identity(x + y)


def symmetry_natural(rng: random.Random):
    f, g = gen.morphism(rng, 3), gen.morphism(rng, 3)
    lhs = cw.compose(cw.tensor(f, g), cw.symmetry(f.target, g.target))
    rhs = cw.compose(cw.symmetry(f.source, g.source), cw.tensor(g, f))
    assert lhs == rhs


def duality(rng: random.Random):
    f, g = gen.chain(rng, 2)
    assert cw.dual(cw.dual(f)) == f
    assert cw.dual(cw.compose(f, g)) == cw.compose(cw.dual(g), cw.dual(f))
    assert f.source.dual().dual() == f.source


def contraction_commutes(rng: random.Random):
    m = gen.multiword(rng, rng.randint(1, 6))
    heads, tails = sorted(m.left), sorted(m.right)
    rng.shuffle(tails)
    pairs = list(zip(heads, tails))[: rng.randint(1, len(heads))]
    results = set()
    for _ in range(3):
        rng.shuffle(pairs)
        out = m
        for x, y in pairs:
            out = contract(out, x, y)
        results.add(out)
    results.add(contract_many(m, dict(pairs)))
    assert len(results) == 1


CATEGORY_LAWS = (
    identity_law,
    associativity,
    tensor_bifunctorial,
    symmetry_involution,
    symmetry_natural,
    duality,
    contraction_commutes,
)


def apply_name(rng: random.Random):
    """``apply(name(f), tau) = f . tau``."""
    x = gen.balanced_tags(rng)
    tau = gen.point(rng, x)
    f = gen.cowordism(rng, x, gen.balanced_boundary(rng, x))
    assert cw.apply(cw.name(f), tau) == cw.compose(tau, f)


def name_of_composite(rng: random.Random):
    """``name(sigma . tau) = <name(tau), name(sigma)>`` paired along the middle boundary."""
    tau, sigma = gen.chain(rng, 2)
    lhs = cw.name(cw.compose(tau, sigma))
    rhs = cw.partial_pair(cw.name(tau), cw.name(sigma), tau.target)
    assert lhs == rhs


def name_roundtrip(rng: random.Random):
    f = gen.morphism(rng)
    assert cw.unname(cw.name(f), f.source) == f


COMPACTNESS_LAWS = (apply_name, name_of_composite)


def glue_points(tau: cw.Cowordism, sigma: cw.Cowordism, k: int) -> cw.Cowordism:
    """Partial pairing computed directly by gluing multiwords.

    ``tau: 1 -> A (x) U`` and ``sigma: 1 -> U^ (x) B`` with ``|U| = k``.
    """
    na = len(tau.target) - k
    m = disjoint_union(tau.to_multiword(), sigma.to_multiword())
    pairs = {}
    for i in range(k):
        mine, theirs = (0, (cw.TGT, na + i)), (1, (cw.TGT, i))
        if tau.target[na + i] == "R":  # R port of a point is a head
            pairs[mine] = theirs
        else:
            pairs[theirs] = mine
    m = contract_many(m, pairs)

    def renum(v):
        side, (_, i) = v
        return (cw.TGT, i if side == 0 else na + i - k)

    edges = [(renum(t), renum(h), w) for t, h, w in m.edges]
    target = tau.target[:na] + sigma.target[k:]
    return cw.Cowordism(cw.UNIT, target, tuple(edges), m.cyclic)


# -- linear logic -------------------------------------------------------------

ENV = {"a": cw.Boundary.of("LR"), "b": cw.Boundary.of("RLL")}


def _renamed(p, mapping):
    return mll.Exchange(p, tuple(sorted(mapping.items())))


def proof_sequent(rng: random.Random, max_connectives: int = 8) -> list:
    """Half the time a random sequent, otherwise the conclusion of a random proof."""
    if rng.random() < 0.5:
        return gen.sequent(rng, max_connectives)
    p = gen.random_proof(rng, rng.randint(0, max_connectives), gen.Fresh())
    seq = [f for _, f in mll.check_proof(p)]
    rng.shuffle(seq)
    return seq


def enumerated_proofs_check(rng: random.Random):
    seq = proof_sequent(rng)
    items = tuple(((i,), f) for i, f in enumerate(seq))
    proofs = list(mll.enumerate_cut_free_proofs(seq))
    assert bool(proofs) == mll.provable(seq)
    for p in proofs[:20]:
        assert mll.check_proof(p) == items
        assert mll.is_cut_free(p)
        # a proof's value depends only on its axiom linking
        again = mll.sequentialize(items, mll.linking_of(p))
        assert again is not None
        assert mll.interpret_proof(again, ENV) == mll.interpret_proof(p, ENV)


def _cut_instance(rng: random.Random, with_context: bool):
    fresh = gen.Fresh()
    p = gen.random_proof(rng, rng.randint(0, 4), fresh)
    concl = mll.check_proof(p)
    x_occ, x = rng.choice(concl)
    gamma = [o for o, _ in concl if o != x_occ]
    left = _renamed(p, {**{o: (i,) for i, o in enumerate(gamma)}, x_occ: (100,)})
    n_occ, p_occ = fresh(), fresh()
    q = mll.eta_expand(x, n_occ, p_occ)
    if with_context:
        r = gen.random_proof(rng, rng.randint(0, 3), fresh)
        other = rng.choice([o for o, _ in mll.check_proof(r)])
        q = mll.TensorRule(q, r, p_occ, other, fresh())
    delta = [o for o, _ in mll.check_proof(q) if o != n_occ]
    right = _renamed(q, {**{o: (300 + i,) for i, o in enumerate(delta)}, n_occ: (200,)})
    return left, right, mll.Cut(left, right, (100,), (200,)), x


def cut_is_gluing(rng: random.Random):
    left, right, cut, x = _cut_instance(rng, with_context=True)
    lv = mll.interpret_proof(left, ENV)
    rv = mll.interpret_proof(right, ENV)
    k = len(mll.interpret_formula(x, ENV))
    assert mll.interpret_proof(cut, ENV) == glue_points(lv, rv, k)


def cut_with_axiom_is_neutral(rng: random.Random):
    left, _, cut, _ = _cut_instance(rng, with_context=False)
    assert mll.interpret_proof(cut, ENV) == mll.interpret_proof(left, ENV)


def eta_law(f):
    p = mll.eta_expand(f)
    assert mll.is_cut_free(p)
    assert mll.check_proof(p) == (((0,), mll.neg(f)), ((1,), f))
    b = mll.interpret_formula(f, ENV)
    assert mll.interpret_proof(p, ENV) == cw.name(cw.identity(b))


def formulas_up_to_depth(d: int) -> list:
    lits = [c(a) for a in gen.ATOMS for c in (mll.Pos, mll.Neg)]
    level = list(lits)
    for _ in range(d):
        level = lits + [op(x, y) for op in (mll.Tensor, mll.Par) for x in level for y in level]
    return level


# -- grammar routes -----------------------------------------------------------


def mcfg_routes(g, max_len: int, max_axioms: int) -> dict:
    """The word sets of one MCFG computed four ways, keyed by route."""
    from cowordisms import llg, mcfg

    as_llg = mcfg.mcfg_to_llg(g)
    ext = mcfg.tensorfree_llg_to_extended(as_llg)
    back = mcfg.simple_to_mcfg(mcfg.disambiguate(ext))
    return {
        "derive": mcfg.mcfg_language(g, max_len=max_len),
        "llg": llg.language(as_llg, max_axioms, max_len=max_len),
        "extended": mcfg.extended_language(ext, max_len=max_len),
        "roundtrip": mcfg.mcfg_language(back, max_len=max_len),
    }


# -- abstract categorial grammars ----------------------------------------------


def graph_of_word(rng: random.Random):
    from cowordisms import acg

    w = gen.word(rng, 8, "abc")
    sig, interp = acg.string_signature("abc"), acg.string_interpretation("abc")
    v = acg.interpret_term(sig, interp, acg.encode_word(w), expected=acg.STR)
    assert v == acg.graph_word(w)
    assert acg.string_readback(v) == w


def application_law(rng: random.Random, pools: dict):
    """``[t s] = apply([t], [s])`` for closed ``t : A -o B`` and ``s : A``."""
    import terms
    from cowordisms import acg

    interp = terms.interpretation(rng)
    fun_ty = rng.choice([ty for ty in pools if isinstance(ty, acg.Arrow) and pools.get(ty.arg)])
    t = rng.choice(pools[fun_ty])
    args = [s for s in pools[fun_ty.arg] if acg.size(t) + acg.size(s) + 1 <= 12]
    if not args:
        t = min(pools[fun_ty], key=acg.size)
        args = [s for s in pools[fun_ty.arg] if acg.size(t) + acg.size(s) + 1 <= 12]
    s = rng.choice(args)
    lhs = acg.interpret_term(terms.SIG, interp, acg.App(t, s), expected=fun_ty.res)
    tv = acg.interpret_term(terms.SIG, interp, t, expected=fun_ty)
    sv = acg.interpret_term(terms.SIG, interp, s, expected=fun_ty.arg)
    assert lhs == cw.apply(tv, sv)


def beta_eta_law(rng: random.Random, pools: dict):
    """Beta and eta expansions do not change the value; normalizing undoes beta."""
    import terms
    from cowordisms import acg

    interp = terms.interpretation(rng)
    ty = rng.choice([ty for ty in pools if pools[ty]])
    t = rng.choice([t for t in pools[ty] if acg.size(t) <= 9])
    u = terms.expand(rng, t, rng.randint(1, 3))
    assert acg.size(u) <= 12 and u != t
    assert acg.interpret_term(terms.SIG, interp, u, expected=ty) == acg.interpret_term(
        terms.SIG, interp, t, expected=ty
    )
    n = acg.beta_normalize(u)
    assert acg.interpret_term(terms.SIG, interp, n, expected=ty) == acg.interpret_term(
        terms.SIG, interp, t, expected=ty
    )


def term_pools() -> dict:
    import terms

    return {ty: terms.pool(ty) for ty in terms.TYPES + [terms.O]}
