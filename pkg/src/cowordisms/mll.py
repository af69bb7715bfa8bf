"""Multiplicative linear logic: formulas, sequent proofs and their cowordism semantics.

Sequents are one-sided.  Every formula in a sequent sits at an *occurrence*,
a tuple of ints; sequents are read in occurrence order, so Exchange is
implicit and only appears as an explicit renaming node.  Subformula
occurrences extend their parent's tuple (``o + (0,)``, ``o + (1,)``), which
keeps the flattened port layout stable when a ``@`` rule is applied.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping

from . import cowordism as cw
from .cowordism import Boundary, Cowordism


# -- formulas ---------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Pos:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Neg:
    name: str

    def __str__(self):
        return self.name + "^"


@dataclass(frozen=True, order=True)
class Tensor:
    left: object
    right: object

    def __str__(self):
        return _show(self, "*")


@dataclass(frozen=True, order=True)
class Par:
    left: object
    right: object

    def __str__(self):
        return _show(self, "@")


Formula = Pos | Neg | Tensor | Par
Literal = (Pos, Neg)
Binary = (Tensor, Par)


def _show(f, op: str) -> str:
    left = str(f.left)
    right = str(f.right)
    if isinstance(f.right, Binary):
        right = f"({right})"
    if isinstance(f.left, Binary) and type(f.left) is not type(f):
        left = f"({left})"
    return f"{left} {op} {right}"


def neg(f: Formula) -> Formula:
    if isinstance(f, Pos):
        return Neg(f.name)
    if isinstance(f, Neg):
        return Pos(f.name)
    if isinstance(f, Tensor):
        return Par(neg(f.left), neg(f.right))
    return Tensor(neg(f.left), neg(f.right))


def implies(a: Formula, b: Formula) -> Formula:
    return Par(neg(a), b)


def connectives(f: Formula) -> int:
    if isinstance(f, Literal):
        return 0
    return 1 + connectives(f.left) + connectives(f.right)


def depth(f: Formula) -> int:
    if isinstance(f, Literal):
        return 0
    return 1 + max(depth(f.left), depth(f.right))


def has_tensor(f: Formula) -> bool:
    if isinstance(f, Literal):
        return False
    return isinstance(f, Tensor) or has_tensor(f.left) or has_tensor(f.right)


def subformulas(f: Formula) -> set:
    out = {f}
    if isinstance(f, Binary):
        out |= subformulas(f.left) | subformulas(f.right)
    return out


def literals(f: Formula, path: tuple = ()) -> list:
    """Literals left to right as ``(path, literal)``."""
    if isinstance(f, Literal):
        return [(path, f)]
    return literals(f.left, path + (0,)) + literals(f.right, path + (1,))


def atoms(f: Formula) -> set:
    return {lit.name for _, lit in literals(f)}


def polarity_balance(formulas: Iterable[Formula]) -> Counter:
    """Positive minus negative occurrences per atom."""
    bal: Counter = Counter()
    for f in formulas:
        for _, lit in literals(f):
            bal[lit.name] += 1 if isinstance(lit, Pos) else -1
    return bal


def interpret_formula(f: Formula, env: Mapping[str, Boundary]) -> Boundary:
    """Tensor and par both become concatenation; negation flips tags."""
    if isinstance(f, (Pos, Neg)):
        if f.name not in env:
            raise KeyError(f"unbound literal {f.name!r}")
        b = env[f.name]
        return b if isinstance(f, Pos) else b.dual()
    return interpret_formula(f.left, env) + interpret_formula(f.right, env)


# -- concrete syntax ----------------------------------------------------------


class FormulaSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(-o|⊸|[A-Za-z_][A-Za-z0-9_']*|\^|⊥|\*|⊗|@|℘|\(|\))")
_ALIAS = {"⊸": "-o", "⊥": "^", "⊗": "*", "℘": "@"}


def _tokenize(text: str) -> list:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected {text[pos:].strip()[:10]!r} in formula {text!r}")
        tok = m.group(1)
        out.append(_ALIAS.get(tok, tok))
        pos = m.end()
    return out


def parse_formula(text: str) -> Formula:
    """Parse ``A -o B``, ``A * B``, ``A @ B``, ``A^`` and parentheses."""
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok is None or (expected and tok != expected):
            raise FormulaSyntaxError(f"expected {expected or 'a formula'} in {text!r}")
        pos += 1
        return tok

    def impl():
        left = binary()
        if peek() == "-o":
            take()
            return implies(left, impl())
        return left

    def binary():
        f = postfix()
        while peek() in ("*", "@"):
            op = take()
            g = postfix()
            f = Tensor(f, g) if op == "*" else Par(f, g)
        return f

    def postfix():
        f = primary()
        while peek() == "^":
            take()
            f = neg(f)
        return f

    def primary():
        tok = take()
        if tok == "(":
            f = impl()
            take(")")
            return f
        if tok in ("-o", "^", "*", "@", ")"):
            raise FormulaSyntaxError(f"unexpected {tok!r} in {text!r}")
        return Pos(tok)

    f = impl()
    if pos != len(toks):
        raise FormulaSyntaxError(f"trailing input {' '.join(toks[pos:])!r} in {text!r}")
    return f


# -- proofs -------------------------------------------------------------------


@dataclass(frozen=True)
class Axiom:
    """``|- F^, F`` with ``F^`` at ``neg_occ`` and ``F`` at ``pos_occ``."""

    formula: object
    neg_occ: tuple
    pos_occ: tuple


@dataclass(frozen=True)
class Cut:
    left: object
    right: object
    occ: tuple  # X in the left premise
    dual_occ: tuple  # X^ in the right premise


@dataclass(frozen=True)
class Exchange:
    sub: object
    renaming: tuple  # (old_occ, new_occ) pairs


@dataclass(frozen=True)
class ParRule:
    sub: object
    left_occ: tuple
    right_occ: tuple
    occ: tuple


@dataclass(frozen=True)
class TensorRule:
    left: object
    right: object
    left_occ: tuple
    right_occ: tuple
    occ: tuple


Proof = Axiom | Cut | Exchange | ParRule | TensorRule


class ProofError(ValueError):
    def __init__(self, msg: str, node=None):
        super().__init__(msg)
        self.node = node


def _conclusion(p) -> dict:
    if isinstance(p, Axiom):
        if p.neg_occ == p.pos_occ:
            raise ProofError("axiom occurrences coincide", p)
        return {p.neg_occ: neg(p.formula), p.pos_occ: p.formula}
    if isinstance(p, Cut):
        left, right = _conclusion(p.left), _conclusion(p.right)
        if set(left) & set(right):
            raise ProofError("cut premises share occurrences", p)
        if p.occ not in left or p.dual_occ not in right:
            raise ProofError("cut occurrence missing from a premise", p)
        if right[p.dual_occ] != neg(left[p.occ]):
            raise ProofError(f"cut formulas {left[p.occ]} and {right[p.dual_occ]} are not dual", p)
        del left[p.occ], right[p.dual_occ]
        left.update(right)
        return left
    if isinstance(p, Exchange):
        sub = _conclusion(p.sub)
        ren = dict(p.renaming)
        if len(ren) != len(p.renaming) or set(ren) != set(sub):
            raise ProofError("exchange renaming does not cover the premise", p)
        if len(set(ren.values())) != len(ren):
            raise ProofError("exchange renaming is not injective", p)
        return {ren[o]: f for o, f in sub.items()}
    if isinstance(p, ParRule):
        sub = _conclusion(p.sub)
        if p.left_occ == p.right_occ or p.left_occ not in sub or p.right_occ not in sub:
            raise ProofError("par occurrences missing from the premise", p)
        a, b = sub.pop(p.left_occ), sub.pop(p.right_occ)
        if p.occ in sub:
            raise ProofError("par result occurrence already used", p)
        sub[p.occ] = Par(a, b)
        return sub
    if isinstance(p, TensorRule):
        left, right = _conclusion(p.left), _conclusion(p.right)
        if set(left) & set(right):
            raise ProofError("tensor premises share occurrences", p)
        if p.left_occ not in left or p.right_occ not in right:
            raise ProofError("tensor occurrence missing from a premise", p)
        a, b = left.pop(p.left_occ), right.pop(p.right_occ)
        left.update(right)
        if p.occ in left:
            raise ProofError("tensor result occurrence already used", p)
        left[p.occ] = Tensor(a, b)
        return left
    raise ProofError(f"not a proof node: {p!r}", p)


def check_proof(p) -> tuple:
    """Return the conclusion as ``((occ, formula), ...)`` in occurrence order."""
    return tuple(sorted(_conclusion(p).items()))


def sequent_str(seq: Iterable) -> str:
    return "|- " + ", ".join(str(f) for _, f in seq)


def is_cut_free(p) -> bool:
    if isinstance(p, Cut):
        return False
    if isinstance(p, Axiom):
        return True
    subs = [p.sub] if isinstance(p, (ParRule, Exchange)) else [p.left, p.right]
    return all(is_cut_free(s) for s in subs)


# -- semantics ------------------------------------------------------------------


def _arrange(value: Cowordism, keys: list, bounds: dict, groups: list) -> Cowordism:
    """Reorder blocks ``keys`` of a point so the blocks read ``flatten(groups)``."""
    flat = [k for g in groups for k in g]
    perm = [keys.index(k) for k in flat]
    if perm == list(range(len(keys))):
        return value
    return cw.compose(value, cw.permute([bounds[k] for k in keys], perm))


def interpret_proof(p, env: Mapping[str, Boundary]) -> Cowordism:
    """The point ``1 -> (x) of the conclusion's boundaries`` denoted by ``p``."""
    check_proof(p)
    return _interpret(p, env)[0]


def _interpret(p, env) -> tuple:
    """Returns ``(value, conclusion dict)``."""
    concl = _conclusion(p)
    bounds = {o: interpret_formula(f, env) for o, f in concl.items()}
    order = sorted(concl)
    if isinstance(p, Axiom):
        b = interpret_formula(p.formula, env)
        value = cw.name(cw.identity(b))
        keys = [p.neg_occ, p.pos_occ]
        value = _arrange(value, keys, bounds, [[o] for o in order])
        return value, concl
    if isinstance(p, ParRule):
        sub, sub_concl = _interpret(p.sub, env)
        sub_bounds = {o: interpret_formula(f, env) for o, f in sub_concl.items()}
        groups = [[p.left_occ, p.right_occ] if o == p.occ else [o] for o in order]
        return _arrange(sub, sorted(sub_concl), sub_bounds, groups), concl
    if isinstance(p, TensorRule):
        lv, lc = _interpret(p.left, env)
        rv, rc = _interpret(p.right, env)
        sub_bounds = {o: interpret_formula(f, env) for o, f in {**lc, **rc}.items()}
        keys = sorted(lc) + sorted(rc)
        groups = [[p.left_occ, p.right_occ] if o == p.occ else [o] for o in order]
        return _arrange(cw.tensor(lv, rv), keys, sub_bounds, groups), concl
    if isinstance(p, Exchange):
        sv, sc = _interpret(p.sub, env)
        ren = dict(p.renaming)
        back = {v: k for k, v in ren.items()}
        sub_bounds = {o: interpret_formula(f, env) for o, f in sc.items()}
        return _arrange(sv, sorted(sc), sub_bounds, [[back[o]] for o in order]), concl
    if isinstance(p, Cut):
        lv, lc = _interpret(p.left, env)
        rv, rc = _interpret(p.right, env)
        lb = {o: interpret_formula(f, env) for o, f in lc.items()}
        rb = {o: interpret_formula(f, env) for o, f in rc.items()}
        lkeys, rkeys = sorted(lc), sorted(rc)
        gamma = [o for o in lkeys if o != p.occ]
        delta = [o for o in rkeys if o != p.dual_occ]
        lv = _arrange(lv, lkeys, lb, [[o] for o in gamma] + [[p.occ]])
        rv = _arrange(rv, rkeys, rb, [[p.dual_occ]] + [[o] for o in delta])
        value = cw.partial_pair(lv, rv, lb[p.occ])
        all_b = {**{o: lb[o] for o in gamma}, **{o: rb[o] for o in delta}}
        return _arrange(value, gamma + delta, all_b, [[o] for o in order]), concl
    raise ProofError(f"not a proof node: {p!r}", p)


# -- proof construction -------------------------------------------------------


def eta_expand(f: Formula, neg_occ: tuple = (0,), pos_occ: tuple = (1,)):
    """Cut-free proof of ``|- F^, F`` using axioms on literals only."""
    if isinstance(f, Pos):
        return Axiom(f, neg_occ, pos_occ)
    if isinstance(f, Neg):
        return Axiom(Pos(f.name), pos_occ, neg_occ)
    n0, n1 = neg_occ + (0,), neg_occ + (1,)
    p0, p1 = pos_occ + (0,), pos_occ + (1,)
    left = eta_expand(f.left, n0, p0)
    right = eta_expand(f.right, n1, p1)
    if isinstance(f, Tensor):
        t = TensorRule(left, right, p0, p1, pos_occ)
        return ParRule(t, n0, n1, neg_occ)
    t = TensorRule(left, right, n0, n1, neg_occ)
    return ParRule(t, p0, p1, pos_occ)


def standard_proof(a: Formula, b: Formula):
    """The proof of ``|- A, A^ * B^, B`` by one tensor over two axioms."""
    left = Axiom(neg(a), (0,), (1, 0))  # |- A, A^
    right = Axiom(b, (1, 1), (2,))  # |- B^, B
    return TensorRule(left, right, (1, 0), (1, 1), (1,))


def _as_items(sequent) -> tuple:
    items = []
    for i, x in enumerate(sequent):
        if isinstance(x, tuple) and len(x) == 2 and isinstance(x[0], tuple):
            items.append(x)
        else:
            items.append(((i,), x))
    return tuple(items)


def enumerate_cut_free_proofs(sequent) -> Iterator:
    """Every cut-free proof of ``sequent`` with literal axioms.

    ``sequent`` is a list of formulas (occurrences ``(0,), (1,), ...``) or of
    ``(occ, formula)`` pairs.  Par rules are applied eagerly, lowest
    occurrence first; then each tensor and each context split is tried.
    """
    memo: dict = {}
    yield from _search(frozenset(_as_items(sequent)), memo)


def _balanced(items) -> bool:
    return not any(polarity_balance(f for _, f in items).values())


def _search(items: frozenset, memo: dict) -> list:
    if items in memo:
        return memo[items]
    memo[items] = out = []
    if not _balanced(items):
        return out
    pars = sorted((o, f) for o, f in items if isinstance(f, Par))
    if pars:
        o, f = pars[0]
        sub = (items - {(o, f)}) | {(o + (0,), f.left), (o + (1,), f.right)}
        out.extend(ParRule(p, o + (0,), o + (1,), o) for p in _search(frozenset(sub), memo))
        return out
    lits = [(o, f) for o, f in items if isinstance(f, Literal)]
    if len(lits) == len(items):
        if len(items) == 2:
            (o1, f1), (o2, f2) = sorted(items)
            if f2 == neg(f1):
                if isinstance(f1, Pos):
                    out.append(Axiom(f1, o2, o1))
                else:
                    out.append(Axiom(f2, o1, o2))
        return out
    for o, f in sorted((o, f) for o, f in items if isinstance(f, Tensor)):
        rest = sorted(items - {(o, f)})
        lo, ro = o + (0,), o + (1,)
        for k in range(len(rest) + 1):
            for chosen in combinations(range(len(rest)), k):
                gamma = frozenset(rest[i] for i in chosen) | {(lo, f.left)}
                delta = frozenset(rest[i] for i in range(len(rest)) if i not in chosen) | {
                    (ro, f.right)
                }
                if not (_balanced(gamma) and _balanced(delta)):
                    continue
                lefts = _search(gamma, memo)
                if not lefts:
                    continue
                rights = _search(delta, memo)
                out.extend(TensorRule(l, r, lo, ro, o) for l, r in product(lefts, rights))
    return out


def provable(sequent: Iterable[Formula]) -> bool:
    """Naive provability: any rule on any formula, in any order.

    Kept deliberately independent of :func:`enumerate_cut_free_proofs`.
    """
    return _provable(tuple(sorted(sequent, key=repr)))


@lru_cache(maxsize=None)
def _provable(seq: tuple) -> bool:
    if len(seq) == 2 and isinstance(seq[0], Literal) and seq[1] == neg(seq[0]):
        return True
    for i, f in enumerate(seq):
        rest = seq[:i] + seq[i + 1:]
        if isinstance(f, Par):
            if _provable(tuple(sorted(rest + (f.left, f.right), key=repr))):
                return True
        elif isinstance(f, Tensor):
            for k in range(len(rest) + 1):
                for chosen in combinations(range(len(rest)), k):
                    g = tuple(rest[j] for j in chosen)
                    d = tuple(rest[j] for j in range(len(rest)) if j not in chosen)
                    if _provable(tuple(sorted(g + (f.left,), key=repr))) and _provable(
                        tuple(sorted(d + (f.right,), key=repr))
                    ):
                        return True
    return False


# -- sequentialization ----------------------------------------------------------


def _nodes(items) -> dict:
    """Subformula occurrences under the given conclusions, ``occ -> formula``."""
    out = {}
    stack = list(items)
    while stack:
        o, f = stack.pop()
        out[o] = f
        if isinstance(f, Binary):
            stack.append((o + (0,), f.left))
            stack.append((o + (1,), f.right))
    return out


def sequentialize(items, links: Mapping) -> object | None:
    """Turn a linking into a cut-free proof, or return None if it is not a proof net.

    ``items`` are ``(occ, formula)`` conclusions; ``links`` maps each literal
    occurrence ``occ + path`` to its partner (both directions).  Success is
    exact: a returned proof has exactly this linking, and every correct net
    has a splitting tensor once terminal pars are gone.
    """
    return _seq(frozenset(_as_items(items)), links)


def _seq(items: frozenset, links) -> object | None:
    pars = sorted((o, f) for o, f in items if isinstance(f, Par))
    if pars:
        o, f = pars[0]
        sub = _seq((items - {(o, f)}) | {(o + (0,), f.left), (o + (1,), f.right)}, links)
        return None if sub is None else ParRule(sub, o + (0,), o + (1,), o)
    if all(isinstance(f, Literal) for _, f in items):
        if len(items) != 2:
            return None
        (o1, f1), (o2, f2) = sorted(items)
        if links.get(o1) != o2 or f2 != neg(f1):
            return None
        return Axiom(f1, o2, o1) if isinstance(f1, Pos) else Axiom(f2, o1, o2)
    nodes = _nodes(items)
    tops = {o for o, _ in items}
    for o, f in sorted((o, f) for o, f in items if isinstance(f, Tensor)):
        seen = {o, o + (0,)}
        stack = [o + (0,)]
        while stack:
            n = stack.pop()
            g = nodes[n]
            nbrs = []
            if n not in tops:
                nbrs.append(n[:-1])
            if isinstance(g, Binary):
                nbrs += [n + (0,), n + (1,)]
            elif n in links:
                nbrs.append(links[n])
            for m in nbrs:
                if m in nodes and m not in seen:
                    seen.add(m)
                    stack.append(m)
        if o + (1,) in seen:
            continue
        rest = items - {(o, f)}
        gamma = frozenset(x for x in rest if x[0] in seen) | {(o + (0,), f.left)}
        delta = frozenset(x for x in rest if x[0] not in seen) | {(o + (1,), f.right)}
        left = _seq(gamma, links)
        right = _seq(delta, links) if left is not None else None
        if left is None or right is None:
            return None
        return TensorRule(left, right, o + (0,), o + (1,), o)
    return None


def linking_of(p) -> dict:
    """Axiom links of a cut-free proof whose axioms are literals."""
    out: dict = {}
    stack = [p]
    while stack:
        q = stack.pop()
        if isinstance(q, Axiom):
            out[q.neg_occ] = q.pos_occ
            out[q.pos_occ] = q.neg_occ
        elif isinstance(q, (ParRule, Exchange)):
            if isinstance(q, Exchange):
                raise ProofError("linking_of expects a proof without exchange nodes", q)
            stack.append(q.sub)
        elif isinstance(q, TensorRule):
            stack += [q.left, q.right]
        else:
            raise ProofError("linking_of expects a cut-free proof", q)
    return out
