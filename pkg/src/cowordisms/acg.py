"""Linear lambda terms, string ACGs and their encoding as LLGs.

Types are built from atoms with ``-o``.  Terms are Curry-style: a lambda
carries no annotation and types are found by unification.  A closed term of
type ``A`` denotes a point ``1 -> dA``; an open term with context
``x1:A1 ... xn:An`` denotes a point ``1 -> dA1^ (x) ... (x) dAn^ (x) dA``,
which is the name of the morphism ``dA1 (x) ... (x) dAn -> dA``.

In the string signature the atom ``O`` is one ``L`` port, so ``str = O -o O``
is ``R L`` and a word is a single edge from its second port to its first.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from . import cowordism as cw
from . import mll
from .cowordism import Boundary, Cowordism
from .llg import LLG, GrammarSyntaxError, LexEntry, statements
from .multiword import Word

# -- types ------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Arrow:
    arg: object
    res: object

    def __str__(self):
        a = f"({self.arg})" if isinstance(self.arg, Arrow) else str(self.arg)
        return f"{a} -o {self.res}"


@dataclass(frozen=True, order=True)
class TVar:
    index: int

    def __str__(self):
        return f"?{self.index}"


O = Atom("O")
STR = Arrow(O, O)


def arrows(*types):
    """``arrows(A, B, C) = A -o (B -o C)``."""
    out = types[-1]
    for t in reversed(types[:-1]):
        out = Arrow(t, out)
    return out


def type_boundary(t, env: Mapping[str, Boundary]) -> Boundary:
    if isinstance(t, Atom):
        if t.name not in env:
            raise ACGError(f"no boundary for atom {t.name}")
        return env[t.name]
    if isinstance(t, Arrow):
        return type_boundary(t.arg, env).dual() + type_boundary(t.res, env)
    raise ACGError(f"type {t} is not fully determined")


def type_formula(t):
    """``A -o B`` as the formula ``A^ @ B``."""
    if isinstance(t, Atom):
        return mll.Pos(t.name)
    return mll.implies(type_formula(t.arg), type_formula(t.res))


def type_atoms(t) -> set:
    if isinstance(t, Atom):
        return {t.name}
    if isinstance(t, Arrow):
        return type_atoms(t.arg) | type_atoms(t.res)
    return set()


def substitute_type(t, mapping: Mapping[str, object]):
    if isinstance(t, Atom):
        return mapping[t.name]
    return Arrow(substitute_type(t.arg, mapping), substitute_type(t.res, mapping))


def order(t) -> int:
    if isinstance(t, Arrow):
        return max(order(t.arg) + 1, order(t.res))
    return 0


# -- terms ------------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    fun: object
    arg: object

    def __str__(self):
        f = f"({self.fun})" if isinstance(self.fun, Abs) else str(self.fun)
        a = f"({self.arg})" if isinstance(self.arg, (App, Abs)) else str(self.arg)
        return f"{f} {a}"


@dataclass(frozen=True)
class Abs:
    var: str
    body: object

    def __str__(self):
        return f"\\{self.var}. {self.body}"


def apps(head, *args):
    for a in args:
        head = App(head, a)
    return head


def free_vars(t) -> list:
    """Free variable occurrences, with repetition."""
    if isinstance(t, Var):
        return [t.name]
    if isinstance(t, Const):
        return []
    if isinstance(t, App):
        return free_vars(t.fun) + free_vars(t.arg)
    return [v for v in free_vars(t.body) if v != t.var]


def constants(t) -> list:
    if isinstance(t, Const):
        return [t.name]
    if isinstance(t, Var):
        return []
    if isinstance(t, App):
        return constants(t.fun) + constants(t.arg)
    return constants(t.body)


def size(t) -> int:
    if isinstance(t, (Var, Const)):
        return 1
    if isinstance(t, App):
        return 1 + size(t.fun) + size(t.arg)
    return 1 + size(t.body)


class ACGError(ValueError):
    pass


def check_linear(t, free: Iterable[str] = ()) -> None:
    """Every lambda binds exactly one occurrence; every free variable occurs once."""
    occ = free_vars(t)
    for v in set(occ):
        if occ.count(v) > 1:
            raise ACGError(f"variable {v} occurs {occ.count(v)} times")
    missing = set(free) - set(occ)
    if missing:
        raise ACGError(f"context variables unused: {', '.join(sorted(missing))}")
    _check_binders(t)


def _check_binders(t):
    if isinstance(t, App):
        _check_binders(t.fun)
        _check_binders(t.arg)
    elif isinstance(t, Abs):
        n = free_vars(t.body).count(t.var)
        if n != 1:
            raise ACGError(f"\\{t.var} binds {n} occurrences, expected exactly one")
        _check_binders(t.body)


# -- type inference -------------------------------------------------------------


@dataclass
class Signature:
    atoms: set
    constants: dict  # name -> type

    def type_of(self, c: str):
        if c not in self.constants:
            raise ACGError(f"unknown constant {c}")
        return self.constants[c]


def string_signature(alphabet: Iterable[str]) -> Signature:
    return Signature({"O"}, {a: STR for a in alphabet})


class _Unifier:
    def __init__(self):
        self.sub: dict = {}
        self.count = 0

    def fresh(self) -> TVar:
        self.count += 1
        return TVar(self.count)

    def resolve(self, t):
        while isinstance(t, TVar) and t in self.sub:
            t = self.sub[t]
        if isinstance(t, Arrow):
            return Arrow(self.resolve(t.arg), self.resolve(t.res))
        return t

    def unify(self, a, b, where):
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, TVar):
            if _occurs(a, b):
                raise ACGError(f"type clash at {where}: {a} occurs in {b}")
            self.sub[a] = b
            return
        if isinstance(b, TVar):
            self.unify(b, a, where)
            return
        if isinstance(a, Arrow) and isinstance(b, Arrow):
            self.unify(a.arg, b.arg, where)
            self.unify(a.res, b.res, where)
            return
        raise ACGError(f"type clash at {where}: {a} against {b}")


def _occurs(v, t) -> bool:
    if t == v:
        return True
    return isinstance(t, Arrow) and (_occurs(v, t.arg) or _occurs(v, t.res))


@dataclass
class _Typed:
    term: object
    type: object
    kids: list = field(default_factory=list)


def _annotate(sig: Signature, t, ctx: dict, u: _Unifier) -> _Typed:
    if isinstance(t, Var):
        if t.name not in ctx:
            raise ACGError(f"unbound variable {t.name}")
        return _Typed(t, ctx[t.name])
    if isinstance(t, Const):
        return _Typed(t, sig.type_of(t.name))
    if isinstance(t, App):
        f = _annotate(sig, t.fun, ctx, u)
        a = _annotate(sig, t.arg, ctx, u)
        res = u.fresh()
        u.unify(f.type, Arrow(a.type, res), str(t))
        return _Typed(t, res, [f, a])
    x = u.fresh()
    body = _annotate(sig, t.body, {**ctx, t.var: x}, u)
    return _Typed(t, Arrow(x, body.type), [body])


def _resolve_all(node: _Typed, u: _Unifier) -> _Typed:
    return _Typed(node.term, u.resolve(node.type), [_resolve_all(k, u) for k in node.kids])


def infer_type(sig: Signature, t, ctx: Mapping[str, object] | None = None):
    """The principal type of a linear term; leftover unknowns show as ``?n``."""
    ctx = dict(ctx or {})
    check_linear(t, ctx)
    u = _Unifier()
    return _resolve_all(_annotate(sig, t, ctx, u), u).type


def check_type(sig: Signature, t, expected, ctx: Mapping[str, object] | None = None) -> None:
    ctx = dict(ctx or {})
    check_linear(t, ctx)
    u = _Unifier()
    node = _annotate(sig, t, ctx, u)
    u.unify(node.type, expected, f"{t} : {expected}")


# -- reduction --------------------------------------------------------------------


class _Fresh:
    def __init__(self):
        self.n = 0

    def __call__(self, base: str) -> str:
        self.n += 1
        return f"{base.rstrip('0123456789_')}_{self.n}"


def _subst(t, x: str, s, fresh: _Fresh):
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        return App(_subst(t.fun, x, s, fresh), _subst(t.arg, x, s, fresh))
    if t.var == x:
        return t
    if t.var in free_vars(s):
        y = fresh(t.var)
        body = _subst(t.body, t.var, Var(y), fresh)
        assert y not in free_vars(s)
        return Abs(y, _subst(body, x, s, fresh))
    return Abs(t.var, _subst(t.body, x, s, fresh))


def substitute(t, x: str, s):
    return _subst(t, x, s, _Fresh())


def beta_normalize(t):
    """Normal form; linear terms shrink at every step, so this terminates."""
    fresh = _Fresh()
    return _normalize(t, fresh)


def _normalize(t, fresh):
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, Abs):
        return Abs(t.var, _normalize(t.body, fresh))
    f = _normalize(t.fun, fresh)
    if isinstance(f, Abs):
        return _normalize(_subst(f.body, f.var, t.arg, fresh), fresh)
    return App(f, _normalize(t.arg, fresh))


def replace_constants(t, mapping: Mapping[str, object]):
    """Substitute closed terms for constants."""
    if isinstance(t, Const):
        return mapping.get(t.name, t)
    if isinstance(t, Var):
        return t
    if isinstance(t, App):
        return App(replace_constants(t.fun, mapping), replace_constants(t.arg, mapping))
    return Abs(t.var, replace_constants(t.body, mapping))


# -- interpretation -----------------------------------------------------------------


@dataclass
class Interpretation:
    """Boundaries for atoms and points for constants."""

    atoms: dict  # atom -> Boundary
    constants: dict  # constant -> Cowordism 1 -> d(type)


def string_interpretation(alphabet: Iterable[str]) -> Interpretation:
    return Interpretation({"O": Boundary.of("L")}, {a: graph_word((a,)) for a in alphabet})


def graph_word(w: Iterable[str]) -> Cowordism:
    """The point ``1 -> d str`` of a word."""
    return cw.point(Boundary.of("RL"), [(1, 0, tuple(w))])


def interpret_term(
    sig: Signature, interp: Interpretation, t, ctx: Iterable[tuple] = (), expected=None
) -> Cowordism:
    """Point ``1 -> dA1^ (x) ... (x) dAn^ (x) dA`` for ``x1:A1, ..., xn:An |- t : A``.

    Context order follows ``ctx``; with no context this is ``1 -> dA``.
    ``expected`` pins down ``A`` when the principal type is polymorphic.
    """
    ctx = list(ctx)
    check_linear(t, [x for x, _ in ctx])
    u = _Unifier()
    node = _annotate(sig, t, dict(ctx), u)
    if expected is not None:
        u.unify(node.type, expected, f"{t} : {expected}")
    node = _resolve_all(node, u)
    value, order = _interp(node, interp)
    bounds = {x: type_boundary(a, interp.atoms).dual() for x, a in ctx}
    keys = order + ["_"]
    bounds["_"] = type_boundary(node.type, interp.atoms)
    want = [x for x, _ in ctx] + ["_"]
    return _reorder(value, keys, bounds, want)


def _reorder(value, keys, bounds, want):
    perm = [keys.index(k) for k in want]
    if perm == list(range(len(keys))):
        return value
    return cw.compose(value, cw.permute([bounds[k] for k in keys], perm))


def _interp(node: _Typed, interp: Interpretation) -> tuple:
    """``(point, context order)``; the point ends with the term's own type."""
    t = node.term
    env = interp.atoms
    if isinstance(t, Var):
        return cw.name(cw.identity(type_boundary(node.type, env))), [t.name]
    if isinstance(t, Const):
        v = interp.constants[t.name]
        if v.target != type_boundary(node.type, env):
            raise ACGError(f"constant {t.name} has boundary {v.target}")
        return v, []
    if isinstance(t, App):
        fv, fo = _interp(node.kids[0], interp)
        av, ao = _interp(node.kids[1], interp)
        a = type_boundary(node.kids[1].type, env)
        b = type_boundary(node.type, env)
        fb = {x: _ctx_boundary(node.kids[0], x, env) for x in fo}
        fb.update({"_a": a.dual(), "_b": b})
        # function point: Gf^ (x) A^ (x) B  ->  A^ (x) Gf^ (x) B
        fv = _reorder(fv, fo + ["_a", "_b"], fb, ["_a"] + fo + ["_b"])
        # the argument point already reads Ga^ (x) A; pair along A
        return cw.partial_pair(av, fv, a), ao + fo
    # abstraction: move the bound variable's block to just before the body type
    bv, bo = _interp(node.kids[0], interp)
    x = t.var
    bounds = {y: _ctx_boundary(node.kids[0], y, env) for y in bo}
    bounds["_"] = type_boundary(node.kids[0].type, env)
    rest = [y for y in bo if y != x]
    return _reorder(bv, bo + ["_"], bounds, rest + [x, "_"]), rest


def _ctx_boundary(node: _Typed, x: str, env) -> Boundary:
    """Dual boundary of the type at which ``x`` occurs free in ``node``."""
    ty = _var_type(node, x)
    return type_boundary(ty, env).dual()


def _var_type(node: _Typed, x: str):
    t = node.term
    if isinstance(t, Var):
        return node.type if t.name == x else None
    if isinstance(t, Abs) and t.var == x:
        return None
    for k in node.kids:
        ty = _var_type(k, x)
        if ty is not None:
            return ty
    return None


def string_readback(c: Cowordism) -> Word:
    """The word of a regular point ``1 -> d str``."""
    if c.source != cw.UNIT or c.target != Boundary.of("RL"):
        raise ACGError(f"not a string value: {c}")
    if not c.is_regular:
        raise ACGError(f"string value has loops: {c}")
    (t, h, w), = c.edges
    return w


def encode_word(w: Iterable[str], var: str = "x"):
    """``/a1 ... an/ = \\x. a1 (... (an x))``."""
    body = Var(var)
    for a in reversed(tuple(w)):
        body = App(Const(a), body)
    return Abs(var, body)


def decode_string_term(t) -> Word:
    """Read a word off a beta-normal string term syntactically."""
    if isinstance(t, Const):
        return (t.name,)
    if not isinstance(t, Abs):
        raise ACGError(f"not a normal string term: {t}")
    out = []
    body = t.body
    while isinstance(body, App):
        if not isinstance(body.fun, Const):
            raise ACGError(f"not a normal string term: {t}")
        out.append(body.fun.name)
        body = body.arg
    if body != Var(t.var):
        raise ACGError(f"not a normal string term: {t}")
    return tuple(out)


# -- ACGs -----------------------------------------------------------------------------


@dataclass
class ACG:
    abstract: Signature
    alphabet: tuple
    typemap: dict  # abstract atom -> object type over O
    lexicon: dict  # abstract constant -> object term
    start: str = "S"

    def object_signature(self) -> Signature:
        return string_signature(self.alphabet)

    def object_type(self, t):
        return substitute_type(t, self.typemap)


def validate_acg(g: ACG) -> list:
    diags = []
    if g.start not in g.abstract.atoms:
        diags.append(f"start {g.start} is not an abstract atom")
    elif g.typemap.get(g.start) != STR:
        diags.append(f"start {g.start} must map to str")
    for a in sorted(g.abstract.atoms):
        if a not in g.typemap:
            diags.append(f"atom {a} has no typemap entry")
        elif type_atoms(g.typemap[a]) - {"O"}:
            diags.append(f"typemap {a} uses atoms other than O")
    if diags:
        return diags
    osig = g.object_signature()
    for c in sorted(g.abstract.constants):
        if c not in g.lexicon:
            diags.append(f"constant {c} has no lexicon entry")
            continue
        try:
            check_type(osig, g.lexicon[c], g.object_type(g.abstract.constants[c]))
        except ACGError as err:
            diags.append(f"lexicon {c}: {err}")
    return diags


def acg_to_llg(g: ACG) -> LLG:
    """Each abstract constant ``c`` becomes the axiom ``[phi(c)] : tau(c)``."""
    diags = validate_acg(g)
    if diags:
        raise ACGError("; ".join(diags))
    osig = g.object_signature()
    interp = string_interpretation(g.alphabet)
    atoms = {a: type_boundary(g.typemap[a], interp.atoms) for a in sorted(g.abstract.atoms)}
    lexicon = []
    for c in sorted(g.abstract.constants):
        ty = g.object_type(g.abstract.constants[c])
        value = interpret_term(osig, interp, g.lexicon[c], expected=ty)
        lexicon.append(LexEntry(c, type_formula(g.abstract.constants[c]), value))
    return LLG(atoms, tuple(g.alphabet), lexicon, g.start)


def normal_terms(sig: Signature, ty, max_constants: int, ctx: tuple = ()) -> Iterator[tuple]:
    """Beta-normal eta-long linear terms of type ``ty`` using every context variable once.

    Yields ``(term, constants used)``.  ``ctx`` is a tuple of ``(var, type)``.
    """
    counter = itertools.count()
    yield from _long(sig, ty, ctx, max_constants, counter)


def _long(sig, ty, ctx, budget, counter):
    if isinstance(ty, Arrow):
        x = f"v{next(counter)}"
        for body, used in _long(sig, ty.res, ctx + ((x, ty.arg),), budget, counter):
            yield Abs(x, body), used
        return
    heads = [(Var(x), a, tuple(c for c in ctx if c[0] != x), 0) for x, a in ctx]
    if budget > 0:
        heads += [(Const(c), a, ctx, 1) for c, a in sorted(sig.constants.items())]
    for head, hty, rest, cost in heads:
        args = []
        t = hty
        while isinstance(t, Arrow):
            args.append(t.arg)
            t = t.res
        if t != ty:
            continue
        if not args and rest:
            continue
        yield from _spine(sig, head, args, rest, budget - cost, cost, counter)


def _spine(sig, head, args, ctx, budget, used, counter):
    if not args:
        if not ctx:
            yield head, used
        return
    # the first argument takes some subset of the context
    n = len(ctx)
    for mask in range(1 << n):
        mine = tuple(ctx[i] for i in range(n) if mask >> i & 1)
        rest = tuple(ctx[i] for i in range(n) if not mask >> i & 1)
        if len(args) == 1 and rest:
            continue
        for a, k in _long(sig, args[0], mine, budget, counter):
            for full, total in _spine(sig, App(head, a), args[1:], rest, budget - k, used + k, counter):
                yield full, total


def acg_language(g: ACG, max_constants: int) -> set:
    """Words of closed abstract terms of the start type, read off syntactically."""
    out = set()
    for t, _ in normal_terms(g.abstract, Atom(g.start), max_constants):
        image = beta_normalize(replace_constants(t, g.lexicon))
        out.add(decode_string_term(image))
    return out


# -- file format ---------------------------------------------------------------------

_TYPE_TOKEN = re.compile(r"\s*(-o|⊸|\(|\)|[A-Za-z_][\w']*)")
_TERM_TOKEN = re.compile(r"\s*(\\|λ|\.|\(|\)|[^\s\\.()λ]+)")


def parse_type(text: str):
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TYPE_TOKEN.match(text, pos)
        if not m:
            raise ACGError(f"bad type {text!r}")
        toks.append("-o" if m.group(1) == "⊸" else m.group(1))
        pos = m.end()
    i = 0

    def arrow():
        nonlocal i
        left = atom()
        if i < len(toks) and toks[i] == "-o":
            i += 1
            return Arrow(left, arrow())
        return left

    def atom():
        nonlocal i
        if i >= len(toks):
            raise ACGError(f"unexpected end of type {text!r}")
        tok = toks[i]
        i += 1
        if tok == "(":
            t = arrow()
            if i >= len(toks) or toks[i] != ")":
                raise ACGError(f"missing ')' in {text!r}")
            i += 1
            return t
        if tok in (")", "-o"):
            raise ACGError(f"unexpected {tok!r} in {text!r}")
        return STR if tok == "str" else Atom(tok)

    t = arrow()
    if i != len(toks):
        raise ACGError(f"trailing input in type {text!r}")
    return t


def parse_term(text: str, bound: Iterable[str] = ()):
    """``\\x. t`` abstraction, juxtaposition application; unbound names are constants."""
    toks, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TERM_TOKEN.match(text, pos)
        if not m:
            raise ACGError(f"bad term {text!r}")
        toks.append(m.group(1))
        pos = m.end()
    i = 0

    def term(scope):
        nonlocal i
        if i < len(toks) and toks[i] in ("\\", "λ"):
            i += 1
            if i + 1 >= len(toks) or toks[i + 1] != ".":
                raise ACGError(f"expected '\\x.' in {text!r}")
            x = toks[i]
            i += 2
            return Abs(x, term(scope | {x}))
        head = simple(scope)
        while i < len(toks) and toks[i] != ")":
            if toks[i] in ("\\", "λ"):
                head = App(head, term(scope))
                break
            head = App(head, simple(scope))
        return head

    def simple(scope):
        nonlocal i
        if i >= len(toks):
            raise ACGError(f"unexpected end of term {text!r}")
        tok = toks[i]
        i += 1
        if tok == "(":
            t = term(scope)
            if i >= len(toks) or toks[i] != ")":
                raise ACGError(f"missing ')' in {text!r}")
            i += 1
            return t
        if tok in (")", "."):
            raise ACGError(f"unexpected {tok!r} in {text!r}")
        return Var(tok) if tok in scope else Const(tok)

    t = term(set(bound))
    if i != len(toks):
        raise ACGError(f"trailing input in term {text!r}")
    return t


def parse_acg(text: str, path: str = "<input>") -> ACG:
    atoms: set = set()
    consts: dict = {}
    typemap: dict = {}
    lexicon: dict = {}
    alphabet = None
    start = "S"
    lines: dict = {}  # constant -> line of its lexicon entry (or declaration)
    for line, st in statements(text):
        try:
            words = st.split()
            if st.startswith("abstract atom"):
                atoms.update(words[2:])
            elif words[0] == "const":
                name, _, ty = st[len("const"):].partition(":")
                consts[name.strip()] = parse_type(ty)
                lines.setdefault(name.strip(), line)
            elif words[0] == "typemap":
                name, _, ty = st[len("typemap"):].partition("=")
                typemap[name.strip()] = parse_type(ty)
            elif words[0] == "lexicon":
                name, _, tm = st[len("lexicon"):].partition("=")
                lexicon[name.strip()] = parse_term(tm)
                lines[name.strip()] = line
            elif words[0] == "alphabet":
                alphabet = tuple(words[1:])
            elif words[0] == "start" and len(words) == 2:
                start = words[1]
            else:
                raise ACGError(f"unknown statement {st!r}")
        except ACGError as err:
            raise GrammarSyntaxError(str(err), path, line) from None
    if alphabet is None:
        found = set()
        for t in lexicon.values():
            found.update(constants(t))
        alphabet = tuple(sorted(found))
    g = ACG(Signature(atoms, consts), alphabet, typemap, lexicon, start)
    diags = validate_acg(g)
    if diags:
        m = re.match(r"(?:lexicon|constant) (\S+?)[: ]", diags[0])
        raise GrammarSyntaxError(diags[0], path, lines.get(m.group(1), 1) if m else 1)
    return g
