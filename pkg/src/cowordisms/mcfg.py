"""Multiple context-free grammars and their translations to and from LLGs.

An arity-k nonterminal denotes k-tuples of words; its boundary has ports
``l1 r1 ... lk rk``.  A production becomes the cowordism that threads each
output coordinate through the variable ports of its body, and a grammar
becomes an LLG whose axioms are the names of those cowordisms.

Going back, a ⊗-free LLG is first turned into an *extended* MCFG (productions
are arbitrary cowordisms between type boundaries), made simple by tagging
types with their possible letter-free shapes, and then read back as an
ordinary MCFG by walking output chains.
"""

from __future__ import annotations

import re
import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from . import cowordism as cw
from . import mll
from .cowordism import Boundary, Cowordism
from .llg import LLG, GrammarSyntaxError, LexEntry, LLGError


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Production:
    head: str
    strings: tuple  # tuple of tuples of letters (str) and Variables
    body: tuple = ()  # tuple of (nonterminal, tuple of Variables)

    @property
    def variables(self) -> list:
        return [v for _, vs in self.body for v in vs]

    def __str__(self):
        def arg(s):
            return " ".join(str(x) for x in s) or "eps"

        head = f"{self.head}({', '.join(arg(s) for s in self.strings)})"
        if not self.body:
            return head + "."
        body = ", ".join(f"{b}({', '.join(str(v) for v in vs)})" for b, vs in self.body)
        return f"{head} :- {body}."


@dataclass
class MCFG:
    nonterminals: dict  # name -> arity
    terminals: tuple
    start: str
    productions: list = field(default_factory=list)


@dataclass(frozen=True, order=True)
class PredicateFormula:
    nonterminal: str
    words: tuple  # tuple of words


class MCFGError(ValueError):
    pass


class NotTensorFree(LLGError):
    def __init__(self, entry: str, formula):
        super().__init__(f"axiom {entry!r} has a tensor in its type {formula}")
        self.entry = entry


def validate_mcfg(g: MCFG) -> list:
    diags = []
    if g.nonterminals.get(g.start) != 1:
        diags.append(f"start {g.start!r} must be a unary nonterminal")
    terms = set(g.terminals)
    for i, p in enumerate(g.productions):
        where = f"production {i + 1} ({p})"
        if g.nonterminals.get(p.head) != len(p.strings):
            diags.append(f"{where}: {p.head} has arity {g.nonterminals.get(p.head)}")
        vs = p.variables
        if len(set(vs)) != len(vs):
            diags.append(f"{where}: repeated body variable")
        for b, bvs in p.body:
            if g.nonterminals.get(b) != len(bvs):
                diags.append(f"{where}: {b} has arity {g.nonterminals.get(b)}")
        used = [x for s in p.strings for x in s if isinstance(x, Variable)]
        if sorted(used) != sorted(vs):
            diags.append(f"{where}: every body variable must occur exactly once in the head")
        bad = {x for s in p.strings for x in s if not isinstance(x, Variable) and x not in terms}
        if bad:
            diags.append(f"{where}: unknown terminals {' '.join(sorted(bad))}")
    return diags


def _check(g: MCFG):
    diags = validate_mcfg(g)
    if diags:
        raise MCFGError("; ".join(diags))


# -- the derivation oracle --------------------------------------------------------


def _apply(p: Production, args: tuple) -> tuple:
    env = {}
    for (_, vs), words in zip(p.body, args):
        env.update(zip(vs, words))
    return tuple(
        tuple(a for x in s for a in (env[x] if isinstance(x, Variable) else (x,)))
        for s in p.strings
    )


def derive_sizes(
    g: MCFG,
    max_steps: int | None = None,
    *,
    max_len: int | None = None,
    max_size: int | None = None,
) -> dict:
    """Derivable formulas mapped to the fewest productions deriving them.

    ``max_steps`` bounds the number of rounds (derivation height), ``max_len``
    the total length of a formula's words, ``max_size`` the number of
    productions used.  Without any bound the grammar must have a finite
    language or this will not return.
    """
    sizes: dict = {}
    by_nt: dict = defaultdict(list)
    rounds = 0
    while max_steps is None or rounds < max_steps:
        rounds += 1
        updates = {}
        for p in g.productions:
            pools = [by_nt[b] for b, _ in p.body]
            for combo in product(*pools):
                size = 1 + sum(sizes[f] for f in combo)
                if max_size is not None and size > max_size:
                    continue
                words = _apply(p, tuple(f.words for f in combo))
                if max_len is not None and sum(map(len, words)) > max_len:
                    continue
                f = PredicateFormula(p.head, words)
                known = [s for s in (sizes.get(f), updates.get(f)) if s is not None]
                if not known or size < min(known):
                    updates[f] = size
        if not updates:
            break
        for f, s in updates.items():
            if f not in sizes:
                by_nt[f.nonterminal].append(f)
            sizes[f] = s
    return sizes


def derive(
    g: MCFG,
    max_steps: int | None = None,
    *,
    max_len: int | None = None,
    max_size: int | None = None,
) -> set:
    return set(derive_sizes(g, max_steps, max_len=max_len, max_size=max_size))


def mcfg_language(g: MCFG, *, max_len: int | None = None, max_size: int | None = None) -> set:
    facts = derive(g, max_len=max_len, max_size=max_size)
    return {f.words[0] for f in facts if f.nonterminal == g.start and len(f.words) == 1}


# -- cowordism semantics -----------------------------------------------------------


def boundary_of(arity: int) -> Boundary:
    return Boundary(("L", "R") * arity)


def _body_offsets(g: MCFG, p: Production) -> tuple:
    ports, acc = {}, 0
    for b, vs in p.body:
        for m, v in enumerate(vs):
            ports[v] = (acc + 2 * m, acc + 2 * m + 1)
        acc += 2 * g.nonterminals[b]
    return ports, acc


def graph_of(g: MCFG, p: Production) -> Cowordism:
    """``dB_1 (x) ... (x) dB_n -> dA``: each output coordinate threads its variables."""
    ports, n_src = _body_offsets(g, p)
    source = boundary_of(n_src // 2)
    target = boundary_of(len(p.strings))
    edges = []
    for m, s in enumerate(p.strings):
        tail, label = (cw.TGT, 2 * m), []
        for x in s:
            if isinstance(x, Variable):
                l, r = ports[x]
                edges.append((tail, (cw.SRC, l), tuple(label)))
                tail, label = (cw.SRC, r), []
            else:
                label.append(x)
        edges.append((tail, (cw.TGT, 2 * m + 1), tuple(label)))
    return Cowordism(source, target, tuple(edges))


def represent(f: PredicateFormula) -> Cowordism:
    return cw.point(boundary_of(len(f.words)), [(2 * m, 2 * m + 1, w) for m, w in enumerate(f.words)])


def read_tuple(v: Cowordism) -> tuple:
    """Inverse of :func:`represent` on its image."""
    k = len(v.target) // 2
    if v.source != cw.UNIT or v.target != boundary_of(k) or not v.is_regular:
        raise MCFGError(f"not a represented formula: {v}")
    out = []
    for m in range(k):
        h, w = v.edge_from((cw.TGT, 2 * m))
        if h != (cw.TGT, 2 * m + 1):
            raise MCFGError(f"not a represented formula: {v}")
        out.append(w)
    return tuple(out)


def production_formula(g: MCFG, p: Production):
    f = mll.Pos(p.head)
    for b, _ in reversed(p.body):
        f = mll.implies(mll.Pos(b), f)
    return f


def mcfg_to_llg(g: MCFG) -> LLG:
    _check(g)
    atoms = {n: boundary_of(k) for n, k in sorted(g.nonterminals.items())}
    lexicon = [
        LexEntry(f"p{i + 1}", production_formula(g, p), cw.name(graph_of(g, p)))
        for i, p in enumerate(g.productions)
    ]
    return LLG(atoms, tuple(g.terminals), lexicon, g.start)


# -- extended MCFGs -----------------------------------------------------------------


@dataclass(frozen=True)
class ExtProduction:
    name: str
    inputs: tuple  # type names
    output: str
    value: Cowordism  # (x) of input boundaries -> output boundary


@dataclass
class ExtendedMCFG:
    types: dict  # name -> Boundary
    alphabet: tuple
    start: str
    productions: list = field(default_factory=list)

    def check(self):
        for p in self.productions:
            src = cw.tensor_boundaries(self.types[t] for t in p.inputs)
            if p.value.source != src or p.value.target != self.types[p.output]:
                raise MCFGError(f"production {p.name}: boundaries do not match its types")


def mcfg_as_extended(g: MCFG) -> ExtendedMCFG:
    _check(g)
    types = {n: boundary_of(k) for n, k in g.nonterminals.items()}
    prods = [
        ExtProduction(f"p{i + 1}", tuple(b for b, _ in p.body), p.head, graph_of(g, p))
        for i, p in enumerate(g.productions)
    ]
    return ExtendedMCFG(types, tuple(g.terminals), g.start, prods)


def _combine(p: ExtProduction, args: tuple) -> Cowordism:
    return cw.compose(cw.tensor_all(args), p.value) if args else p.value


def extended_generate(
    g: ExtendedMCFG,
    max_steps: int | None = None,
    *,
    max_len: int | None = None,
    regular_only: bool = True,
) -> set:
    """``(type, value)`` pairs derivable within the bounds.

    Loops never disappear under composition, so with ``regular_only`` values
    carrying loops are dropped as soon as they appear.
    """
    found: dict = defaultdict(set)
    rounds = 0
    while max_steps is None or rounds < max_steps:
        rounds += 1
        new = []
        for p in g.productions:
            for args in product(*(sorted(found[t], key=str) for t in p.inputs)):
                v = _combine(p, args)
                if regular_only and not v.is_regular:
                    continue
                if max_len is not None and sum(v.letter_count().values()) > max_len:
                    continue
                if v not in found[p.output]:
                    new.append((p.output, v))
        if not new:
            break
        for t, v in new:
            found[t].add(v)
    return {(t, v) for t, vs in found.items() for v in vs}


def extended_language(g: ExtendedMCFG, *, max_len: int | None = None, max_steps: int | None = None) -> set:
    out = set()
    for t, v in extended_generate(g, max_steps, max_len=max_len):
        if t == g.start and v.is_regular and len(v.edges) == 1:
            out.add(v.edges[0][2])
    return out


def possible_patterns(g: ExtendedMCFG) -> dict:
    """Least fixpoint of loop-free letter-erased values, per type."""
    patt: dict = {t: set() for t in g.types}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            for args in product(*(sorted(patt[t], key=str) for t in p.inputs)):
                v = cw.pattern(_combine(p, args))
                if v.is_regular and v not in patt[p.output]:
                    patt[p.output].add(v)
                    changed = True
    return patt


def _pattern_key(v: Cowordism) -> tuple:
    return tuple((t, h) for t, h, _ in v.edges)


def disambiguate(g: ExtendedMCFG) -> ExtendedMCFG:
    """Split each type by its possible patterns so every type has exactly one."""
    patt = possible_patterns(g)
    if not patt.get(g.start):
        warnings.warn("the grammar generates nothing; returning an empty grammar")
        return ExtendedMCFG({g.start: g.types[g.start]}, g.alphabet, g.start, [])
    names = {}
    types = {}
    for t in sorted(g.types):
        ps = sorted(patt[t], key=_pattern_key)
        for k, pi in enumerate(ps):
            nm = t if len(ps) == 1 else f"{t}#{k}"
            names[(t, pi)] = nm
            types[nm] = g.types[t]
    prods = []
    for p in g.productions:
        for args in product(*(sorted(patt[t], key=_pattern_key) for t in p.inputs)):
            out = cw.pattern(_combine(p, args))
            if not out.is_regular:
                continue
            ins = tuple(names[(t, pi)] for t, pi in zip(p.inputs, args))
            prods.append(ExtProduction(p.name, ins, names[(p.output, out)], p.value))
    start_pi = next(iter(patt[g.start]))
    return ExtendedMCFG(types, g.alphabet, names[(g.start, start_pi)], prods)


def _ident(name: str, used: set) -> str:
    base = re.sub(r"\W+", "_", name).strip("_") or "N"
    if base[0].isdigit():
        base = "N" + base
    nm, k = base, 1
    while nm in used:
        k += 1
        nm = f"{base}_{k}"
    used.add(nm)
    return nm


def simple_to_mcfg(g: ExtendedMCFG) -> MCFG:
    """Read a simple extended MCFG back as an ordinary MCFG."""
    patt = possible_patterns(g)
    for t, ps in patt.items():
        if len(ps) > 1:
            raise MCFGError(f"type {t} has {len(ps)} possible patterns; disambiguate first")
    used: set = set()
    nt_name = {}
    nt_name[g.start] = _ident(g.start, used)
    for t in sorted(g.types):
        if t not in nt_name and patt.get(t):
            nt_name[t] = _ident(t, used)
    shape = {t: next(iter(ps)) for t, ps in patt.items() if ps}
    # coordinate m of type t = m-th pattern edge, sorted by tail
    coords = {t: [(e[0], e[1]) for e in pi.edges] for t, pi in shape.items()}
    prods = []
    for p in g.productions:
        if not p.value.is_regular or any(t not in shape for t in p.inputs + (p.output,)):
            continue
        rule = _read_production(g, p, coords, nt_name)
        if rule is not None:
            prods.append(rule)
    nts = {nt_name[t]: len(coords.get(t, [None])) for t in nt_name}
    out = MCFG(nts, tuple(g.alphabet), nt_name[g.start], prods)
    _check(out)
    return out


def _read_production(g, p, coords, nt_name):
    offsets, acc = [], 0
    for t in p.inputs:
        offsets.append(acc)
        acc += len(g.types[t])
    # source head port -> (input j, coordinate m, source tail port where the chain resumes)
    through = {}
    body = []
    for j, t in enumerate(p.inputs):
        vs = []
        for m, (tail, head) in enumerate(coords[t]):
            v = Variable(f"x{j + 1}_{m + 1}")
            vs.append(v)
            through[(cw.SRC, offsets[j] + tail[1])] = (v, (cw.SRC, offsets[j] + head[1]))
        body.append((nt_name[t], tuple(vs)))
    out_edges = {t: (h, w) for t, h, w in p.value.edges}
    strings = []
    used = 0
    for tail, head in coords[p.output]:
        cur = (cw.TGT, tail[1])
        s: list = []
        for _ in range(len(out_edges) + 1):
            h, w = out_edges[cur]
            s.extend(w)
            if h[0] == cw.TGT:
                if h != (cw.TGT, head[1]):
                    return None
                break
            v, cur = through[h]
            s.append(v)
            used += 1
        strings.append(tuple(s))
    if used != len(through):
        return None  # some input edge closes into a loop
    return Production(nt_name[p.output], tuple(strings), tuple(body))


# -- from a ⊗-free LLG ---------------------------------------------------------------


def _bracket(f) -> str:
    return f"[{f}]"


def tensorfree_llg_to_extended(g: LLG) -> ExtendedMCFG:
    """Extended MCFG over types ``[F]`` for ``F`` in the subformula closure and its dual."""
    for e in g.lexicon:
        if mll.has_tensor(e.formula):
            raise NotTensorFree(e.name, e.formula)
    phi = {mll.Pos(g.start)}
    for e in g.lexicon:
        phi |= mll.subformulas(e.formula)
    closure = phi | {mll.neg(f) for f in phi}
    types = {_bracket(f): mll.interpret_formula(f, g.atoms) for f in sorted(closure, key=str)}
    prods = []
    for k, e in enumerate(g.lexicon):
        prods.append(ExtProduction(e.name, (), _bracket(e.formula), e.value))
    seen = set()
    for f in sorted(phi, key=str):
        if not isinstance(f, mll.Par):
            continue
        for ins, out, value in _standard_productions(f.left, f.right, g.atoms):
            key = (ins, out, value)
            if key in seen:
                continue
            seen.add(key)
            prods.append(ExtProduction(f"std{len(prods)}", ins, out, value))
    return ExtendedMCFG(types, tuple(g.alphabet), _bracket(mll.Pos(g.start)), prods)


def _standard_productions(x, y, env) -> Iterator[tuple]:
    """Productions read off the standard proof of ``|- X, X^ * Y^, Y``.

    A sequent ``|- F1^, F2^, F`` is the production ``[F1] (x) [F2] -> [F]``;
    each formula of the sequent may play the output, in both input orders.
    """
    proof = mll.standard_proof(x, y)
    seq = mll.check_proof(proof)
    forms = [f for _, f in seq]
    value = mll.interpret_proof(proof, env)
    bounds = [mll.interpret_formula(f, env) for f in forms]
    for out in range(3):
        rest = [i for i in range(3) if i != out]
        for order in (rest, rest[::-1]):
            perm = order + [out]
            v = cw.compose(value, cw.permute(bounds, perm))
            ins = tuple(mll.neg(forms[i]) for i in order)
            src = cw.tensor_boundaries(mll.interpret_formula(f, env) for f in ins)
            sigma = cw.unname(v, src)
            yield tuple(_bracket(f) for f in ins), _bracket(forms[out]), sigma


# -- file format ---------------------------------------------------------------------


def _split(text: str, path: str) -> Iterator[tuple]:
    """``(line, statement, terminator)`` with ``;`` or ``.`` ending statements."""
    buf, start, depth = [], None, 0
    for line, raw in enumerate(text.splitlines(), 1):
        for c in raw.split("#", 1)[0] + "\n":
            if start is None and not c.isspace():
                start = line
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            if c in ";." and depth == 0:
                yield start, "".join(buf).strip(), c
                buf, start = [], None
                continue
            buf.append(c)
    if "".join(buf).strip():
        raise GrammarSyntaxError("unterminated statement", path, start or 1)


_HEAD = re.compile(r"(\w+)\s*\((.*?)\)\s*(?::-\s*(.*))?$", re.S)
_BODY = re.compile(r"(\w+)\s*\(([^()]*)\)")


def parse_mcfg(text: str, path: str = "<input>") -> MCFG:
    terminals: tuple = ()
    start = None
    raw = []
    for line, st, end in _split(text, path):
        if st.startswith("terminals") and end == ";":
            terminals = tuple(st.split()[1:])
        elif st.startswith("start") and end == ";":
            start = st.split()[1] if len(st.split()) == 2 else None
            if start is None:
                raise GrammarSyntaxError(f"bad start declaration {st!r}", path, line)
        elif end == ".":
            m = _HEAD.match(st)
            if not m:
                raise GrammarSyntaxError(f"bad production {st!r}", path, line)
            raw.append((line, m.groups()))
        else:
            raise GrammarSyntaxError(f"bad statement {st!r}", path, line)
    if start is None:
        raise GrammarSyntaxError("missing start declaration", path, 1)
    arity: dict = {}
    prods = []

    def note(nt, k, line):
        if arity.setdefault(nt, k) != k:
            raise GrammarSyntaxError(f"{nt} used with arities {arity[nt]} and {k}", path, line)

    for line, (head, args, body_text) in raw:
        body = []
        if body_text:
            rest = _BODY.sub("", body_text).replace(",", "").strip()
            if rest:
                raise GrammarSyntaxError(f"bad production body {body_text!r}", path, line)
            for b, vs in _BODY.findall(body_text):
                names = [v.strip() for v in vs.split(",")] if vs.strip() else []
                if any(not re.fullmatch(r"\w+", v) for v in names):
                    raise GrammarSyntaxError(f"bad variable list in {b}({vs})", path, line)
                body.append((b, tuple(Variable(v) for v in names)))
                note(b, len(names), line)
        varnames = {v.name for _, vs in body for v in vs}
        strings = []
        for a in args.split(","):
            toks = a.split()
            if toks == ["eps"]:
                toks = []
            strings.append(tuple(Variable(t) if t in varnames else t for t in toks))
        note(head, len(strings), line)
        prods.append(Production(head, tuple(strings), tuple(body)))
    g = MCFG(arity, terminals, start, prods)
    diags = validate_mcfg(g)
    if diags:
        lines = dict(enumerate((ln for ln, _ in raw), 1))
        m = re.match(r"production (\d+)", diags[0])
        ln = lines.get(int(m.group(1)), 1) if m else 1
        raise GrammarSyntaxError(diags[0], path, ln)
    return g


def format_mcfg(g: MCFG) -> str:
    lines = [f"terminals {' '.join(g.terminals)};", f"start {g.start};"]
    lines += [str(p) for p in g.productions]
    return "\n".join(lines) + "\n"


def llg_to_mcfg(g: LLG) -> MCFG:
    """The full route: ⊗-free LLG to extended, simple, then ordinary MCFG."""
    return simple_to_mcfg(disambiguate(tensorfree_llg_to_extended(g)))
