"""Linear logic grammars: a lexicon of typed points plus bounded generation.

A derivation picks axioms ``t_1: A_1, ..., t_n: A_n`` and a cut-free proof of
``|- A_1^, ..., A_n^, A``; its value plugs the axioms into the proof's
interpretation by partial pairing.

Generation works on linkings rather than sequent trees: a cut-free proof
with literal axioms is determined, up to the value it denotes, by which
literal occurrences its axioms join.  The engine builds linkings lazily,
following the wires of the value being produced, and only keeps linkings
that sequentialize.  The slower ``method="proofs"`` route enumerates sequent
proofs directly and is kept as an independent cross-check.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import cowordism as cw
from . import mll
from .cowordism import Boundary, Cowordism
from .multiword import CyclicWord, Word, as_word
from .mll import Neg, Pos


@dataclass(frozen=True)
class LexEntry:
    name: str
    formula: object
    value: Cowordism


@dataclass
class LLG:
    atoms: dict  # name -> Boundary
    alphabet: tuple
    lexicon: list = field(default_factory=list)
    start: str = "S"
    lines: dict = field(default_factory=dict, compare=False)  # axiom name -> source line

    def entry(self, name: str) -> LexEntry:
        for e in self.lexicon:
            if e.name == name:
                return e
        raise KeyError(name)

    def boundary(self, f) -> Boundary:
        return mll.interpret_formula(f, self.atoms)


@dataclass(frozen=True)
class Derivation:
    axioms: tuple  # lexicon indices, one per instance
    proof: object  # proof of |- A_1^, ..., A_n^, A at occurrences (0,)..(n,)


class LLGError(ValueError):
    pass


# -- validation and values ------------------------------------------------------


def validate(g: LLG) -> list:
    """Diagnostics; an empty list means the grammar is well formed."""
    diags = []
    if g.start not in g.atoms:
        diags.append(f"start atom {g.start!r} is not declared")
    else:
        b = g.atoms[g.start]
        if b.n_left != 1 or b.n_right != 1:
            diags.append(f"start atom {g.start!r} must have one left and one right port, has {b}")
    letters = set(g.alphabet)
    names = Counter(e.name for e in g.lexicon)
    for n, k in sorted(names.items()):
        if k > 1:
            diags.append(f"axiom {n!r} is declared {k} times")
    for e in g.lexicon:
        missing = mll.atoms(e.formula) - set(g.atoms)
        if missing:
            diags.append(f"axiom {e.name!r}: undeclared atoms {', '.join(sorted(missing))}")
            continue
        b = g.boundary(e.formula)
        if e.value.source != cw.UNIT or e.value.target != b:
            diags.append(
                f"axiom {e.name!r}: value has boundary {e.value.target}, formula {e.formula} needs {b}"
            )
        stray = set(e.value.letter_count()) - letters
        if stray:
            diags.append(f"axiom {e.name!r}: letters {' '.join(sorted(stray))} not in the alphabet")
    return diags


def derivation_sequent(g: LLG, axioms: Iterable[int], goal) -> list:
    return [mll.neg(g.lexicon[i].formula) for i in axioms] + [goal]


def value_of(d: Derivation, g: LLG) -> Cowordism:
    """Partial pairing of the tensored axioms with the proof's interpretation."""
    seq = mll.check_proof(d.proof)
    n = len(d.axioms)
    if [o for o, _ in seq] != [(i,) for i in range(n + 1)]:
        raise LLGError("derivation proof must conclude occurrences (0,) .. (n,)")
    for i, k in enumerate(d.axioms):
        if seq[i][1] != mll.neg(g.lexicon[k].formula):
            raise LLGError(f"occurrence {i} is {seq[i][1]}, expected the dual of {g.lexicon[k].name}")
    sigma = mll.interpret_proof(d.proof, g.atoms)
    tau = cw.tensor_all(g.lexicon[k].value for k in d.axioms)
    return cw.partial_pair(tau, sigma, tau.target)


# -- axiom multisets --------------------------------------------------------------


def _entry_balance(g: LLG, e: LexEntry) -> Counter:
    # contribution of one instance to the balance of |- ..., A^, ...
    return mll.polarity_balance([mll.neg(e.formula)])


def axiom_multisets(
    g: LLG, goal, max_axioms: int, letters: Counter | None = None, max_len: int | None = None
) -> Iterator[tuple]:
    """Sorted index tuples whose atoms balance against ``goal``.

    With ``letters`` only multisets whose letters add up to exactly that
    multiset are produced; ``max_len`` bounds their total letter count.
    """
    n = len(g.lexicon)
    bal = [_entry_balance(g, e) for e in g.lexicon]
    lets = [e.value.letter_count() for e in g.lexicon]
    target = Counter({a: -v for a, v in mll.polarity_balance([goal]).items() if v})
    atoms = sorted(set(target) | {a for b in bal for a in b})
    # can entries i.. push atom a up / down?
    up = [[False] * len(atoms) for _ in range(n + 1)]
    down = [[False] * len(atoms) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        for j, a in enumerate(atoms):
            up[i][j] = up[i + 1][j] or bal[i][a] > 0
            down[i][j] = down[i + 1][j] or bal[i][a] < 0

    sizes = [sum(c.values()) for c in lets]

    def feasible(i, cur) -> bool:
        for j, a in enumerate(atoms):
            diff = target[a] - cur[a]
            if (diff > 0 and not up[i][j]) or (diff < 0 and not down[i][j]):
                return False
        return True

    def rec(i, chosen, cur, avail, size):
        if i == n:
            if all(cur[a] == target[a] for a in atoms) and (avail is None or not +avail):
                yield tuple(chosen)
            return
        if not feasible(i, cur):
            return
        k = 0
        while True:
            yield from rec(i + 1, chosen + [i] * k, cur, avail, size)
            k += 1
            if len(chosen) + k > max_axioms:
                return
            if avail is not None:
                if any(avail[c] < v for c, v in lets[i].items()):
                    return
                avail = avail - lets[i]
            size += sizes[i]
            if max_len is not None and size > max_len:
                return
            cur = Counter(cur)
            for a, v in bal[i].items():
                cur[a] += v

    yield from rec(0, [], Counter(), letters.copy() if letters is not None else None, 0)


# -- the linking engine ------------------------------------------------------------


class _UF:
    """Union-find with rollback."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.log = []

    def find(self, x):
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.log.append(rb)
        return True

    def mark(self):
        return len(self.log)

    def undo(self, mark):
        while len(self.log) > mark:
            rb = self.log.pop()
            ra = self.parent[rb]
            self.size[ra] -= self.size[rb]
            self.parent[rb] = rb


class _Problem:
    """Static data for one axiom multiset against one goal formula."""

    def __init__(self, g: LLG, axioms: tuple, goal):
        self.g = g
        self.axioms = axioms
        self.formulas = derivation_sequent(g, axioms, goal)
        self.n = len(axioms)
        # subformula nodes, for the two fixed switchings
        self.node_ids: dict = {}
        tree_left, tree_right = [], []
        lits = []  # (literal occ, literal, first position)
        tags: list = []
        owner = []  # position -> (literal index, port)
        offsets = []
        for i, f in enumerate(self.formulas):
            offsets.append(len(tags))
            self._nodes((i,), f, tree_left, tree_right)
            for path, lit in mll.literals(f):
                b = mll.interpret_formula(lit, g.atoms)
                li = len(lits)
                lits.append(((i,) + path, lit, len(tags)))
                for j, t in enumerate(b):
                    tags.append(t)
                    owner.append((li, j))
        self.lits = lits
        self.tags = tags
        self.owner = owner
        self.lit_node = [self.node_ids[o] for o, _, _ in lits]
        self.lit_formula = [o[0] for o, _, _ in lits]
        self.tree_left, self.tree_right = tree_left, tree_right
        # tau: sequent R-position -> (sequent L-position, label)
        self.tau = {}
        self.tau_cycles = []
        for i, k in enumerate(axioms):
            v = g.lexicon[k].value
            base = offsets[i]
            for t, h, w in cw.point_edges(v):
                self.tau[base + t] = (base + h, w)
            self.tau_cycles += list(v.cycles)
        self.goal_start = offsets[self.n]
        self.goal_boundary = Boundary(tuple(tags[self.goal_start:]))
        self.goal_L = [p for p in range(self.goal_start, len(tags)) if tags[p] == "L"]
        # candidates: literal -> dual literals of the same atom
        self.partners = []
        for li, (_, lit, _) in enumerate(lits):
            self.partners.append(
                [m for m, (_, other, _) in enumerate(lits) if other == mll.neg(lit)]
            )
        # instance symmetry: previous instance of the same lexicon entry
        self.twin = [None] * self.n
        for i in range(1, self.n):
            if axioms[i] == axioms[i - 1]:
                self.twin[i] = i - 1

    def _nodes(self, occ, f, tl, tr):
        nid = len(self.node_ids)
        self.node_ids[occ] = nid
        if isinstance(f, mll.Binary):
            a = self._nodes(occ + (0,), f.left, tl, tr)
            b = self._nodes(occ + (1,), f.right, tl, tr)
            if isinstance(f, mll.Tensor):
                tl += [(nid, a), (nid, b)]
                tr += [(nid, a), (nid, b)]
            else:
                tl.append((nid, a))
                tr.append((nid, b))
        return nid


class _Search:
    def __init__(self, prob: _Problem, word: Word | None, regular_only: bool):
        self.p = prob
        self.word = word
        self.regular_only = regular_only
        self.link = [None] * len(prob.lits)
        self.touched = [0] * (prob.n + 1)
        nn = len(prob.node_ids)
        self.uf_l, self.uf_r = _UF(nn), _UF(nn)
        for a, b in prob.tree_left:
            self.uf_l.union(a, b)
        for a, b in prob.tree_right:
            self.uf_r.union(a, b)
        self.uf_l.log.clear()
        self.uf_r.log.clear()
        self.visited = 0

    # linking bookkeeping

    def _allowed(self, li, m) -> bool:
        p = self.p
        inst = p.lit_formula[m]
        if inst < p.n and not self.touched[inst]:
            tw = p.twin[inst]
            if tw is not None and not self.touched[tw] and tw != p.lit_formula[li]:
                return False
        return True

    def _try_link(self, li, m):
        p = self.p
        ml, mr = self.uf_l.mark(), self.uf_r.mark()
        a, b = p.lit_node[li], p.lit_node[m]
        if not self.uf_l.union(a, b) or not self.uf_r.union(a, b):
            self.uf_l.undo(ml)
            self.uf_r.undo(mr)
            return None
        self.link[li], self.link[m] = m, li
        self.touched[p.lit_formula[li]] += 1
        self.touched[p.lit_formula[m]] += 1
        return ml, mr

    def _unlink(self, li, m, marks):
        p = self.p
        self.link[li] = self.link[m] = None
        self.touched[p.lit_formula[li]] -= 1
        self.touched[p.lit_formula[m]] -= 1
        self.uf_l.undo(marks[0])
        self.uf_r.undo(marks[1])

    def _wires(self, li):
        """Partners to try for an unlinked literal."""
        for m in self.p.partners[li]:
            if self.link[m] is None and self._allowed(li, m):
                yield m

    # path walking

    def run(self) -> Iterator[tuple]:
        """Yield ``(goal edges, links)`` for every admissible linking (before cycles)."""
        yield from self._edge(0, [])

    def _edge(self, k, edges):
        p = self.p
        if k == len(p.goal_L):
            yield from self._finish(edges)
            return
        start = p.goal_L[k]
        yield from self._walk(start, start, (), 0 if self.word is not None else None, k, edges)

    def _walk(self, start, pos, label, at, k, edges):
        """``pos`` is an L-tagged position whose wire we follow next."""
        p = self.p
        li, j = p.owner[pos]
        m = self.link[li]
        if m is not None:
            yield from self._arrive(start, p.lits[m][2] + j, label, at, k, edges)
            return
        for m in list(self._wires(li)):
            marks = self._try_link(li, m)
            if marks is None:
                continue
            yield from self._arrive(start, p.lits[m][2] + j, label, at, k, edges)
            self._unlink(li, m, marks)

    def _arrive(self, start, q, label, at, k, edges):
        """``q`` is the R-tagged end of a wire."""
        p = self.p
        self.visited += 2
        try:
            if q >= p.goal_start:
                if self.word is not None and at != len(self.word):
                    return
                yield from self._edge(k + 1, edges + [(start - p.goal_start, q - p.goal_start, label)])
                return
            h, w = p.tau[q]
            if self.word is not None:
                if tuple(self.word[at:at + len(w)]) != w:
                    return
                yield from self._walk(start, h, label, at + len(w), k, edges)
            else:
                yield from self._walk(start, h, label + w, at, k, edges)
        finally:
            self.visited -= 2

    def _finish(self, edges):
        p = self.p
        if self.regular_only:
            if self.visited != len(p.tags) or p.tau_cycles:
                return
            yield edges, None
            return
        yield from self._complete(edges, 0)

    def _complete(self, edges, li):
        p = self.p
        while li < len(p.lits) and self.link[li] is not None:
            li += 1
        if li == len(p.lits):
            yield edges, self._cycles()
            return
        for m in list(self._wires(li)):
            marks = self._try_link(li, m)
            if marks is None:
                continue
            yield from self._complete(edges, li + 1)
            self._unlink(li, m, marks)

    def _next(self, cur):
        """From an L position along its wire: ``(R position, next L position or None, label)``."""
        p = self.p
        li, j = p.owner[cur]
        q = p.lits[self.link[li]][2] + j
        if q >= p.goal_start:
            return q, None, ()
        h, w = p.tau[q]
        return q, h, w

    def _cycles(self):
        p = self.p
        seen = set()
        for cur in p.goal_L:
            while cur is not None:
                seen.add(cur)
                cur = self._next(cur)[1]
        out = list(p.tau_cycles)
        for pos in range(p.goal_start):
            if p.tags[pos] != "L" or pos in seen:
                continue
            # walk the closed loop through pos; it never reaches the goal
            label: Word = ()
            cur = pos
            while cur not in seen:
                seen.add(cur)
                _, cur, w = self._next(cur)
                label += w
            out.append(CyclicWord(label))
        return out

    def links(self) -> dict:
        p = self.p
        return {p.lits[li][0]: p.lits[m][0] for li, m in enumerate(self.link) if m is not None}


def derivations(
    g: LLG,
    goal,
    max_axioms: int,
    *,
    word: Word | None = None,
    regular_only: bool = False,
    max_len: int | None = None,
) -> Iterator[tuple]:
    """Yield ``(Derivation, value)`` for admissible linkings, in a fixed order.

    With ``word`` only regular single-edge values spelling it are produced.
    Distinct derivations may share a value.
    """
    letters = Counter(word) if word is not None else None
    if word is not None:
        regular_only = True
    for axioms in axiom_multisets(g, goal, max_axioms, letters=letters, max_len=max_len):
        prob = _Problem(g, axioms, goal)
        search = _Search(prob, word, regular_only)
        for edges, cycles in search.run():
            proof = mll.sequentialize(
                [((i,), f) for i, f in enumerate(prob.formulas)], search.links()
            )
            if proof is None:
                continue
            value = Cowordism(
                cw.UNIT,
                prob.goal_boundary,
                tuple(((cw.TGT, t), (cw.TGT, h), w) for t, h, w in edges),
                tuple(cycles or ()),
            )
            yield Derivation(axioms, proof), value


def generate(
    g: LLG,
    goal,
    max_axioms: int,
    *,
    regular_only: bool = False,
    max_len: int | None = None,
    method: str = "nets",
) -> set:
    """All values of derivations of ``goal`` using at most ``max_axioms`` axioms."""
    if method == "proofs":
        return _generate_by_proofs(g, goal, max_axioms, regular_only, max_len)
    if method != "nets":
        raise ValueError(f"unknown method {method!r}")
    return {
        v
        for _, v in derivations(g, goal, max_axioms, regular_only=regular_only, max_len=max_len)
    }


def _generate_by_proofs(g, goal, max_axioms, regular_only, max_len) -> set:
    out = set()
    for axioms in axiom_multisets(g, goal, max_axioms, max_len=max_len):
        seq = derivation_sequent(g, axioms, goal)
        for proof in mll.enumerate_cut_free_proofs(seq):
            v = value_of(Derivation(axioms, proof), g)
            if regular_only and not v.is_regular:
                continue
            out.add(v)
    return out


def start_formula(g: LLG):
    return Pos(g.start)


def read_word(v: Cowordism) -> Word:
    """The label of a regular single-edge value (``L`` port to ``R`` port)."""
    if not v.is_regular or len(v.edges) != 1:
        raise LLGError(f"not a single-edge regular value: {v}")
    return v.edges[0][2]


def language(g: LLG, max_axioms: int, *, max_len: int | None = None, method: str = "nets") -> set:
    """Words of regular start-type values with at most ``max_axioms`` axioms."""
    if g.start not in g.atoms:
        return set()
    vals = generate(
        g, start_formula(g), max_axioms, regular_only=True, max_len=max_len, method=method
    )
    return {read_word(v) for v in vals}


def member(g: LLG, w: Iterable[str], max_axioms: int) -> tuple:
    """``(True, Derivation)`` if ``w`` is generated within the bound, else ``(False, None)``."""
    w = as_word(w)
    if g.start not in g.atoms:
        return False, None
    for d, _ in derivations(g, start_formula(g), max_axioms, word=w):
        return True, d
    return False, None


def explain(d: Derivation, g: LLG) -> str:
    """Readable dump of a derivation: axioms and the proof tree."""
    lines = ["axioms:"]
    for i, k in enumerate(d.axioms):
        e = g.lexicon[k]
        lines.append(f"  ({i}) {e.name} : {e.formula}")
    lines.append("proof:")
    lines += _proof_lines(d.proof, 1)
    return "\n".join(lines)


def _occ(o) -> str:
    return ".".join(str(i) for i in o)


def _proof_lines(p, depth) -> list:
    pad = "  " * depth
    concl = ", ".join(f"{_occ(o)}:{f}" for o, f in mll.check_proof(p))
    if isinstance(p, mll.Axiom):
        return [f"{pad}axiom |- {concl}"]
    if isinstance(p, mll.ParRule):
        return [f"{pad}par {_occ(p.occ)} |- {concl}"] + _proof_lines(p.sub, depth + 1)
    if isinstance(p, mll.TensorRule):
        return (
            [f"{pad}tensor {_occ(p.occ)} |- {concl}"]
            + _proof_lines(p.left, depth + 1)
            + _proof_lines(p.right, depth + 1)
        )
    if isinstance(p, mll.Cut):
        return (
            [f"{pad}cut {_occ(p.occ)} |- {concl}"]
            + _proof_lines(p.left, depth + 1)
            + _proof_lines(p.right, depth + 1)
        )
    return [f"{pad}exchange |- {concl}"] + _proof_lines(p.sub, depth + 1)


# -- words ------------------------------------------------------------------------


def word_str(w: Word) -> str:
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return " ".join(w)


def parse_word(text: str, alphabet: Iterable[str]) -> Word:
    """Split ``text`` into letters: by character for one-character alphabets, else by spaces."""
    alphabet = tuple(alphabet)
    if all(len(a) == 1 for a in alphabet):
        letters = tuple(c for c in text if not c.isspace())
    else:
        letters = tuple(text.split())
    bad = [a for a in letters if a not in alphabet]
    if bad:
        raise LLGError(f"letters not in the alphabet: {' '.join(sorted(set(bad)))}")
    return letters


# -- file format ----------------------------------------------------------------


class GrammarSyntaxError(ValueError):
    def __init__(self, msg: str, path: str = "<input>", line: int = 0):
        super().__init__(f"{path}:{line}: {msg}")
        self.path, self.line = path, line


def statements(text: str) -> Iterator[tuple]:
    """Split into ``(line, statement)`` on ``;`` outside braces and quotes; ``#`` comments."""
    buf, line, start, depth, quote = [], 1, None, 0, False
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\n":
            line += 1
        if quote:
            buf.append(c)
            if c == '"':
                quote = False
            i += 1
            continue
        if c == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
            continue
        if start is None and not c.isspace():
            start = line
        if c == '"':
            quote = True
        elif c == "{":
            depth += 1
        elif c == "}":
            depth -= 1
            if depth == 0:
                buf.append(c)
                yield start, "".join(buf).strip()
                buf, start = [], None
                i += 1
                continue
        elif c == ";" and depth == 0:
            yield start, "".join(buf).strip()
            buf, start = [], None
            i += 1
            continue
        buf.append(c)
        i += 1
    if "".join(buf).strip():
        raise GrammarSyntaxError("unterminated statement", line=start or line)


_ATOM = re.compile(r"atom\s+(\w+)\s*(?:=\s*([LR]+)|left\s*=\s*(\d+)\s+right\s*=\s*(\d+))$")
_AXIOM = re.compile(r"axiom\s+([\w']+)\s*:\s*(.*?)\s*\{(.*)\}$", re.S)
_EDGE = re.compile(r'p(\d+)\s*->\s*p(\d+)\s*:\s*"([^"]*)"$')


def _label(text: str, alphabet: tuple) -> Word:
    return parse_word(text, alphabet)


def parse_llg(text: str, path: str = "<input>") -> LLG:
    """Parse the LLG text format; errors carry ``path:line``."""
    atoms: dict = {}
    alphabet: tuple = ()
    start = None
    pending = []
    for line, st in statements(text):
        try:
            if st.startswith("alphabet"):
                alphabet = tuple(st.split()[1:])
            elif st.startswith("atom"):
                m = _ATOM.match(st)
                if not m:
                    raise GrammarSyntaxError(f"bad atom declaration {st!r}", path, line)
                name, tags, nl, nr = m.groups()
                atoms[name] = Boundary.of(tags) if tags else Boundary.of("L" * int(nl) + "R" * int(nr))
            elif st.startswith("start"):
                parts = st.split()
                if len(parts) != 2:
                    raise GrammarSyntaxError(f"bad start declaration {st!r}", path, line)
                start = parts[1]
            elif st.startswith("axiom"):
                m = _AXIOM.match(st)
                if not m:
                    raise GrammarSyntaxError(f"bad axiom {st[:40]!r}", path, line)
                pending.append((line, m.groups()))
            else:
                raise GrammarSyntaxError(f"unknown statement {st.split()[0]!r}", path, line)
        except (mll.FormulaSyntaxError, LLGError) as err:
            raise GrammarSyntaxError(str(err), path, line) from None
    if start is None:
        raise GrammarSyntaxError("missing start declaration", path, 1)
    g = LLG(atoms, alphabet, [], start)
    for line, (name, ftext, body) in pending:
        try:
            g.lexicon.append(_parse_axiom(g, name, ftext, body))
            g.lines[name] = line
        except (mll.FormulaSyntaxError, LLGError, ValueError, KeyError) as err:
            if isinstance(err, GrammarSyntaxError):
                raise
            msg = err.args[0] if err.args else str(err)
            raise GrammarSyntaxError(f"axiom {name!r}: {msg}", path, line) from None
    return g


def _parse_axiom(g: LLG, name: str, ftext: str, body: str) -> LexEntry:
    formula = mll.parse_formula(ftext)
    missing = mll.atoms(formula) - set(g.atoms)
    if missing:
        raise LLGError(f"undeclared atoms {', '.join(sorted(missing))}")
    b = g.boundary(formula)
    edges, cycles = [], []
    for section in body.split(";"):
        section = section.strip()
        if not section:
            continue
        key, _, rest = section.partition(":")
        key = key.strip()
        items = [x.strip() for x in _split_items(rest)]
        if key == "edges":
            for it in items:
                m = _EDGE.match(it)
                if not m:
                    raise LLGError(f"bad edge {it!r}")
                t, h = int(m.group(1)) - 1, int(m.group(2)) - 1
                if not (0 <= t < len(b) and 0 <= h < len(b)):
                    raise LLGError(f"port out of range in {it!r} (boundary {b})")
                if b[t] != "L" or b[h] != "R":
                    raise LLGError(f"edge {it!r} must run from an L port to an R port (boundary {b})")
                edges.append((t, h, _label(m.group(3), g.alphabet)))
        elif key == "cycles":
            for it in items:
                if not (it.startswith('"') and it.endswith('"')):
                    raise LLGError(f"bad cycle {it!r}")
                cycles.append(CyclicWord(_label(it[1:-1], g.alphabet)))
        else:
            raise LLGError(f"unknown section {key!r}")
    try:
        value = cw.point(b, edges, cycles)
    except ValueError as err:
        raise LLGError(str(err)) from None
    return LexEntry(name, formula, value)


def _split_items(text: str) -> list:
    out, buf, quote = [], [], False
    for c in text:
        if c == '"':
            quote = not quote
        if c == "," and not quote:
            out.append("".join(buf))
            buf = []
        else:
            buf.append(c)
    if "".join(buf).strip():
        out.append("".join(buf))
    return out


def _quoted(w: Word, alphabet: tuple) -> str:
    if all(len(a) == 1 for a in alphabet):
        return '"' + "".join(w) + '"'
    return '"' + " ".join(w) + '"'


def format_llg(g: LLG) -> str:
    lines = [f"alphabet {' '.join(g.alphabet)};"]
    for name in sorted(g.atoms):
        lines.append(f"atom {name} = {''.join(g.atoms[name].ports)};")
    lines.append(f"start {g.start};")
    for e in g.lexicon:
        edges = ", ".join(
            f"p{t + 1}->p{h + 1}:{_quoted(w, g.alphabet)}" for t, h, w in cw.point_edges(e.value)
        )
        parts = [f"edges: {edges};"] if edges else []
        if e.value.cycles:
            cyc = ", ".join(_quoted(c.canonical, g.alphabet) for c in e.value.cycles)
            parts.append(f"cycles: {cyc};")
        lines.append(f"axiom {e.name} : {e.formula} {{ {' '.join(parts)} }}")
    return "\n".join(lines) + "\n"
