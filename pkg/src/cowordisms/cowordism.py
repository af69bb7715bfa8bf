"""The compact closed category of word cobordisms.

Objects are :class:`Boundary` values (ordered port lists tagged ``L``/``R``),
morphisms are :class:`Cowordism` values.  A port is ``(side, index)`` with
side ``SRC`` (0) or ``TGT`` (1).  For ``f: X -> Y`` edges run from the tails
``Y_l + X_r`` to the heads ``Y_r + X_l``; for a morphism out of the unit this
means every edge runs from an ``L`` port to an ``R`` port.

Equality is structural: ports name boundary points directly, so two
cowordisms are equal iff their boundaries, edge sets and cycle multisets are.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .multiword import (
    CyclicWord,
    Multiword,
    RegularMultiword,
    Word,
    as_word,
    contract_many,
    disjoint_union,
)

SRC, TGT = 0, 1
_FLIP = {"L": "R", "R": "L"}


class BoundaryMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Boundary:
    ports: tuple = ()

    def __post_init__(self):
        ports = tuple(self.ports)
        if any(p not in _FLIP for p in ports):
            raise ValueError(f"port tags must be 'L' or 'R', got {ports!r}")
        object.__setattr__(self, "ports", ports)

    @classmethod
    def of(cls, tags: str) -> Boundary:
        return cls(tuple(tags))

    def __len__(self) -> int:
        return len(self.ports)

    def __iter__(self):
        return iter(self.ports)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return Boundary(self.ports[i])
        return self.ports[i]

    def __add__(self, other: Boundary) -> Boundary:
        return Boundary(self.ports + other.ports)

    def __str__(self) -> str:
        return "".join(self.ports) or "1"

    def dual(self) -> Boundary:
        return Boundary(tuple(_FLIP[p] for p in self.ports))

    @property
    def n_left(self) -> int:
        return self.ports.count("L")

    @property
    def n_right(self) -> int:
        return self.ports.count("R")


UNIT = Boundary()


def tensor_boundaries(blocks: Iterable[Boundary]) -> Boundary:
    out: tuple = ()
    for b in blocks:
        out += b.ports
    return Boundary(out)


def is_tail(port, source: Boundary, target: Boundary) -> bool:
    side, i = port
    tag = source[i] if side == SRC else target[i]
    return (side == SRC) == (tag == "R")


@dataclass(frozen=True)
class Cowordism:
    source: Boundary
    target: Boundary
    edges: tuple = ()  # sorted (tail, head, label)
    cycles: tuple = ()  # sorted CyclicWord

    def __post_init__(self):
        edges = tuple(sorted((tuple(t), tuple(h), as_word(w)) for t, h, w in self.edges))
        cycles = tuple(
            sorted(c if isinstance(c, CyclicWord) else CyclicWord.of(c) for c in self.cycles)
        )
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "cycles", cycles)
        tails, heads = set(), set()
        for side, boundary in ((SRC, self.source), (TGT, self.target)):
            for i in range(len(boundary)):
                (tails if is_tail((side, i), self.source, self.target) else heads).add((side, i))
        seen_t = [t for t, _, _ in edges]
        seen_h = [h for _, h, _ in edges]
        if sorted(seen_t) != sorted(tails) or sorted(seen_h) != sorted(heads):
            raise ValueError(
                f"edges are not a perfect matching from tails {sorted(tails)} "
                f"to heads {sorted(heads)}"
            )

    # -- inspection -------------------------------------------------------

    @property
    def is_regular(self) -> bool:
        return not self.cycles

    def edge_from(self, tail) -> tuple:
        for t, h, w in self.edges:
            if t == tail:
                return h, w
        raise KeyError(tail)

    def letter_count(self) -> Counter:
        counts: Counter = Counter()
        for _, _, w in self.edges:
            counts.update(w)
        for c in self.cycles:
            counts.update(c.canonical)
        return counts

    def to_multiword(self) -> Multiword:
        return Multiword(RegularMultiword(frozenset(self.edges)), self.cycles)

    def __str__(self) -> str:
        parts = [f"{_port_str(t)}->{_port_str(h)}:{_quote(w)}" for t, h, w in self.edges]
        parts += [str(c) for c in self.cycles]
        return f"{self.source} -> {self.target} {{{', '.join(parts)}}}"


def _port_str(p) -> str:
    return ("s" if p[0] == SRC else "t") + str(p[1])


def _quote(w: Word) -> str:
    if all(len(a) == 1 for a in w):
        return '"' + "".join(w) + '"'
    return '"' + " ".join(w) + '"'


def from_multiword(m: Multiword, source: Boundary, target: Boundary) -> Cowordism:
    return Cowordism(source, target, tuple(m.edges), m.cyclic)


def _check(cond: bool, msg: str):
    if not cond:
        raise BoundaryMismatch(msg)


# -- composition and structure --------------------------------------------


def compose(f: Cowordism, g: Cowordism) -> Cowordism:
    """``g . f`` for ``f: X -> Y`` and ``g: Y -> Z`` (diagrammatic order of arguments)."""
    _check(f.target == g.source, f"cannot compose: {f.target} != {g.source}")
    glued = disjoint_union(f.to_multiword(), g.to_multiword())
    pairs = {}
    for j, tag in enumerate(f.target):
        if tag == "R":  # f's target R port is a head, g's source R port a tail
            pairs[(0, (TGT, j))] = (1, (SRC, j))
        else:
            pairs[(1, (SRC, j))] = (0, (TGT, j))
    glued = contract_many(glued, pairs)
    # survivors are f's source ports and g's target ports; drop the operand tag
    edges = [(t[1], h[1], w) for t, h, w in glued.edges]
    return Cowordism(f.source, g.target, tuple(edges), glued.cyclic)


def compose_all(*fs: Cowordism) -> Cowordism:
    out = fs[0]
    for g in fs[1:]:
        out = compose(out, g)
    return out


def identity(x: Boundary) -> Cowordism:
    return wiring(x, x, range(len(x)))


def wiring(source: Boundary, target: Boundary, placement: Iterable[int]) -> Cowordism:
    """Empty-labeled wires sending source port ``i`` to target port ``placement[i]``."""
    placement = list(placement)
    _check(len(placement) == len(source) == len(target), "wiring size mismatch")
    _check(sorted(placement) == list(range(len(target))), "placement is not a permutation")
    edges = []
    for i, j in enumerate(placement):
        _check(source[i] == target[j], f"port {i} tag {source[i]} != target {j} tag {target[j]}")
        if source[i] == "R":
            edges.append(((SRC, i), (TGT, j), ()))
        else:
            edges.append(((TGT, j), (SRC, i), ()))
    return Cowordism(source, target, tuple(edges))


def tensor(f: Cowordism, g: Cowordism) -> Cowordism:
    ns, nt = len(f.source), len(f.target)

    def shift(p):
        return (p[0], p[1] + (ns if p[0] == SRC else nt))

    edges = list(f.edges) + [(shift(t), shift(h), w) for t, h, w in g.edges]
    return Cowordism(f.source + g.source, f.target + g.target, tuple(edges), f.cycles + g.cycles)


def tensor_all(fs: Iterable[Cowordism]) -> Cowordism:
    out = Cowordism(UNIT, UNIT)
    for f in fs:
        out = tensor(out, f)
    return out


def symmetry(x: Boundary, y: Boundary) -> Cowordism:
    """``X (x) Y -> Y (x) X``."""
    placement = [len(y) + i for i in range(len(x))] + list(range(len(y)))
    return wiring(x + y, y + x, placement)


def permute(blocks: Sequence[Boundary], perm: Sequence[int]) -> Cowordism:
    """``X_1 (x) ... (x) X_n -> X_perm[0] (x) ... (x) X_perm[n-1]``."""
    blocks = list(blocks)
    _check(sorted(perm) == list(range(len(blocks))), "not a permutation")
    offsets, acc = [], 0
    for b in blocks:
        offsets.append(acc)
        acc += len(b)
    placement = [0] * acc
    pos = 0
    for k in perm:
        for i in range(len(blocks[k])):
            placement[offsets[k] + i] = pos
            pos += 1
    target = tensor_boundaries(blocks[k] for k in perm)
    return wiring(tensor_boundaries(blocks), target, placement)


def dual(f: Cowordism) -> Cowordism:
    """``f: X -> Y`` becomes ``Y^ -> X^`` over the same multiword."""
    swap = {SRC: TGT, TGT: SRC}
    edges = [((swap[t[0]], t[1]), (swap[h[0]], h[1]), w) for t, h, w in f.edges]
    return Cowordism(f.target.dual(), f.source.dual(), tuple(edges), f.cycles)


def name(f: Cowordism) -> Cowordism:
    """``f: X -> Y`` becomes ``1 -> X^ (x) Y``: source wires bend to the output side."""
    n = len(f.source)

    def move(p):
        return (TGT, p[1]) if p[0] == SRC else (TGT, n + p[1])

    edges = [(move(t), move(h), w) for t, h, w in f.edges]
    return Cowordism(UNIT, f.source.dual() + f.target, tuple(edges), f.cycles)


def unname(rho: Cowordism, x: Boundary) -> Cowordism:
    """Inverse of :func:`name`: ``1 -> X^ (x) Y`` back to ``X -> Y``."""
    _check(len(rho.source) == 0, "unname expects a morphism out of the unit")
    n = len(x)
    _check(rho.target[:n] == x.dual(), f"{rho.target} does not start with {x.dual()}")

    def move(p):
        return (SRC, p[1]) if p[1] < n else (TGT, p[1] - n)

    edges = [(move(t), move(h), w) for t, h, w in rho.edges]
    return Cowordism(x, rho.target[n:], tuple(edges), rho.cycles)


def counit(a: Boundary) -> Cowordism:
    """The cap ``A (x) A^ -> 1``."""
    n = len(a)
    edges = []
    for i, tag in enumerate(a):
        if tag == "R":
            edges.append(((SRC, i), (SRC, n + i), ()))
        else:
            edges.append(((SRC, n + i), (SRC, i), ()))
    return Cowordism(a + a.dual(), UNIT, tuple(edges))


def evaluation(a: Boundary, b: Boundary) -> Cowordism:
    """``A (x) (A^ (x) B) -> B``."""
    return tensor(counit(a), identity(b))


def apply(sigma: Cowordism, tau: Cowordism) -> Cowordism:
    """Application of ``sigma: 1 -> A^ (x) B`` to ``tau: 1 -> A``."""
    _check(len(sigma.source) == 0 and len(tau.source) == 0, "apply expects points")
    a = tau.target
    _check(sigma.target[: len(a)] == a.dual(), f"{sigma.target} does not accept {a}")
    b = sigma.target[len(a):]
    return compose(tensor(tau, sigma), evaluation(a, b))


def partial_pair(tau: Cowordism, sigma: Cowordism, u: Boundary) -> Cowordism:
    """Plug ``tau: 1 -> A (x) U`` into ``sigma: 1 -> U^ (x) B`` along ``U``."""
    _check(len(sigma.source) == 0 and len(tau.source) == 0, "partial_pair expects points")
    k = len(u)
    na = len(tau.target) - k
    _check(na >= 0 and tau.target[na:] == u, f"{tau.target} does not end with {u}")
    _check(sigma.target[:k] == u.dual(), f"{sigma.target} does not start with {u.dual()}")
    a = tau.target[:na]
    b = sigma.target[k:]
    plug = tensor(tensor(identity(a), counit(u)), identity(b))
    return compose(tensor(tau, sigma), plug)


def pattern(f: Cowordism) -> Cowordism:
    """Erase every letter, keeping the shape (loops become empty loops)."""
    edges = [(t, h, ()) for t, h, _ in f.edges]
    return Cowordism(f.source, f.target, tuple(edges), tuple(CyclicWord() for _ in f.cycles))


def point(target: Boundary, edges: Iterable, cycles: Iterable = ()) -> Cowordism:
    """A morphism ``1 -> target`` from ``(tail_index, head_index, word)`` triples."""
    return Cowordism(
        UNIT,
        target,
        tuple(((TGT, t), (TGT, h), as_word(w)) for t, h, w in edges),
        tuple(cycles),
    )


def point_edges(f: Cowordism) -> list:
    """Edges of ``1 -> X`` as ``(tail_index, head_index, word)``."""
    return [(t[1], h[1], w) for t, h, w in f.edges]
