"""Multiwords: labeled perfect matchings plus a multiset of cyclic words.

A regular multiword is a directed graph in which every vertex touches exactly
one edge.  Heads of edges form the left boundary, tails the right boundary.
Gluing two multiwords reduces to iterated contraction of a head with a tail.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

Word = tuple  # tuple of letters (str); letters may be multi-character tokens
Vertex = Hashable


def as_word(letters: str | Iterable[str]) -> Word:
    """Coerce a str (one letter per character) or an iterable of letters."""
    if isinstance(letters, str):
        return tuple(letters)
    return tuple(letters)


def _least_rotation(w: Word) -> Word:
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


@dataclass(frozen=True, order=True)
class CyclicWord:
    """A word up to rotation, stored as its least rotation."""

    canonical: Word = ()

    def __post_init__(self):
        canon = _least_rotation(tuple(self.canonical))
        object.__setattr__(self, "canonical", canon)

    @classmethod
    def of(cls, letters: str | Iterable[str]) -> CyclicWord:
        return cls(as_word(letters))

    def __len__(self) -> int:
        return len(self.canonical)

    def __str__(self) -> str:
        return "[" + _join(self.canonical) + "]"


def _join(w: Word) -> str:
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return " ".join(w)


class MatchingError(ValueError):
    """Edge set is not a perfect matching."""


@dataclass(frozen=True)
class RegularMultiword:
    edges: frozenset  # of (tail, head, label)

    def __post_init__(self):
        edges = frozenset((t, h, as_word(w)) for t, h, w in self.edges)
        object.__setattr__(self, "edges", edges)
        tails = [t for t, _, _ in edges]
        heads = [h for _, h, _ in edges]
        if len(set(tails)) != len(tails) or len(set(heads)) != len(heads):
            raise MatchingError("a vertex is adjacent to more than one edge")
        if set(tails) & set(heads):
            raise MatchingError("a vertex is both a head and a tail")

    @property
    def vertices(self) -> frozenset:
        return self.heads | self.tails

    @property
    def heads(self) -> frozenset:
        """Left boundary."""
        return frozenset(h for _, h, _ in self.edges)

    @property
    def tails(self) -> frozenset:
        """Right boundary."""
        return frozenset(t for t, _, _ in self.edges)


@dataclass(frozen=True)
class Multiword:
    regular: RegularMultiword = field(default_factory=lambda: RegularMultiword(frozenset()))
    cyclic: tuple = ()  # sorted tuple of CyclicWord; a multiset

    def __post_init__(self):
        object.__setattr__(self, "cyclic", tuple(sorted(self.cyclic)))

    @classmethod
    def from_edges(cls, edges: Iterable, cycles: Iterable = ()) -> Multiword:
        cyc = [c if isinstance(c, CyclicWord) else CyclicWord.of(c) for c in cycles]
        return cls(RegularMultiword(frozenset(edges)), tuple(cyc))

    @property
    def left(self) -> frozenset:
        return self.regular.heads

    @property
    def right(self) -> frozenset:
        return self.regular.tails

    @property
    def boundary(self) -> frozenset:
        return self.regular.vertices

    @property
    def edges(self) -> frozenset:
        return self.regular.edges

    def letter_count(self) -> Counter:
        counts: Counter = Counter()
        for _, _, w in self.edges:
            counts.update(w)
        for c in self.cyclic:
            counts.update(c.canonical)
        return counts

    def rename(self, f) -> Multiword:
        return Multiword(
            RegularMultiword(frozenset((f(t), f(h), w) for t, h, w in self.edges)),
            self.cyclic,
        )


def disjoint_union(a: Multiword, b: Multiword) -> Multiword:
    """Vertices of ``a`` become ``(0, v)``, those of ``b`` become ``(1, v)``."""
    left = a.rename(lambda v: (0, v))
    right = b.rename(lambda v: (1, v))
    return Multiword(
        RegularMultiword(left.edges | right.edges), a.cyclic + b.cyclic
    )


def contract(m: Multiword, x: Vertex, y: Vertex) -> Multiword:
    """Identify head ``x`` with tail ``y`` and glue the two edges into one.

    The glued label reads the edge into ``x`` first, then the edge out of ``y``.
    If a single edge runs from ``y`` to ``x`` it closes into a cyclic word.
    """
    return contract_many(m, {x: y})


def contract_many(m: Multiword, pairs: Mapping[Vertex, Vertex]) -> Multiword:
    """Contract every head ``x`` with its tail ``pairs[x]``; order is irrelevant."""
    heads = m.left
    tails = m.right
    targets = list(pairs.values())
    if len(set(targets)) != len(targets):
        raise ValueError("contraction pairs are not a bijection")
    for x, y in pairs.items():
        if x not in heads:
            raise ValueError(f"{x!r} is not in the left boundary")
        if y not in tails:
            raise ValueError(f"{y!r} is not in the right boundary")

    out = {t: (h, w) for t, h, w in m.edges}
    into = {h: t for t, h, _ in m.edges}
    cycles = list(m.cyclic)
    for x, y in pairs.items():
        t = into.pop(x)
        u = out.pop(t)[1]
        if t == y:
            cycles.append(CyclicWord(u))
            continue
        z, v = out.pop(y)
        out[t] = (z, u + v)
        into[z] = t
    edges = frozenset((t, h, w) for t, (h, w) in out.items())
    return Multiword(RegularMultiword(edges), tuple(cycles))


def glue(
    a: Multiword,
    b: Multiword,
    a_to_b: Mapping[Vertex, Vertex],
    b_to_a: Mapping[Vertex, Vertex],
) -> Multiword:
    """Glue ``a`` and ``b``: heads of ``a`` onto tails of ``b`` and vice versa.

    Result vertices carry the ``(0, v)`` / ``(1, v)`` tags of :func:`disjoint_union`.
    """
    pairs = {(0, x): (1, y) for x, y in a_to_b.items()}
    pairs.update({(1, x): (0, y) for x, y in b_to_a.items()})
    return contract_many(disjoint_union(a, b), pairs)
