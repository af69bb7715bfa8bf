"""The subset-sum grammar: eight cowordisms over atoms P, H, S and an oracle.

Every atom is ``L R`` (port 0 left, port 1 right).  A slot is one edge;
``close`` and ``close_P`` start it with a bullet and the push cowordisms add
signs after that, so a slot reads ``•`` followed by its numeral.  ``cons``
puts its second list before its first, ``open_P`` puts its deceptive slot
after the list.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable

from . import cowordism as cw
from . import mll
from .cowordism import Boundary, Cowordism
from .llg import LLG, LexEntry
from .multiword import Word

PLUS, MINUS, BULLET = "+", "-", "•"
ALPHABET = (PLUS, MINUS, BULLET)
ATOM = Boundary.of("LR")

SRC, TGT = cw.SRC, cw.TGT


def _push(sign: str) -> Cowordism:
    # target left -> source left is empty; source right -> target right carries the sign
    return Cowordism(ATOM, ATOM, (((TGT, 0), (SRC, 0), ()), ((SRC, 1), (TGT, 1), (sign,))))


def _cons_like() -> Cowordism:
    """``X (x) S -> S`` reading the second input before the first."""
    two = ATOM + ATOM
    edges = (
        ((TGT, 0), (SRC, 2), ()),
        ((SRC, 3), (SRC, 0), ()),
        ((SRC, 1), (TGT, 1), ()),
    )
    return Cowordism(two, ATOM, edges)


def _close() -> Cowordism:
    return cw.point(ATOM, [(0, 1, (BULLET,))])


@lru_cache(maxsize=None)
def builtin_cowordisms() -> dict:
    return {
        "cons": _cons_like(),
        "open": cw.identity(ATOM),
        "push": cw.tensor(_push(PLUS), _push(MINUS)),
        "close": _close(),
        "open_P": _cons_like(),
        "close_P": _close(),
        "push_plus": _push(PLUS),
        "push_minus": _push(MINUS),
    }


_TYPES = {
    "cons": ("S * S", "S"),
    "open": ("H", "S"),
    "push": ("H * H", "H * H"),
    "close": (None, "H"),
    "open_P": ("P * S", "S"),
    "close_P": (None, "P"),
    "push_plus": ("P", "P"),
    "push_minus": ("P", "P"),
}


def ssp_grammar() -> LLG:
    """Lexicon of the names of the eight cowordisms."""
    atoms = {"P": ATOM, "H": ATOM, "S": ATOM}
    lexicon = []
    for name, f in builtin_cowordisms().items():
        src, tgt = _TYPES[name]
        if src is None:
            lexicon.append(LexEntry(name, mll.parse_formula(tgt), f))
        else:
            formula = mll.parse_formula(f"({src}) -o ({tgt})")
            lexicon.append(LexEntry(name, formula, cw.name(f)))
    return LLG(atoms, ALPHABET, lexicon, "S")


def numeral(z: int) -> Word:
    return (PLUS,) * z if z >= 0 else (MINUS,) * (-z)


def irreducible_list(s: Iterable[int]) -> Word:
    """Each entry as a bullet followed by its irreducible numeral."""
    out: tuple = ()
    for z in s:
        out += (BULLET,) + numeral(z)
    return out


def ssp_oracle(s: Iterable[int]) -> bool:
    """Does some nonempty subsequence sum to zero?"""
    s = tuple(s)
    return any(sum(c) == 0 for k in range(1, len(s) + 1) for c in combinations(s, k))


def member_bound(w: Word) -> int:
    """An axiom bound large enough for any derivation of a list word.

    A list with ``m`` slots and ``n`` signs uses at most ``2m`` open/close
    axioms, ``m - 1`` joins and ``n`` pushes, and ``m + n <= len(w)``.
    """
    return 3 * len(w)


def grammar_characterization(s: Iterable[int]) -> bool:
    """What the grammar actually accepts: the first entry lies in a zero-sum subsequence.

    Every list built from ``open`` and ``cons`` starts with an H slot, and
    ``open_P`` only adds deceptive slots after it.
    """
    s = tuple(s)
    if not s:
        return False
    rest = s[1:]
    return any(
        s[0] + sum(c) == 0 for k in range(len(rest) + 1) for c in combinations(rest, k)
    )
