"""Random linear lambda terms with redexes, for the ACG semantic laws."""

from __future__ import annotations

import random

import gen
from cowordisms import acg
from cowordisms.acg import O, STR, Abs, App, Arrow, Interpretation, Signature
from cowordisms.cowordism import Boundary

OO = STR
# higher-order constants so that terms are not just strings
SIG = Signature(
    {"O"},
    {
        "a": OO,
        "b": OO,
        "pair": Arrow(OO, Arrow(OO, OO)),
        "wrap": Arrow(Arrow(OO, O), O),
        "lift": Arrow(O, Arrow(OO, O)),
    },
)
TYPES = [OO, Arrow(OO, OO), Arrow(OO, Arrow(OO, OO)), Arrow(Arrow(OO, O), O), Arrow(O, Arrow(OO, O))]
ENV = {"O": Boundary.of("L")}


def interpretation(rng: random.Random) -> Interpretation:
    """Random points for every constant (the laws hold for any choice)."""
    consts = {}
    for c, ty in sorted(SIG.constants.items()):
        consts[c] = gen.point(rng, acg.type_boundary(ty, ENV), max_len=2, max_cycles=0, alphabet="xyz")
    return Interpretation(dict(ENV), consts)


def pool(ty, max_constants: int = 2, limit: int = 200) -> list:
    out = []
    for t, _ in acg.normal_terms(SIG, ty, max_constants):
        if acg.size(t) <= 12:
            out.append(t)
        if len(out) >= limit:
            break
    return out


def _paths(t, here=()):
    yield here
    if isinstance(t, App):
        yield from _paths(t.fun, here + (0,))
        yield from _paths(t.arg, here + (1,))
    elif isinstance(t, Abs):
        yield from _paths(t.body, here + (0,))


def _get(t, path):
    for k in path:
        t = (t.fun, t.arg)[k] if isinstance(t, App) else t.body
    return t


def _put(t, path, new):
    if not path:
        return new
    k, rest = path[0], path[1:]
    if isinstance(t, App):
        return App(_put(t.fun, rest, new), t.arg) if k == 0 else App(t.fun, _put(t.arg, rest, new))
    return Abs(t.var, _put(t.body, rest, new))


def expand(rng: random.Random, t, steps: int, max_size: int = 12):
    """Apply random beta- and eta-expansions to closed subterms, staying under ``max_size``."""
    n = done = 0
    for _ in range(20 * steps):
        if done == steps:
            break
        closed = [p for p in _paths(t) if not acg.free_vars(_get(t, p))]
        p = rng.choice(closed)
        u = _get(t, p)
        n += 1
        x = f"z{n}"
        if rng.random() < 0.5:
            # beta: C[u] becomes (\x. C[x]) u
            cand = App(Abs(x, _put(t, p, acg.Var(x))), u)
        else:
            ty = acg.infer_type(SIG, u)
            if not isinstance(ty, Arrow):
                continue
            cand = _put(t, p, Abs(x, App(u, acg.Var(x))))
        if acg.size(cand) <= max_size:
            t, done = cand, done + 1
    return t
