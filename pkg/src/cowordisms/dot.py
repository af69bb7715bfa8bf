"""Graphviz DOT text for cowordisms."""

from __future__ import annotations

from .cowordism import SRC, Cowordism


def _esc(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _word(w) -> str:
    if all(len(a) == 1 for a in w):
        return "".join(w)
    return " ".join(w)


def to_dot(f: Cowordism, title: str = "cowordism") -> str:
    """One circle per port (source ports first), one arrow per edge, loops standalone."""
    lines = [f'digraph "{_esc(title)}" {{', "  rankdir=LR;", '  node [shape=circle, fontsize=10];']
    names = {}
    for side, boundary, prefix in ((SRC, f.source, "s"), (1 - SRC, f.target, "t")):
        if not len(boundary):
            continue
        lines.append(f"  subgraph cluster_{prefix} {{")
        lines.append(f'    label="{"source" if prefix == "s" else "target"}";')
        for i, tag in enumerate(boundary):
            n = f"{prefix}{i}"
            names[(side, i)] = n
            lines.append(f'    {n} [label="{n}\\n{tag}"];')
        lines.append("  }")
    for t, h, w in f.edges:
        lines.append(f'  {names[t]} -> {names[h]} [label="\\"{_esc(_word(w))}\\""];')
    for k, c in enumerate(f.cycles):
        lines.append(f"  loop{k} [shape=point];")
        lines.append(f'  loop{k} -> loop{k} [label="[{_esc(_word(c.canonical))}]"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
