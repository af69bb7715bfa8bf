"""Command line front end.

Subcommands read grammar files by extension (``.llg``, ``.mcfg``, ``.acg``);
anything that needs an LLG converts the other formats first.  Exit codes:
0 success, 1 negative membership answer, 2 parse or validation errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import acg, llg, mcfg
from .dot import to_dot
from .llg import GrammarSyntaxError, LLGError

ASCII_BULLET = "."
BULLET = "•"


class UsageError(Exception):
    """Reported as ``path:line: message`` with exit code 2."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise UsageError(f"{path}:0: {err.strerror}") from None


def _kind(path: str) -> str:
    suffix = Path(path).suffix.lower()
    if suffix not in (".llg", ".mcfg", ".acg"):
        raise UsageError(f"{path}:0: unknown grammar format {suffix!r} (use .llg, .mcfg or .acg)")
    return suffix[1:]


def load(path: str):
    kind = _kind(path)
    text = _read(path)
    if kind == "llg":
        return kind, llg.parse_llg(text, path)
    if kind == "mcfg":
        return kind, mcfg.parse_mcfg(text, path)
    return kind, acg.parse_acg(text, path)


def load_llg(path: str) -> llg.LLG:
    kind, g = load(path)
    if kind == "mcfg":
        return mcfg.mcfg_to_llg(g)
    if kind == "acg":
        return acg.acg_to_llg(g)
    diags = llg.validate(g)
    if diags:
        raise UsageError(f"{path}:1: {diags[0]}")
    return g


def _write(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _show_word(w, ascii_mode: bool) -> str:
    s = llg.word_str(w)
    if ascii_mode:
        s = s.replace(BULLET, ASCII_BULLET)
    return s if s else "ε"


def _parse_word(text: str, g: llg.LLG, ascii_mode: bool):
    if ascii_mode:
        text = text.replace(ASCII_BULLET, BULLET)
    if text == "ε":
        return ()
    try:
        return llg.parse_word(text, g.alphabet)
    except LLGError as err:
        raise UsageError(f"<word>:0: {err}") from None


# -- subcommands -----------------------------------------------------------------


def cmd_check(args) -> int:
    kind, g = load(args.file)
    if kind == "llg":
        diags = llg.validate(g)
        for d in diags:
            print(f"{args.file}:1: {d}", file=sys.stderr)
        if diags:
            return 2
        print(f"{args.file}: ok, llg with {len(g.lexicon)} axioms over {len(g.atoms)} atoms")
    elif kind == "mcfg":
        print(f"{args.file}: ok, mcfg with {len(g.productions)} productions")
    else:
        print(f"{args.file}: ok, acg with {len(g.abstract.constants)} constants")
    return 0


def cmd_mcfg2llg(args) -> int:
    _, g = load(args.input)
    if not isinstance(g, mcfg.MCFG):
        raise UsageError(f"{args.input}:0: expected an .mcfg file")
    _write(llg.format_llg(mcfg.mcfg_to_llg(g)), args.output)
    return 0


def cmd_llg2mcfg(args) -> int:
    g = load_llg(args.input)
    try:
        out = mcfg.llg_to_mcfg(g)
    except mcfg.NotTensorFree as err:
        line = g.lines.get(err.entry, 1)
        raise UsageError(f"{args.input}:{line}: {err}") from None
    _write(mcfg.format_mcfg(out), args.output)
    return 0


def cmd_acg2llg(args) -> int:
    _, g = load(args.input)
    if not isinstance(g, acg.ACG):
        raise UsageError(f"{args.input}:0: expected an .acg file")
    _write(llg.format_llg(acg.acg_to_llg(g)), args.output)
    return 0


def cmd_generate(args) -> int:
    g = load_llg(args.input)
    # --max-len prunes axiom choices by their letters, which bounds word length
    words = llg.language(g, args.max_axioms, max_len=args.max_len)
    for w in sorted(words, key=lambda w: (len(w), w)):
        print(_show_word(w, args.ascii))
    return 0


def cmd_member(args) -> int:
    g = load_llg(args.input)
    w = _parse_word(args.word, g, args.ascii)
    ok, d = llg.member(g, w, args.max_axioms)
    print("yes" if ok else "no")
    if ok and args.witness:
        print(llg.explain(d, g))
    return 0 if ok else 1


def cmd_render(args) -> int:
    g = load_llg(args.input)
    try:
        e = g.entry(args.axiom)
    except KeyError:
        raise UsageError(f"{args.input}:0: no axiom named {args.axiom!r}") from None
    _write(to_dot(e.value, f"{e.name} : {e.formula}"), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cowordisms", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="parse and validate a grammar file")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    for name, func, help_ in (
        ("mcfg2llg", cmd_mcfg2llg, "translate an MCFG into an LLG"),
        ("llg2mcfg", cmd_llg2mcfg, "translate a tensor-free LLG into an MCFG"),
        ("acg2llg", cmd_acg2llg, "translate a string ACG into an LLG"),
    ):
        c = sub.add_parser(name, help=help_)
        c.add_argument("input")
        c.add_argument("-o", "--output", help="output file (default: stdout)")
        c.set_defaults(func=func)

    c = sub.add_parser("generate", help="list words derivable within a bound")
    c.add_argument("input")
    c.add_argument("--max-axioms", type=int, required=True)
    c.add_argument("--max-len", type=int)
    c.add_argument("--ascii", action="store_true", help=f"print {BULLET} as {ASCII_BULLET}")
    c.set_defaults(func=cmd_generate)

    c = sub.add_parser("member", help="decide bounded membership of a word")
    c.add_argument("input")
    c.add_argument("--word", required=True)
    c.add_argument("--max-axioms", type=int, required=True)
    c.add_argument("--witness", action="store_true", help="print the derivation found")
    c.add_argument("--ascii", action="store_true", help=f"accept {ASCII_BULLET} for {BULLET}")
    c.set_defaults(func=cmd_member)

    c = sub.add_parser("render", help="write one axiom as Graphviz DOT")
    c.add_argument("input")
    c.add_argument("--axiom", required=True)
    c.add_argument("-o", "--output", help="output file (default: stdout)")
    c.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except GrammarSyntaxError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (LLGError, mcfg.MCFGError, acg.ACGError) as err:
        path = getattr(args, "input", None) or getattr(args, "file", "<input>")
        print(f"error: {path}:1: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
