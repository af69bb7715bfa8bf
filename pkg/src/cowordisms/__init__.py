"""Word cobordisms and the grammar formalisms built on them.

Modules: ``multiword`` and ``cowordism`` (the category), ``mll`` (linear
logic proofs and their semantics), ``llg``, ``mcfg`` and ``acg`` (grammars
and translations), ``ssp`` (the subset-sum example) and ``cli``.
"""

from importlib.resources import files

__version__ = "0.1.0"


def data_path(name: str) -> str:
    """Path of a shipped example grammar, e.g. ``data_path("ssp.llg")``."""
    return str(files(__name__) / "data" / name)
