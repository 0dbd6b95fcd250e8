"""Partition lattices: four-element generating sets, closure and proof replay."""

from .closure import ClosureReport, Verdict, closure, generates, member_of_closure
from .constructions import GeneratorQuad, build_for
from .partition import Partition, format_prt, from_blocks, parse_prt
from .replay import ProofScript, run_script
from .terms import parse_term, format_term, evaluate

__all__ = [
    "ClosureReport",
    "GeneratorQuad",
    "Partition",
    "ProofScript",
    "Verdict",
    "build_for",
    "closure",
    "evaluate",
    "format_prt",
    "format_term",
    "from_blocks",
    "generates",
    "member_of_closure",
    "parse_prt",
    "parse_term",
    "run_script",
]
