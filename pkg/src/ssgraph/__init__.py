"""Self-similar actions on k-graphs: paths, the inverse semigroup, and structural verdicts."""

from .action import (APPROXIMATE, EXACT, FAILS, HOLDS, K1_EXACT, UNKNOWN, Group, SelfSimilarSystem,
	TriVerdict, make_system, validate_action)
from .cli import load_fixture, parse_element, parse_system, serialize_system
from .errors import InternalError, InvalidSystem, ParseError
from .groupoid import simplicity_verdict
from .isg import ISGElement, Triple, iota, make_element, multiply, star, zero
from .kgraph import Edge, KGraph, Path, validate_kgraph

__all__ = [
	"APPROXIMATE", "EXACT", "FAILS", "HOLDS", "K1_EXACT", "UNKNOWN",
	"Edge", "Group", "ISGElement", "InternalError", "InvalidSystem", "KGraph", "ParseError", "Path",
	"SelfSimilarSystem", "Triple", "TriVerdict",
	"iota", "load_fixture", "make_element", "make_system", "multiply", "parse_element", "parse_system",
	"serialize_system", "simplicity_verdict", "star", "validate_action", "validate_kgraph", "zero",
]
