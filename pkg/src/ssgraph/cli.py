"""
Text format for self-similar k-graphs and semigroup elements, and the
command line.

A system document is line oriented. '#' starts a comment, tokens are
separated by whitespace, and each section opens with its keyword on a line
of its own (RANK takes its value inline):

	RANK 2
	VERTICES
	v00 v10 v01 v11
	EDGES
	h_a 1 v00 v10          # id color range source
	SQUARES
	h_a u_b -> u_a h_b     # e f -> f' e'
	GROUP
	order 2
	names e g
	e g                    # table rows
	g e
	VERTEX_ACTION / EDGE_ACTION
	g x -> y
	COCYCLE
	g e -> h

An element is "0", a triple "(μ; g; ν)" or a braced, comma separated list
of triples. Paths are edge ids separated by spaces, or "@v" for a vertex.
"""

import argparse
import json
import sys
from pathlib import Path as FilePath

from .action import Group, SelfSimilarSystem, make_system, validate_action, validate_group
from .errors import InternalError, InvalidSystem, ParseError
from .groupoid import (REPORT_SCHEMA, boundary_prefixes, horizon_truncations, simplicity_verdict,
	ultrafilter_bijection_check)
from .isg import (OrthogonalityError, Triple, format_element, is_idempotent, make_element, multiply,
	star, zero)
from .kgraph import MAX_RANK, Edge, KGraph, validate_kgraph

SECTIONS = ("RANK", "VERTICES", "EDGES", "SQUARES", "GROUP", "VERTEX_ACTION", "EDGE_ACTION", "COCYCLE")
FIXTURES = FilePath(__file__).parent / "fixtures"


def _tokens(text):
	"""Yield (line number, [(column, token), ...]) for every non-blank line."""
	for number, raw in enumerate(text.splitlines(), 1):
		line = raw.split("#", 1)[0]
		toks = []
		col = 0
		while col < len(line):
			if line[col].isspace():
				col += 1
				continue
			end = col
			while end < len(line) and not line[end].isspace():
				end += 1
			toks.append((col + 1, line[col:end]))
			col = end
		if toks:
			yield number, toks


def _arrow(line, toks, lhs):
	"""Split 'a b -> c d' with lhs tokens on the left."""
	words = [t for _, t in toks]
	if "->" not in words:
		raise ParseError("expected '->'", line, toks[-1][0])
	i = words.index("->")
	if i != lhs:
		raise ParseError("expected %d tokens before '->'" % lhs, line, toks[min(i, len(toks) - 1)][0])
	return toks[:i], toks[i + 1:]


def parse_system(text, name=""):
	"""Parse and fully validate a system document."""
	sections = {}
	current = None
	for line, toks in _tokens(text):
		head = toks[0][1]
		if head in SECTIONS:
			if head in sections:
				raise ParseError("section %s appears twice" % head, line, toks[0][0])
			sections[head] = []
			current = head
			if head == "RANK":
				sections[head].append((line, toks[1:]))
				current = None
			elif len(toks) > 1:
				raise ParseError("unexpected token after %s" % head, line, toks[1][0])
			continue
		if current is None:
			raise ParseError("expected a section keyword, found %r" % head, line, toks[0][0])
		sections[current].append((line, toks))

	if "RANK" not in sections:
		raise ParseError("missing RANK", 1, 1)
	(line, toks), = sections["RANK"]
	if len(toks) != 1 or not toks[0][1].isdigit():
		raise ParseError("RANK takes one positive integer", line, toks[0][0] if toks else 1)
	rank = int(toks[0][1])
	if not 1 <= rank <= MAX_RANK:
		raise ParseError("rank must be between 1 and %d" % MAX_RANK, line, toks[0][0])

	vertices, seen = [], set()
	for line, toks in sections.get("VERTICES", []):
		for col, v in toks:
			if v in seen:
				raise ParseError("vertex %s declared twice" % v, line, col)
			if v.startswith("@"):
				raise ParseError("vertex names may not start with '@'", line, col)
			seen.add(v)
			vertices.append(v)
	if not vertices:
		raise ParseError("no vertices declared", 1, 1)

	edges = {}
	for line, toks in sections.get("EDGES", []):
		if len(toks) != 4:
			raise ParseError("an edge is 'id color range source'", line, toks[0][0])
		(c0, eid), (c1, color), (c2, r), (c3, src) = toks
		if eid in edges or eid in seen:
			raise ParseError("identifier %s declared twice" % eid, line, c0)
		if eid.startswith("@") or eid in ("->", "0"):
			raise ParseError("invalid edge id %r" % eid, line, c0)
		if not color.isdigit() or not 1 <= int(color) <= rank:
			raise ParseError("color must be between 1 and %d" % rank, line, c1)
		for col, v in ((c2, r), (c3, src)):
			if v not in seen:
				raise ParseError("undeclared vertex %s" % v, line, col)
		edges[eid] = Edge(eid, int(color), r, src)

	def edge_token(line, col, tok):
		if tok not in edges:
			raise ParseError("undeclared edge %s" % tok, line, col)
		return tok

	squares = {}
	for line, toks in sections.get("SQUARES", []):
		left, right = _arrow(line, toks, 2)
		if len(right) != 2:
			raise ParseError("a square is 'e f -> f2 e2'", line, toks[-1][0])
		e, f = (edge_token(line, c, t) for c, t in left)
		f2, e2 = (edge_token(line, c, t) for c, t in right)
		if (e, f) in squares:
			raise ParseError("square for (%s, %s) given twice" % (e, f), line, left[0][0])
		squares[(e, f)] = (f2, e2)

	graph = KGraph(rank, vertices, edges.values(), squares)
	problems = validate_kgraph(graph)
	if problems:
		raise InvalidSystem(problems)

	group = None
	if "GROUP" in sections:
		group = _parse_group(sections["GROUP"])

	def element_token(line, col, tok):
		if group is None:
			raise ParseError("group element %s used without a GROUP section" % tok, line, col)
		try:
			return group.element(tok)
		except ValueError:
			raise ParseError("unknown group element %s" % tok, line, col) from None

	def table(section, domain, image):
		out = {}
		for line, toks in sections.get(section, []):
			left, right = _arrow(line, toks, 2)
			if len(right) != 1:
				raise ParseError("expected one token after '->'", line, toks[-1][0])
			g = element_token(line, *left[0])
			x = domain(line, *left[1])
			y = image(line, *right[0])
			if (g, x) in out:
				raise ParseError("%s given twice for (%s, %s)" % (section, left[0][1], x), line, left[0][0])
			out[(g, x)] = y
		return out

	def vertex_token(line, col, tok):
		if tok not in seen:
			raise ParseError("undeclared vertex %s" % tok, line, col)
		return tok

	va = table("VERTEX_ACTION", vertex_token, vertex_token)
	ea = table("EDGE_ACTION", edge_token, edge_token)
	co = table("COCYCLE", edge_token, element_token)
	system = make_system(graph, group, va, ea, co, name)
	problems = validate_action(system)
	if problems:
		raise InvalidSystem(problems)
	return system


def _parse_group(rows):
	order = None
	names = None
	table = []
	for line, toks in rows:
		head = toks[0][1]
		if head == "order":
			if len(toks) != 2:
				raise ParseError("'order' takes one value", line, toks[0][0])
			col, value = toks[1]
			if not value.isdigit() or int(value) < 1:
				raise ParseError("only finite groups are supported; order must be a positive integer",
					line, col)
			order = int(value)
		elif head == "names":
			names = [t for _, t in toks[1:]]
		else:
			table.append((line, toks))
	if order is None:
		raise ParseError("GROUP needs an 'order' line", rows[0][0] if rows else 1, 1)
	if names is None:
		names = ["e"] + ["g%d" % i for i in range(1, order)]
	if len(names) != order:
		raise ParseError("expected %d names" % order, rows[0][0], 1)
	lookup = {n: i for i, n in enumerate(names)}
	if len(table) != order:
		line = table[-1][0] if table else rows[-1][0]
		raise ParseError("expected %d table rows, found %d" % (order, len(table)), line, 1)
	out = []
	for line, toks in table:
		if len(toks) != order:
			raise ParseError("table row has %d entries, expected %d" % (len(toks), order), line, toks[0][0])
		row = []
		for col, t in toks:
			if t in lookup:
				row.append(lookup[t])
			elif t.isdigit() and int(t) < order:
				row.append(int(t))
			else:
				raise ParseError("unknown group element %s" % t, line, col)
		out.append(row)
	group = Group(out, names)
	problems = validate_group(group)
	if problems:
		raise InvalidSystem(["group: " + p for p in problems])
	return group


def serialize_system(system):
	"""Canonical document; defaults are left implicit."""
	graph, group = system.graph, system.group
	out = ["RANK %d" % graph.rank, "VERTICES", " ".join(graph.vertices)]
	if graph.edges:
		out.append("EDGES")
		for e in sorted(graph.edges.values(), key=lambda e: e.id):
			out.append("%s %d %s %s" % (e.id, e.color, e.range, e.source))
	if graph.squares:
		out.append("SQUARES")
		for (e, f), (f2, e2) in sorted(graph.squares.items()):
			out.append("%s %s -> %s %s" % (e, f, f2, e2))
	if group.order > 1:
		n = group.name
		out += ["GROUP", "order %d" % group.order, "names " + " ".join(group.names)]
		for row in group.table:
			out.append(" ".join(n(x) for x in row))
		sections = [
			("VERTEX_ACTION", [(g, v, n(g), system.act_vertex(g, v)) for g in group.elements
				for v in graph.vertices if system.act_vertex(g, v) != v]),
			("EDGE_ACTION", [(g, e, n(g), system.act_edge(g, e)) for g in group.elements
				for e in sorted(graph.edges) if system.act_edge(g, e) != e]),
			("COCYCLE", [(g, e, n(g), n(system.phi_edge(g, e))) for g in group.elements
				for e in sorted(graph.edges) if system.phi_edge(g, e) != g]),
		]
		for title, rows in sections:
			if rows:
				out.append(title)
				out += ["%s %s -> %s" % (gname, x, y) for _, x, gname, y in rows]
	return "\n".join(out) + "\n"


def load_system(path):
	p = FilePath(path)
	if not p.exists() and p.parent == FilePath("."):
		for candidate in (FIXTURES / p.name, FIXTURES / (p.name + ".txt")):
			if candidate.exists():
				p = candidate
				break
	return parse_system(p.read_text(encoding="utf-8"), p.stem)


def load_fixture(name):
	p = FIXTURES / (name if name.endswith(".txt") else name + ".txt")
	return parse_system(p.read_text(encoding="utf-8"), p.stem)


# elements

class _Cursor:
	def __init__(self, text, line):
		self.text = text
		self.line = line
		self.i = 0

	def skip(self):
		while self.i < len(self.text) and self.text[self.i].isspace():
			self.i += 1

	def peek(self):
		self.skip()
		return self.text[self.i] if self.i < len(self.text) else ""

	def expect(self, ch):
		if self.peek() != ch:
			self.fail("expected %r" % ch)
		self.i += 1

	def fail(self, message):
		raise ParseError(message, self.line, self.i + 1)

	def until(self, stops):
		self.skip()
		start = self.i
		while self.i < len(self.text) and self.text[self.i] not in stops:
			self.i += 1
		return start, self.text[start:self.i]


def _parse_path(system, cur, stops):
	start, raw = cur.until(stops)
	toks = raw.split()
	if not toks:
		cur.i = start
		cur.fail("empty path")
	try:
		return system.graph.path(toks)
	except (KeyError, ValueError) as exc:
		cur.i = start
		cur.fail("invalid path %r: %s" % (raw.strip(), exc))


def _parse_triple(system, cur):
	cur.expect("(")
	mu = _parse_path(system, cur, ";)")
	cur.expect(";")
	start, raw = cur.until(";)")
	try:
		g = system.group.element(raw.strip())
	except ValueError:
		cur.i = start
		cur.fail("unknown group element %r" % raw.strip())
	cur.expect(";")
	nu = _parse_path(system, cur, ";)")
	cur.expect(")")
	if mu.source != system.act_vertex(g, nu.source):
		cur.fail("s(%s) = %s but %s·s(%s) = %s" % (mu, mu.source, system.group.name(g), nu,
			system.act_vertex(g, nu.source)))
	return Triple(mu, g, nu)


def _parse_element_at(system, cur):
	ch = cur.peek()
	if ch == "0":
		cur.i += 1
		return zero(system)
	if ch == "(":
		triples = [_parse_triple(system, cur)]
	elif ch == "{":
		cur.i += 1
		triples = []
		if cur.peek() != "}":
			triples.append(_parse_triple(system, cur))
			while cur.peek() == ",":
				cur.i += 1
				triples.append(_parse_triple(system, cur))
		cur.expect("}")
	else:
		cur.fail("expected an element")
	try:
		return make_element(system, triples)
	except OrthogonalityError as exc:
		cur.fail(str(exc))


def parse_element(system, text, line=1):
	cur = _Cursor(text, line)
	E = _parse_element_at(system, cur)
	if cur.peek():
		cur.fail("unexpected trailing input")
	return E


def parse_operations(system, text):
	"""
	One operation per line: "E * F", "star E" or "idempotent E". Returns a
	list of (kind, operands).
	"""
	ops = []
	for number, raw in enumerate(text.splitlines(), 1):
		body = raw.split("#", 1)[0]
		if not body.strip():
			continue
		cur = _Cursor(body, number)
		word = body.strip().split(None, 1)[0]
		if word in ("star", "idempotent"):
			cur.skip()
			cur.i += len(word)
			E = _parse_element_at(system, cur)
			ops.append((word, (E,)))
		else:
			E = _parse_element_at(system, cur)
			cur.expect("*")
			F = _parse_element_at(system, cur)
			ops.append(("mul", (E, F)))
		if cur.peek():
			cur.fail("unexpected trailing input")
	return ops


def run_operation(kind, operands):
	if kind == "mul":
		return format_element(multiply(*operands))
	if kind == "star":
		return format_element(star(operands[0]))
	return "true" if is_idempotent(operands[0]) else "false"


# commands

def _depth(text):
	try:
		parts = [int(p) for p in text.split(",")]
	except ValueError:
		raise argparse.ArgumentTypeError("depth is an integer or a comma separated list") from None
	if any(p < 0 for p in parts):
		raise argparse.ArgumentTypeError("depth must be nonnegative")
	return parts[0] if len(parts) == 1 else tuple(parts)


def dump_json(doc):
	return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def cmd_validate(args, out):
	load_system(args.file)
	print("valid", file=out)
	return 0


def cmd_analyze(args, out):
	system = load_system(args.file)
	report = simplicity_verdict(system, args.depth)
	if args.format == "json":
		print(dump_json(report.to_json()), file=out)
	else:
		print(report.to_text(), file=out)
	return 0


def cmd_mul(args, out):
	system = load_system(args.system)
	ops = parse_operations(system, FilePath(args.elements).read_text(encoding="utf-8"))
	for kind, operands in ops:
		print(run_operation(kind, operands), file=out)
	return 0


def cmd_boundary(args, out):
	system = load_system(args.file)
	if args.vertex not in system.graph.vertices:
		raise ValueError("unknown vertex %s" % args.vertex)
	prefixes = boundary_prefixes(system, args.vertex, args.depth)
	truncations = horizon_truncations(system, args.vertex, args.depth)
	check = ultrafilter_bijection_check(system, args.vertex, args.depth)
	if args.format == "json":
		doc = {
			"schema": REPORT_SCHEMA,
			"vertex": args.vertex,
			"prefixes": len(prefixes),
			"truncations": [str(p) for p in truncations],
			"finite_boundary_paths": [str(b.prefix) for b in prefixes if b.complete],
			"bijection": check,
		}
		print(dump_json(doc), file=out)
	else:
		for p in truncations:
			print(p, file=out)
		print("boundary prefixes: %d, ultrafilters: %d, matched: %s"
			% (check["boundary_prefixes"], check["ultrafilters"], str(check["matched"]).lower()), file=out)
	return 0


def build_parser():
	parser = argparse.ArgumentParser(prog="ssgraph", description="Self-similar k-graph toolkit.")
	sub = parser.add_subparsers(dest="command", required=True)
	p = sub.add_parser("validate", help="check a system document")
	p.add_argument("file")
	p.set_defaults(run=cmd_validate)
	p = sub.add_parser("analyze", help="run the structural checkers")
	p.add_argument("file")
	p.add_argument("--depth", type=_depth, default=4)
	p.add_argument("--format", choices=("json", "text"), default="text")
	p.set_defaults(run=cmd_analyze)
	p = sub.add_parser("mul", help="evaluate products, stars and idempotent tests")
	p.add_argument("system")
	p.add_argument("elements")
	p.set_defaults(run=cmd_mul)
	p = sub.add_parser("boundary", help="list boundary path truncations at a vertex")
	p.add_argument("file")
	p.add_argument("--vertex", required=True)
	p.add_argument("--depth", type=_depth, default=3)
	p.add_argument("--format", choices=("json", "text"), default="text")
	p.set_defaults(run=cmd_boundary)
	return parser


def main(argv=None, out=None, err=None):
	out = out or sys.stdout
	err = err or sys.stderr
	args = build_parser().parse_args(argv)
	try:
		return args.run(args, out)
	except InternalError as exc:
		print("internal error: %s" % exc, file=err)
		return 2
	except InvalidSystem as exc:
		for p in exc.problems:
			print("invalid: %s" % p, file=err)
		return 1
	except (OSError, ParseError, ValueError) as exc:
		print("error: %s" % exc, file=err)
		return 1


__all__ = [
	"SelfSimilarSystem", "build_parser", "dump_json", "load_fixture", "load_system", "main",
	"parse_element", "parse_operations", "parse_system", "run_operation", "serialize_system",
]
