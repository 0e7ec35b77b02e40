"""
Finite groups acting self-similarly on a k-graph.

The action and the restriction cocycle are given on vertices and edges and
extended to paths by folding along the normal form. Fixed-point questions are
answered on the automaton whose states are pairs (h, u) and whose moves follow
edges e at u with h·e = e, landing in (φ(h, e), s(e)). Because factorization
is unique, a path is fixed by g exactly when each step of any of its edge
listings is fixed by the current restriction, so reachability in this
automaton decides which paths are fixed and with which cocycle value.
"""

from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .errors import InternalError
from .kgraph import sorted_paths

HOLDS = "Holds"
FAILS = "Fails"
UNKNOWN = "Unknown"

EXACT = "Exact"
K1_EXACT = "K1Exact"
APPROXIMATE = "Approximate"


@dataclass(frozen=True)
class TriVerdict:
	status: str
	witness: dict = field(default_factory=dict)
	depth: tuple = None
	regime: str = EXACT
	note: str = ""

	def __bool__(self):
		raise TypeError("a TriVerdict has three values; compare .status instead")

	def to_json(self):
		return {
			"status": self.status,
			"witness": self.witness,
			"regime": self.regime,
			"bound": list(self.depth) if self.depth is not None else None,
		}


def combine(verdicts, depth, holds_note=""):
	"""Conjunction in three-valued logic: the first failure wins, then Unknown."""
	verdicts = list(verdicts)
	for v in verdicts:
		if v.status == FAILS:
			return v
	pending = [v for v in verdicts if v.status == UNKNOWN]
	if pending:
		return TriVerdict(UNKNOWN, {"rule": "undecided parts", "parts": [p.witness for p in pending]},
			depth, APPROXIMATE, "; ".join(p.note for p in pending if p.note))
	regime = K1_EXACT if any(v.regime == K1_EXACT for v in verdicts) else EXACT
	return TriVerdict(HOLDS, {"rule": "all parts hold", "parts": [v.witness for v in verdicts]},
		None, regime, holds_note)


class Group:
	"""A finite group given by its multiplication table; element 0 is the identity."""

	def __init__(self, table, names=None):
		self.table = tuple(tuple(row) for row in table)
		self.order = len(self.table)
		if names is None:
			names = ["e"] + ["g%d" % i for i in range(1, self.order)]
		self.names = tuple(names)
		self._by_name = {n: i for i, n in enumerate(self.names)}
		self._inverse = {}
		for a in range(self.order):
			for b in range(self.order):
				if self.table[a][b] == 0 and self.table[b][a] == 0:
					self._inverse.setdefault(a, b)

	def __eq__(self, other):
		return isinstance(other, Group) and self.table == other.table and self.names == other.names

	def __hash__(self):
		return hash(self.table)

	@property
	def elements(self):
		return range(self.order)

	def mul(self, a, b):
		return self.table[a][b]

	def inv(self, a):
		return self._inverse[a]

	def name(self, a):
		return self.names[a]

	def element(self, token):
		if token in self._by_name:
			return self._by_name[token]
		if token.isdigit() and int(token) < self.order:
			return int(token)
		raise ValueError("unknown group element %r" % (token,))


def trivial_group():
	return Group([[0]])


def cyclic_group(n, names=None):
	return Group([[(a + b) % n for b in range(n)] for a in range(n)], names)


def validate_group(group):
	problems = []
	n = group.order
	if n == 0:
		return ["group has no elements"]
	if len(set(group.names)) != n:
		problems.append("group element names are not distinct")
	for row in group.table:
		if len(row) != n or any(not (0 <= x < n) for x in row):
			problems.append("group table is not a %d x %d table over 0..%d" % (n, n, n - 1))
			return problems
	for a in range(n):
		if group.table[0][a] != a or group.table[a][0] != a:
			problems.append("group element %s: 0 is not a two-sided identity" % group.name(a))
		if a not in group._inverse:
			problems.append("group element %s has no inverse" % group.name(a))
	for a in range(n):
		for b in range(n):
			for c in range(n):
				if group.mul(group.mul(a, b), c) != group.mul(a, group.mul(b, c)):
					problems.append("group table not associative at (%s, %s, %s)"
						% (group.name(a), group.name(b), group.name(c)))
					return problems
	return problems


class SelfSimilarSystem:
	"""
	A k-graph with a finite group acting on vertices and edges and a
	restriction map on edges. All three maps are total dictionaries keyed by
	(group element, id).
	"""

	def __init__(self, graph, group, vertex_action, edge_action, cocycle, name=""):
		self.graph = graph
		self.group = group
		self.vertex_action = dict(vertex_action)
		self.edge_action = dict(edge_action)
		self.cocycle = dict(cocycle)
		self.name = name
		self._act_cache = {}

	def __repr__(self):
		return "SelfSimilarSystem(%r, group of order %d)" % (self.graph, self.group.order)

	@property
	def identity(self):
		return 0

	@property
	def nonidentity(self):
		return range(1, self.group.order)

	def act_vertex(self, g, v):
		return self.vertex_action[(g, v)]

	def act_edge(self, g, e):
		return self.edge_action[(g, e)]

	def phi_edge(self, g, e):
		return self.cocycle[(g, e)]

	def act(self, g, p):
		if not p.edges:
			return self.graph.vertex(self.act_vertex(g, p.range))
		key = (g, p)
		hit = self._act_cache.get(key)
		if hit is None:
			out = []
			h = g
			for e in p.edges:
				out.append(self.act_edge(h, e))
				h = self.phi_edge(h, e)
			# colors are preserved edge by edge, so the image is already sorted
			hit = self.graph._path(self.act_vertex(g, p.range), tuple(out))
			self._act_cache[key] = hit
		return hit

	def cocycle_path(self, g, p):
		h = g
		for e in p.edges:
			h = self.phi_edge(h, e)
		return h

	def is_strongly_fixed(self, g, p):
		return self.act(g, p) == p and self.cocycle_path(g, p) == 0


def make_system(graph, group=None, vertex_action=None, edge_action=None, cocycle=None, name=""):
	"""
	Fill in unspecified data: the identity acts trivially with trivial
	restrictions, missing vertex and edge images are fixed points, and a
	missing restriction φ(g, e) is g itself.
	"""
	group = group or trivial_group()
	va = dict(vertex_action or {})
	ea = dict(edge_action or {})
	co = dict(cocycle or {})
	for g in group.elements:
		for v in graph.vertices:
			va.setdefault((g, v), v)
		for e in graph.edges:
			ea.setdefault((g, e), e)
			co.setdefault((g, e), g)
	return SelfSimilarSystem(graph, group, va, ea, co, name)


def act(s, g, p):
	return s.act(g, p)


def cocycle_path(s, g, p):
	return s.cocycle_path(g, p)


def validate_action(s):
	"""Every violated self-similarity requirement, as a list of messages."""
	G, graph = s.group, s.graph
	problems = ["group: " + p for p in validate_group(G)]
	if problems:
		return problems
	n = G.name
	vertices = list(graph.vertices)
	edges = sorted(graph.edges)
	for g in G.elements:
		for v in vertices:
			if s.vertex_action.get((g, v)) not in graph._vertex_set:
				problems.append("action: %s·%s is undefined or not a vertex" % (n(g), v))
		for e in edges:
			if s.edge_action.get((g, e)) not in graph.edges:
				problems.append("action: %s·%s is undefined or not an edge" % (n(g), e))
			if s.cocycle.get((g, e)) not in range(G.order):
				problems.append("cocycle: φ(%s, %s) is undefined" % (n(g), e))
	if problems:
		return problems
	for g in G.elements:
		if len({s.act_vertex(g, v) for v in vertices}) != len(vertices):
			problems.append("action: %s is not a bijection on vertices" % n(g))
		if len({s.act_edge(g, e) for e in edges}) != len(edges):
			problems.append("action: %s is not a bijection on edges" % n(g))
		for e in edges:
			x, y = graph.edges[e], graph.edges[s.act_edge(g, e)]
			if x.color != y.color:
				problems.append("action: %s·%s changes color" % (n(g), e))
			if y.range != s.act_vertex(g, x.range):
				problems.append("action: r(%s·%s) != %s·r(%s)" % (n(g), e, n(g), e))
			if y.source != s.act_vertex(g, x.source):
				problems.append("action: s(%s·%s) != %s·s(%s)" % (n(g), e, n(g), e))
	for e in edges:
		if s.phi_edge(0, e) != 0:
			problems.append("cocycle: φ(e, %s) is not the identity" % e)
	for g in G.elements:
		for h in G.elements:
			gh = G.mul(g, h)
			for v in vertices:
				if s.act_vertex(gh, v) != s.act_vertex(g, s.act_vertex(h, v)):
					problems.append("action: not a homomorphism at (%s, %s) on vertex %s" % (n(g), n(h), v))
			for e in edges:
				if s.act_edge(gh, e) != s.act_edge(g, s.act_edge(h, e)):
					problems.append("action: not a homomorphism at (%s, %s) on edge %s" % (n(g), n(h), e))
				lhs = s.phi_edge(gh, e)
				rhs = G.mul(s.phi_edge(g, s.act_edge(h, e)), s.phi_edge(h, e))
				if lhs != rhs:
					problems.append("axiom (a) cocycle identity: φ(%s, %s) = %s but φ(%s, %s·%s)φ(%s, %s) = %s"
						% (n(gh), e, n(lhs), n(g), n(h), e, n(h), e, n(rhs)))
	for g in G.elements:
		for e in edges:
			src = graph.edges[e].source
			if s.act_vertex(s.phi_edge(g, e), src) != s.act_vertex(g, src):
				problems.append("axiom (b) self-similar equation: φ(%s, %s)·s(%s) != %s·s(%s)"
					% (n(g), e, e, n(g), e))
	if problems:
		return problems
	for (e, f), (f2, e2) in sorted(graph.squares.items()):
		for g in G.elements:
			left = (s.act_edge(g, e), s.act_edge(s.phi_edge(g, e), f))
			right = (s.act_edge(g, f2), s.act_edge(s.phi_edge(g, f2), e2))
			if graph.squares.get(left) != right:
				problems.append("axiom (b) self-similar equation: %s·(%s %s) differs from %s·(%s %s)"
					% (n(g), e, f, n(g), f2, e2))
			c1 = s.phi_edge(s.phi_edge(g, e), f)
			c2 = s.phi_edge(s.phi_edge(g, f2), e2)
			if c1 != c2:
				problems.append("axiom (c) cocycle on paths: φ(%s, %s %s) is %s or %s depending on factorization"
					% (n(g), e, f, n(c1), n(c2)))
	return problems


def as_degree(s, cap):
	if isinstance(cap, int):
		return (cap,) * s.graph.rank
	cap = tuple(cap)
	if len(cap) != s.graph.rank:
		raise ValueError("depth %r does not have %d coordinates" % (cap, s.graph.rank))
	return cap


# the fixed-edge automaton

def fixed_moves(s, h, u):
	out = []
	for e in s.graph.edges_at(u):
		if s.act_edge(h, e.id) == e.id:
			out.append((e.id, s.phi_edge(h, e.id), e.source))
	return out


def _explore(s, start):
	"""Breadth-first parent links from start; identity states are not expanded."""
	parent = {start: None}
	queue = deque([start])
	while queue:
		state = queue.popleft()
		if state[0] == 0 and state != start:
			continue
		for e, h2, u2 in fixed_moves(s, *state):
			nxt = (h2, u2)
			if nxt not in parent:
				parent[nxt] = (state, e)
				queue.append(nxt)
	return parent


def _trace(parent, state):
	edges = []
	while parent[state] is not None:
		state, e = parent[state]
		edges.append(e)
	return edges[::-1]


class _Restricted:
	"""States with nontrivial group part reachable from (g, v) without passing the identity."""

	def __init__(self, s, g, v):
		self.start = (g, v)
		self.graph = nx.MultiDiGraph()
		self.exits = {}
		self.graph.add_node(self.start)
		queue = deque([self.start])
		seen = {self.start}
		while queue:
			state = queue.popleft()
			for e, h2, u2 in fixed_moves(s, *state):
				if h2 == 0:
					self.exits.setdefault(state, []).append((e, u2))
					continue
				nxt = (h2, u2)
				self.graph.add_edge(state, nxt, key=e, color=s.graph.color(e))
				if nxt not in seen:
					seen.add(nxt)
					queue.append(nxt)

	def cyclic_components(self, nodes=None):
		sub = self.graph if nodes is None else self.graph.subgraph(nodes)
		out = []
		for comp in nx.strongly_connected_components(sub):
			node = min(comp)
			if len(comp) > 1 or sub.has_edge(node, node):
				out.append(sorted(comp))
		out.sort()
		return out

	def live(self):
		live = set(self.exits)
		for state in list(self.exits):
			live |= nx.ancestors(self.graph, state)
		return live

	def walk(self, a, b, nodes=None):
		"""Edge ids of a shortest walk from a to b inside nodes."""
		sub = self.graph if nodes is None else self.graph.subgraph(nodes)
		route = nx.shortest_path(sub, a, b)
		return [min(sub[x][y]) for x, y in zip(route, route[1:])]

	def closed_walk(self, node, comp, colors=None):
		"""A closed walk at node inside comp; when colors is given, using each of them."""
		sub = self.graph.subgraph(comp)
		if colors is None:
			best = None
			for _, y, key in sorted(sub.out_edges(node, keys=True), key=lambda t: (str(t[2]), t[1])):
				back = [] if y == node else self.walk(y, node, comp)
				if best is None or len(back) < len(best) - 1:
					best = [key] + back
			return best
		walk, at = [], node
		for c in colors:
			x, y, key = min(((x, y, k) for x, y, k, d in sub.edges(keys=True, data=True) if d["color"] == c),
				key=lambda t: (str(t[2]), t[0], t[1]))
			walk += self.walk(at, x, comp) + [key]
			at = y
		return walk + self.walk(at, node, comp)

	def runs_to_exit(self, live):
		"""Every edge listing from the start through nontrivial states to an identity state."""
		out = []

		def go(state, acc):
			for e, _ in self.exits.get(state, ()):
				out.append(acc + [e])
			for _, nxt, key in sorted(self.graph.out_edges(state, keys=True), key=lambda t: str(t[2])):
				if nxt in live:
					go(nxt, acc + [key])

		if self.start in live:
			go(self.start, [])
		return out


def _lasso(prefix, cycle):
	head = " ".join(prefix)
	loop = cycle[0] + "^∞" if len(cycle) == 1 else "(" + " ".join(cycle) + ")^∞"
	return (head + " " + loop) if head else loop


def minimal_paths(graph, paths):
	"""Members of paths with no proper prefix in paths."""
	paths = sorted_paths(paths)
	return tuple(p for p in paths
		if not any(q != p and graph.is_prefix(q, p) for q in paths))


def strongly_fixed_paths(s, g, v, cap):
	"""All τ in vΛ with d(τ) <= cap, g·τ = τ and φ(g, τ) = e, found as automaton runs."""
	cap = as_degree(s, cap)
	k = s.graph.rank
	found = []
	if s.act_vertex(g, v) != v:
		return ()

	def grow(color, h, u, acc, deg):
		if h == 0:
			found.append(s.graph._path(v, tuple(acc)))
		for c in range(color, k + 1):
			if deg[c - 1] >= cap[c - 1]:
				continue
			for e, h2, u2 in fixed_moves(s, h, u):
				if s.graph.color(e) != c:
					continue
				deg[c - 1] += 1
				acc.append(e)
				grow(c, h2, u2, acc, deg)
				acc.pop()
				deg[c - 1] -= 1

	grow(1, g, v, [], [0] * k)
	return sorted_paths(found)


def is_pseudo_free(s):
	for g in s.nonidentity:
		for v in s.graph.vertices:
			if s.act_vertex(g, v) != v:
				continue
			parent = _explore(s, (g, v))
			for state in parent:
				if state[0] == 0:
					tau = s.graph.normalize(v, _trace(parent, state))
					return TriVerdict(FAILS, {"rule": "strongly fixed path", "group_element": s.group.name(g),
						"path": str(tau)}, note="%s strongly fixes %s" % (s.group.name(g), tau))
	return TriVerdict(HOLDS, {"rule": "no identity state reachable from a nontrivial state"},
		note="no nontrivial element strongly fixes a path")


def is_locally_exhausted(s, g, cap):
	if g == 0:
		raise ValueError("local exhaustion is only asked of nontrivial elements")
	cap = as_degree(s, cap)
	name = s.group.name(g)
	per_vertex = {}
	undecided = []
	for v in s.graph.vertices:
		if s.act_vertex(g, v) != v:
			continue
		auto = _Restricted(s, g, v)
		if not auto.exits:
			continue
		live = auto.live()
		cyclic = auto.cyclic_components(live)
		if cyclic:
			if s.graph.rank == 1:
				comp = cyclic[0]
				node = comp[0]
				pre = auto.walk(auto.start, node, live)
				loop = auto.closed_walk(node, comp)
				exit_walk = _exit_walk(auto, node, live)
				shape = " ".join(pre + ["(" + " ".join(loop) + ")^n"] + exit_walk)
				return TriVerdict(FAILS, {"rule": "infinitely many minimal strongly fixed paths",
					"group_element": name, "vertex": v, "family": shape}, regime=K1_EXACT,
					note="%s strongly fixes the infinite family %s at %s" % (name, shape, v))
			undecided.append(v)
			continue
		minimal = minimal_paths(s.graph, [s.graph.normalize(v, run) for run in auto.runs_to_exit(live)])
		per_vertex[v] = [str(p) for p in minimal]
	if undecided:
		return TriVerdict(UNKNOWN, {"rule": "strongly fixed runs revisit states (rank >= 2)",
			"group_element": name, "vertices": undecided}, cap, APPROXIMATE,
			"local exhaustion of %s undecided at %s" % (name, ", ".join(undecided)))
	return TriVerdict(HOLDS, {"rule": "finite set of minimal strongly fixed paths",
		"group_element": name, "M": per_vertex}, note=_m_note(name, per_vertex))


def _m_note(name, per_vertex):
	if not per_vertex:
		return "%s strongly fixes no path" % name
	return "%s: M = %s" % (name, "; ".join("%s: {%s}" % (v, ", ".join(m)) for v, m in sorted(per_vertex.items())))


def _exit_walk(auto, node, live):
	for target in sorted(auto.exits):
		if target in live and nx.has_path(auto.graph.subgraph(live), node, target):
			return auto.walk(node, target, live) + [auto.exits[target][0][0]]
	raise InternalError("live state without a route to the identity")


def is_hausdorff(s, cap):
	cap = as_degree(s, cap)
	pf = is_pseudo_free(s)
	if pf.status == HOLDS:
		return TriVerdict(HOLDS, {"rule": "pseudo-free"}, note="pseudo-free")
	parts = [is_locally_exhausted(s, g, cap) for g in s.nonidentity]
	out = combine(parts, cap, "every SF_g is locally exhausted")
	return out


def fixes_all_boundary(s, g, v):
	"""
	Whether g fixes every boundary path at v. Every path extends to a
	boundary path, so this holds exactly when every path at v is fixed.
	"""
	name = s.group.name(g)
	if s.act_vertex(g, v) != v:
		return TriVerdict(FAILS, {"rule": "vertex moved", "group_element": name, "vertex": v,
			"image": s.act_vertex(g, v)}, note="%s moves %s" % (name, v))
	parent = _explore(s, (g, v))
	for state in parent:
		h, u = state
		if h == 0:
			continue
		for e in s.graph.edges_at(u):
			if s.act_edge(h, e.id) != e.id:
				lam = s.graph.normalize(v, _trace(parent, state) + [e.id])
				return TriVerdict(FAILS, {"rule": "moved path", "group_element": name, "vertex": v,
					"path": str(lam)}, note="%s moves %s" % (name, lam))
	return TriVerdict(HOLDS, {"rule": "every path at v is fixed", "group_element": name, "vertex": v},
		note="%s fixes every path at %s" % (name, v))


def _trapped_boundary(s, g, v):
	"""
	Search for a boundary path at v fixed by g whose restrictions all stay
	nontrivial. Returns ("found", description), ("none", None) or
	("unknown", None).
	"""
	if g == 0 or s.act_vertex(g, v) != v:
		return "none", None
	auto = _Restricted(s, g, v)
	order = list(nx.bfs_tree(auto.graph, auto.start)) if auto.graph.number_of_nodes() else [auto.start]
	for state in order:
		if s.graph.is_edgeless(state[1]):
			walk = auto.walk(auto.start, state)
			path = s.graph.normalize(v, walk)
			return "found", str(path)
	k = s.graph.rank
	cyclic = auto.cyclic_components()
	colors_needed = set(range(1, k + 1))
	for comp in cyclic:
		sub = auto.graph.subgraph(comp)
		colors = {d["color"] for _, _, d in sub.edges(data=True)}
		if colors >= colors_needed:
			node = comp[0]
			pre = auto.walk(auto.start, node)
			loop = auto.closed_walk(node, comp, None if k == 1 else sorted(colors_needed))
			return "found", _lasso(pre, loop)
	if cyclic:
		return "unknown", None
	return "none", None


def eventually_trivial_cocycle(s, g, cap):
	"""Whether every boundary path fixed by g has a prefix along which g restricts to e."""
	cap = as_degree(s, cap)
	name = s.group.name(g)
	if g == 0:
		return TriVerdict(HOLDS, {"rule": "identity restricts trivially at n = 0", "group_element": name},
			note="trivial at n = 0")
	undecided = []
	for v in s.graph.vertices:
		kind, found = _trapped_boundary(s, g, v)
		if kind == "found":
			return TriVerdict(FAILS, {"rule": "fixed boundary path with nontrivial restrictions",
				"group_element": name, "vertex": v, "path": found},
				note="%s fixes %s with φ(%s, x(0,n)) != e for all n" % (name, found, name))
		if kind == "unknown":
			undecided.append(v)
	if undecided:
		return TriVerdict(UNKNOWN, {"rule": "cycles avoiding some color (rank >= 2)",
			"group_element": name, "vertices": undecided}, cap, APPROXIMATE,
			"fixed runs of %s undecided at %s" % (name, ", ".join(undecided)))
	return TriVerdict(HOLDS, {"rule": "no trapped fixed boundary path", "group_element": name},
		note="every %s-fixed boundary path reaches restriction e" % name)


def cocycle_condition(s, cap):
	"""eventually_trivial_cocycle over every nontrivial element."""
	cap = as_degree(s, cap)
	parts = [eventually_trivial_cocycle(s, g, cap) for g in s.nonidentity]
	if not parts:
		return TriVerdict(HOLDS, {"rule": "trivial group"}, note="trivial group")
	return combine(parts, cap, "every fixed boundary path reaches restriction e")


def strongly_fixed_exhaustive(s, g, v, cap):
	"""Search for a finite exhaustive set at v made of paths strongly fixed by g."""
	cap = as_degree(s, cap)
	if fixes_all_boundary(s, g, v).status != HOLDS:
		raise ValueError("%s does not fix every boundary path at %s" % (s.group.name(g), v))
	graph = s.graph
	name = s.group.name(g)
	k = graph.rank

	def holds(xs, how):
		xs = [str(p) for p in sorted_paths(xs)]
		return TriVerdict(HOLDS, {"rule": how, "group_element": name, "vertex": v, "X": xs},
			note="X = {%s}" % ", ".join(xs))

	if graph.is_edgeless(v):
		return TriVerdict(FAILS, {"rule": "no finite exhaustive set at an edgeless vertex",
			"group_element": name, "vertex": v}, note="%s receives no edges" % v)
	for c in range(1, k + 1):
		xs = [graph.edge(e.id) for e in graph.edges_at(v, c) if s.is_strongly_fixed(g, graph.edge(e.id))]
		if xs and graph.is_exhaustive(v, xs):
			return holds(xs, "strongly fixed edges of one color")
	if g == 0:
		xs = [p for p in graph.paths_upto(v, (1,) * k) if not p.is_vertex]
		return holds(xs, "identity strongly fixes every path")
	auto = _Restricted(s, g, v)
	if not auto.exits:
		return TriVerdict(FAILS, {"rule": "no strongly fixed paths", "group_element": name, "vertex": v},
			note="%s strongly fixes no path at %s" % (name, v))
	if not auto.cyclic_components():
		live = auto.live()
		xs = minimal_paths(graph, [graph.normalize(v, run) for run in auto.runs_to_exit(live)])
		if graph.is_exhaustive(v, xs):
			return holds(xs, "minimal strongly fixed paths")
	for j in range(1, max(cap) + 1):
		level = (j,) * k
		xs = minimal_paths(graph, [p for p in strongly_fixed_paths(s, g, v, level) if not p.is_vertex])
		if xs and graph.is_exhaustive(v, xs):
			return holds(xs, "strongly fixed paths up to degree %r" % (level,))
	kind, found = _trapped_boundary(s, g, v)
	if kind == "found":
		return TriVerdict(FAILS, {"rule": "boundary path avoiding strongly fixed prefixes",
			"group_element": name, "vertex": v, "path": found},
			regime=K1_EXACT if k == 1 else EXACT,
			note="%s has no strongly fixed prefix" % found)
	if k == 1:
		raise InternalError("no trapped run at %s yet no strongly fixed exhaustive set" % v)
	return TriVerdict(UNKNOWN, {"rule": "bounded search inconclusive", "group_element": name, "vertex": v},
		cap, APPROXIMATE, "no strongly fixed exhaustive set found up to %r" % (cap,))


def fixed_point_condition(s, cap):
	"""For all (v, g) where g fixes v∂Λ pointwise, a strongly fixed exhaustive set exists."""
	cap = as_degree(s, cap)
	parts = []
	for v in s.graph.vertices:
		for g in s.group.elements:
			if fixes_all_boundary(s, g, v).status == HOLDS:
				parts.append(strongly_fixed_exhaustive(s, g, v, cap))
	return combine(parts, cap, "strongly fixed exhaustive sets exist wherever needed")


def sf_automaton_agrees(s, g, v, cap):
	"""Compare strongly_fixed_paths with direct evaluation on every path up to cap."""
	cap = as_degree(s, cap)
	direct = [p for p in s.graph.paths_upto(v, cap) if s.is_strongly_fixed(g, p)]
	return sorted_paths(direct) == strongly_fixed_paths(s, g, v, cap)


__all__ = [
	"APPROXIMATE", "EXACT", "FAILS", "HOLDS", "K1_EXACT", "UNKNOWN",
	"Group", "SelfSimilarSystem", "TriVerdict",
	"act", "as_degree", "cocycle_condition", "cocycle_path", "combine", "cyclic_group",
	"eventually_trivial_cocycle", "fixed_moves", "fixed_point_condition", "fixes_all_boundary",
	"is_hausdorff", "is_locally_exhausted", "is_pseudo_free", "make_system", "minimal_paths",
	"sf_automaton_agrees", "strongly_fixed_exhaustive", "strongly_fixed_paths", "trivial_group",
	"validate_action", "validate_group",
]
