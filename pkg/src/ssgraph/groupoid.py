"""
Boundary paths, the θ action, germs, and the structural verdicts.

Boundary paths are infinite objects; everything here works on finite
prefixes with an explicit horizon and records how exact each answer is.
Two facts keep many answers exact: every path extends to a boundary path,
and a path of finite degree is itself a boundary path exactly when its
source receives no edges.
"""

from dataclasses import dataclass, field

import networkx as nx

from .action import (APPROXIMATE, EXACT, FAILS, HOLDS, K1_EXACT, UNKNOWN, TriVerdict, as_degree,
	cocycle_condition, fixed_point_condition, is_hausdorff, is_pseudo_free)
from .errors import InternalError
from .isg import ISGElement, Triple, format_element, format_triple, iota, multiply
from .kgraph import deg_leq, sorted_paths

SIMPLE = "Simple"
NOT_SIMPLE = "NotSimple"

REPORT_SCHEMA = "ssgraph.analysis/1"


def regime_of(graph):
	if graph.is_source_free:
		return EXACT
	if graph.rank == 1:
		return K1_EXACT
	return APPROXIMATE


@dataclass(frozen=True)
class BoundaryPrefix:
	"""
	A known initial segment of a boundary path. `residual` is the group
	element applied to the unknown continuation, so the point is
	prefix·(residual·x) for the continuation x of the original point.
	"""
	prefix: object
	depth: tuple
	regime: str = EXACT
	residual: int = 0
	complete: bool = False


@dataclass(frozen=True)
class FilterView:
	generator: BoundaryPrefix


@dataclass(frozen=True)
class Germ:
	triple: Triple
	base: BoundaryPrefix


def make_prefix(system, path, regime=None):
	graph = system.graph
	return BoundaryPrefix(path, path.degree, regime or regime_of(graph), 0, graph.is_edgeless(path.source))


def boundary_prefixes(system, v, depth):
	"""Initial segments of degree <= depth of boundary paths at v."""
	graph = system.graph
	depth = as_degree(system, depth)
	regime = regime_of(graph)
	return [BoundaryPrefix(p, p.degree, regime, 0, graph.is_edgeless(p.source))
		for p in graph.paths_upto(v, depth)]


def horizon_truncations(system, v, depth):
	"""
	Paths of degree <= depth at v that no edge extends within the horizon:
	the truncations x(0, d(x) ∧ depth) of boundary paths at v.
	"""
	graph = system.graph
	depth = as_degree(system, depth)
	out = []
	for p in graph.paths_upto(v, depth):
		grows = any(p.degree[e.color - 1] < depth[e.color - 1] for e in graph.edges_at(p.source))
		if not grows:
			out.append(p)
	return sorted_paths(out)


def filter_contains(f, E):
	"""Whether E lies in the ultrafilter of the boundary path behind f."""
	b = f.generator
	s = E.system
	graph = s.graph
	y = b.prefix
	undecided = False
	for t in E.triples:
		lam = t.mu
		if t.g != 0 or t.mu != t.nu:
			raise ValueError("%s is not idempotent" % format_element(E))
		if graph.is_prefix(lam, y):
			return TriVerdict(HOLDS, {"rule": "prefix", "path": str(lam)}, note="%s is a prefix" % lam)
		if lam.range == y.range and graph.meets(lam, y) and not b.complete:
			undecided = True
	if undecided:
		return TriVerdict(UNKNOWN, {"rule": "beyond horizon"}, tuple(y.degree), APPROXIMATE,
			"needs more of the boundary path than %s" % y)
	return TriVerdict(FAILS, {"rule": "no compatible triple"}, note="no triple of E is a prefix")


def ultrafilter_bijection_check(system, v, depth):
	"""
	Count horizon truncations of boundary paths at v against the atoms of
	the finite semilattice generated by {ι_λ : λ ∈ vΛ, d(λ) <= depth}, and
	check that the two families of generator sets coincide.
	"""
	graph = system.graph
	depth = as_degree(system, depth)
	generators = [iota(system, p) for p in graph.paths_upto(v, depth)]
	gen_paths = [E.triples[0].mu for E in generators]
	elements = set(generators)
	frontier = list(generators)
	while frontier:
		nxt = []
		for E in frontier:
			for G in generators:
				P = multiply(E, G)
				if not P.is_zero and P not in elements:
					elements.add(P)
					nxt.append(P)
		frontier = nxt
	atoms = [E for E in elements
		if not any(F != E and multiply(E, F) == F for F in elements)]
	prefixes = horizon_truncations(system, v, depth)

	def family_of_atom(E):
		return frozenset(p for p, G in zip(gen_paths, generators) if multiply(G, E) == E)

	def family_of_prefix(y):
		return frozenset(p for p in gen_paths if graph.is_prefix(p, y))

	atom_families = [family_of_atom(E) for E in atoms]
	prefix_families = [family_of_prefix(y) for y in prefixes]
	matched = (len(set(atom_families)) == len(atoms) and len(set(prefix_families)) == len(prefixes)
		and set(atom_families) == set(prefix_families))
	return {
		"vertex": v,
		"depth": list(depth),
		"regime": regime_of(graph),
		"boundary_prefixes": len(prefixes),
		"ultrafilters": len(atoms),
		"matched": matched,
	}


def _find_triple(F, point):
	graph = F.system.graph
	for t in F.triples:
		if graph.is_prefix(t.nu, point.prefix):
			return t
	return None


def theta_apply(F, b):
	"""θ_F on a known prefix: ν y ↦ μ (g·y), carrying the restriction forward."""
	s = F.system
	graph = s.graph
	t = _find_triple(F, b)
	if t is None:
		raise ValueError("%s is not in the domain of %s" % (b.prefix, format_element(F)))
	rest = graph.factorize(b.prefix, t.nu.degree)[1]
	image = graph.compose(t.mu, s.act(t.g, rest))
	residual = s.group.mul(s.cocycle_path(t.g, rest), b.residual)
	return BoundaryPrefix(image, image.degree, b.regime, residual, b.complete)


def make_germ(F, b):
	"""The germ [F, b] in singleton form."""
	t = _find_triple(F, b)
	if t is None:
		raise ValueError("%s is not in the domain of %s" % (b.prefix, format_element(F)))
	return Germ(t, b)


def germ_source(germ):
	return germ.base


def germ_range(system, germ):
	return theta_apply(ISGElement(system, (germ.triple,)), germ.base)


def germ_eq(system, g1, g2):
	"""Equality of germs, decided on the known prefix of the common base."""
	graph = system.graph
	y1, y2 = g1.base.prefix, g2.base.prefix
	for germ in (g1, g2):
		if not graph.is_prefix(germ.triple.nu, germ.base.prefix):
			return TriVerdict(FAILS, {"rule": "base outside the domain", "triple": format_triple(system, germ.triple)},
				note="%s is not in the domain of %s" % (germ.base.prefix, format_triple(system, germ.triple)))
	if y1 != y2:
		short, long_ = (y1, y2) if deg_leq(y1.degree, y2.degree) else (y2, y1)
		if not graph.is_prefix(short, long_):
			return TriVerdict(FAILS, {"rule": "different points"}, note="bases differ")
	base = y1 if deg_leq(y2.degree, y1.degree) else y2
	F1 = ISGElement(system, (g1.triple,))
	F2 = ISGElement(system, (g2.triple,))
	depth = base.degree
	for lam in graph.paths_upto(base.range, depth):
		if not graph.is_prefix(lam, base):
			continue
		I = iota(system, lam)
		if multiply(F1, I) == multiply(F2, I):
			return TriVerdict(HOLDS, {"rule": "agree below ι_λ", "lambda": str(lam)}, note="λ = %s" % lam)
	point = BoundaryPrefix(base, base.degree, g1.base.regime, 0, graph.is_edgeless(base.source))
	r1, r2 = theta_apply(F1, point), theta_apply(F2, point)
	a, b = r1.prefix, r2.prefix
	if a.range != b.range or not graph.meets(a, b):
		return TriVerdict(FAILS, {"rule": "different ranges", "ranges": [str(a), str(b)]},
			note="ranges %s and %s differ" % (a, b))
	if point.complete:
		return TriVerdict(FAILS, {"rule": "no common neighbourhood on a finite boundary path"},
			note="no prefix identifies the germs")
	return TriVerdict(UNKNOWN, {"rule": "beyond horizon"}, tuple(depth), APPROXIMATE,
		"no prefix up to %s identifies the germs" % base)


# Zappa–Szép cross-check

def zs_compose(system, a, b):
	"""(μ, g)(ν, h) = (μ(g·ν), φ(g, ν)h) in the Zappa–Szép product."""
	(mu, g), (nu, h) = a, b
	if system.act_vertex(system.group.inv(g), mu.source) != nu.range:
		raise ValueError("Zappa–Szép morphisms are not composable")
	return (system.graph.compose(mu, system.act(g, nu)), system.group.mul(system.cocycle_path(g, nu), h))


def zs_strip(system, alpha, x):
	"""σ^α: αC → s(α)C, defined for α = (ν, e)."""
	nu, g = alpha
	if g != 0:
		raise ValueError("strip maps are only used for (ν, e)")
	lam, h = x
	if not system.graph.is_prefix(nu, lam):
		return None
	return (system.graph.factorize(lam, nu.degree)[1], h)


def zs_prepend(system, alpha, x):
	"""τ^α: s(α)C → αC."""
	return zs_compose(system, alpha, x)


def zs_partial_map(system, t, x):
	"""τ^{(μ,g)} σ^{(ν,e)} at x, or None outside its domain."""
	y = zs_strip(system, (t.nu, 0), x)
	if y is None:
		return None
	return zs_prepend(system, (t.mu, t.g), y)


def element_partial_map(E, x):
	out = None
	for t in E.triples:
		y = zs_partial_map(E.system, t, x)
		if y is not None:
			if out is not None:
				raise InternalError("overlapping domains in %s" % format_element(E))
			out = y
	return out


def zs_compose_oracle(system, cap, points_cap=None, product=multiply):
	"""
	For every pair of singletons with paths of degree <= cap, compare the
	pointwise composite of their partial maps on Zappa–Szép morphisms of
	degree <= points_cap with the partial map of their product. `product`
	defaults to the semigroup multiplication.
	"""
	graph = system.graph
	cap = as_degree(system, cap)
	points_cap = as_degree(system, points_cap if points_cap is not None else tuple(2 * c for c in cap))
	paths = [p for v in graph.vertices for p in graph.paths_upto(v, cap)]
	singles = []
	for mu in paths:
		for nu in paths:
			for g in system.group.elements:
				if mu.source == system.act_vertex(g, nu.source):
					singles.append(ISGElement(system, (Triple(mu, g, nu),)))
	points = [(p, h) for v in graph.vertices for p in graph.paths_upto(v, points_cap)
		for h in system.group.elements]
	index = {x: i for i, x in enumerate(points)}
	memo = {}

	def image(t, x):
		key = (t, x)
		if key not in memo:
			memo[key] = zs_partial_map(system, t, x)
		return memo[key]

	table = {t: [image(t, x) for x in points] for E in singles for t in E.triples}
	mismatches = []
	checked = 0
	for E in singles:
		t1 = E.triples[0]
		row1 = table[t1]
		for F in singles:
			t2 = F.triples[0]
			P = product(E, F)
			rows = [table[t] if t in table else [image(t, x) for x in points] for t in P.triples]
			for i, y in enumerate(table[t2]):
				if y is None:
					direct = None
				else:
					j = index.get(y)
					direct = row1[j] if j is not None else image(t1, y)
				hits = [row[i] for row in rows if row[i] is not None]
				if len(hits) > 1:
					raise InternalError("overlapping domains in %s" % format_element(P))
				via = hits[0] if hits else None
				checked += 1
				if direct != via and len(mismatches) < 10:
					x = points[i]
					mismatches.append({"left": format_triple(system, t1), "right": format_triple(system, t2),
						"point": str(x[0]) + " / " + system.group.name(x[1])})
	return {"pairs": len(singles) ** 2, "evaluations": checked, "mismatches": mismatches}


# structural verdicts

def _render_lasso(pre, loop):
	head = " ".join(pre)
	tail = loop[0] + "^∞" if len(loop) == 1 else "(" + " ".join(loop) + ")^∞"
	return (head + " " + tail) if head else tail


def _underlying(graph, nodes=None):
	g = nx.MultiDiGraph()
	keep = set(graph.vertices) if nodes is None else set(nodes)
	g.add_nodes_from(sorted(keep))
	for e in sorted(graph.edges.values(), key=lambda e: e.id):
		if e.range in keep and e.source in keep:
			g.add_edge(e.range, e.source, key=e.id, color=e.color)
	return g


def _cyclic_components(g):
	out = []
	for comp in nx.strongly_connected_components(g):
		node = min(comp)
		if len(comp) > 1 or g.has_edge(node, node):
			out.append(sorted(comp))
	out.sort()
	return out


def _shortest_walk(g, a, b):
	route = nx.shortest_path(g, a, b)
	return [min(g[x][y]) for x, y in zip(route, route[1:])]


def _closed_walk(g, node, comp, colors=None):
	sub = g.subgraph(comp)
	if colors is None:
		best = None
		for _, y, key in sorted(sub.out_edges(node, keys=True), key=lambda t: (t[2], t[1])):
			back = [] if y == node else _shortest_walk(sub, y, node)
			if best is None or len(back) + 1 < len(best):
				best = [key] + back
		return best
	walk, at = [], node
	for c in colors:
		x, y, key = min((x, y, k) for x, y, k, d in sub.edges(keys=True, data=True) if d["color"] == c)
		walk += _shortest_walk(sub, at, x) + [key]
		at = y
	return walk + _shortest_walk(sub, at, node)


def _trapped_in(graph, nodes):
	"""
	A boundary path all of whose vertices lie in nodes: ("found", vertex,
	description), ("none",) or ("unknown",).
	"""
	for u in sorted(nodes):
		if graph.is_edgeless(u):
			return ("found", u, "@" + u, None)
	sub = _underlying(graph, nodes)
	k = graph.rank
	cyclic = _cyclic_components(sub)
	for comp in cyclic:
		colors = {d["color"] for _, _, d in sub.subgraph(comp).edges(data=True)}
		if len(colors) == k:
			node = comp[0]
			loop = _closed_walk(sub, node, comp, None if k == 1 else list(range(1, k + 1)))
			return ("found", node, _render_lasso([], loop), loop)
	if cyclic:
		return ("unknown",)
	return ("none",)


def is_G_cofinal(system, cap):
	"""
	Every vertex v must reach the orbit of some vertex on every boundary
	path. Failures are boundary paths inside B_v, the vertices none of whose
	translates v reaches.
	"""
	graph = system.graph
	cap = as_degree(system, cap)
	undecided = []
	for v in graph.vertices:
		reach = set(graph.reachable(v))
		bad = [u for u in graph.vertices
			if not any(system.act_vertex(g, u) in reach for g in system.group.elements)]
		if not bad:
			continue
		found = _trapped_in(graph, bad)
		if found[0] == "found":
			_, start, path, loop = found
			trap = "edgeless vertex %s" % start if loop is None else "loop " + " ".join(loop)
			return TriVerdict(FAILS, {"rule": "boundary path avoiding every orbit v reaches", "vertex": v,
				"start": start, "path": path}, regime=K1_EXACT if graph.rank == 1 else EXACT,
				note="witness vertex %s, trapped %s" % (v, trap))
		if found[0] == "unknown":
			undecided.append(v)
	if undecided:
		return TriVerdict(UNKNOWN, {"rule": "cycles missing a color inside B_v", "vertices": undecided},
			cap, APPROXIMATE, "cofinality undecided at %s" % ", ".join(undecided))
	return TriVerdict(HOLDS, {"rule": "no boundary path inside any B_v"}, note="G-cofinal")


def thue_morse_candidate(system, v, length):
	"""A path at v choosing edges by the Thue–Morse sequence, cycling through colors."""
	graph = system.graph
	edges, at = [], v
	k = graph.rank
	while len(edges) < length:
		color = (len(edges) % k) + 1
		options = graph.edges_at(at, color) or graph.edges_at(at)
		if not options:
			break
		e = options[bin(len(edges)).count("1") % len(options)]
		edges.append(e.id)
		at = e.source
	return graph.normalize(v, edges) if edges else graph.vertex(v)


def _two_return_cycles(sub, node):
	out = []
	for _, y, key in sorted(sub.out_edges(node, keys=True), key=lambda t: (t[2], t[1])):
		back = [] if y == node else _shortest_walk(sub, y, node)
		out.append(" ".join([key] + back))
		if len(out) == 2:
			break
	return out


def _aperiodic_k1(graph, v):
	"""
	Rank 1: a boundary path at v that is not eventually periodic, or None.
	Such a path exists iff v reaches a cyclic component with more edges than
	vertices, which then has a vertex with two distinct return cycles.
	"""
	whole = _underlying(graph)
	reach = set(graph.reachable(v))
	for comp in _cyclic_components(whole):
		if comp[0] not in reach:
			continue
		sub = whole.subgraph(comp)
		if sub.number_of_edges() > len(comp):
			node = next(x for x in comp if sub.out_degree(x) > 1)
			return {"rule": "two distinct return cycles", "vertex": node, "cycles": _two_return_cycles(sub, node)}
	return None


def _unique_boundary_repeat(graph, v):
	"""
	When every vertex reachable from v has exactly one edge of each color,
	v has a single boundary path x; walking color 1 until a vertex repeats
	gives p < q with σ^{p e_1}(x) = σ^{q e_1}(x).
	"""
	reach = graph.reachable(v)
	if any(len(graph.edges_at(u, c)) != 1 for u in reach for c in range(1, graph.rank + 1)):
		return None
	seen, at, step = {}, v, 0
	while at not in seen:
		seen[at] = step
		at = graph.edges_at(at, 1)[0].source
		step += 1
	return seen[at], step


def aperiodicity_A(system, cap):
	"""
	Per vertex, look for a boundary path x with no relation
	σ^m(x) = g·σ^n(x), m != n.

	A finite boundary path has no such relation since the two sides have
	different degrees. In rank 1 with a finite group a relation forces x to
	be eventually periodic: with p = n - m and y = σ^m(x), y = g·σ^p(y) makes
	each block y(jp, (j+1)p) equal to h_j·y(0, p) where h_{j+1} = φ(h_j, y(0, p))g⁻¹
	runs through a finite set. So rank 1 reduces exactly to the classical
	criterion. In higher rank a vertex with a single boundary path refutes
	the condition; other cases without a finite boundary path are Unknown.
	"""
	graph = system.graph
	cap = as_degree(system, cap)
	undecided, diagnostics = [], {}
	for v in graph.vertices:
		if any(graph.is_edgeless(u) for u in graph.reachable(v)):
			continue
		if graph.rank == 1:
			if _aperiodic_k1(graph, v) is None:
				return TriVerdict(FAILS, {"rule": "every boundary path is eventually periodic", "vertex": v},
					regime=K1_EXACT, note="every boundary path at %s is eventually periodic" % v)
			continue
		repeat = _unique_boundary_repeat(graph, v)
		if repeat is not None:
			p, q = repeat
			m = [p] + [0] * (graph.rank - 1)
			n = [q] + [0] * (graph.rank - 1)
			return TriVerdict(FAILS, {"rule": "single boundary path with a shift relation", "vertex": v,
				"m": m, "n": n}, note="the only boundary path x at %s has σ^%s(x) = σ^%s(x)"
				% (v, tuple(m), tuple(n)))
		diagnostics[v] = str(thue_morse_candidate(system, v, 4 * max(cap) + 4))
		undecided.append(v)
	if undecided:
		return TriVerdict(UNKNOWN, {"rule": "no certificate", "vertices": undecided,
			"candidates": diagnostics}, cap, APPROXIMATE, "no aperiodicity certificate in rank %d" % graph.rank)
	return TriVerdict(HOLDS, {"rule": "aperiodic boundary path at every vertex"},
		regime=K1_EXACT if graph.rank == 1 else EXACT, note="condition (A) holds")


@dataclass
class AnalysisReport:
	system: str
	rank: int
	group_order: int
	source_free: bool
	depth: tuple
	verdicts: dict = field(default_factory=dict)

	def to_json(self):
		return {
			"schema": REPORT_SCHEMA,
			"system": self.system,
			"metadata": {
				"rank": self.rank,
				"group_order": self.group_order,
				"group_amenable": True,
				"row_finite": True,
				"source_free": self.source_free,
				"depth": list(self.depth),
			},
			"checkers": {name: v.to_json() for name, v in self.verdicts.items()},
		}

	def to_text(self):
		lines = []
		for name, v in self.verdicts.items():
			line = "%s: %s" % (name, v.status)
			if v.note:
				line += " (%s)" % v.note
			lines.append(line)
		return "\n".join(lines)


CHECKER_ORDER = ("pseudo_free", "hausdorff", "g_cofinal", "aperiodicity_a",
	"fixed_point_condition", "eventually_trivial_cocycle", "simplicity")

_LABELS = {"g_cofinal": "G-cofinality", "aperiodicity_a": "condition (A)",
	"fixed_point_condition": "the strongly fixed exhaustion condition",
	"eventually_trivial_cocycle": "the eventual triviality of restrictions"}


def simplicity_verdict(system, cap):
	graph = system.graph
	cap = as_degree(system, cap)
	v = {}
	v["pseudo_free"] = is_pseudo_free(system)
	v["hausdorff"] = is_hausdorff(system, cap)
	v["g_cofinal"] = is_G_cofinal(system, cap)
	v["aperiodicity_a"] = aperiodicity_A(system, cap)
	v["fixed_point_condition"] = fixed_point_condition(system, cap)
	v["eventually_trivial_cocycle"] = cocycle_condition(system, cap)
	v["simplicity"] = _decide(system, v, cap)
	report = AnalysisReport(system.name, graph.rank, system.group.order, graph.is_source_free, cap)
	report.verdicts = {name: v[name] for name in CHECKER_ORDER}
	return report


def _decide(system, v, cap):
	if not system.graph.is_source_free:
		return TriVerdict(UNKNOWN, {"rule": "outside hypotheses for nuclearity: the graph has sources"},
			cap, APPROXIMATE, "graph has sources")
	h = v["hausdorff"]
	if h.status == HOLDS:
		items = ["g_cofinal", "aperiodicity_a", "fixed_point_condition"]
		for name in items:
			if v[name].status == FAILS:
				return TriVerdict(NOT_SIMPLE, {"rule": "necessary condition fails", "blocker": name,
					"detail": v[name].witness}, regime=v[name].regime,
					note="%s fails; %s" % (_LABELS[name], v[name].note))
		pending = [name for name in items if v[name].status == UNKNOWN]
		if pending:
			return TriVerdict(UNKNOWN, {"rule": "undecided input", "blockers": pending}, cap, APPROXIMATE,
				"blocked by %s" % ", ".join(_LABELS[n] for n in pending))
		return TriVerdict(SIMPLE, {"rule": "Hausdorff case: cofinal, aperiodic, fixed-point condition"},
			note="all conditions hold")
	if h.status == FAILS:
		items = ["g_cofinal", "aperiodicity_a", "eventually_trivial_cocycle"]
		if all(v[name].status == HOLDS for name in items):
			return TriVerdict(SIMPLE, {"rule": "non-Hausdorff sufficient criterion"},
				note="cofinal, aperiodic, restrictions eventually trivial")
		pending = [name for name in items if v[name].status != HOLDS]
		return TriVerdict(UNKNOWN, {"rule": "non-Hausdorff criterion is only sufficient", "blockers": pending},
			cap, APPROXIMATE, "blocked by %s" % ", ".join(_LABELS[n] for n in pending))
	return TriVerdict(UNKNOWN, {"rule": "Hausdorff property undecided"}, cap, APPROXIMATE,
		"Hausdorff property undecided")


__all__ = [
	"AnalysisReport", "BoundaryPrefix", "FilterView", "Germ", "NOT_SIMPLE", "REPORT_SCHEMA", "SIMPLE",
	"aperiodicity_A", "boundary_prefixes", "element_partial_map", "filter_contains", "germ_eq",
	"germ_range", "germ_source", "horizon_truncations", "is_G_cofinal", "make_germ", "make_prefix",
	"simplicity_verdict", "theta_apply", "thue_morse_candidate", "ultrafilter_bijection_check",
	"zs_compose", "zs_compose_oracle", "zs_partial_map", "zs_prepend", "zs_strip",
]
