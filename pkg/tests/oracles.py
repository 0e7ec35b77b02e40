"""
Brute-force reference implementations. They work from definitions only:
paths are found by trying every word of edges, common extensions by
scanning every path of the join degree.
"""

import itertools
import random

import networkx as nx

from ssgraph.isg import ISGElement, Triple
from ssgraph.kgraph import deg_join, deg_leq


def all_paths(graph, v, n):
	"""Every path at v of degree <= n, found by normalizing every composable edge word."""
	total = sum(n)
	found = {graph.vertex(v)}
	words = [((), v)]
	for _ in range(total):
		nxt = []
		for word, at in words:
			for e in sorted(graph.edges.values(), key=lambda e: e.id):
				if e.range != at:
					continue
				w = word + (e.id,)
				p = graph.normalize(v, list(w))
				if deg_leq(p.degree, n):
					found.add(p)
					nxt.append((w, e.source))
		words = nxt
	return sorted(found, key=lambda p: p.sort_key())


def segment(graph, p, m, n):
	"""p(m, n) by reading off a factorization."""
	head = graph.factorize(p, n)[0]
	return graph.factorize(head, m)[1]


def lambda_min(graph, mu, nu):
	if mu.range != nu.range:
		return set()
	top = deg_join(mu.degree, nu.degree)
	out = set()
	for lam in all_paths(graph, mu.range, top):
		if lam.degree != top:
			continue
		a_head, a = graph.factorize(lam, mu.degree)
		b_head, b = graph.factorize(lam, nu.degree)
		if a_head == mu and b_head == nu:
			out.add((a, b))
	return out


def product(E, F):
	s = E.system
	group = s.group
	out = set()
	for t in E.triples:
		for u in F.triples:
			for alpha, beta in lambda_min(s.graph, t.nu, u.mu):
				b = s.act(group.inv(u.g), beta)
				out.add(Triple(s.graph.compose(t.mu, s.act(t.g, alpha)),
					group.mul(s.cocycle_path(t.g, alpha), s.cocycle_path(u.g, b)),
					s.graph.compose(u.nu, b)))
	return ISGElement(s, out)


def is_exhaustive(graph, v, xs, extra=1):
	"""Check every path at v up to N + extra, N the join of the degrees in xs."""
	top = tuple(0 for _ in range(graph.rank))
	for x in xs:
		top = deg_join(top, x.degree)
	top = tuple(c + extra for c in top)
	for mu in all_paths(graph, v, top):
		if not any(lambda_min(graph, mu, x) for x in xs):
			return False
	return True


def _digraph(graph):
	g = nx.MultiDiGraph()
	g.add_nodes_from(graph.vertices)
	for e in graph.edges.values():
		g.add_edge(e.range, e.source, key=e.id)
	return g


def classical_cofinal(graph):
	"""Rank 1, trivial group: every vertex reaches every sink and every vertex on a cycle."""
	g = _digraph(graph)
	simple = nx.DiGraph(g)
	on_cycle = {v for c in nx.simple_cycles(simple) for v in c}
	targets = on_cycle | {v for v in graph.vertices if g.out_degree(v) == 0}
	for v in graph.vertices:
		reach = nx.descendants(g, v) | {v}
		if not targets <= reach:
			return False
	return True


def classical_condition_L(graph):
	"""Rank 1: every cycle has an exit."""
	g = _digraph(graph)
	for cycle in nx.simple_cycles(nx.DiGraph(g)):
		nodes = set(cycle)
		edges_out = sum(g.out_degree(v) for v in nodes)
		if edges_out == len(nodes):
			return False
	return True


def two_return_cycles(graph):
	"""
	Rank 1: every vertex reaches a sink or a vertex with two distinct first
	return cycles.
	"""
	g = _digraph(graph)
	good = set()
	for v in graph.vertices:
		if g.out_degree(v) == 0:
			good.add(v)
			continue
		returns = 0
		for _, y, k in g.out_edges(v, keys=True):
			if y == v or nx.has_path(g, y, v):
				returns += 1
		if returns >= 2:
			good.add(v)
	return all(good & (nx.descendants(g, v) | {v}) for v in graph.vertices)


def random_triple(rng, system, max_degree):
	graph = system.graph
	v = rng.choice(graph.vertices)
	paths = all_paths(graph, v, max_degree)
	mu = rng.choice(paths)
	g = rng.choice(list(system.group.elements))
	target = mu.source
	options = [p for u in graph.vertices for p in all_paths(graph, u, max_degree)
		if system.act_vertex(g, p.source) == target]
	if not options:
		return None
	return Triple(mu, g, rng.choice(options))


def random_element(rng, system, max_triples=3, max_degree=3, pool=None):
	"""Random valid element: triples are kept only when orthogonal to those already chosen."""
	graph = system.graph
	if isinstance(max_degree, int):
		max_degree = (max_degree,) * graph.rank
	n = rng.randint(0, max_triples)
	chosen = []
	for _ in range(4 * n):
		if len(chosen) == n:
			break
		t = rng.choice(pool) if pool else random_triple(rng, system, max_degree)
		if t is None:
			continue
		if all(not (t.mu.range == u.mu.range and graph.lambda_min(t.mu, u.mu))
			and not (t.nu.range == u.nu.range and graph.lambda_min(t.nu, u.nu)) for u in chosen):
			chosen.append(t)
	return ISGElement(system, chosen)


def triple_pool(system, max_degree):
	"""Every valid triple with paths of degree <= max_degree."""
	graph = system.graph
	if isinstance(max_degree, int):
		max_degree = (max_degree,) * graph.rank
	paths = [p for v in graph.vertices for p in all_paths(graph, v, max_degree)]
	return [Triple(mu, g, nu) for mu, nu in itertools.product(paths, paths)
		for g in system.group.elements if mu.source == system.act_vertex(g, nu.source)]


def seeded(seed):
	return random.Random(seed)
