"""
Higher-rank graphs presented by a colored 1-skeleton and commuting squares.

Morphisms are stored in normal form: their edges listed range-to-source with
colors in nondecreasing order. Every other factorization is reached by
rewriting adjacent pairs of different colors through the square table.
"""

from collections import defaultdict, deque
from dataclasses import dataclass
from itertools import product

from .errors import InternalError

MAX_RANK = 4

Degree = tuple


def zero_degree(k):
	return (0,) * k


def unit_degree(k, color):
	return tuple(1 if i == color - 1 else 0 for i in range(k))


def deg_leq(m, n):
	return all(a <= b for a, b in zip(m, n))


def deg_join(m, n):
	return tuple(max(a, b) for a, b in zip(m, n))


def deg_meet(m, n):
	return tuple(min(a, b) for a, b in zip(m, n))


def deg_add(m, n):
	return tuple(a + b for a, b in zip(m, n))


def deg_sub(m, n):
	if not deg_leq(n, m):
		raise ValueError("cannot subtract %r from %r" % (n, m))
	return tuple(a - b for a, b in zip(m, n))


def degrees_upto(n):
	"""All degrees m <= n, smallest total first."""
	out = list(product(*(range(c + 1) for c in n)))
	out.sort(key=lambda m: (sum(m), m))
	return out


@dataclass(frozen=True)
class Edge:
	id: str
	color: int
	range: str
	source: str


@dataclass(frozen=True)
class Path:
	range: str
	edges: tuple
	source: str
	degree: tuple

	@property
	def is_vertex(self):
		return not self.edges

	@property
	def length(self):
		return len(self.edges)

	def sort_key(self):
		return (sum(self.degree), self.degree, self.edges, self.range)

	def __lt__(self, other):
		return self.sort_key() < other.sort_key()

	def __str__(self):
		if not self.edges:
			return "@" + self.range
		return " ".join(self.edges)


def sorted_paths(paths):
	return tuple(sorted(set(paths), key=Path.sort_key))


class KGraph:
	"""
	A finite k-graph. `squares` maps a composable pair (e, f) with
	color(e) < color(f) to the pair (f', e') giving the same morphism in the
	opposite color order.
	"""

	def __init__(self, rank, vertices, edges, squares=None):
		self.rank = rank
		self.vertices = tuple(vertices)
		self._vertex_set = frozenset(self.vertices)
		self.edges = {e.id: e for e in edges}
		self.squares = dict(squares or {})
		self._square_inverse = {}
		for key, value in self.squares.items():
			self._square_inverse.setdefault(value, key)
		self._at = defaultdict(list)
		for e in sorted(self.edges.values(), key=lambda e: e.id):
			self._at[(e.range, e.color)].append(e)
		self._enum_cache = {}
		self._compose_cache = {}
		self._lmin_cache = {}

	def __repr__(self):
		return "KGraph(rank=%d, %d vertices, %d edges, %d squares)" % (
			self.rank, len(self.vertices), len(self.edges), len(self.squares))

	# structure
	def color(self, edge_id):
		return self.edges[edge_id].color

	def edges_at(self, v, color=None):
		"""Edges with range v, sorted by id."""
		if color is not None:
			return tuple(self._at.get((v, color), ()))
		out = []
		for c in range(1, self.rank + 1):
			out.extend(self._at.get((v, c), ()))
		return tuple(sorted(out, key=lambda e: e.id))

	def is_edgeless(self, v):
		return not self.edges_at(v)

	@property
	def has_sources(self):
		return any(not self.edges_at(v, c)
			for v in self.vertices for c in range(1, self.rank + 1))

	@property
	def is_source_free(self):
		return not self.has_sources

	def reachable(self, v):
		"""Vertices u with vΛu nonempty, in discovery order."""
		seen = {v: None}
		queue = deque([v])
		while queue:
			u = queue.popleft()
			for e in self.edges_at(u):
				if e.source not in seen:
					seen[e.source] = None
					queue.append(e.source)
		return tuple(seen)

	# paths
	def vertex(self, v):
		if v not in self._vertex_set:
			raise ValueError("unknown vertex %r" % (v,))
		return Path(v, (), v, zero_degree(self.rank))

	def edge(self, edge_id):
		e = self.edges[edge_id]
		return Path(e.range, (e.id,), e.source, unit_degree(self.rank, e.color))

	def _path(self, r, edge_ids):
		deg = [0] * self.rank
		for x in edge_ids:
			deg[self.edges[x].color - 1] += 1
		source = self.edges[edge_ids[-1]].source if edge_ids else r
		return Path(r, tuple(edge_ids), source, tuple(deg))

	def _check_chain(self, r, edge_ids):
		at = r
		for x in edge_ids:
			if x not in self.edges:
				raise ValueError("unknown edge %r" % (x,))
			e = self.edges[x]
			if e.range != at:
				raise ValueError("edges not composable at %r: %r has range %r" % (at, x, e.range))
			at = e.source

	def _swap(self, x, y):
		if self.color(x) < self.color(y):
			table = self.squares
		else:
			table = self._square_inverse
		try:
			return table[(x, y)]
		except KeyError:
			raise InternalError("no square for the pair %s %s" % (x, y)) from None

	def _reorder(self, edge_ids, target_colors):
		# Same-color edges never pass each other, so the j-th edge of color c
		# lands at the j-th slot of color c in the target pattern.
		slots = defaultdict(deque)
		for i, c in enumerate(target_colors):
			slots[c].append(i)
		seq = list(edge_ids)
		keys = [slots[self.color(x)].popleft() for x in seq]
		changed = True
		while changed:
			changed = False
			for i in range(len(seq) - 1):
				if keys[i] > keys[i + 1]:
					seq[i], seq[i + 1] = self._swap(seq[i], seq[i + 1])
					keys[i], keys[i + 1] = keys[i + 1], keys[i]
					changed = True
		return seq

	def normalize(self, r, edge_ids):
		edge_ids = tuple(edge_ids)
		self._check_chain(r, edge_ids)
		colors = [self.color(x) for x in edge_ids]
		if all(a <= b for a, b in zip(colors, colors[1:])):
			return self._path(r, edge_ids)
		return self._path(r, self._reorder(edge_ids, sorted(colors)))

	def path(self, tokens):
		"""Path from a list of edge ids, or a single '@v' token."""
		tokens = list(tokens)
		if len(tokens) == 1 and tokens[0].startswith("@"):
			return self.vertex(tokens[0][1:])
		if not tokens:
			raise ValueError("empty path")
		if tokens[0] not in self.edges:
			raise ValueError("unknown edge %r" % (tokens[0],))
		return self.normalize(self.edges[tokens[0]].range, tokens)

	def compose(self, a, b):
		if a.source != b.range:
			raise ValueError("cannot compose %s with %s: source %s is not range %s"
				% (a, b, a.source, b.range))
		if not a.edges:
			return b
		if not b.edges:
			return a
		key = (a, b)
		hit = self._compose_cache.get(key)
		if hit is None:
			edge_ids = a.edges + b.edges
			if self.rank == 1:
				hit = self._path(a.range, edge_ids)
			else:
				hit = self.normalize(a.range, edge_ids)
			self._compose_cache[key] = hit
		return hit

	def factorize(self, p, m):
		"""The unique (head, tail) with d(head) = m and head tail = p."""
		m = tuple(m)
		if not deg_leq(m, p.degree):
			raise ValueError("degree %r is not below %r" % (m, p.degree))
		n = sum(m)
		if self.rank == 1:
			seq = p.edges
		else:
			rest = deg_sub(p.degree, m)
			target = [c + 1 for c in range(self.rank) for _ in range(m[c])]
			target += [c + 1 for c in range(self.rank) for _ in range(rest[c])]
			seq = self._reorder(p.edges, target)
		head = self._path(p.range, tuple(seq[:n]))
		tail = self._path(head.source, tuple(seq[n:]))
		return head, tail

	def segment(self, p, m, n):
		if not (deg_leq(m, n) and deg_leq(n, p.degree)):
			raise ValueError("need %r <= %r <= %r" % (m, n, p.degree))
		return self.factorize(self.factorize(p, n)[0], m)[1]

	def is_prefix(self, a, b):
		"""Whether b = a c for some path c."""
		if a.range != b.range or not deg_leq(a.degree, b.degree):
			return False
		return self.factorize(b, a.degree)[0] == a

	def enumerate_paths(self, v, n):
		"""All paths in vΛ^n, sorted."""
		n = tuple(n)
		key = (v, n)
		hit = self._enum_cache.get(key)
		if hit is not None:
			return hit
		found = []

		def grow(at, color, left, acc):
			if color > self.rank:
				found.append(self._path(v, tuple(acc)))
				return
			if left == 0:
				nxt = n[color] if color < self.rank else 0
				grow(at, color + 1, nxt, acc)
				return
			for e in self._at.get((at, color), ()):
				acc.append(e.id)
				grow(e.source, color, left - 1, acc)
				acc.pop()

		self.vertex(v)
		grow(v, 1, n[0], [])
		hit = tuple(sorted(found, key=Path.sort_key))
		self._enum_cache[key] = hit
		return hit

	def paths_upto(self, v, n):
		out = []
		for m in degrees_upto(n):
			out.extend(self.enumerate_paths(v, m))
		return tuple(sorted(out, key=Path.sort_key))

	def paths_with_source(self, u, n):
		"""All paths of degree <= n whose source is u."""
		return tuple(p for v in self.vertices for p in self.paths_upto(v, n) if p.source == u)

	# common extensions
	def lambda_min(self, mu, nu):
		if mu.range != nu.range:
			raise ValueError("paths %s and %s have different ranges" % (mu, nu))
		key = (mu, nu)
		hit = self._lmin_cache.get(key)
		if hit is not None:
			return hit
		if self.rank == 1:
			hit = self._lambda_min_rank1(mu, nu)
		else:
			target = deg_join(mu.degree, nu.degree)
			pairs = []
			for alpha in self.enumerate_paths(mu.source, deg_sub(target, mu.degree)):
				head, tail = self.factorize(self.compose(mu, alpha), nu.degree)
				if head == nu:
					pairs.append((alpha, tail))
			hit = tuple(pairs)
		self._lmin_cache[key] = hit
		return hit

	def _lambda_min_rank1(self, mu, nu):
		a, b = mu.edges, nu.edges
		if len(a) >= len(b):
			if a[:len(b)] != b:
				return ()
			return ((self.vertex(mu.source), self._path(nu.source, a[len(b):])),)
		if b[:len(a)] != a:
			return ()
		return ((self._path(mu.source, b[len(a):]), self.vertex(nu.source)),)

	def meets(self, mu, nu):
		return bool(self.lambda_min(mu, nu))

	def mce(self, mu, nu):
		return sorted_paths(self.compose(mu, alpha) for alpha, _ in self.lambda_min(mu, nu))

	def ext(self, mu, xs):
		out = []
		for nu in xs:
			out.extend(alpha for alpha, _ in self.lambda_min(mu, nu))
		return sorted_paths(out)

	# exhaustive sets
	def _check_exhaustive_input(self, v, xs):
		for tau in xs:
			if tau.range != v:
				raise ValueError("%s does not have range %s" % (tau, v))
			if tau.is_vertex:
				raise ValueError("exhaustive sets may not contain the vertex %s" % (tau,))

	def _first_unmet(self, v, xs, bound):
		for lam in self.paths_upto(v, bound):
			if not any(self.lambda_min(lam, tau) for tau in xs):
				return lam
		return None

	def unmet_path(self, v, xs):
		"""
		A path at v with no common extension with any member of xs, or None
		when xs is exhaustive. Candidates are searched up to the join N of the
		degrees in xs; for rank >= 2 the search is repeated up to N + (1,...,1)
		and a disagreement raises InternalError.
		"""
		xs = sorted_paths(xs)
		self._check_exhaustive_input(v, xs)
		bound = zero_degree(self.rank)
		for tau in xs:
			bound = deg_join(bound, tau.degree)
		found = self._first_unmet(v, xs, bound)
		if found is None and self.rank > 1:
			wider = self._first_unmet(v, xs, deg_add(bound, (1,) * self.rank))
			if wider is not None:
				raise InternalError("exhaustiveness of %s at %s changes beyond degree %r (path %s)"
					% ([str(t) for t in xs], v, bound, wider))
		return found

	def is_exhaustive(self, v, xs):
		return self.unmet_path(v, xs) is None


def validate_kgraph(g):
	"""Every violated presentation invariant, as a list of messages."""
	problems = []
	if not (1 <= g.rank <= MAX_RANK):
		problems.append("rank %r outside 1..%d" % (g.rank, MAX_RANK))
		return problems
	vertex_set = set(g.vertices)
	if len(vertex_set) != len(g.vertices):
		problems.append("duplicate vertex ids")
	for e in sorted(g.edges.values(), key=lambda e: e.id):
		if not (1 <= e.color <= g.rank):
			problems.append("edge %s has color %r outside 1..%d" % (e.id, e.color, g.rank))
		for end in (e.range, e.source):
			if end not in vertex_set:
				problems.append("edge %s refers to unknown vertex %s" % (e.id, end))
	for key, value in sorted(g.squares.items()):
		for x in key + value:
			if x not in g.edges:
				problems.append("square %s %s -> %s %s refers to unknown edge %s" % (key + value + (x,)))
	if problems:
		return problems
	for i in range(1, g.rank + 1):
		for j in range(i + 1, g.rank + 1):
			problems.extend(_check_square_family(g, i, j))
	if g.rank >= 3 and not problems:
		problems.extend(_check_hexagons(g))
	return problems


def _pairs(g, first, second):
	out = []
	for e in sorted(g.edges.values(), key=lambda e: e.id):
		if e.color != first:
			continue
		for f in g.edges_at(e.source, second):
			out.append((e.id, f.id))
	return out


def _check_square_family(g, i, j):
	label = "Φ_{%d%d}" % (i, j)
	problems = []
	domain = _pairs(g, i, j)
	codomain = set(_pairs(g, j, i))
	entries = {k: v for k, v in g.squares.items()
		if g.edges.get(k[0]) and g.edges[k[0]].color == i
		and g.edges.get(k[1]) and g.edges[k[1]].color == j}
	domain_set = set(domain)
	for key in sorted(entries):
		if key not in domain_set:
			problems.append("%s entry %s %s is not a composable pair" % (label, key[0], key[1]))
	missing = [p for p in domain if p not in entries]
	if missing:
		problems.append("%s not total: no square for %s" % (label, ", ".join("%s %s" % p for p in missing)))
	images = defaultdict(list)
	for key in sorted(entries):
		f2, e2 = entries[key]
		if (f2, e2) not in codomain:
			problems.append("%s image %s %s of %s %s is not a composable pair of colors %d then %d"
				% (label, f2, e2, key[0], key[1], j, i))
			continue
		images[(f2, e2)].append(key)
		e, f = g.edges[key[0]], g.edges[key[1]]
		if g.edges[f2].range != e.range or g.edges[e2].source != f.source:
			problems.append("%s range/source mismatch for %s %s -> %s %s" % (label, key[0], key[1], f2, e2))
	for image, keys in sorted(images.items()):
		if len(keys) > 1:
			problems.append("%s not injective: %s all map to %s %s"
				% (label, ", ".join("%s %s" % k for k in keys), image[0], image[1]))
	unhit = sorted(codomain - set(images))
	if unhit:
		problems.append("%s not surjective: nothing maps to %s" % (label, ", ".join("%s %s" % p for p in unhit)))
	return problems


def _check_hexagons(g):
	# Reverse a 3-color path in both possible ways; unique factorization
	# forces the two results to agree.
	problems = []
	for a in range(1, g.rank + 1):
		for b in range(a + 1, g.rank + 1):
			for c in range(b + 1, g.rank + 1):
				for x, y in _pairs(g, a, b):
					for z in g.edges_at(g.edges[y].source, c):
						p0, p1, p2 = x, y, z.id
						q1, q2 = g._swap(p1, p2)
						r0, r1 = g._swap(p0, q1)
						s1, s2 = g._swap(r1, q2)
						left = (r0, s1, s2)
						t0, t1 = g._swap(p0, p1)
						u1, u2 = g._swap(t1, p2)
						w0, w1 = g._swap(t0, u1)
						right = (w0, w1, u2)
						if left != right:
							problems.append("hexagon failure for %s %s %s: %s vs %s"
								% (x, y, z.id, " ".join(left), " ".join(right)))
	return problems
