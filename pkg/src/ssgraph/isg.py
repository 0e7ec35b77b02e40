"""
Exact arithmetic in the inverse semigroup of a self-similar k-graph.

An element is a finite set of pairwise orthogonal triples (μ, g, ν) with
s(μ) = g·s(ν); the empty set is the zero element.
"""

from dataclasses import dataclass
from itertools import combinations

from .action import APPROXIMATE, FAILS, HOLDS, UNKNOWN, TriVerdict
from .action import _Restricted, as_degree, minimal_paths
from .errors import InternalError
from .kgraph import Path, sorted_paths


@dataclass(frozen=True)
class Triple:
	mu: Path
	g: int
	nu: Path

	def sort_key(self):
		return (self.mu.sort_key(), self.g, self.nu.sort_key())


class OrthogonalityError(ValueError):
	pass


class ISGElement:
	__slots__ = ("system", "triples", "_hash")

	def __init__(self, system, triples):
		self.system = system
		self.triples = tuple(sorted(set(triples), key=Triple.sort_key))
		self._hash = hash(self.triples)

	def __eq__(self, other):
		return (isinstance(other, ISGElement) and self.system is other.system
			and self.triples == other.triples)

	def __hash__(self):
		return self._hash

	def __iter__(self):
		return iter(self.triples)

	def __len__(self):
		return len(self.triples)

	@property
	def is_zero(self):
		return not self.triples

	def __repr__(self):
		return "ISGElement(%s)" % format_element(self)


def format_triple(system, t):
	return "(%s; %s; %s)" % (t.mu, system.group.name(t.g), t.nu)


def format_element(E):
	if E.is_zero:
		return "0"
	return "{" + ", ".join(format_triple(E.system, t) for t in E.triples) + "}"


def triple(system, mu, g, nu):
	if mu.source != system.act_vertex(g, nu.source):
		raise ValueError("s(%s) = %s but %s·s(%s) = %s" % (mu, mu.source, system.group.name(g),
			nu, system.act_vertex(g, nu.source)))
	return Triple(mu, g, nu)


def orthogonal(graph, t1, t2):
	return not graph.lambda_min(t1.mu, t2.mu) and not graph.lambda_min(t1.nu, t2.nu)


def _first_overlap(graph, triples):
	for t1, t2 in combinations(triples, 2):
		if t1.mu.range == t2.mu.range and graph.lambda_min(t1.mu, t2.mu):
			return t1, t2, graph.mce(t1.mu, t2.mu)[0]
		if t1.nu.range == t2.nu.range and graph.lambda_min(t1.nu, t2.nu):
			return t1, t2, graph.mce(t1.nu, t2.nu)[0]
	return None


def _meets(graph, a, b):
	return a.range == b.range and bool(graph.lambda_min(a, b))


def make_element(system, triples):
	triples = list(triples)
	for t in triples:
		triple(system, t.mu, t.g, t.nu)
	E = ISGElement(system, triples)
	bad = _first_overlap(system.graph, E.triples)
	if bad is not None:
		t1, t2, ext = bad
		raise OrthogonalityError("triples %s and %s are not orthogonal: common extension %s"
			% (format_triple(system, t1), format_triple(system, t2), ext))
	return E


def zero(system):
	return ISGElement(system, ())


def iota(system, path):
	return ISGElement(system, (Triple(path, 0, path),))


def singleton(system, mu, g, nu):
	return ISGElement(system, (triple(system, mu, g, nu),))


def _same_system(E, F):
	if E.system is not F.system:
		raise ValueError("elements belong to different systems")
	return E.system


def multiply(E, F):
	s = _same_system(E, F)
	graph, group = s.graph, s.group
	out = set()
	for t in E.triples:
		for u in F.triples:
			if t.nu.range != u.mu.range:
				continue
			hinv = group.inv(u.g)
			for alpha, beta in graph.lambda_min(t.nu, u.mu):
				b = s.act(hinv, beta)
				out.add(Triple(
					graph.compose(t.mu, s.act(t.g, alpha)),
					group.mul(s.cocycle_path(t.g, alpha), s.cocycle_path(u.g, b)),
					graph.compose(u.nu, b)))
	result = ISGElement(s, out)
	if len(result) > 1:
		bad = _first_overlap(graph, result.triples)
		if bad is not None:
			raise InternalError("product of %s and %s has overlapping triples %s, %s"
				% (format_element(E), format_element(F), format_triple(s, bad[0]), format_triple(s, bad[1])))
	return result


def star(F):
	s = F.system
	return ISGElement(s, (Triple(t.nu, s.group.inv(t.g), t.mu) for t in F.triples))


def range_projection(F):
	closed = ISGElement(F.system, (Triple(t.mu, 0, t.mu) for t in F.triples))
	computed = multiply(F, star(F))
	if computed != closed:
		raise InternalError("F F* = %s differs from %s" % (format_element(computed), format_element(closed)))
	return closed


def is_idempotent(F):
	return all(t.g == 0 and t.mu == t.nu for t in F.triples)


def _below_singleton(s, mu, t):
	"""Whether ι_μ <= {(ξ, g, ξ)}: μ = ξβ with β strongly fixed by g."""
	if t.mu != t.nu or not s.graph.is_prefix(t.mu, mu):
		return False
	beta = s.graph.factorize(mu, t.mu.degree)[1]
	return s.is_strongly_fixed(t.g, beta)


def leq(E, F):
	"""The natural partial order."""
	s = _same_system(E, F)
	if is_idempotent(E):
		return all(any(_below_singleton(s, t.mu, u) for u in F.triples) for t in E.triples)
	return leq_general(E, F)


def leq_general(E, F):
	"""E <= F iff F*E is idempotent and E = F (F*E)."""
	_same_system(E, F)
	e = multiply(star(F), E)
	return is_idempotent(e) and multiply(F, e) == E


def _orthogonal_subsets(graph, paths):
	paths = list(paths)
	out = []

	def grow(i, chosen):
		if chosen:
			out.append(tuple(chosen))
		for j in range(i, len(paths)):
			p = paths[j]
			if all(not _meets(graph, p, q) for q in chosen):
				chosen.append(p)
				grow(j + 1, chosen)
				chosen.pop()

	grow(0, [])
	return out


def principal_ideal_sample(F, cap):
	"""
	The nonzero idempotents E <= F whose paths extend those of F by degree at
	most cap. The zero element's ideal is reported as {0}.
	"""
	s = F.system
	if F.is_zero:
		return [zero(s)]
	cap = as_degree(s, cap)
	candidates = []
	for t in F.triples:
		if t.mu != t.nu:
			continue
		for tau in s.graph.paths_upto(t.mu.source, cap):
			if s.is_strongly_fixed(t.g, tau):
				candidates.append(s.graph.compose(t.mu, tau))
	candidates = sorted_paths(candidates)
	out = [ISGElement(s, (Triple(p, 0, p) for p in subset))
		for subset in _orthogonal_subsets(s.graph, candidates)]
	out.sort(key=lambda E: (len(E), [t.sort_key() for t in E.triples]))
	return out


def _covers_path(graph, mu, listed):
	"""
	A path τ at s(μ) such that ι_{μτ} meets none of the listed idempotent
	paths, or None. ι_{μτ} meets ι_p exactly when τ meets Ext(μ; {p}).
	"""
	omega = graph.ext(mu, [p for p in listed if p.range == mu.range])
	if any(p.is_vertex for p in omega):
		return None
	if not omega:
		return graph.vertex(mu.source)
	return graph.unmet_path(mu.source, omega)


def is_cover(C, F, cap, outer=False):
	"""
	Whether the idempotents in C form a cover (outer=True: an outer cover) of
	the principal ideal of F.
	"""
	s = F.system
	graph = s.graph
	cap = as_degree(s, cap)
	C = list(C)
	for E in C:
		_same_system(E, F)
		if not is_idempotent(E):
			raise ValueError("%s is not idempotent" % format_element(E))
		if not outer and not leq(E, F):
			raise ValueError("%s is not below %s" % (format_element(E), format_element(F)))
	listed = sorted_paths(t.mu for E in C for t in E.triples)
	undecided = []
	for t in F.triples:
		if t.mu != t.nu:
			continue
		if t.g == 0:
			bases = [graph.vertex(t.mu.source)]
		else:
			auto = _Restricted(s, t.g, t.mu.source)
			if not auto.exits:
				continue
			live = auto.live()
			if auto.cyclic_components(live):
				bases = [p for p in s.graph.paths_upto(t.mu.source, cap)
					if s.is_strongly_fixed(t.g, p)]
				bases = list(minimal_paths(graph, bases))
				undecided.append(format_triple(s, t))
			else:
				bases = list(minimal_paths(graph, [graph.normalize(t.mu.source, run)
					for run in auto.runs_to_exit(live)]))
		for beta in bases:
			start = graph.compose(t.mu, beta)
			missing = _covers_path(graph, start, listed)
			if missing is not None:
				witness = graph.compose(start, missing)
				return TriVerdict(FAILS, {"rule": "uncovered idempotent", "path": str(witness)},
					note="ι_{%s} meets no member of C" % witness)
	if undecided:
		return TriVerdict(UNKNOWN, {"rule": "strongly fixed paths not finitely generated",
			"triples": undecided}, cap, APPROXIMATE, "cover question undecided")
	return TriVerdict(HOLDS, {"rule": "exhaustive" if not outer else "outer exhaustive"},
		note="C covers %s" % format_element(F))


__all__ = [
	"ISGElement", "OrthogonalityError", "Triple",
	"format_element", "format_triple", "iota", "is_cover", "is_idempotent", "leq", "leq_general",
	"make_element", "multiply", "orthogonal", "principal_ideal_sample", "range_projection",
	"singleton", "star", "triple", "zero",
]
