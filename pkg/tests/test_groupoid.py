import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ssgraph.action import FAILS, HOLDS, UNKNOWN
from ssgraph.cli import load_fixture, parse_element, parse_system
from ssgraph.groupoid import (NOT_SIMPLE, SIMPLE, BoundaryPrefix, FilterView, Germ, aperiodicity_A,
	boundary_prefixes, filter_contains, germ_eq, germ_range, germ_source, horizon_truncations,
	is_G_cofinal, make_germ, make_prefix, simplicity_verdict, theta_apply, ultrafilter_bijection_check,
	zs_compose, zs_compose_oracle)
from ssgraph.isg import ISGElement, Triple, iota, multiply


def el(s, text):
	return parse_element(s, text)


def point(s, text):
	return make_prefix(s, s.graph.path(text.split()))


def test_horizon_truncations_rose2():
	s = load_fixture("rose2")
	assert [str(p) for p in horizon_truncations(s, "v", 2)] == ["a a", "a b", "b a", "b b"]
	assert len(boundary_prefixes(s, "v", 2)) == 7


def test_boundary_prefixes_omega():
	s = load_fixture("omega")
	complete = [str(b.prefix) for b in boundary_prefixes(s, "v00", (1, 1)) if b.complete]
	assert complete == ["h_a u_b"]
	assert [str(p) for p in horizon_truncations(s, "v00", (3, 3))] == ["h_a u_b"]


@pytest.mark.parametrize("n", range(1, 7))
def test_ultrafilter_counts_rose2(n):
	c = ultrafilter_bijection_check(load_fixture("rose2"), "v", n)
	assert (c["boundary_prefixes"], c["ultrafilters"], c["matched"]) == (2 ** n, 2 ** n, True)


def test_ultrafilter_counts_other_fixtures():
	c = ultrafilter_bijection_check(load_fixture("omega"), "v00", (1, 1))
	assert (c["boundary_prefixes"], c["ultrafilters"], c["matched"]) == (1, 1, True)
	c = ultrafilter_bijection_check(load_fixture("square2_flip"), "v", (1, 1))
	assert (c["boundary_prefixes"], c["ultrafilters"], c["matched"]) == (4, 4, True)
	c = ultrafilter_bijection_check(load_fixture("disc"), "v", 3)
	assert (c["boundary_prefixes"], c["ultrafilters"]) == (1, 1)


def test_filter_membership():
	s = load_fixture("rose2")
	f = FilterView(point(s, "a b"))
	assert filter_contains(f, el(s, "(a; e; a)")).status == HOLDS
	assert filter_contains(f, el(s, "{(b; e; b), (a b; e; a b)}")).status == HOLDS
	assert filter_contains(f, el(s, "(b; e; b)")).status == FAILS
	assert filter_contains(f, el(s, "(a b a; e; a b a)")).status == UNKNOWN
	with pytest.raises(ValueError):
		filter_contains(f, el(s, "(a; e; b)"))


def test_filter_on_finite_boundary_path():
	s = load_fixture("omega")
	f = FilterView(point(s, "h_a u_b"))
	assert f.generator.complete
	assert filter_contains(f, el(s, "(h_a; e; h_a)")).status == HOLDS
	assert filter_contains(f, el(s, "(@v10; e; @v10)")).status == FAILS


def test_ultrafilter_maximality_rose2_depth3():
	# a boundary prefix of full depth decides every idempotent of depth <= 3
	s = load_fixture("rose2")
	gens = [iota(s, p) for p in s.graph.paths_upto("v", (3,))]
	for y in horizon_truncations(s, "v", 3):
		f = FilterView(make_prefix(s, y))
		inside = [E for E in gens if filter_contains(f, E).status == HOLDS]
		for E in gens:
			status = filter_contains(f, E).status
			assert status in (HOLDS, FAILS)
			meets_all = all(not multiply(E, F).is_zero for F in inside)
			assert (status == HOLDS) == meets_all


def test_theta_flip():
	s = load_fixture("flip")
	b = theta_apply(el(s, "(@v; g; @v)"), point(s, "a b"))
	assert (str(b.prefix), s.group.name(b.residual)) == ("b a", "g")
	b = theta_apply(el(s, "(b; g; a)"), point(s, "a a"))
	assert (str(b.prefix), s.group.name(b.residual)) == ("b b", "g")
	with pytest.raises(ValueError):
		theta_apply(el(s, "(b; g; a)"), point(s, "b a"))


def test_theta_respects_products():
	s = load_fixture("flip")
	F, G = el(s, "(b; g; a)"), el(s, "{(a; e; a), (b; g; b)}")
	x = point(s, "a b a")
	lhs = theta_apply(multiply(F, G), x)
	rhs = theta_apply(F, theta_apply(G, x))
	assert (lhs.prefix, lhs.residual) == (rhs.prefix, rhs.residual)
	assert (str(lhs.prefix), lhs.residual) == ("b a b", 1)


def test_germs():
	s = load_fixture("rose2")
	x = point(s, "a b")
	g1 = make_germ(el(s, "(@v; e; @v)"), x)
	g2 = make_germ(el(s, "{(a; e; a), (b; e; b)}"), x)
	assert germ_eq(s, g1, g2).status == HOLDS
	assert germ_source(g1) == x
	assert str(germ_range(s, g2).prefix) == "a b"
	g3 = make_germ(el(s, "(b; e; a)"), x)
	assert germ_eq(s, g1, g3).status == FAILS


def test_germ_of_group_element():
	t = load_fixture("rose2_trivial_action")
	x = point(t, "b a")
	assert germ_eq(t, make_germ(el(t, "(@v; g; @v)"), x), make_germ(el(t, "(@v; e; @v)"), x)).status == HOLDS
	c = load_fixture("rose2_constant_cocycle")
	y = point(c, "b a")
	v = germ_eq(c, make_germ(el(c, "(@v; g; @v)"), y), make_germ(el(c, "(@v; e; @v)"), y))
	assert v.status == UNKNOWN
	f = load_fixture("flip")
	z = point(f, "a")
	assert germ_eq(f, make_germ(el(f, "(@v; g; @v)"), z), make_germ(el(f, "(@v; e; @v)"), z)).status == FAILS


def test_germ_domain_mismatch():
	s = load_fixture("rose2")
	x = point(s, "a b")
	wrong = Germ(Triple(s.graph.path(["b"]), 0, s.graph.path(["b"])), x)
	v = germ_eq(s, wrong, make_germ(el(s, "(@v; e; @v)"), x))
	assert (v.status, v.witness["rule"]) == (FAILS, "base outside the domain")
	with pytest.raises(ValueError):
		make_germ(el(s, "(b; e; b)"), x)


def test_zs_compose():
	s = load_fixture("flip")
	a, b, v = (s.graph.path([t]) for t in ("a", "b", "@v"))
	p, h = zs_compose(s, (a, 1), (s.graph.path(["a", "b"]), 0))
	assert (str(p), h) == ("a b a", 1)
	assert zs_compose(s, (v, 1), (v, 1)) == (v, 0)
	assert zs_compose(s, (b, 0), (a, 1)) == (s.graph.path(["b", "a"]), 1)


@pytest.mark.parametrize("name, cap, points", [("flip", 2, 4), ("omega", 2, 4), ("square2_flip", 1, 1),
	("rose2_trivial_action", 2, 3), ("loop1_fixed", 3, 6)])
def test_zs_oracle_agrees(name, cap, points):
	s = load_fixture(name)
	res = zs_compose_oracle(s, cap, (points,) * s.graph.rank)
	assert res["mismatches"] == []
	assert res["evaluations"] > 0


def test_zs_oracle_detects_wrong_product():
	s = load_fixture("flip")

	def wrong(E, F):
		P = multiply(E, F)
		# flip the group part of every triple whose range path is a single edge
		return ISGElement(s, (Triple(t.mu, 1 - t.g if t.mu.length == 1 else t.g, t.nu) for t in P.triples))

	assert zs_compose_oracle(s, 1, product=wrong)["mismatches"]


def test_cofinality_goldens():
	disc = is_G_cofinal(load_fixture("disc"), 4)
	assert disc.status == FAILS
	assert (disc.witness["vertex"], disc.witness["start"], disc.witness["path"]) == ("v", "w", "b^∞")
	assert disc.note == "witness vertex v, trapped loop b"
	assert is_G_cofinal(load_fixture("flip"), 4).status == HOLDS
	assert is_G_cofinal(load_fixture("omega"), 4).status == HOLDS


def test_cofinality_with_a_sink():
	s = parse_system("RANK 1\nVERTICES\nv w\nEDGES\na 1 v v\nb 1 v w\n")
	v = is_G_cofinal(s, 4)
	assert (v.status, v.witness["vertex"], v.witness["path"]) == (FAILS, "w", "a^∞")


def test_cofinality_via_orbits():
	# from v one only reaches v, but g moves w onto v
	text = ("RANK 1\nVERTICES\nv w\nEDGES\na 1 v v\nb 1 w w\nGROUP\norder 2\nnames e g\ne g\ng e\n"
		"VERTEX_ACTION\ng v -> w\ng w -> v\nEDGE_ACTION\ng a -> b\ng b -> a\n")
	s = parse_system(text)
	assert is_G_cofinal(s, 4).status == HOLDS
	assert is_G_cofinal(load_fixture("disc"), 4).status == FAILS


def test_aperiodicity_goldens():
	r = aperiodicity_A(load_fixture("rose2"), 4)
	assert r.status == HOLDS
	assert aperiodicity_A(load_fixture("disc"), 4).witness == {
		"rule": "every boundary path is eventually periodic", "vertex": "v"}
	assert aperiodicity_A(load_fixture("flip"), 4).status == HOLDS
	assert aperiodicity_A(load_fixture("omega"), 2).status == HOLDS
	assert aperiodicity_A(load_fixture("square2_flip"), 2).status == UNKNOWN
	cube = aperiodicity_A(load_fixture("cube1"), 2)
	assert (cube.status, cube.witness["m"], cube.witness["n"]) == (FAILS, [0, 0, 0], [1, 0, 0])


def _random_graph(rng):
	n = rng.randint(1, 4)
	vertices = ["v%d" % i for i in range(n)]
	lines = ["RANK 1", "VERTICES", " ".join(vertices), "EDGES"]
	for i in range(rng.randint(0, 6)):
		lines.append("e%d 1 %s %s" % (i, rng.choice(vertices), rng.choice(vertices)))
	return parse_system("\n".join(lines) + "\n")


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_rank1_checkers_match_classical_criteria(seed):
	s = _random_graph(oracles.seeded(seed))
	g = s.graph
	assert (is_G_cofinal(s, 3).status == HOLDS) == oracles.classical_cofinal(g)
	a = aperiodicity_A(s, 3).status
	assert a in (HOLDS, FAILS)
	assert (a == HOLDS) == oracles.classical_condition_L(g) == oracles.two_return_cycles(g)


def test_report_lines():
	assert simplicity_verdict(load_fixture("disc"), 4).to_text().splitlines()[-1] == (
		"simplicity: NotSimple (G-cofinality fails; witness vertex v, trapped loop b)")
	lines = simplicity_verdict(load_fixture("flip"), 4).to_text().splitlines()
	assert "hausdorff: Holds (pseudo-free)" in lines
	assert simplicity_verdict(load_fixture("rose2"), 4).verdicts["simplicity"].status == SIMPLE


def test_simplicity_branches():
	assert simplicity_verdict(load_fixture("omega"), 2).verdicts["simplicity"].witness["rule"].startswith(
		"outside hypotheses")
	assert simplicity_verdict(load_fixture("cube1"), 2).verdicts["simplicity"].status == NOT_SIMPLE
	from test_action import ROSE2_STAIRS
	stairs = simplicity_verdict(parse_system(ROSE2_STAIRS), 3).verdicts
	assert stairs["hausdorff"].status == FAILS
	assert stairs["simplicity"].status == UNKNOWN
	assert stairs["simplicity"].witness["blockers"] == ["eventually_trivial_cocycle"]


def test_report_json_shape():
	doc = simplicity_verdict(load_fixture("flip"), 3).to_json()
	assert doc["schema"] == "ssgraph.analysis/1"
	assert list(doc["checkers"]) == ["pseudo_free", "hausdorff", "g_cofinal", "aperiodicity_a",
		"fixed_point_condition", "eventually_trivial_cocycle", "simplicity"]
	for item in doc["checkers"].values():
		assert set(item) == {"status", "witness", "regime", "bound"}
		assert "rule" in item["witness"]


def test_boundary_prefix_defaults():
	b = BoundaryPrefix(None, (0,))
	assert (b.regime, b.residual, b.complete) == ("Exact", 0, False)
