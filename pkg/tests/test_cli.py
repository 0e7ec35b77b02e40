import io
import json

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from ssgraph import cli
from ssgraph.cli import (FIXTURES, load_fixture, main, parse_element, parse_operations, parse_system,
	serialize_system)
from ssgraph.errors import InternalError, InvalidSystem, ParseError
from ssgraph.isg import format_element

ALL = sorted(p.stem for p in FIXTURES.glob("*.txt") if p.stem != "flip_bad_cocycle")


def run(argv):
	out, err = io.StringIO(), io.StringIO()
	code = main(argv, out, err)
	return code, out.getvalue(), err.getvalue()


def fixture(name):
	return str(FIXTURES / (name + ".txt"))


def test_flip_parses():
	s = load_fixture("flip")
	assert s.group.order == 2
	assert s.act_edge(1, "a") == "b"
	assert s.name == "flip"


def test_missing_group_is_trivial():
	s = parse_system("RANK 1\nVERTICES\nv\nEDGES\na 1 v v\n")
	assert s.group.order == 1
	assert s.act_edge(0, "a") == "a"


def test_undeclared_edge_in_squares():
	text = "RANK 2\nVERTICES\nv\nEDGES\ne 1 v v\nf 2 v v\nSQUARES\ne x -> f e\n"
	with pytest.raises(ParseError) as info:
		parse_system(text)
	assert (info.value.line, info.value.column) == (8, 3)
	assert str(info.value) == "line 8, column 3: undeclared edge x"


@pytest.mark.parametrize("text, line, column", [
	("VERTICES\nv\n", 1, 1),
	("RANK 1\nv\n", 2, 1),
	("RANK 0\nVERTICES\nv\n", 1, 6),
	("RANK 1\nVERTICES\nv v\n", 3, 3),
	("RANK 1\nVERTICES\nv\nEDGES\na 2 v v\n", 5, 3),
	("RANK 1\nVERTICES\nv\nEDGES\na 1 v w\n", 5, 7),
	("RANK 1\nVERTICES\nv\nEDGES\na 1 v v\nGROUP\norder infinite\n", 7, 7),
	("RANK 1\nVERTICES\nv\nEDGES\na 1 v v\nGROUP\norder 2\nnames e g\ne g\ng e\nCOCYCLE\nh a -> e\n", 12, 1),
	("RANK 1\nVERTICES\nv\nEDGES\na 1 v v\nGROUP\norder 2\nnames e g\ne g\ng e\nEDGE_ACTION\ng a b\n", 12, 5),
])
def test_syntax_errors_have_locations(text, line, column):
	with pytest.raises(ParseError) as info:
		parse_system(text)
	assert (info.value.line, info.value.column) == (line, column)


def test_infinite_group_is_rejected():
	with pytest.raises(ParseError, match="only finite groups"):
		parse_system("RANK 1\nVERTICES\nv\nGROUP\norder infinite\n")


def test_semantic_errors_collect_problems():
	text = "RANK 2\nVERTICES\nv\nEDGES\ne 1 v v\nf 2 v v\ne2 1 v v\nSQUARES\ne f -> f e\ne2 f -> f e\n"
	with pytest.raises(InvalidSystem) as info:
		parse_system(text)
	assert any("Φ_{12} not injective" in p for p in info.value.problems)


@pytest.mark.parametrize("name", ALL)
def test_round_trip(name):
	s = load_fixture(name)
	text = serialize_system(s)
	t = parse_system(text, s.name)
	assert serialize_system(t) == text
	assert (t.graph.rank, t.graph.vertices, t.graph.edges, t.graph.squares) == (
		s.graph.rank, s.graph.vertices, s.graph.edges, s.graph.squares)
	assert t.group == s.group
	assert (t.vertex_action, t.edge_action, t.cocycle) == (s.vertex_action, s.edge_action, s.cocycle)


def test_serialized_flip():
	assert serialize_system(load_fixture("flip")) == (
		"RANK 1\nVERTICES\nv\nEDGES\na 1 v v\nb 1 v v\nGROUP\norder 2\nnames e g\ne g\ng e\n"
		"EDGE_ACTION\ng a -> b\ng b -> a\n")


def test_element_syntax():
	s = load_fixture("flip")
	assert format_element(parse_element(s, "0")) == "0"
	assert format_element(parse_element(s, "{ }")) == "0"
	assert format_element(parse_element(s, " ( a b ; g ; b a ) ")) == "{(a b; g; b a)}"
	assert format_element(parse_element(s, "{(b; e; b), (a; 1; a)}")) == "{(a; g; a), (b; e; b)}"


@pytest.mark.parametrize("text, column", [
	("(a; h; a)", 5),
	("(a; g; c a)", 8),
	("(a; g a)", 5),
	("{(a; e; a), (a b; e; a b)}", 27),
	("(a; e; a) x", 11),
	("[a]", 1),
])
def test_element_errors(text, column):
	with pytest.raises(ParseError) as info:
		parse_element(load_fixture("flip"), text)
	assert info.value.column == column


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["flip", "omega", "square2_flip", "disc"]), st.integers(0, 10 ** 9))
def test_element_round_trip(name, seed):
	s = load_fixture(name)
	E = oracles.random_element(oracles.seeded(seed), s, 3, 2)
	assert parse_element(s, format_element(E)) == E


def test_operations():
	s = load_fixture("flip")
	ops = parse_operations(s, "# products\n{(@v; g; @v)} * {(@v; g; @v)}\nstar (a; g; b)\n\nidempotent 0\n")
	assert [cli.run_operation(k, o) for k, o in ops] == ["{(@v; e; @v)}", "{(b; g; a)}", "true"]
	with pytest.raises(ParseError) as info:
		parse_operations(s, "(a; e; a) (b; e; b)\n")
	assert info.value.line == 1


def test_validate_command():
	for name in ALL:
		assert run(["validate", fixture(name)])[0] == 0
	code, out, err = run(["validate", fixture("flip_bad_cocycle")])
	assert code == 1
	assert "axiom (a) cocycle identity" in err


def test_validate_reports_square_problem(tmp_path):
	p = tmp_path / "bad.txt"
	p.write_text("RANK 2\nVERTICES\nv\nEDGES\ne 1 v v\nf 2 v v\ne2 1 v v\nSQUARES\ne f -> f e\ne2 f -> f e\n")
	code, out, err = run(["validate", str(p)])
	assert code == 1 and "Φ_{12} not injective" in err


def test_missing_file():
	code, out, err = run(["validate", "/nonexistent/system.txt"])
	assert code == 1 and err.startswith("error:")


def test_analyze_text():
	code, out, err = run(["analyze", fixture("disc")])
	assert code == 0
	assert "simplicity: NotSimple (G-cofinality fails; witness vertex v, trapped loop b)" in out.splitlines()
	code, out, err = run(["analyze", fixture("flip"), "--depth", "3"])
	assert "hausdorff: Holds (pseudo-free)" in out.splitlines()
	code, out, err = run(["analyze", fixture("rose2")])
	assert "simplicity: Simple (all conditions hold)" in out.splitlines()


def test_analyze_json_is_deterministic():
	first = run(["analyze", fixture("flip"), "--format", "json"])[1]
	second = run(["analyze", fixture("flip"), "--format", "json"])[1]
	assert first == second
	doc = json.loads(first)
	assert doc["schema"] == "ssgraph.analysis/1"
	assert doc["checkers"]["pseudo_free"]["status"] == "Holds"
	assert doc["metadata"]["depth"] == [4]


def test_depth_lists():
	code, out, err = run(["analyze", fixture("omega"), "--depth", "2,1", "--format", "json"])
	assert code == 0 and json.loads(out)["metadata"]["depth"] == [2, 1]
	code, out, err = run(["analyze", fixture("omega"), "--depth", "2,1,1"])
	assert code == 1
	with pytest.raises(SystemExit):
		run(["analyze", fixture("omega"), "--depth", "x"])


def test_internal_errors_exit_2(monkeypatch):
	def boom(system, cap):
		raise InternalError("broken identity")

	monkeypatch.setattr(cli, "simplicity_verdict", boom)
	code, out, err = run(["analyze", fixture("flip")])
	assert code == 2 and "broken identity" in err


def test_mul_command(tmp_path):
	ops = tmp_path / "ops.txt"
	ops.write_text("{(@v; g; @v)} * {(@v; g; @v)}\n(a; g; b) * 0\nstar {(a; g; b)}\nidempotent (a; g; a)\n"
		"{(@v; g; @v)} * (a; e; a)\n")
	code, out, err = run(["mul", fixture("flip"), str(ops)])
	assert code == 0
	assert out.splitlines() == ["{(@v; e; @v)}", "0", "{(b; g; a)}", "false", "{(b; g; a)}"]
	ops.write_text("(a; e; a) * (a; q; a)\n")
	code, out, err = run(["mul", fixture("flip"), str(ops)])
	assert code == 1 and "line 1" in err


def test_boundary_command():
	code, out, err = run(["boundary", fixture("rose2"), "--vertex", "v", "--depth", "2"])
	assert code == 0
	assert out.splitlines() == ["a a", "a b", "b a", "b b", "boundary prefixes: 4, ultrafilters: 4, matched: true"]
	code, out, err = run(["boundary", fixture("omega"), "--vertex", "v00", "--depth", "1,1", "--format", "json"])
	doc = json.loads(out)
	assert doc["finite_boundary_paths"] == ["h_a u_b"]
	assert doc["bijection"]["ultrafilters"] == 1
	assert run(["boundary", fixture("rose2"), "--vertex", "w", "--depth", "2"])[0] == 1


def test_module_entry_point():
	import subprocess
	import sys
	res = subprocess.run([sys.executable, "-m", "ssgraph", "validate", fixture("rose2")],
		capture_output=True, text=True)
	assert res.returncode == 0 and res.stdout == "valid\n"


def test_bare_fixture_names():
	assert run(["validate", "rose2"]) == (0, "valid\n", "")
	assert run(["validate", "disc.txt"])[0] == 0
