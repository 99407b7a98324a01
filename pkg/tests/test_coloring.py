import itertools

import pytest

from discharge_lab.coloring import (
    BoundaryNotCycle, ColoringParseError, InvalidPrecoloring, SizeBound, boundary_precolorings,
    enumerate_all, format_coloring, has_coloring_bruteforce, is_valid, parse_coloring, solve,
    solve_with, super_extend, swap_23, verify_coloring,
)
from discharge_lab.plane_graph import cycle_graph

UNCOLORABLE = "small/s083.plg"


def brute_count(g):
    n = g.vertex_count
    count = 0
    for cs in itertools.product((1, 2, 3), repeat=n):
        col = dict(zip(g.vertices, cs))
        if is_valid(g, col):
            count += 1
    return count


def test_k3_colorings(corpus_graph):
    g = corpus_graph("basic/k3.plg")
    assert is_valid(g, {1: 1, 2: 1, 3: 2})
    assert not is_valid(g, {1: 2, 2: 2, 3: 1})
    # two vertices colored 1 and the third 2 or 3, or all three distinct
    # with 1 used once: 3 * 2 + 6 = 12
    assert len(enumerate_all(g)) == 12


def test_violation_kinds():
    g = cycle_graph(5)
    v = verify_coloring(g, {1: 1, 2: 1, 3: 1, 4: 2, 5: 3})
    assert {x.rule for x in v} == {"one_degree"}
    v = verify_coloring(g, {1: 2, 2: 2, 3: 3, 4: 2, 5: 3})
    assert [x.rule for x in v] == ["monochromatic"]
    assert "monochromatic" in v[0].to_json()["rule"]


@pytest.mark.parametrize("rel", ["basic/c5.plg", "basic/k4.plg", "basic/w5.plg", "small/s010.plg"])
def test_enumeration_matches_product_brute_force(corpus_graph, rel):
    g = corpus_graph(rel)
    assert len(enumerate_all(g)) == brute_count(g)


def test_solver_agrees_with_enumeration(manifest):
    for e in manifest.entries:
        g = manifest.load_graph(e)
        if g.vertex_count > 10:
            continue
        s = solve(g)
        assert (s is None) == (not has_coloring_bruteforce(g)), e.path
        if s is not None:
            assert is_valid(g, s)


def test_uncolorable_graph(corpus_graph):
    g = corpus_graph(UNCOLORABLE)
    assert solve(g) is None
    assert enumerate_all(g) == []


def test_enumeration_bound():
    with pytest.raises(SizeBound):
        enumerate_all(cycle_graph(15))


def test_swap_23_preserves_validity(corpus_graph):
    g = corpus_graph("hosts/wheel.plg")
    s = solve(g)
    assert is_valid(g, swap_23(s))


def test_solve_with_respects_fixed(corpus_graph):
    g = corpus_graph("hosts/wheel.plg")
    s = solve_with(g, {1: 3, 2: 2})
    assert s[1] == 3 and s[2] == 2 and is_valid(g, s)


def test_super_extension_claw_host(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    pres = list(boundary_precolorings(g))
    assert pres
    # the outer 9-cycle is bad, so some precolorings may fail; the ones that
    # extend must give a boundary-respecting witness
    for pre in pres:
        w = super_extend(g, pre)
        if w is not None:
            assert w.respects_boundary
            assert is_valid(g, w.coloring)
            assert all(w.coloring[v] == c for v, c in pre.items())


def test_claw_host_has_a_failing_precoloring(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    assert any(super_extend(g, pre) is None for pre in boundary_precolorings(g))


def test_precoloring_errors(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    with pytest.raises(InvalidPrecoloring):
        super_extend(g, {1: 1})
    with pytest.raises(InvalidPrecoloring):
        super_extend(g, {v: 2 for v in range(1, 10)})
    h = corpus_graph("small/s002.plg")  # outer walk repeats a vertex
    with pytest.raises(BoundaryNotCycle):
        super_extend(h, {})


def test_coloring_file_round_trip():
    col = {3: 2, 1: 1, 2: 3}
    text = format_coloring(col)
    assert text == "col 1 1\ncol 2 3\ncol 3 2\n"
    assert parse_coloring(text) == col
    assert parse_coloring("# comment\n\ncol 1 2  # trailing\n") == {1: 2}


@pytest.mark.parametrize("text,line", [
    ("col 1 1\ncolor 2 2\n", 2),
    ("col 1 4\n", 1),
    ("col 1 1\ncol 1 2\n", 2),
    ("col a 1\n", 1),
])
def test_coloring_parse_errors(text, line):
    with pytest.raises(ColoringParseError) as info:
        parse_coloring(text, "p.col")
    assert info.value.line == line
    assert str(info.value).startswith(f"p.col:{line}:")
