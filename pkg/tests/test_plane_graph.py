import pytest

from discharge_lab.plane_graph import (
    AsymmetricAdjacency, EulerViolation, OuterWalkNotAFace, PLGParseError, build_from_rotation,
    canonical_cycle, classify_vertex, cycle_graph, format_plg, parse_plg, simple_cycles,
    trace_faces, validate_class_G,
)

K3 = "plg 1\nn 3\nouter 3 1 3 2\nrot 1: 2 3\nrot 2: 3 1\nrot 3: 1 2\n"


def test_parse_k3():
    g = parse_plg(K3)
    assert g.vertex_count == 3
    assert g.edges == [(1, 2), (1, 3), (2, 3)]
    assert len(g.faces) == 2
    assert g.face_degree(g.outer_face_id) == 3
    assert all(g.is_external(v) for v in g.vertices)


def test_format_round_trip(corpus_graph):
    for rel in ("basic/k3.plg", "basic/claw_host.plg", "hosts/wheel.plg", "medium/m000.plg"):
        g = corpus_graph(rel)
        text = format_plg(g)
        assert format_plg(parse_plg(text)) == text


def test_faces_satisfy_euler(manifest):
    for e in manifest.entries[:60]:
        g = manifest.load_graph(e)
        comps = len(g.components())
        assert g.vertex_count - len(g.edges) + len(g.faces) == 1 + comps
        assert sum(g.face_degree(f) for f in range(len(g.faces))) == 2 * len(g.edges)


def test_trace_faces_matches_stored_faces(corpus_graph):
    g = corpus_graph("hosts/antiwheel.plg")
    assert sorted(map(canonical_cycle, trace_faces(g))) == sorted(map(canonical_cycle, g.faces))


def test_asymmetric_rotation_rejected():
    with pytest.raises(AsymmetricAdjacency):
        build_from_rotation(3, {1: [2, 3], 2: [3, 1], 3: [2]}, [1, 3, 2])


def test_outer_walk_must_be_a_face():
    with pytest.raises(OuterWalkNotAFace):
        build_from_rotation(3, {1: [2, 3], 2: [3, 1], 3: [1, 2]}, [1, 2])


def test_non_planar_rotation_rejected():
    # K4 with a rotation system of genus 1
    rot = {1: [2, 3, 4], 2: [1, 3, 4], 3: [1, 2, 4], 4: [1, 2, 3]}
    with pytest.raises((EulerViolation, OuterWalkNotAFace)):
        build_from_rotation(4, rot, [1, 2, 3])


@pytest.mark.parametrize("text,line,needle", [
    ("plg 2\n", 1, "header"),
    ("plg 1\nn 3\nouter 3 1 3 2\nrot 1: 2 3\nrot 2: 3 x\n", 5, "malformed"),
    ("plg 1\nn 3\nouter 4 1 3 2\n", 3, "declares 4"),
    ("plg 1\nn 3\nouter 3 1 3 2\nrot 1: 2 3\nrot 2: 3 1\nrot 3: 2\n", 4, "AsymmetricAdjacency"),
    ("plg 1\nn 3\nouter 3 1 3 2\nrot 1: 2 3\nrot 1: 2 3\n", 5, "duplicate"),
    ("plg 1\nn 3\nbogus 1\n", 3, "unknown record"),
])
def test_parse_errors_name_the_line(text, line, needle):
    with pytest.raises(PLGParseError) as info:
        parse_plg(text, "g.plg")
    assert info.value.line == line
    assert needle in str(info.value)
    assert str(info.value).startswith(f"g.plg:{line}:")


def test_class_G_verdicts(corpus_graph):
    assert validate_class_G(corpus_graph("basic/k3.plg")).verdict
    assert validate_class_G(corpus_graph("basic/c5.plg")).verdict
    k4 = validate_class_G(corpus_graph("basic/k4.plg"))
    assert not k4.verdict
    assert {k for k, _ in k4.forbidden_cycles} == {4}
    w5 = validate_class_G(corpus_graph("basic/w5.plg"))
    assert not w5.verdict and 4 in {k for k, _ in w5.forbidden_cycles}


def test_simple_cycles_of_a_cycle():
    g = cycle_graph(7)
    assert simple_cycles(g, 11) == [canonical_cycle(range(1, 8))]
    assert simple_cycles(g, 6) == []


def test_classify_vertex(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    c = classify_vertex(g, 10)
    assert not c.is_external and c.degree == 3 and c.is_light and not c.is_heavy
    outer = classify_vertex(g, 1)
    assert outer.is_external and not outer.is_light
