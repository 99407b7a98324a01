import pytest

from discharge_lab.corpus import BAD_TEMPLATES, bad_cycle_graph
from discharge_lab.cycles import (
    BAD_KINDS, NotACycle, PathDoesNotSplit, check_remark1, chords_of, classify_cycle, cycle_record,
    enumerate_cycles, find_bad_partition, is_good_cycle, sides_of_cycle, splitting_paths,
    check_splitting_path, verify_lemma7_consequence,
)
from discharge_lab.oracle import bad_kinds_bruteforce
from discharge_lab.plane_graph import cycle_graph


def test_claw_host_outer_cycle_is_claw_555(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    c = classify_cycle(g, list(range(1, 10)))
    assert c.verdict == "bad"
    assert c.partition.kind == "Claw_555"
    assert c.partition.core == (10,)
    assert sorted(k for _, k in c.partition.cells) == [5, 5, 5]


@pytest.mark.parametrize("kind", sorted(BAD_TEMPLATES))
def test_every_template_is_recognised(kind):
    g = bad_cycle_graph(kind)
    D = g.outer_walk
    bp = find_bad_partition(g, D)
    assert bp is not None and bp.kind == kind
    assert len(D) in (9, 10, 11)
    assert bad_kinds_bruteforce(g, D) == {kind}
    assert not is_good_cycle(g, D)


def test_templates_cover_all_bad_kinds():
    assert set(BAD_TEMPLATES) == set(BAD_KINDS)


@pytest.mark.parametrize("kind", sorted(BAD_TEMPLATES))
def test_remark_audit_passes_on_templates(kind):
    g = bad_cycle_graph(kind)
    rep = check_remark1(g, g.outer_walk)
    assert rep.passed, rep.violations
    assert bool(rep.equality_vertices) == (kind == "EdgeClaw_3738")


def test_remark_audit_rejects_good_cycles():
    g = cycle_graph(9)
    with pytest.raises(ValueError):
        check_remark1(g, g.outer_walk)


def test_short_cycles_are_good():
    for k in (3, 5, 7, 8):
        g = cycle_graph(k)
        assert classify_cycle(g, g.outer_walk).is_good


def test_long_cycles_need_opt_in():
    g = cycle_graph(12)
    with pytest.raises(ValueError):
        classify_cycle(g, g.outer_walk)
    c = classify_cycle(g, g.outer_walk, allow_long=True)
    assert c.is_good and c.by_length


def test_not_a_cycle():
    g = cycle_graph(5)
    with pytest.raises(NotACycle):
        cycle_record(g, [1, 2, 4])
    with pytest.raises(NotACycle):
        cycle_record(g, [1, 2, 2])


def test_sides_and_chords(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    inside, outside = sides_of_cycle(g, list(range(1, 10)))
    assert inside == {10} and outside == frozenset()
    rec = cycle_record(g, [1, 2, 3, 4, 10])
    assert rec.interior == frozenset() and not rec.is_separating
    assert chords_of(g, list(range(1, 10))) == ()


def test_edge_claw_3738_chord():
    g = bad_cycle_graph("EdgeClaw_3738")
    assert chords_of(g, g.outer_walk) == ((7, 9),)


def test_enumerate_cycles_are_canonical_and_sorted(corpus_graph):
    g = corpus_graph("hosts/wheel.plg")
    recs = enumerate_cycles(g)
    keys = [(r.length, r.vertices) for r in recs]
    assert keys == sorted(keys)
    assert all(r.vertices[0] == min(r.vertices) for r in recs)
    assert all(r.length not in (4, 6) for r in recs)


def test_splitting_paths_and_table(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    D = list(range(1, 10))
    paths = splitting_paths(g, D, 3)
    assert (1, 10, 4) in paths
    rep = check_splitting_path(g, (1, 10, 4), D)
    assert verify_lemma7_consequence(g, (1, 10, 4), D) == rep
    assert rep["split_lengths"] == [5, 8]
    # a 2-path may only cut off a triangle; the claw host is not that tight
    assert not rep["passes"] and rep["note"]
    with pytest.raises(PathDoesNotSplit):
        check_splitting_path(g, (1, 2), D)
