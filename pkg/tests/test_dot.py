from textwrap import dedent

from discharge_lab.configurations import detect_all
from discharge_lab.corpus import claw_host_dot
from discharge_lab.cycles import find_bad_partition
from discharge_lab.dot import Highlight, emit_dot, match_highlight, partition_highlight

from conftest import CORPUS


def test_k3_with_coloring(corpus_graph):
    g = corpus_graph("basic/k3.plg")
    assert emit_dot(g, {1: 1, 2: 1, 3: 2}, name="k3") == dedent("""\
        graph "k3" {
          graph [layout=neato, overlap=false, splines=true];
          node [shape=circle, style=filled, fontname="Helvetica", fillcolor="#ffffff"];
          1 [label="1", fillcolor="#f4a582", xlabel="c1", peripheries=2];
          2 [label="2", fillcolor="#f4a582", xlabel="c1", peripheries=2];
          3 [label="3", fillcolor="#92c5de", xlabel="c2", peripheries=2];
          1 -- 2;
          1 -- 3;
          2 -- 3;
        }
        """)


def test_plain_drawing_has_no_clusters(corpus_graph):
    text = emit_dot(corpus_graph("hosts/wheel.plg"))
    assert "cluster" not in text and "fillcolor=\"#f4a582\"" not in text


def test_claw_host_golden(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    golden = (CORPUS / "golden" / "claw_host.dot").read_text()
    assert claw_host_dot(g) == golden
    assert "subgraph cluster_0" in golden and 'label="Claw_555"' in golden


def test_partition_highlight_covers_claw(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    h = partition_highlight(find_bad_partition(g, g.outer_walk))
    assert h == Highlight("Claw_555", (1, 4, 7, 10))


def test_shared_vertex_goes_to_first_cluster(corpus_graph):
    g = corpus_graph("hosts/wheel.plg")
    ms = detect_all(g)
    hs = [match_highlight(ms[0], 0), Highlight("again", ms[0].vertices)]
    text = emit_dot(g, highlights=hs)
    v = ms[0].vertices[0]
    assert text.count(f"    {v};") == 1
    assert f"(also {v})" in text


def test_deterministic(corpus_graph):
    g = corpus_graph("hosts/antiwheel.plg")
    hs = [match_highlight(m, i) for i, m in enumerate(detect_all(g))]
    assert emit_dot(g, highlights=hs) == emit_dot(g, highlights=hs)
