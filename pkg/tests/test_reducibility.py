import pytest

from discharge_lab.coloring import enumerate_all, is_valid, solve
from discharge_lab.configurations import detect
from discharge_lab.reducibility import (
    apply_surgery, certify_match, extend_back, required_tags, thread_count, verify_reducibility,
)
from discharge_lab.surgery import TRIANGULAR_MODES, validate_surgery


def host(manifest, kind):
    e = [e for e in manifest.entries if e.host_for == kind][0]
    return manifest.load_graph(e)


def test_min_degree_surgery(manifest):
    g = host(manifest, "MinDegree")
    m = detect(g, "MinDegree")[0]
    s = apply_surgery(g, m)
    assert s.deletions == (m.b["v"],)
    assert s.result.vertex_count == g.vertex_count - 1
    assert m.b["v"] not in s.vertex_map
    assert sorted(s.vertex_map.values()) == list(s.result.vertices)


@pytest.mark.parametrize("kind", ["MinDegree", "CutVertex", "LightCluster", "LightTriangle334"])
def test_every_result_coloring_extends(manifest, kind):
    g = host(manifest, kind)
    m = detect(g, kind)[0]
    s = apply_surgery(g, m)
    cols = enumerate_all(s.result) if s.result.vertex_count <= 10 else [solve(s.result)]
    assert cols
    for col in cols:
        ext = extend_back(g, m, col)
        assert is_valid(g, ext)


def test_extend_back_rejects_invalid_input(manifest):
    g = host(manifest, "MinDegree")
    m = detect(g, "MinDegree")[0]
    s = apply_surgery(g, m)
    bad = {v: 2 for v in s.result.vertices}
    with pytest.raises(ValueError):
        extend_back(g, m, bad)


def test_certify_match_exhaustive(manifest):
    g = host(manifest, "LightCluster")
    rep = certify_match(g, detect(g, "LightCluster")[0])
    assert rep.ok and rep.mode == "exhaustive"
    assert rep.colorings == rep.successes > 0
    assert rep.to_json()["ok"]


@pytest.mark.parametrize("kind", ["TwoPendent", "Wheel", "SmallFiveFaceWith4Vertex"])
def test_kind_certification_covers_required_branches(manifest, kind):
    hosts = [(e.path, manifest.load_graph(e)) for e in manifest.entries if e.host_for == kind]
    rep = verify_reducibility(kind, hosts, max_matches=None, workers=1)
    assert rep.ok, rep.missing
    assert set(required_tags(kind)) <= rep.covered


def test_surgery_validity_report(manifest):
    g = host(manifest, "MinDegree")
    s = apply_surgery(g, detect(g, "MinDegree")[0])
    for mode in TRIANGULAR_MODES:
        v = validate_surgery(g, s, triangular_mode=mode)
        assert not v.touches_D and v.created_cycle_lengths == ()
        assert v.verdict_strong and v.D_still_good
    with pytest.raises(ValueError):
        validate_surgery(g, s, triangular_mode="bogus")


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("DISCHARGE_LAB_THREADS", "3")
    assert thread_count() == 3
    monkeypatch.setenv("DISCHARGE_LAB_THREADS", "0")
    assert thread_count() == 1
    monkeypatch.setenv("DISCHARGE_LAB_THREADS", "many")
    assert thread_count() >= 1
