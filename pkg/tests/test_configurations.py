import pytest

from discharge_lab.configurations import (
    CASES, KINDS, ConfigurationMatch, UnknownKind, check_kind, detect, detect_all,
)
from discharge_lab.hosts import core_specs
from discharge_lab.oracle import compare

SPECS = {s.name: s for s in core_specs()}


def test_sixteen_kinds():
    assert len(KINDS) == 16 and len(set(KINDS)) == 16


def test_unknown_kind():
    with pytest.raises(UnknownKind):
        check_kind("Pentagram")


@pytest.mark.parametrize("name", sorted(SPECS))
def test_host_exhibits_its_kind_and_case(manifest, name):
    spec = SPECS[name]
    (entry,) = [e for e in manifest.entries if e.path == f"hosts/{name}.plg"]
    assert entry.host_for == spec.kind
    g = manifest.load_graph(entry)
    assert spec.case in {m.case_tag for m in detect(g, spec.kind)}
    assert spec.case in CASES[spec.kind]


def test_every_kind_has_a_host(manifest):
    assert {e.host_for for e in manifest.entries if e.host_for} == set(KINDS)


def test_every_case_has_a_host():
    have = {(s.kind, s.case) for s in SPECS.values()}
    assert have == {(k, c) for k in KINDS for c in CASES[k]}


@pytest.mark.parametrize("name", sorted(SPECS))
def test_detectors_agree_with_oracle(manifest, name):
    g = manifest.load_graph([e for e in manifest.entries if e.path == f"hosts/{name}.plg"][0])
    for kind, row in compare(g).items():
        assert row["agree"], (kind, row["missing"], row["extra"])


def test_detectors_agree_with_oracle_on_random_graphs(manifest):
    for e in manifest.family("small")[:40] + manifest.family("medium")[:10]:
        g = manifest.load_graph(e)
        for kind, row in compare(g).items():
            assert row["agree"], (e.path, kind, row["missing"], row["extra"])


def test_detect_all_is_deterministic_and_ordered(corpus_graph):
    g = corpus_graph("hosts/antiwheel.plg")
    a, b = detect_all(g), detect_all(g)
    assert a == b
    assert [KINDS.index(m.kind) for m in a] == sorted(KINDS.index(m.kind) for m in a)


def test_match_json_round_trip(corpus_graph):
    for m in detect_all(corpus_graph("hosts/wheel.plg")):
        assert ConfigurationMatch.from_json(m.to_json()) == m


def test_claw_host_has_no_configuration(corpus_graph):
    # every vertex is external or part of the bad outer cycle's claw
    assert [m.kind for m in detect_all(corpus_graph("basic/claw_host.plg"))] == []
