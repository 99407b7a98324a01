import json
import random
from fractions import Fraction

import pytest

from discharge_lab.discharging import (
    RULE_CONSTANTS, RULES, AmbiguousRule, ChargeLedger, RuleOptions, audit, counters, discharge,
    expected_total, face_names, fmt, initial_charges, load_ledger, parse_rational,
)


def element(ledger_json, name):
    return [e for e in ledger_json["elements"] if e["element"] == name][0]


def test_k3_by_hand(corpus_graph):
    g = corpus_graph("basic/k3.plg")
    init = initial_charges(g)
    # 5 d(v) - 14 for vertices, 2 d(f) - 14 for bounded faces, d(f0) + 24 outside
    assert init.initial == {"v1": -4, "v2": -4, "v3": -4, "f0": 27, "f1": -8}
    ledger = discharge(g)
    assert ledger.total_initial() == 7 == 10 - 3
    assert ledger.charge == {"v1": 0, "v2": 0, "v3": 0, "f0": 18, "f1": -11}
    rules = sorted({(t.rule, t.source, t.target, t.amount) for t in ledger.transfers})
    assert rules == [("R10", "f0", f"v{i}", 3) for i in (1, 2, 3)] + \
                    [("R11", "f1", f"v{i}", 1) for i in (1, 2, 3)]


def test_k3_json_shape(corpus_graph):
    d = json.loads(discharge(corpus_graph("basic/k3.plg")).dumps())
    v1 = element(d, "v1")
    assert v1 == {"element": "v1", "initial": "-4", "final": "0", "transfers": [
        {"rule": "R10", "from": "f0", "to": "v1", "amount": "3"},
        {"rule": "R11", "from": "f1", "to": "v1", "amount": "1"}]}
    assert d["total_initial"] == d["total_final"] == "7"


def test_face_names(corpus_graph):
    g = corpus_graph("basic/claw_host.plg")
    names = face_names(g)
    assert names[g.outer_face_id] == "f0"
    assert sorted(names.values(), key=lambda s: int(s[1:])) == ["f0", "f1", "f2", "f3"]


def test_rationals():
    assert fmt(Fraction(10, 3)) == "10/3"
    assert fmt(Fraction(-4)) == "-4"
    assert parse_rational("5/3") == Fraction(5, 3)
    assert parse_rational("−4") == -4
    for bad in ("1.5", "1e3", "", "x"):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_conservation_and_identity(manifest):
    for e in manifest.entries:
        g = manifest.load_graph(e)
        ledger = discharge(g)
        assert ledger.total_initial() == ledger.total_final() == expected_total(g), e.path
        if g.is_connected():
            assert ledger.total_initial() == 10 - g.face_degree(g.outer_face_id)
        assert all(t.amount in RULE_CONSTANTS for t in ledger.transfers)


def test_ledger_independent_of_rule_order(manifest):
    rng = random.Random(7)
    for e in manifest.family("hosts") + manifest.family("bad"):
        g = manifest.load_graph(e)
        text = discharge(g).dumps()
        for _ in range(3):
            order = list(RULES)
            rng.shuffle(order)
            assert discharge(g, order=order).dumps() == text, (e.path, order)


def test_ledger_json_round_trip(manifest):
    for e in manifest.family("hosts"):
        text = discharge(manifest.load_graph(e)).dumps()
        again = ChargeLedger.from_json(json.loads(text))
        assert again.dumps() == text


def test_golden_ledgers_parse_exactly(manifest):
    for e in manifest.entries:
        if e.golden:
            ledger = load_ledger(manifest.resolve(e.golden))
            assert all(isinstance(q, Fraction) for q in ledger.charge.values())


def test_r12_split_switch(corpus_graph):
    g = corpus_graph("basic/seven_vertex.plg")
    flat, split = discharge(g), discharge(g, RuleOptions(r12_split=True))
    assert flat.dumps() != split.dumps()
    assert json.loads(split.dumps())["options"]["r12_split"] is True
    assert split.total_final() == flat.total_final()


def test_r3_ten_thirds_switch(corpus_graph):
    g = corpus_graph("small/s032.plg")
    base, alt = discharge(g), discharge(g, RuleOptions(r3_ten_thirds=True))
    assert base.dumps() != alt.dumps()
    assert any(t.rule == "R3" and t.amount == Fraction(10, 3) for t in alt.transfers)
    assert not any(t.rule == "R3" and t.amount == Fraction(10, 3) for t in base.transfers)


def test_strict_mode_raises_instead_of_recording(corpus_graph):
    g = corpus_graph("hosts/min_degree.plg")
    ledger = discharge(g)
    assert any("R11" in f for f in ledger.findings)
    with pytest.raises(AmbiguousRule):
        discharge(g, RuleOptions(strict=True))


def test_audit_k3(corpus_graph):
    g = corpus_graph("basic/k3.plg")
    rep = audit(g, discharge(g)).to_json()
    assert rep["ok"]
    assert rep["conservation"]["identity"] and rep["conservation"]["exact"]
    assert rep["exterior_face"] == {"initial": "27", "final": "18", "bound": "18",
                                    "meets_bound": True, "positive": True}
    assert [n["element"] for n in rep["negative"]] == ["f1"]
    assert any("10 - d(f0)" in f for f in rep["findings"])


def test_audit_annotates_negative_charge_with_matches(manifest):
    g = manifest.load_graph([e for e in manifest.entries if e.host_for == "LightCluster"][0])
    rep = audit(g, discharge(g))
    annotated = [n for n in rep.negative if n["matches"]]
    assert annotated
    assert all(m["kind"] for n in annotated for m in n["matches"])


def test_seven_vertex_counters(corpus_graph):
    g = corpus_graph("basic/seven_vertex.plg")
    v = [x for x in g.vertices if g.degree(x) == 7][0]
    c = counters(g, v)
    assert (c.internal, c.n3, c.n5, c.m3) == (True, 3, 0, 1)
    assert c.zeta == 7 and c.eta == Fraction(59, 3)
    assert c.eq1 and c.eq2 and not c.eq2_applies
