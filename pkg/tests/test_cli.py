import io
import json
import subprocess
import sys

import pytest

from discharge_lab.cli import run
from discharge_lab.discharging import ChargeLedger

from conftest import CORPUS

K3 = str(CORPUS / "basic/k3.plg")
K4 = str(CORPUS / "basic/k4.plg")
CLAW = str(CORPUS / "basic/claw_host.plg")
WHEEL = str(CORPUS / "hosts/wheel.plg")
UNCOLORABLE = str(CORPUS / "small/s083.plg")


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def lines(text):
    return [json.loads(x) for x in text.splitlines()]


def test_validate_exit_codes():
    code, text = call("validate", K3)
    assert code == 0 and json.loads(text)["verdict"] is True
    code, text = call("validate", K4)
    assert code == 2 and json.loads(text)["verdict"] is False


def test_faces():
    code, text = call("faces", K3)
    d = json.loads(text)
    assert code == 0 and [f["face"] for f in d["faces"]] == ["f0", "f1"]


def test_classify_claw():
    code, text = call("classify", CLAW, "--cycle", "1,2,3,4,5,6,7,8,9")
    (rep,) = lines(text)
    assert code == 0
    assert rep["verdict"] == "bad" and rep["kind"] == "Claw_555" and rep["length"] == 9
    assert sorted(c["length"] for c in rep["cells"]) == [5, 5, 5]


def test_cycles_and_classify_agree():
    _, a = call("cycles", CLAW)
    _, b = call("classify", CLAW)
    ca, cb = lines(a), lines(b)
    assert [(x["vertices"], x["verdict"], x["kind"]) for x in ca] == \
           [(x["vertices"], x["verdict"], x["kind"]) for x in cb]
    assert all({"chords", "interior", "exterior", "separating"} <= set(x) for x in ca)


def test_remark1():
    code, text = call("remark1", CLAW)
    (rep,) = lines(text)
    assert code == 0 and rep["remark1"]["passed"]
    code, text = call("remark1", CLAW, "--cycle", "1,2,3,4,10")
    assert code == 0 and lines(text)[0]["remark1"] is None


def test_configs_ids_are_stable():
    _, all_text = call("configs", WHEEL)
    _, wheel_text = call("configs", WHEEL, "--kind", "Wheel")
    every = lines(all_text)
    (w,) = lines(wheel_text)
    assert every[w["id"]] == w
    assert [m["id"] for m in every] == list(range(len(every)))


def test_reduce(tmp_path):
    _, text = call("configs", WHEEL, "--kind", "Wheel")
    ident = lines(text)[0]["id"]
    out = tmp_path / "r.plg"
    code, text = call("reduce", WHEEL, "--match", str(ident), "--out", str(out))
    d = json.loads(text)
    assert code == 0
    assert d["plg"] == out.read_text()
    assert d["validity"]["verdict_strong"] in (True, False)
    assert set(d["surgery"]["vertex_map"].values()) <= set(range(1, d["surgery"]["result_vertices"] + 1))
    code, _ = call("validate", str(out))
    assert code in (0, 2)


def test_certify():
    code, text = call("certify", "--kind", "LightCluster", "--corpus", str(CORPUS))
    d = json.loads(text)
    assert code == 0 and d["ok"] and d["matches"] >= 1


def test_color_and_extend(tmp_path):
    code, text = call("color", K3, "--out", str(tmp_path / "c.col"))
    assert code == 0 and json.loads(text)["coloring"]
    code, text = call("color", UNCOLORABLE)
    assert code == 2 and json.loads(text)["coloring"] is None
    pre = tmp_path / "pre.col"
    pre.write_text("col 1 1\ncol 2 1\ncol 3 2\n")
    code, text = call("extend", K3, "--precoloring", str(pre))
    assert code == 0 and json.loads(text)["extension"]["respects_boundary"]


def test_extend_failure_exit_2(tmp_path):
    from discharge_lab.coloring import boundary_precolorings, format_coloring, super_extend
    from discharge_lab.plane_graph import load_plg
    g = load_plg(CLAW)
    bad = next(p for p in boundary_precolorings(g) if super_extend(g, p) is None)
    pre = tmp_path / "bad.col"
    pre.write_text(format_coloring(bad))
    code, text = call("extend", CLAW, "--precoloring", str(pre))
    assert code == 2 and json.loads(text)["extension"] is None


def test_oracle():
    code, text = call("oracle", K3, K4, CLAW, "--max-n", "10", "--configs")
    rows = lines(text)
    assert code == 0
    assert rows[-1] == {"checked": 3, "disagreements": 0}
    assert all(r["solver_agrees"] and r["configs_agree"] for r in rows[:-1])


def test_discharge_round_trip_and_order():
    code, text = call("discharge", K3)
    assert code == 0
    assert ChargeLedger.from_json(json.loads(text)).dumps() == text
    order = ",".join(reversed([f"R{i}" for i in range(1, 13)]))
    assert call("discharge", K3, "--order", order)[1] == text
    golden = (CORPUS / "golden/k3.ledger.json").read_text()
    assert text == golden


def test_discharge_strict():
    code, text = call("discharge", str(CORPUS / "hosts/min_degree.plg"), "--strict")
    assert code == 2 and "ambiguous" in json.loads(text)


def test_audit():
    code, text = call("audit", K3)
    d = json.loads(text)
    assert code == 0 and d["ok"]
    assert json.loads(json.dumps(d)) == d


def test_dot():
    code, text = call("dot", K3, "--solve")
    assert code == 0 and text.startswith('graph "k3" {')
    code, text = call("dot", CLAW, "--bad-cycle", "1,2,3,4,5,6,7,8,9")
    assert "cluster_0" in text and "Claw_555" in text


def _small_corpus(tmp_path, paths):
    man = json.loads((CORPUS / "manifest.json").read_text())
    keep = [e for e in man["entries"] if e["path"] in paths]
    for e in keep:
        for rel in filter(None, (e["path"], e.get("golden"))):
            (tmp_path / rel).parent.mkdir(parents=True, exist_ok=True)
            (tmp_path / rel).write_bytes((CORPUS / rel).read_bytes())
    (tmp_path / "manifest.json").write_text(json.dumps({"entries": keep}))


def test_corpus_run_small(tmp_path):
    _small_corpus(tmp_path, ("basic/k3.plg", "basic/c5.plg"))
    code, text = call("corpus-run", str(tmp_path), "--skip-certify")
    d = json.loads(text)
    assert [c["criterion"] for c in d["criteria"]] == list(range(1, 10))
    assert d["manifest"]["pass"]
    # two graphs are far too few for the count thresholds
    assert code == 2 and not d["criteria"][0]["pass"]
    assert d["criteria"][5]["pass"] and d["criteria"][7]["pass"]


def _strip_times(report):
    for c in report["criteria"]:
        c.pop("seconds")
    return report


def test_corpus_run_parallel_matches_sequential(tmp_path, monkeypatch):
    _small_corpus(tmp_path, ("basic/k3.plg", "basic/claw_host.plg", "hosts/light_cluster.plg",
                             "small/s000.plg", "small/s001.plg"))
    monkeypatch.setenv("DISCHARGE_LAB_THREADS", "1")
    seq = _strip_times(json.loads(call("corpus-run", str(tmp_path))[1]))
    monkeypatch.setenv("DISCHARGE_LAB_THREADS", "2")
    par = _strip_times(json.loads(call("corpus-run", str(tmp_path))[1]))
    assert seq == par
    assert seq["criteria"][4]["kinds"]["LightCluster"]["successes"] > 0


@pytest.mark.parametrize("argv,needle", [
    (["validate", "missing.plg"], "missing.plg:0:"),
    (["classify", K3, "--cycle", "1,2,9"], "k3.plg:0:"),
    (["reduce", K3, "--match", "3"], "no match with id 3"),
    (["discharge", K3, "--order", "R1"], "--order"),
    (["certify", "--kind", "Nope"], "--kind"),
    (["frobnicate"], "invalid choice"),
    (["corpus-run", "/nonexistent"], "/nonexistent:0:"),
])
def test_input_errors_exit_1(capsys, argv, needle):
    code, _ = call(*argv)
    err = capsys.readouterr().err
    assert code == 1
    assert needle in err and len(err.strip().splitlines()) == 1


def test_malformed_files_name_file_and_line(tmp_path, capsys):
    g = tmp_path / "g.plg"
    g.write_text("plg 1\nn 3\nouter 3 1 3 2\nrot 1: 2 3\nrot 2: 3 x\n")
    assert call("validate", str(g))[0] == 1
    assert f"{g}:5:" in capsys.readouterr().err
    p = tmp_path / "p.col"
    p.write_text("col 1 1\ncol 2 9\n")
    assert call("extend", K3, "--precoloring", str(p))[0] == 1
    assert f"{p}:2:" in capsys.readouterr().err
    p.write_bytes(b"col 1 1\ncol 2 \xff\n")
    assert call("extend", K3, "--precoloring", str(p))[0] == 1
    assert f"{p}:2:" in capsys.readouterr().err


def test_invalid_precoloring_is_input_error(tmp_path, capsys):
    p = tmp_path / "p.col"
    p.write_text("col 1 2\ncol 2 2\ncol 3 1\n")
    assert call("extend", K3, "--precoloring", str(p))[0] == 1
    assert "monochromatic" in capsys.readouterr().err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "discharge_lab", "validate", K3],
                       capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout)["verdict"] is True
