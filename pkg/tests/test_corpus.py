import json

import pytest

from discharge_lab.corpus import ManifestError, generate, load_manifest
from discharge_lab.discharging import discharge

from conftest import CORPUS


def test_manifest_invariants(manifest):
    assert len(manifest.entries) >= 300
    for e in manifest.entries:
        assert manifest.resolve(e.path).is_file()
    goldens = {e.path for e in manifest.entries if e.golden}
    assert {"basic/k3.plg", "basic/claw_host.plg", "hosts/small_five_face.plg",
            "hosts/antiwheel.plg"} <= goldens


def test_manifest_round_trip(manifest):
    text = (CORPUS / "manifest.json").read_text()
    assert manifest.dump() == text


def test_generator_is_deterministic(tmp_path):
    man = generate(tmp_path, small=12, medium=4)
    # medium graphs continue the random stream after the small ones, so
    # only the families before them are comparable with a shorter run
    for e in man.entries:
        if e.family == "medium":
            continue
        assert (tmp_path / e.path).read_bytes() == (CORPUS / e.path).read_bytes(), e.path
        if e.golden:
            assert (tmp_path / e.golden).read_bytes() == (CORPUS / e.golden).read_bytes()
    assert (tmp_path / "golden" / "claw_host.dot").read_bytes() == \
        (CORPUS / "golden" / "claw_host.dot").read_bytes()


def _copy(tmp_path, entries):
    for e in entries:
        src = CORPUS / e["path"]
        dst = tmp_path / e["path"]
        dst.parent.mkdir(parents=True, exist_ok=True)
        dst.write_bytes(src.read_bytes())


def test_missing_graph_is_reported_with_line(tmp_path):
    entries = [{"path": "basic/k3.plg", "class_G": True, "kinds": []},
               {"path": "basic/nope.plg", "class_G": True, "kinds": []}]
    _copy(tmp_path, entries[:1])
    (tmp_path / "manifest.json").write_text(json.dumps({"entries": entries}, indent=1))
    with pytest.raises(ManifestError) as info:
        load_manifest(tmp_path)
    assert "nope.plg" in str(info.value) and info.value.line > 1


def test_inexact_golden_is_rejected(tmp_path):
    entries = [{"path": "basic/k3.plg", "class_G": True, "kinds": [], "golden": "k3.json"}]
    _copy(tmp_path, entries)
    g = load_manifest(CORPUS).load_graph(load_manifest(CORPUS).entries[6])
    text = discharge(g).dumps().replace('"18"', '"18.0"')
    (tmp_path / "k3.json").write_text(text)
    (tmp_path / "manifest.json").write_text(json.dumps({"entries": entries}, indent=1))
    with pytest.raises(ManifestError, match="not exact"):
        load_manifest(tmp_path)


def test_bad_json_names_line(tmp_path):
    (tmp_path / "manifest.json").write_text('{"entries": [\n  {"path": }\n]}\n')
    with pytest.raises(ManifestError) as info:
        load_manifest(tmp_path)
    assert info.value.line == 2
