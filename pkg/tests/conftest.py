import os
from pathlib import Path

import pytest

from discharge_lab.corpus import load_manifest
from discharge_lab.plane_graph import load_plg

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def manifest():
    return load_manifest(CORPUS)


@pytest.fixture(scope="session")
def corpus_graph():
    def load(rel):
        return load_plg(CORPUS / rel)
    return load


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
