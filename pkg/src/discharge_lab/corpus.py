"""The shipped graph corpus: manifest format, loader and generator.

The manifest (``corpus/manifest.json``) lists one entry per graph::

    {"path": "small/s000.plg", "class_G": true, "kinds": ["MinDegree"],
     "golden": null, "family": "small"}

``class_G`` is the expected class-G verdict, ``kinds`` the configuration
kinds detect_all is expected to report, and ``golden`` an optional golden
ledger.  Paths are relative to the manifest's directory.

The generator is deterministic: random drawings come from a seeded
``numpy`` generator, triangulated with ``scipy.spatial.Delaunay`` and
thinned by deleting edges.
"""

from __future__ import annotations

import argparse
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import Delaunay

from .plane_graph import PlaneGraph, from_coordinates, load_plg, simple_cycles, validate_class_G

MANIFEST = "manifest.json"
DEFAULT_SEED = 20240611


class ManifestError(ValueError):
    def __init__(self, message: str, path: str, line: int = 0):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


@dataclass(frozen=True)
class CorpusEntry:
    path: str
    class_G: bool
    kinds: Tuple[str, ...]
    golden: Optional[str] = None
    family: str = ""
    host_for: Optional[str] = None  # the kind this graph was built to exhibit

    def to_json(self) -> dict:
        d = {"path": self.path, "class_G": self.class_G, "kinds": list(self.kinds),
             "golden": self.golden, "family": self.family}
        if self.host_for is not None:
            d["host_for"] = self.host_for
        return d


@dataclass
class CorpusManifest:
    root: Path
    entries: List[CorpusEntry] = field(default_factory=list)

    def resolve(self, rel: str) -> Path:
        return self.root / rel

    def load_graph(self, entry: CorpusEntry) -> PlaneGraph:
        return load_plg(self.resolve(entry.path))

    def family(self, name: str) -> List[CorpusEntry]:
        return [e for e in self.entries if e.family == name]

    def hosts_for(self, kind: str) -> List[CorpusEntry]:
        return [e for e in self.entries if e.host_for == kind]

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries]}

    def dump(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"


def _entry_line(text: str, path_value: str) -> int:
    needle = json.dumps(path_value)
    for i, line in enumerate(text.split("\n"), start=1):
        if needle in line:
            return i
    return 0


def load_manifest(path) -> CorpusManifest:
    """Load and check a manifest: every path exists and every golden ledger
    parses with exact rationals.  `path` may be the manifest or its directory."""
    from .discharging import load_ledger

    p = Path(path)
    if p.is_dir():
        p = p / MANIFEST
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ManifestError(f"cannot read manifest ({exc.strerror})", str(p), 0) from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(exc.msg, str(p), exc.lineno) from None
    man = CorpusManifest(p.parent)
    for item in raw.get("entries", []):
        line = _entry_line(text, item.get("path", ""))
        try:
            e = CorpusEntry(item["path"], bool(item["class_G"]), tuple(item.get("kinds", ())),
                            item.get("golden"), item.get("family", ""), item.get("host_for"))
        except KeyError as exc:
            raise ManifestError(f"entry lacks {exc.args[0]!r}", str(p), line) from None
        if not man.resolve(e.path).is_file():
            raise ManifestError(f"missing graph file {e.path}", str(p), line)
        if e.golden is not None:
            gp = man.resolve(e.golden)
            if not gp.is_file():
                raise ManifestError(f"missing golden ledger {e.golden}", str(p), line)
            try:
                load_ledger(gp)
            except (ValueError, KeyError, ZeroDivisionError) as exc:
                raise ManifestError(f"golden ledger {e.golden} is not exact: {exc}", str(p), line) from None
        man.entries.append(e)
    return man


def default_corpus_dir() -> Path:
    env = os.environ.get("DISCHARGE_LAB_CORPUS")
    if env:
        return Path(env)
    return Path(__file__).resolve().parents[2] / "corpus"


# ---------------------------------------------------------------------------
# random plane graphs
# ---------------------------------------------------------------------------

def triangulation(rng: np.random.Generator, n: int) -> Tuple[Dict[int, Tuple[float, float]], List[Tuple[int, int]]]:
    pts = rng.random((n, 2))
    coords = {i + 1: (round(float(x), 6), round(float(y), 6)) for i, (x, y) in enumerate(pts)}
    edges = set()
    if n == 2:
        edges.add((1, 2))
    elif n >= 3:
        tri = Delaunay(pts)
        for s in tri.simplices:
            a, b, c = (int(x) + 1 for x in s)
            for u, v in ((a, b), (b, c), (a, c)):
                edges.add((min(u, v), max(u, v)))
    return coords, sorted(edges)


def _connected(n: int, edges: Sequence[Tuple[int, int]]) -> bool:
    adj: Dict[int, List[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {1}
    stack = [1]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def thin(rng: np.random.Generator, n: int, edges: List[Tuple[int, int]], drop: float) -> List[Tuple[int, int]]:
    """Delete a random fraction of the edges, keeping the graph connected."""
    edges = list(edges)
    candidates = [edges[i] for i in rng.permutation(len(edges))]
    target = int(len(edges) * drop)
    removed = 0
    for e in candidates:
        if removed >= target:
            break
        rest = [x for x in edges if x != e]
        if _connected(n, rest):
            edges = rest
            removed += 1
    return edges


def kill_short_even_cycles(rng: np.random.Generator, coords, edges: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Delete random edges of 4- and 6-cycles until none is left."""
    edges = list(edges)
    while True:
        g = from_coordinates(coords, edges)
        bad = simple_cycles(g, 6, lengths=(4, 6))
        if not bad:
            return edges
        cyc = bad[int(rng.integers(len(bad)))]
        k = len(cyc)
        i = int(rng.integers(k))
        e = tuple(sorted((cyc[i], cyc[(i + 1) % k])))
        edges.remove(e)


def random_graph(rng: np.random.Generator, n: int, class_g: bool) -> PlaneGraph:
    coords, edges = triangulation(rng, n)
    drop = float(rng.uniform(0.0, 0.35))
    edges = thin(rng, n, edges, drop)
    if class_g:
        edges = kill_short_even_cycles(rng, coords, edges)
    return from_coordinates(coords, edges)


# ---------------------------------------------------------------------------
# hand-built graphs
# ---------------------------------------------------------------------------

def _polygon(k: int, r: float = 1.0, start: float = 90.0) -> Dict[int, Tuple[float, float]]:
    import math
    return {i + 1: (round(r * math.cos(math.radians(start - 360.0 * i / k)), 6),
                    round(r * math.sin(math.radians(start - 360.0 * i / k)), 6)) for i in range(k)}


def cycle(k: int) -> PlaneGraph:
    return from_coordinates(_polygon(k), [(i, i % k + 1) for i in range(1, k + 1)])


def wheel(k: int) -> PlaneGraph:
    coords = _polygon(k)
    coords[k + 1] = (0.0, 0.0)
    edges = [(i, i % k + 1) for i in range(1, k + 1)] + [(i, k + 1) for i in range(1, k + 1)]
    return from_coordinates(coords, edges)


def claw_host() -> PlaneGraph:
    """A 9-cycle with a centre joined to every third vertex: three 5-cells,
    so the outer cycle is bad with a (5,5,5)-claw."""
    coords = _polygon(9)
    coords[10] = (0.0, 0.0)
    edges = [(i, i % 9 + 1) for i in range(1, 10)] + [(1, 10), (4, 10), (7, 10)]
    return from_coordinates(coords, edges)


# Bad-cycle templates: (cycle length, core vertices with their attachment
# positions on the cycle, core edges).  Positions are indices around C.
BAD_TEMPLATES: Dict[str, Tuple[int, Dict[str, Tuple[int, ...]], Tuple[Tuple[str, str], ...]]] = {
    "Claw_555": (9, {"x": (0, 3, 6)}, ()),
    "Claw_377": (11, {"x": (0, 1, 6)}, ()),
    "Claw_557": (11, {"x": (0, 3, 6)}, ()),
    "EdgeClaw_3737": (10, {"a": (0, 1), "b": (5, 6)}, (("a", "b"),)),
    "EdgeClaw_5555": (10, {"a": (0, 3), "b": (5, 8)}, (("a", "b"),)),
    "EdgeClaw_3738": (11, {"a": (0, 1), "b": (5, 6)}, (("a", "b"),)),
    "PathClaw_55555": (11, {"a": (0, 3), "b": (5,), "c": (7, 10)}, (("a", "b"), ("b", "c"))),
    "PentagonClaw_55555": (10, {f"p{i}": (2 * i,) for i in range(5)},
                           tuple((f"p{i}", f"p{(i + 1) % 5}") for i in range(5))),
}
# Chords of C (cycle positions).  The (3,7,3,8) edge-claw's 8-cell carries a
# (3,7)-chord, which gives its attachment vertex two edges inside C.
BAD_CHORDS: Dict[str, Tuple[Tuple[int, int], ...]] = {"EdgeClaw_3738": ((6, 8),)}


def bad_cycle_graph(kind: str) -> PlaneGraph:
    """The outer cycle C with one interior claw-like structure of the given
    template; C is bad and the graph has no 4- or 6-cycles."""
    import math
    L, core, core_edges = BAD_TEMPLATES[kind]
    coords = _polygon(L, 3.0)
    ids: Dict[str, int] = {}
    for name, att in core.items():
        ids[name] = len(coords) + 1
        xs = [coords[i + 1] for i in att]
        cx, cy = sum(p[0] for p in xs) / len(xs), sum(p[1] for p in xs) / len(xs)
        r = math.hypot(cx, cy)
        scale = 0.0 if len(core) == 1 else (1.2 / r if r > 1e-9 else 0.0)
        coords[ids[name]] = (round(cx * scale, 6), round(cy * scale, 6))
    edges = [(i, i % L + 1) for i in range(1, L + 1)]
    for name, att in core.items():
        edges += [(ids[name], i + 1) for i in att]
    edges += [(ids[a], ids[b]) for a, b in core_edges]
    edges += [(i + 1, j + 1) for i, j in BAD_CHORDS.get(kind, ())]
    return from_coordinates(coords, edges)


def k4() -> PlaneGraph:
    coords = _polygon(3)
    coords[4] = (0.0, 0.0)
    return from_coordinates(coords, [(1, 2), (2, 3), (3, 1), (1, 4), (2, 4), (3, 4)])


def basic_graphs() -> List[Tuple[str, PlaneGraph]]:
    from .hosts import build, seven_vertex_spec
    out = [(f"c{k}", cycle(k)) for k in (3, 5, 7, 8, 9, 10, 11)]
    out += [("k3", cycle(3)), ("w5", wheel(5)), ("k4", k4()), ("claw_host", claw_host()),
            ("seven_vertex", build(seven_vertex_spec()).graph)]
    seen, uniq = set(), []
    for name, g in out:
        if name not in seen:
            seen.add(name)
            uniq.append((name, g))
    return [x for x in uniq if x[0] != "c3"]


def bad_graphs() -> List[Tuple[str, PlaneGraph]]:
    return [(kind.lower(), bad_cycle_graph(kind)) for kind in BAD_TEMPLATES]


GOLDEN = ("k3", "claw_host", "seven_vertex", "small_five_face", "antiwheel")


# ---------------------------------------------------------------------------
# writing the corpus
# ---------------------------------------------------------------------------

def _kinds(g: PlaneGraph) -> Tuple[str, ...]:
    from .configurations import KINDS, detect_all
    found = {m.kind for m in detect_all(g)}
    return tuple(k for k in KINDS if k in found)


def generate(root, seed: int = DEFAULT_SEED, small: int = 220, medium: int = 130,
             small_class_g_ratio: float = 0.6) -> CorpusManifest:
    from .discharging import discharge
    from .hosts import build_kind_host, core_specs

    root = Path(root)
    for sub in ("basic", "bad", "hosts", "small", "medium", "golden"):
        (root / sub).mkdir(parents=True, exist_ok=True)
    man = CorpusManifest(root)
    graphs: List[Tuple[str, str, PlaneGraph]] = []
    host_for: Dict[str, str] = {}
    for name, g in basic_graphs():
        graphs.append(("basic", name, g))
    for name, g in bad_graphs():
        graphs.append(("bad", name, g))
    for spec in core_specs():
        graphs.append(("hosts", spec.name, build_kind_host(spec).graph))
        host_for[f"hosts/{spec.name}.plg"] = spec.kind
    rng = np.random.default_rng(seed)
    for i in range(small):
        n = int(rng.integers(3, 13))
        graphs.append(("small", f"s{i:03d}", random_graph(rng, n, rng.random() < small_class_g_ratio)))
    for i in range(medium):
        n = int(rng.integers(13, 21))
        graphs.append(("medium", f"m{i:03d}", random_graph(rng, n, True)))

    for family, name, g in graphs:
        rel = f"{family}/{name}.plg"
        (root / rel).write_text(g.to_plg(), encoding="ascii")
        golden = None
        if name in GOLDEN and family in ("basic", "hosts"):
            golden = f"golden/{name}.ledger.json"
            (root / golden).write_text(discharge(g).dumps(), encoding="utf-8")
        man.entries.append(CorpusEntry(rel, validate_class_G(g).verdict, _kinds(g), golden, family,
                                       host_for.get(rel)))
        if name == "claw_host":
            (root / "golden" / "claw_host.dot").write_text(claw_host_dot(g), encoding="ascii")
    (root / MANIFEST).write_text(man.dump(), encoding="utf-8")
    return man


def claw_host_dot(g: PlaneGraph) -> str:
    """The claw host drawn with its Claw_555 partition highlighted."""
    from .cycles import find_bad_partition
    from .dot import emit_dot, partition_highlight
    return emit_dot(g, highlights=[partition_highlight(find_bad_partition(g, g.outer_walk))],
                    name="claw_host")


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = argparse.ArgumentParser(description="Regenerate the graph corpus.")
    ap.add_argument("root", nargs="?", default=str(default_corpus_dir()))
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args(argv)
    man = generate(args.root, args.seed)
    print(f"wrote {len(man.entries)} entries to {args.root}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
