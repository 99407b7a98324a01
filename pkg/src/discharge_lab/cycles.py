"""Short cycles of plane graphs: sides, chords, splitting paths and the
good/bad classification through claw-like interior structures."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from .plane_graph import PlaneGraph, Walk, simple_cycles, trace_rotation, walk_darts

CLASSIFY_MAX_LEN = 11

CLAW_KINDS = ("Claw_555", "Claw_377", "Claw_557")
EDGE_CLAW_KINDS = ("EdgeClaw_3737", "EdgeClaw_5555", "EdgeClaw_3738")
BAD_KINDS = CLAW_KINDS + EDGE_CLAW_KINDS + ("PathClaw_55555", "PentagonClaw_55555")

_CLAW_TEMPLATES = {(5, 5, 5): "Claw_555", (3, 7, 7): "Claw_377", (5, 5, 7): "Claw_557"}
_EDGE_TEMPLATES = {
    ((3, 3), (7, 7)): "EdgeClaw_3737",
    ((5, 5), (5, 5)): "EdgeClaw_5555",
    ((3, 3), (7, 8)): "EdgeClaw_3738",
}


class NotACycle(ValueError):
    pass


class PathDoesNotSplit(ValueError):
    pass


@dataclass(frozen=True)
class CycleRecord:
    vertices: Walk
    length: int
    chords: Tuple[Tuple[int, int], ...]
    interior: FrozenSet[int]
    exterior: FrozenSet[int]

    @property
    def is_separating(self) -> bool:
        return bool(self.interior) and bool(self.exterior)


@dataclass(frozen=True)
class BadPartition:
    kind: str
    core: Tuple[int, ...]
    attachments: Tuple[Tuple[int, int], ...]  # (core vertex, cycle vertex)
    cells: Tuple[Tuple[Walk, int], ...]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "core": list(self.core),
            "attachments": [list(a) for a in self.attachments],
            "cells": [{"vertices": list(w), "length": k} for w, k in self.cells],
        }


@dataclass(frozen=True)
class Classification:
    verdict: str  # "good" or "bad"
    partition: Optional[BadPartition] = None
    by_length: bool = False

    @property
    def is_good(self) -> bool:
        return self.verdict == "good"


# ---------------------------------------------------------------------------
# sides and chords
# ---------------------------------------------------------------------------

def _check_cycle(g: PlaneGraph, cycle: Sequence[int]) -> Walk:
    cyc = tuple(cycle)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        raise NotACycle(f"{list(cyc)} is not a simple closed sequence")
    for a, b in walk_darts(cyc):
        if not (1 <= a <= g.vertex_count and 1 <= b <= g.vertex_count) or not g.adjacent(a, b):
            raise NotACycle(f"{a}-{b} is not an edge")
    return cyc


def exterior_faces(g: PlaneGraph, cycle: Sequence[int]) -> Set[int]:
    """Faces reachable from the outer face without crossing the cycle."""
    cyc = _check_cycle(g, cycle)
    cycle_edges = {frozenset(e) for e in walk_darts(cyc)}
    seen = {g.outer_face_id}
    stack = [g.outer_face_id]
    while stack:
        f = stack.pop()
        for a, b in walk_darts(g.faces[f]):
            if frozenset((a, b)) in cycle_edges:
                continue
            h = g.face_of_dart(b, a)
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return seen


def sides_of_cycle(g: PlaneGraph, cycle: Sequence[int]) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """(interior, exterior) vertex sets, found by flood fill over the dual."""
    cyc = _check_cycle(g, cycle)
    ext_faces = exterior_faces(g, cyc)
    on = set(cyc)
    interior, exterior = set(), set()
    for v in g.vertices:
        if v in on or not g.rotation[v]:
            continue
        f = g.face_of_dart(v, g.rotation[v][0])
        (exterior if f in ext_faces else interior).add(v)
    return frozenset(interior), frozenset(exterior)


def chords_of(g: PlaneGraph, cycle: Sequence[int]) -> Tuple[Tuple[int, int], ...]:
    cyc = tuple(cycle)
    k = len(cyc)
    out = []
    for i, j in combinations(range(k), 2):
        if (j - i) % k in (1, k - 1):
            continue
        if g.adjacent(cyc[i], cyc[j]):
            out.append(tuple(sorted((cyc[i], cyc[j]))))
    return tuple(sorted(out))


def cycle_record(g: PlaneGraph, cycle: Sequence[int]) -> CycleRecord:
    cyc = _check_cycle(g, cycle)
    interior, exterior = sides_of_cycle(g, cyc)
    return CycleRecord(cyc, len(cyc), chords_of(g, cyc), interior, exterior)


def enumerate_cycles(g: PlaneGraph, max_len: int = CLASSIFY_MAX_LEN) -> List[CycleRecord]:
    if max_len < 3:
        raise ValueError("max_len must be at least 3")
    return [cycle_record(g, c) for c in simple_cycles(g, max_len)]


# ---------------------------------------------------------------------------
# claw-like structures and bad partitions
# ---------------------------------------------------------------------------

@dataclass
class _Structure:
    shape: str  # claw, edge, path, pentagon
    core: Tuple[int, ...]
    core_edges: Tuple[Tuple[int, int], ...]
    attachments: Tuple[Tuple[int, int], ...]
    cells: List[Tuple[Walk, int]] = field(default_factory=list)


def _cells(g: PlaneGraph, cycle: Walk, st: _Structure) -> List[Tuple[Walk, int]]:
    """Trace the faces of C + T using the rotations inherited from G."""
    h_edges = {frozenset(e) for e in walk_darts(cycle)}
    h_edges |= {frozenset(e) for e in st.core_edges}
    h_edges |= {frozenset(e) for e in st.attachments}
    rot = {}
    for v in set(cycle) | set(st.core):
        rot[v] = tuple(u for u in g.rotation[v] if frozenset((u, v)) in h_edges)
    faces = trace_rotation(rot)
    cyc_set = set(cycle)
    cells = []
    dropped = False
    for walk in faces:
        if not dropped and len(walk) == len(cycle) and set(walk) == cyc_set:
            dropped = True  # the face of H outside C
            continue
        cells.append((walk, len(walk)))
    return cells


def _match_template(cycle: Walk, st: _Structure) -> Optional[str]:
    lengths = [k for _, k in st.cells]
    if st.shape == "claw":
        return _CLAW_TEMPLATES.get(tuple(sorted(lengths))) if len(lengths) == 3 else None
    if st.shape == "edge":
        if len(lengths) != 4:
            return None
        a, b = st.core
        ends, cross = [], []
        for walk, k in st.cells:
            (cross if a in walk and b in walk else ends).append(k)
        if len(ends) != 2:
            return None
        return _EDGE_TEMPLATES.get((tuple(sorted(ends)), tuple(sorted(cross))))
    if st.shape == "path":
        return "PathClaw_55555" if len(lengths) == 5 and set(lengths) == {5} else None
    if st.shape == "pentagon":
        return "PentagonClaw_55555" if len(lengths) == 6 and set(lengths) == {5} else None
    return None


def claw_structures(g: PlaneGraph, cycle: Sequence[int]):
    """Yield every claw, edge-claw, path-claw and pentagon-claw of the cycle.

    Order: claws, edge-claws, path-claws, pentagon-claws; within a shape by
    sorted core and attachment tuples.  Each yielded structure carries its
    traced cells.
    """
    cyc = _check_cycle(g, cycle)
    interior, _ = sides_of_cycle(g, cyc)
    on = set(cyc)
    cn: Dict[int, List[int]] = {v: sorted(u for u in g.rotation[v] if u in on) for v in interior}

    def emit(shape, core, core_edges, needs):
        options = [combinations(cn[v], k) for v, k in zip(core, needs)]
        for choice in _product(options):
            att = tuple((v, c) for v, cs in zip(core, choice) for c in cs)
            st = _Structure(shape, core, core_edges, att)
            st.cells = _cells(g, cyc, st)
            yield st

    for v in sorted(interior):
        if len(cn[v]) >= 3:
            yield from emit("claw", (v,), (), (3,))
    for a in sorted(interior):
        for b in sorted(interior):
            if a < b and g.adjacent(a, b) and len(cn[a]) >= 2 and len(cn[b]) >= 2:
                yield from emit("edge", (a, b), ((a, b),), (2, 2))
    for b in sorted(interior):
        if not cn[b]:
            continue
        inner = sorted(u for u in g.rotation[b] if u in interior and len(cn[u]) >= 2)
        for a, c in combinations(inner, 2):
            yield from emit("path", (a, b, c), ((a, b), (b, c)), (2, 1, 2))
    for pent in simple_cycles(g, 5, lengths=(5,)):
        if set(pent) <= interior and all(cn[v] for v in pent):
            yield from emit("pentagon", pent, tuple(walk_darts(pent)), (1,) * 5)


def _product(option_iters):
    pools = [list(it) for it in option_iters]
    result = [()]
    for pool in pools:
        result = [r + (p,) for r in result for p in pool]
    return result


def find_bad_partition(g: PlaneGraph, cycle: Sequence[int]) -> Optional[BadPartition]:
    """First structure whose cells match one of the eight bad templates."""
    cyc = _check_cycle(g, cycle)
    for st in claw_structures(g, cyc):
        kind = _match_template(cyc, st)
        if kind is not None:
            return BadPartition(kind, st.core, st.attachments, tuple(st.cells))
    return None


def has_claw_structure(g: PlaneGraph, cycle: Sequence[int]) -> bool:
    return next(iter(claw_structures(g, cycle)), None) is not None


def classify_cycle(g: PlaneGraph, cycle: Sequence[int], allow_long: bool = False) -> Classification:
    cyc = _check_cycle(g, cycle)
    if len(cyc) > CLASSIFY_MAX_LEN:
        if not allow_long:
            raise ValueError(f"cycles longer than {CLASSIFY_MAX_LEN} are not classified")
        return Classification("good", by_length=True)
    bp = find_bad_partition(g, cyc)
    return Classification("good") if bp is None else Classification("bad", bp)


def is_good_cycle(g: PlaneGraph, cycle: Sequence[int]) -> bool:
    return len(cycle) <= CLASSIFY_MAX_LEN and find_bad_partition(g, cycle) is None


# ---------------------------------------------------------------------------
# Remark-style audit of a bad cycle
# ---------------------------------------------------------------------------

@dataclass
class Remark1Report:
    cycle: Walk
    kind: str
    violations: Dict[int, List[str]]
    equality_vertices: List[int]

    @property
    def passed(self) -> bool:
        return not any(self.violations.values())

    def to_json(self) -> dict:
        return {
            "vertices": list(self.cycle),
            "kind": self.kind,
            "passed": self.passed,
            "violations": {str(k): v for k, v in sorted(self.violations.items())},
            "equality_vertices": self.equality_vertices,
        }


def _is_face(g: PlaneGraph, walk: Walk) -> bool:
    from .plane_graph import same_cyclic
    return any(same_cyclic(f, walk) or same_cyclic(f, walk[::-1]) for f in g.faces)


def _has_37_chord(g: PlaneGraph, walk: Walk, on: Set[int]) -> bool:
    k = len(walk)
    for i in range(k):
        j = (i + 2) % k
        x, y = walk[i], walk[j]
        if x in on and y in on and g.adjacent(x, y):
            return True
    return False


def check_remark1(g: PlaneGraph, cycle: Sequence[int],
                  partition: Optional[BadPartition] = None) -> Remark1Report:
    cyc = _check_cycle(g, cycle)
    bp = partition or find_bad_partition(g, cyc)
    if bp is None:
        raise ValueError("cycle is good; the audit applies to bad cycles")
    interior, _ = sides_of_cycle(g, cyc)
    ext_faces = exterior_faces(g, cyc)
    on = set(cyc)
    v: Dict[int, List[str]] = {i: [] for i in range(1, 6)}

    for walk, k in bp.cells:
        if _is_face(g, walk):
            continue
        if k == 8 and _has_37_chord(g, walk, on):
            continue
        v[1].append(f"cell {list(walk)} of length {k} is not facial")

    for x in sorted(interior):
        if g.degree(x) != 3:
            v[2].append(f"interior vertex {x} has degree {g.degree(x)}")

    equality = []
    for x in cyc:
        inner_nbrs = [u for u in g.rotation[x] if u in interior]
        if len(inner_nbrs) > 1:
            v[3].append(f"cycle vertex {x} has interior neighbours {inner_nbrs}")
        inside_edges = len(inner_nbrs)
        for u in g.rotation[x]:
            if u in on and frozenset((x, u)) not in {frozenset(e) for e in walk_darts(cyc)}:
                if g.face_of_dart(x, u) not in ext_faces:
                    inside_edges += 1
        if inside_edges > 2:
            v[4].append(f"cycle vertex {x} has {inside_edges} edges inside")
        elif inside_edges == 2:
            equality.append(x)
    if equality and bp.kind != "EdgeClaw_3738":
        v[4].append(f"vertices {equality} have two inside edges but the partition is {bp.kind}")
    if bp.kind == "EdgeClaw_3738" and not equality:
        v[4].append("EdgeClaw_3738 without a vertex carrying two inside edges")

    k = len(cyc)
    for i in range(k):
        window = [cyc[(i + t) % k] for t in range(4)]
        count = sum(1 for x in window for u in g.rotation[x] if u in interior)
        if count > 2:
            v[5].append(f"consecutive vertices {window} send {count} edges inside")
    return Remark1Report(cyc, bp.kind, v, equality)


# ---------------------------------------------------------------------------
# splitting paths
# ---------------------------------------------------------------------------

def splitting_paths(g: PlaneGraph, D: Sequence[int], max_len: int) -> List[Walk]:
    cyc = _check_cycle(g, D)
    interior, _ = sides_of_cycle(g, cyc)
    on = set(cyc)
    out = []
    for s in sorted(on):
        path = [s]

        def dfs(x):
            for y in g.rotation[x]:
                if y in on:
                    if len(path) >= 2 and y > s:
                        out.append(tuple(path + [y]))
                    continue
                if y in interior and y not in path and len(path) < max_len:
                    path.append(y)
                    dfs(y)
                    path.pop()

        for y in g.rotation[s]:
            if y in interior and max_len >= 2:
                path.append(y)
                dfs(y)
                path.pop()
    out.sort(key=lambda p: (len(p), p))
    return out


SPLIT_TABLE = {2: (3,), 3: (5,), 4: (5, 7), 5: (7, 8, 9)}


def check_splitting_path(g: PlaneGraph, path: Sequence[int], D: Sequence[int]) -> dict:
    """Check the shorter side of a split against the splitting-path table.

    Only meaningful on graphs hypothesised to be minimal counterexamples;
    the result is reported, never asserted.
    """
    cyc = _check_cycle(g, D)
    p = tuple(path)
    plen = len(p) - 1
    if plen not in SPLIT_TABLE:
        raise PathDoesNotSplit(f"path length {plen} outside 2..5")
    if p[0] not in cyc or p[-1] not in cyc or p[0] == p[-1]:
        raise PathDoesNotSplit("path ends must be distinct vertices of D")
    interior, _ = sides_of_cycle(g, cyc)
    if any(x not in interior for x in p[1:-1]) or len(set(p)) != len(p):
        raise PathDoesNotSplit("inner path vertices must lie inside D")
    for a, b in zip(p, p[1:]):
        if not g.adjacent(a, b):
            raise PathDoesNotSplit(f"{a}-{b} is not an edge")
    k = len(cyc)
    arc = (cyc.index(p[-1]) - cyc.index(p[0])) % k
    lengths = sorted((arc + plen, k - arc + plen))
    allowed = SPLIT_TABLE[plen]
    ok = lengths[0] in allowed
    return {
        "path": list(p),
        "split_lengths": lengths,
        "allowed_short_side": list(allowed),
        "passes": ok,
        "note": "" if ok else "not minimal-counterexample-like",
    }


verify_lemma7_consequence = check_splitting_path
