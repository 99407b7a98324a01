"""Plane graphs stored as rotation systems.

A plane graph is given by, for every vertex, the clockwise cyclic order of
its neighbours.  Faces are obtained by tracing the dart permutation: the
successor of the dart ``u -> v`` is ``v -> w`` where ``w`` immediately
precedes ``u`` in the clockwise rotation at ``v``.

The outer face is declared by the caller as a closed walk; it must be one
of the traced faces (up to a cyclic shift).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

Walk = Tuple[int, ...]


class PlaneGraphError(ValueError):
    def __init__(self, message: str, vertex: Optional[int] = None):
        super().__init__(message)
        self.vertex = vertex  # the vertex whose rotation is at fault, if any


class AsymmetricAdjacency(PlaneGraphError):
    pass


class OuterWalkNotAFace(PlaneGraphError):
    pass


class EulerViolation(PlaneGraphError):
    pass


class PLGParseError(PlaneGraphError):
    def __init__(self, message: str, path: str = "<input>", line: int = 0):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")
        self.message = message


# ---------------------------------------------------------------------------
# Face tracing on raw rotation systems
# ---------------------------------------------------------------------------

def trace_rotation(rotation: Mapping[int, Sequence[int]]) -> List[Walk]:
    """Trace the faces of a rotation system.

    Every dart lies in exactly one returned walk.  Walks start at the
    smallest unused dart in (vertex, rotation) order, which makes the output
    deterministic.  Isolated vertices get a one-vertex pseudo-face.
    """
    pos = {v: {u: i for i, u in enumerate(nbrs)} for v, nbrs in rotation.items()}
    used = set()
    faces: List[Walk] = []
    for v in sorted(rotation):
        nbrs = rotation[v]
        if not nbrs:
            faces.append((v,))
            continue
        for u in nbrs:
            if (v, u) in used:
                continue
            walk = []
            a, b = v, u
            while (a, b) not in used:
                used.add((a, b))
                walk.append(a)
                rb = rotation[b]
                c = rb[(pos[b][a] - 1) % len(rb)]
                a, b = b, c
            faces.append(tuple(walk))
    return faces


def walk_darts(walk: Walk) -> List[Tuple[int, int]]:
    if len(walk) == 1:
        return []
    return [(walk[i], walk[(i + 1) % len(walk)]) for i in range(len(walk))]


def same_cyclic(a: Sequence[int], b: Sequence[int]) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = tuple(a) + tuple(a)
    b = tuple(b)
    return any(doubled[i:i + len(b)] == b for i in range(len(a)))


def canonical_cycle(vertices: Sequence[int]) -> Walk:
    """Lexicographically least rotation/reflection of a cyclic sequence."""
    seq = list(vertices)
    k = len(seq)
    best = None
    for s in (seq, seq[::-1]):
        for i in range(k):
            cand = tuple(s[i:] + s[:i])
            if best is None or cand < best:
                best = cand
    return best


# ---------------------------------------------------------------------------
# PlaneGraph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaneGraph:
    """Immutable plane graph on vertices ``1..vertex_count``."""

    vertex_count: int
    rotation: Dict[int, Walk]
    faces: Tuple[Walk, ...]
    outer_face_id: int
    edge_set: frozenset
    _dart_face: Dict[Tuple[int, int], int] = field(repr=False, compare=False, default_factory=dict)

    # -- basic queries -----------------------------------------------------

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edge_set)

    @property
    def outer_walk(self) -> Walk:
        return self.faces[self.outer_face_id]

    @property
    def outer_vertices(self) -> frozenset:
        return frozenset(self.outer_walk)

    def neighbors(self, v: int) -> Walk:
        return self.rotation[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def adjacent(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.edge_set

    def face_of_dart(self, u: int, v: int) -> int:
        return self._dart_face[(u, v)]

    def face_degree(self, f: int) -> int:
        walk = self.faces[f]
        return 0 if len(walk) == 1 and not self.rotation[walk[0]] else len(walk)

    def is_external(self, v: int) -> bool:
        return v in self.outer_vertices

    def faces_at(self, v: int) -> List[int]:
        """Distinct faces incident with ``v``, in clockwise order of darts."""
        seen: List[int] = []
        for u in self.rotation[v]:
            f = self._dart_face[(v, u)]
            if f not in seen:
                seen.append(f)
        return seen

    def face_at_corner(self, v: int, a: int, b: int) -> int:
        """The face containing the angle at ``v`` from ``a`` clockwise to ``b``.

        ``a`` must immediately precede ``b`` in the rotation at ``v``.
        """
        rot = self.rotation[v]
        i = rot.index(a)
        if rot[(i + 1) % len(rot)] != b:
            raise ValueError(f"{a} does not immediately precede {b} at {v}")
        return self._dart_face[(v, a)]

    def rotation_successor(self, v: int, u: int, step: int = 1) -> int:
        rot = self.rotation[v]
        return rot[(rot.index(u) + step) % len(rot)]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def components(self) -> List[List[int]]:
        seen = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = []
            queue = deque([s])
            seen.add(s)
            while queue:
                x = queue.popleft()
                comp.append(x)
                for y in self.rotation[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def to_plg(self) -> str:
        return format_plg(self)


def build_from_rotation(
    vertex_count: int,
    rotation: Mapping[int, Sequence[int]],
    outer_walk: Sequence[int],
) -> PlaneGraph:
    """Validate a rotation system and bind its declared outer face."""
    if vertex_count < 1:
        raise PlaneGraphError("vertex_count must be positive")
    rot: Dict[int, Walk] = {}
    for v in range(1, vertex_count + 1):
        nbrs = tuple(rotation.get(v, ()))
        if len(set(nbrs)) != len(nbrs):
            raise AsymmetricAdjacency(f"vertex {v} lists a neighbour twice", v)
        for u in nbrs:
            if not 1 <= u <= vertex_count:
                raise PlaneGraphError(f"vertex {v} lists unknown neighbour {u}", v)
            if u == v:
                raise AsymmetricAdjacency(f"loop at vertex {v}", v)
        rot[v] = nbrs
    extra = set(rotation) - set(rot)
    if extra:
        raise PlaneGraphError(f"rotation given for unknown vertices {sorted(extra)}", min(extra))
    edges = set()
    for v, nbrs in rot.items():
        for u in nbrs:
            if v not in rot[u]:
                raise AsymmetricAdjacency(f"{u} is in the rotation of {v} but not vice versa", v)
            edges.add(frozenset((u, v)))

    faces = trace_rotation(rot)
    dart_face = {}
    for i, walk in enumerate(faces):
        for d in walk_darts(walk):
            dart_face[d] = i

    outer = tuple(outer_walk)
    outer_id = _match_outer(faces, outer)
    g = PlaneGraph(vertex_count, rot, tuple(faces), outer_id, frozenset(edges), dart_face)
    comps = len(g.components())
    if vertex_count - len(edges) + len(faces) != 2 * comps:
        raise EulerViolation(
            f"|V|-|E|+|F| = {vertex_count - len(edges) + len(faces)}, expected {2 * comps}"
        )
    return g


def _match_outer(faces: Sequence[Walk], outer: Walk) -> int:
    if not outer:
        raise OuterWalkNotAFace("empty outer walk")
    for i, walk in enumerate(faces):
        if same_cyclic(walk, outer):
            return i
    for i, walk in enumerate(faces):
        if same_cyclic(walk, outer[::-1]):
            return i
    raise OuterWalkNotAFace(f"declared outer walk {list(outer)} is not a traced face")


def trace_faces(g: PlaneGraph) -> List[Walk]:
    return list(g.faces)


# ---------------------------------------------------------------------------
# Bounded cycle search
# ---------------------------------------------------------------------------

def simple_cycles(g: PlaneGraph, max_len: int, min_len: int = 3,
                  lengths: Optional[Iterable[int]] = None) -> List[Walk]:
    """All cycles with ``min_len <= length <= max_len`` in canonical form.

    A cycle is reported starting from its least vertex, in the direction
    whose second vertex is smaller than its last.
    """
    wanted = set(lengths) if lengths is not None else None
    if wanted is not None:
        max_len = min(max_len, max(wanted, default=0))
    out: List[Walk] = []
    for s in g.vertices:
        path = [s]
        on_path = {s}

        def dfs(v: int) -> None:
            for w in g.rotation[v]:
                if w == s and len(path) >= max(3, min_len):
                    if path[1] < path[-1] and (wanted is None or len(path) in wanted):
                        out.append(tuple(path))
                    continue
                if w <= s or w in on_path or len(path) >= max_len:
                    continue
                path.append(w)
                on_path.add(w)
                dfs(w)
                path.pop()
                on_path.discard(w)

        dfs(s)
    out.sort(key=lambda c: (len(c), c))
    return out


# ---------------------------------------------------------------------------
# Class G validation and vertex classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ClassGReport:
    is_connected: bool
    is_simple: bool
    forbidden_cycles: Tuple[Tuple[int, Walk], ...]
    verdict: bool

    def to_json(self) -> dict:
        return {
            "is_connected": self.is_connected,
            "is_simple": self.is_simple,
            "forbidden_cycles": [
                {"length": k, "vertices": list(c)} for k, c in self.forbidden_cycles
            ],
            "verdict": self.verdict,
        }


def validate_class_G(g: PlaneGraph) -> ClassGReport:
    connected = g.is_connected()
    simple = True  # build_from_rotation rejects loops and repeated neighbours
    bad = tuple((len(c), c) for c in simple_cycles(g, 6, lengths=(4, 6)))
    return ClassGReport(connected, simple, bad, connected and simple and not bad)


@dataclass(frozen=True)
class VertexClass:
    is_external: bool
    degree: int
    is_light: bool

    @property
    def is_heavy(self) -> bool:
        return not self.is_light


def classify_vertex(g: PlaneGraph, v: int) -> VertexClass:
    ext = g.is_external(v)
    d = g.degree(v)
    return VertexClass(ext, d, (not ext) and d == 3)


# ---------------------------------------------------------------------------
# PLG text format
# ---------------------------------------------------------------------------

def parse_plg(text: str, path: str = "<input>") -> PlaneGraph:
    n = None
    outer = None
    rotation: Dict[int, List[int]] = {}
    header_seen = False
    lines: Dict[str, int] = {}  # "n", "outer", "rot <v>" -> line number
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if not header_seen:
                if parts != ["plg", "1"]:
                    raise PLGParseError("expected header 'plg 1'", path, lineno)
                header_seen = True
            elif parts[0] == "n":
                n = int(parts[1])
                lines["n"] = lineno
                if len(parts) != 2 or n < 1:
                    raise PLGParseError("bad vertex count", path, lineno)
            elif parts[0] == "outer":
                k = int(parts[1])
                outer = [int(x) for x in parts[2:]]
                lines["outer"] = lineno
                if len(outer) != k:
                    raise PLGParseError(f"outer walk declares {k} vertices, got {len(outer)}",
                                        path, lineno)
            elif parts[0] == "rot":
                if not parts[1].endswith(":"):
                    raise PLGParseError("expected 'rot <v>:'", path, lineno)
                v = int(parts[1][:-1])
                if v in rotation:
                    raise PLGParseError(f"duplicate rotation for vertex {v}", path, lineno)
                rotation[v] = [int(x) for x in parts[2:]]
                lines[f"rot {v}"] = lineno
            else:
                raise PLGParseError(f"unknown record {parts[0]!r}", path, lineno)
        except ValueError as exc:
            if isinstance(exc, PLGParseError):
                raise
            raise PLGParseError(f"malformed line: {line!r}", path, lineno) from None
    if not header_seen:
        raise PLGParseError("missing header", path, 1)
    if n is None or outer is None:
        raise PLGParseError("missing 'n' or 'outer' record", path, max(1, text.count("\n")))
    try:
        return build_from_rotation(n, rotation, outer)
    except PlaneGraphError as exc:
        if exc.vertex is not None:
            line = lines.get(f"rot {exc.vertex}", lines.get("n", 0))
        elif isinstance(exc, OuterWalkNotAFace):
            line = lines.get("outer", 0)
        else:
            line = lines.get("n", 0)
        raise PLGParseError(f"{type(exc).__name__}: {exc}", path, line) from None


def format_plg(g: PlaneGraph) -> str:
    outer = g.outer_walk
    lines = ["plg 1", f"n {g.vertex_count}",
             "outer " + " ".join(str(x) for x in (len(outer),) + tuple(outer))]
    for v in g.vertices:
        lines.append(f"rot {v}:" + "".join(f" {u}" for u in g.rotation[v]))
    return "\n".join(lines) + "\n"


def load_plg(path) -> PlaneGraph:
    with open(path, encoding="ascii") as fh:
        return parse_plg(fh.read(), str(path))


# ---------------------------------------------------------------------------
# Small constructors used across the package and its tests
# ---------------------------------------------------------------------------

def from_coordinates(coords: Mapping[int, Tuple[float, float]],
                     edges: Iterable[Tuple[int, int]],
                     outer_walk: Optional[Sequence[int]] = None) -> PlaneGraph:
    """Build a plane graph from a straight-line drawing.

    Rotations are sorted clockwise by angle.  Without an explicit outer walk
    the unbounded face of the drawing is used.
    """
    import math

    adj: Dict[int, List[int]] = {v: [] for v in coords}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    rotation = {}
    for v, nbrs in adj.items():
        x0, y0 = coords[v]
        rotation[v] = sorted(nbrs, key=lambda u: -math.atan2(coords[u][1] - y0, coords[u][0] - x0))
    n = len(coords)
    if outer_walk is None:
        faces = trace_rotation(rotation)

        def signed_area(walk):
            s = 0.0
            for a, b in walk_darts(walk):
                s += coords[a][0] * coords[b][1] - coords[b][0] * coords[a][1]
            return s

        # bounded faces come out clockwise (negative area), the unbounded one not
        outer_walk = max(faces, key=signed_area) if faces else (1,)
    return build_from_rotation(n, rotation, outer_walk)


def cycle_graph(k: int) -> PlaneGraph:
    rotation = {i: (i % k + 1, (i - 2) % k + 1) for i in range(1, k + 1)}
    g_faces = trace_rotation(rotation)
    return build_from_rotation(k, rotation, g_faces[0])
