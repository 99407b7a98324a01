"""Local structures shared by the configuration detectors and the
discharging engine: light vertices, typed 3-faces, outer neighbours,
pendent faces, weak faces, small 5-faces, ceilings, wheels and antiwheels.

Degree patterns such as ``(3, "4-", 4)`` are matched against exact degrees;
a typed face requires every vertex to be internal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .plane_graph import PlaneGraph, Walk, walk_darts

Spec = object  # int k (exactly k), "k-" (at most k), "k+" (at least k)


def is_internal(g: PlaneGraph, v: int) -> bool:
    return not g.is_external(v)


def is_light(g: PlaneGraph, v: int) -> bool:
    return is_internal(g, v) and g.degree(v) == 3


def is_heavy(g: PlaneGraph, v: int) -> bool:
    return not is_light(g, v)


def bounded_faces(g: PlaneGraph) -> List[int]:
    return [f for f in range(len(g.faces)) if f != g.outer_face_id]


def face_walk(g: PlaneGraph, f: int) -> Walk:
    return g.faces[f]


def is_k_face(g: PlaneGraph, f: int, k: int) -> bool:
    """A bounded face whose boundary is a k-cycle."""
    w = g.faces[f]
    return f != g.outer_face_id and len(w) == k and len(set(w)) == k


def three_faces_at(g: PlaneGraph, v: int) -> List[int]:
    return sorted({f for f in g.faces_at(v) if is_k_face(g, f, 3)})


def five_faces_at(g: PlaneGraph, v: int) -> List[int]:
    return sorted({f for f in g.faces_at(v) if is_k_face(g, f, 5)})


def spec_ok(d: int, spec: Spec) -> bool:
    if isinstance(spec, int):
        return d == spec
    s = str(spec)
    k = int(s[:-1])
    return d <= k if s.endswith("-") else d >= k


def assign_specs(g: PlaneGraph, vertices: Sequence[int], specs: Sequence[Spec]) -> List[Tuple[int, ...]]:
    """All orderings of `vertices` whose degrees satisfy `specs` position-wise."""
    out = []
    for perm in permutations(vertices):
        if all(spec_ok(g.degree(x), s) for x, s in zip(perm, specs)):
            out.append(perm)
    return out


def typed_face(g: PlaneGraph, f: int, specs: Sequence[Spec]) -> bool:
    """A (d1,d2,d3)-face: 3-face, all vertices internal, degrees match specs."""
    if not is_k_face(g, f, 3):
        return False
    w = g.faces[f]
    if not all(is_internal(g, x) for x in w):
        return False
    return bool(assign_specs(g, w, specs))


def tri_degrees(g: PlaneGraph, f: int) -> Optional[Tuple[int, int, int]]:
    if not is_k_face(g, f, 3) or not all(is_internal(g, x) for x in g.faces[f]):
        return None
    return tuple(sorted(g.degree(x) for x in g.faces[f]))


def outer_neighbors(g: PlaneGraph, f: int) -> List[Tuple[int, int]]:
    """(u, x): u an internal 3-vertex of the 3-face f, x its neighbour off f."""
    w = g.faces[f]
    out = []
    for u in w:
        if is_internal(g, u) and g.degree(u) == 3:
            for x in g.rotation[u]:
                if x not in w:
                    out.append((u, x))
    return sorted(out)


def light_outer_neighbors(g: PlaneGraph, f: int) -> List[Tuple[int, int]]:
    return [(u, x) for u, x in outer_neighbors(g, f) if is_light(g, x)]


def is_weak(g: PlaneGraph, f: int) -> bool:
    return is_k_face(g, f, 3) and bool(light_outer_neighbors(g, f))


def is_strong(g: PlaneGraph, f: int) -> bool:
    return is_k_face(g, f, 3) and not is_weak(g, f)


def pendencies(g: PlaneGraph, v: int) -> List[Tuple[int, int]]:
    """(u, f): u is a pendent vertex of v and f a pendent 3-face of v through u."""
    out = []
    for u in g.rotation[v]:
        if not (is_internal(g, u) and g.degree(u) == 3):
            continue
        for f in three_faces_at(g, u):
            if v not in g.faces[f]:
                out.append((u, f))
    return sorted(out)


def is_small_five(g: PlaneGraph, f: int) -> bool:
    return is_k_face(g, f, 5) and sum(1 for x in g.faces[f] if is_light(g, x)) == 4


# ---------------------------------------------------------------------------
# contact with the outer boundary D
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Contact:
    kind: str  # "none", "sticking", "ceiling", "other"
    length: int = 0  # number of edges of the common path for "ceiling"
    path: Tuple[int, ...] = ()

    def label(self) -> str:
        if self.kind == "ceiling":
            return f"{self.length}-ceiling"
        return self.kind


def outer_edges(g: PlaneGraph) -> FrozenSet[FrozenSet[int]]:
    w = g.outer_walk
    if len(w) < 2:
        return frozenset()
    return frozenset(frozenset(e) for e in walk_darts(w) if e[0] != e[1])


def contact(g: PlaneGraph, f: int) -> Contact:
    """Common part P of the face f and D: sticking if P is a vertex,
    i-ceiling if P is a path with i >= 1 edges."""
    if f == g.outer_face_id:
        return Contact("other")
    walk = g.faces[f]
    on_d = set(g.outer_walk)
    d_edges = outer_edges(g)
    verts = {x for x in walk if x in on_d}
    if not verts:
        return Contact("none")
    edges = {frozenset(e) for e in walk_darts(walk) if frozenset(e) in d_edges and len(set(e)) == 2}
    if not edges:
        if len(verts) == 1:
            return Contact("sticking", 0, (next(iter(verts)),))
        return Contact("other")
    # the common part must be a single path covering all common vertices
    deg: Dict[int, int] = {x: 0 for x in verts}
    for e in edges:
        for x in e:
            deg[x] += 1
    if any(d > 2 for d in deg.values()) or any(d == 0 for d in deg.values()):
        return Contact("other")
    ends = [x for x, d in deg.items() if d == 1]
    if len(ends) != 2 or len(edges) != len(verts) - 1:
        return Contact("other")
    # walk the path to make sure it is connected
    adj: Dict[int, List[int]] = {x: [] for x in verts}
    for e in edges:
        a, b = tuple(e)
        adj[a].append(b)
        adj[b].append(a)
    start = min(ends)
    path = [start]
    prev = None
    while len(path) < len(verts):
        nxt = [y for y in adj[path[-1]] if y != prev]
        if not nxt:
            return Contact("other")
        prev = path[-1]
        path.append(nxt[0])
    return Contact("ceiling", len(edges), tuple(path))


# ---------------------------------------------------------------------------
# (4,4,4)-faces, wheels and antiwheels
# ---------------------------------------------------------------------------

def is_444(g: PlaneGraph, f: int) -> bool:
    return tri_degrees(g, f) == (4, 4, 4)


def is_344(g: PlaneGraph, f: int) -> bool:
    return tri_degrees(g, f) == (3, 4, 4)


def is_abnormal(g: PlaneGraph, v: int) -> bool:
    on_444 = any(is_444(g, f) for f in three_faces_at(g, v))
    return on_444 and any(is_344(g, f) for f in three_faces_at(g, v))


def corner_pair(g: PlaneGraph, walk: Walk, i: int, mirrored: bool) -> Optional[Tuple[int, int, int]]:
    """At corner walk[i] of a 3-face, the two off-face neighbours in the
    order they are met going around the face (clockwise, or counter-
    clockwise when mirrored), together with the face id of the 3-face
    they span with the corner; None if they do not span a 3-face."""
    x = walk[i]
    # the predecessor of x in the face's own (clockwise) direction
    prev = walk[(i + 1) % 3] if mirrored else walk[i - 1]
    rot = g.rotation[x]
    if len(rot) != 4:
        return None
    k = rot.index(prev)
    r1, r2 = rot[(k + 1) % 4], rot[(k + 2) % 4]
    if r1 in walk or r2 in walk:
        return None
    f = g.face_of_dart(x, r1)
    if not is_k_face(g, f, 3) or set(g.faces[f]) != {x, r1, r2}:
        return None
    return (r2, r1, f) if mirrored else (r1, r2, f)


@dataclass(frozen=True)
class Wheel:
    kind: str  # "wheel" or "antiwheel"
    center_face: int
    u: int
    v: int
    w: int
    u1: int
    u2: int
    v1: int
    v2: int
    w1: int
    w2: int
    faces: Tuple[int, int, int]  # 3-faces at u, v, w
    mirrored: bool

    def binding(self) -> Dict[str, int]:
        return {k: getattr(self, k) for k in ("u", "v", "w", "u1", "u2", "v1", "v2", "w1", "w2")}

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset(self.binding().values())


def wheels(g: PlaneGraph) -> List[Wheel]:
    """Every wheel and antiwheel, read up to reflection of the drawing.

    For each orientation of the (4,4,4)-face, the outer pair at each corner
    is ordered as met going around the face.  A corner is of type A when the
    first vertex has degree 3 and the second degree 4, of type B for the
    reverse.  Three corners of equal type form a wheel (reported once, with
    u the smallest corner); two A corners and one B corner form an
    antiwheel with w the B corner.
    """
    out: List[Wheel] = []
    for f in bounded_faces(g):
        if not is_444(g, f):
            continue
        base = g.faces[f]
        found_wheel = False
        for mirrored in (False, True):
            walk = tuple(reversed(base)) if mirrored else base
            pairs = [corner_pair(g, walk, i, mirrored) for i in range(3)]
            if any(p is None for p in pairs):
                break
            outer = [p[0] for p in pairs] + [p[1] for p in pairs]
            if len(set(outer)) != 6 or set(outer) & set(walk):
                break
            types = []
            for a, b, _ in pairs:
                da, db = g.degree(a), g.degree(b)
                types.append("A" if (da, db) == (3, 4) else "B" if (da, db) == (4, 3) else "X")
            if "X" in types:
                break
            if types.count("A") == 3 and not found_wheel:
                found_wheel = True
                out.append(_make(g, f, walk, pairs, walk.index(min(walk)), "wheel", mirrored))
            elif types.count("A") == 2:
                wi = types.index("B")
                out.append(_make(g, f, walk, pairs, (wi + 1) % 3, "antiwheel", mirrored))
    out.sort(key=lambda W: (W.center_face, W.kind, W.mirrored, W.u))
    return out


def _make(g, f, walk, pairs, ui, kind, mirrored) -> Wheel:
    # u, v, w follow the face in the chosen direction: walk[i] -> walk[i+1]
    # is the order in which the corners are met, so u, v, w = walk[ui], ...
    idx = [(ui + t) % 3 for t in range(3)]
    (u, v, w) = (walk[i] for i in idx)
    (pu, pv, pw) = (pairs[i] for i in idx)
    return Wheel(kind, f, u, v, w, pu[0], pu[1], pv[0], pv[1], pw[0], pw[1],
                 (pu[2], pv[2], pw[2]), mirrored)


def antiwheel_outer_neighbors(g: PlaneGraph, W: Wheel) -> Dict[str, Optional[int]]:
    """Outer neighbours u1', v1', w2' of the antiwheel's 3-vertices."""
    out = {}
    for name, x, face in (("u1p", W.u1, W.faces[0]), ("v1p", W.v1, W.faces[1]), ("w2p", W.w2, W.faces[2])):
        cand = [y for y in g.rotation[x] if y not in g.faces[face]]
        out[name] = cand[0] if len(cand) == 1 else None
    return out
