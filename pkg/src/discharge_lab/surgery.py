"""Graph surgery on rotation systems: deletion, identification, insertion.

Operations run in a fixed order: all deletions, then identifications in
the given order, then insertions.  Identifications and insertions are
drawn inside a face shared by the two endpoints, so the result inherits a
plane embedding from G.  Parallel edges and loops produced by an
identification are removed and recorded as collapsed 2- and 1-cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .cycles import classify_cycle
from .plane_graph import (PlaneGraph, Walk, build_from_rotation, canonical_cycle,
                          simple_cycles, trace_rotation, walk_darts)


class RecipeInapplicable(ValueError):
    """The surgery cannot be carried out on this binding."""


@dataclass(frozen=True)
class SurgeryPlan:
    deletions: Tuple[int, ...]
    identifications: Tuple[Tuple[int, int], ...] = ()
    insertions: Tuple[Tuple[int, int], ...] = ()


@dataclass(frozen=True)
class Surgery:
    deletions: Tuple[int, ...]
    identifications: Tuple[Tuple[int, int], ...]
    insertions: Tuple[Tuple[int, int], ...]
    result: PlaneGraph
    vertex_map: Dict[int, int]
    collapsed_cycles: Tuple[Tuple[int, Tuple[int, ...]], ...] = ()  # (length, G ids)
    existing_insertions: Tuple[Tuple[int, int], ...] = ()

    def inverse_map(self) -> Dict[int, Tuple[int, ...]]:
        out: Dict[int, List[int]] = {}
        for old, new in sorted(self.vertex_map.items()):
            out.setdefault(new, []).append(old)
        return {k: tuple(v) for k, v in out.items()}

    def to_json(self) -> dict:
        return {
            "deletions": sorted(self.deletions),
            "identifications": [list(p) for p in self.identifications],
            "insertions": [list(p) for p in self.insertions],
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
            "collapsed_cycles": [{"length": k, "vertices": list(c)} for k, c in self.collapsed_cycles],
            "result_vertices": self.result.vertex_count,
            "result_edges": len(self.result.edge_set),
        }


def _face_key(walk: Walk) -> frozenset:
    return frozenset(walk_darts(walk)) if len(walk) > 1 else frozenset({(walk[0], walk[0])})


def _find_corner(walk: Walk, a: int) -> Optional[Tuple[int, int]]:
    """(x, y) with x -> a -> y consecutive on the walk (first occurrence)."""
    n = len(walk)
    if n < 2:
        return None
    for i, z in enumerate(walk):
        if z == a:
            return walk[i - 1], walk[(i + 1) % n]
    return None


def _faces_for(rot: Dict[int, List[int]], a: int, b: int,
               old_faces: Set[frozenset]) -> Optional[Tuple[Walk, Walk]]:
    """Faces in which a and b are joined: a common face if there is one,
    otherwise (a and b in different components) a face at each of them.
    Faces opened up by the deletions are preferred."""
    faces = trace_rotation({v: tuple(ns) for v, ns in rot.items()})

    def pick(ws):
        new = [w for w in ws if _face_key(w) not in old_faces]
        return (new or ws)[0]

    common = [w for w in faces if a in w and b in w]
    if common:
        w = pick(common)
        return w, w
    if _component(rot, a) & _component(rot, b):
        return None
    return pick([w for w in faces if a in w]), pick([w for w in faces if b in w])


def _component(rot: Dict[int, List[int]], s: int) -> Set[int]:
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for y in rot[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def apply_plan(g: PlaneGraph, plan: SurgeryPlan) -> Surgery:
    deletions = tuple(sorted(set(plan.deletions)))
    dset = set(deletions)
    for a, b in tuple(plan.identifications) + tuple(plan.insertions):
        if a in dset or b in dset:
            raise RecipeInapplicable(f"pair ({a}, {b}) uses a deleted vertex")
        if a == b:
            raise RecipeInapplicable(f"pair ({a}, {b}) is degenerate")
    rot: Dict[int, List[int]] = {v: [u for u in g.rotation[v] if u not in dset]
                                 for v in g.vertices if v not in dset}
    if not rot:
        raise RecipeInapplicable("surgery deletes every vertex")
    old_faces = {_face_key(w) for w in g.faces}
    rep: Dict[int, int] = {v: v for v in rot}
    collapsed: List[Tuple[int, Tuple[int, ...]]] = []

    def find(v: int) -> int:
        while rep[v] != v:
            v = rep[v]
        return v

    for a0, b0 in plan.identifications:
        a, b = find(a0), find(b0)
        if a == b:
            raise RecipeInapplicable(f"{a0} and {b0} are already identified")
        if not rot[a]:
            merged = list(rot[b])
        elif not rot[b]:
            merged = list(rot[a])
        else:
            faces = _faces_for(rot, a, b, old_faces)
            if faces is None:
                raise RecipeInapplicable(f"{a0} and {b0} share no face")
            x, _y = _find_corner(faces[0], a)
            p, _q = _find_corner(faces[1], b)
            ra, rb = rot[a], rot[b]
            ia, ib = ra.index(x), rb.index(p)
            part_a = ra[ia:] + ra[:ia]
            part_b = rb[ib:] + rb[:ib]
            merged = [(u, "a") for u in part_a] + [(u, "b") for u in part_b]
            # loops: the edge a-b appears as b in part_a and a in part_b
            if b in ra:
                collapsed.append((1, (a0, b0)))
            merged = [(u, s) for u, s in merged if u not in (a, b)]
            seen: Dict[int, str] = {}
            keep = []
            for u, s in merged:
                if u in seen:
                    continue
                seen[u] = s
                keep.append((u, s))
            dup = {u for u, s in merged if sum(1 for w, _ in merged if w == u) > 1}
            for u in sorted(dup):
                collapsed.append((2, (a0, u, b0)))
            # keep the a-side copy of every parallel pair, at both ends
            merged = [u for u, _s in keep]
            for u in dup:
                rot[u] = [w for w in rot[u] if w != b]
        # rename b to a everywhere
        for u in list(rot):
            if u in (a, b):
                continue
            rot[u] = [a if w == b else w for w in rot[u]]
        rot[a] = merged
        del rot[b]
        rep[b] = a

    existing = []
    for x0, y0 in plan.insertions:
        x, y = find(x0), find(y0)
        if x == y:
            collapsed.append((1, (x0, y0)))
            continue
        if y in rot[x]:
            existing.append((x0, y0))
            collapsed.append((2, (x0, y0)))
            continue
        if not rot[x] or not rot[y]:
            rot[x] = rot[x] + [y]
            rot[y] = rot[y] + [x]
            continue
        faces = _faces_for(rot, x, y, old_faces)
        if faces is None:
            raise RecipeInapplicable(f"{x0} and {y0} share no face")
        for face, s, t in ((faces[0], x, y), (faces[1], y, x)):
            corner = _find_corner(face, s)
            _p, q = corner
            i = rot[s].index(q)
            rot[s] = rot[s][:i + 1] + [t] + rot[s][i + 1:]

    survivors = sorted(rot)
    new_id = {v: i + 1 for i, v in enumerate(survivors)}
    new_rot = {new_id[v]: tuple(new_id[u] for u in rot[v]) for v in survivors}
    vertex_map = {v: new_id[find(v)] for v in g.vertices if v not in dset}

    faces = trace_rotation(new_rot)
    outer = None
    for u, v in walk_darts(g.outer_walk):
        if u in vertex_map and v in vertex_map:
            du, dv = vertex_map[u], vertex_map[v]
            if dv in new_rot[du]:
                outer = next(w for w in faces if (du, dv) in walk_darts(w))
                break
    if outer is None:
        outer = max(faces, key=lambda w: (len(w), [-x for x in w]))
    result = build_from_rotation(len(survivors), new_rot, outer)

    before = g.vertex_count + len(g.edge_set)
    after = result.vertex_count + len(result.edge_set)
    if after >= before:
        raise RecipeInapplicable(f"|V|+|E| does not decrease ({before} -> {after})")
    return Surgery(deletions, tuple(plan.identifications), tuple(plan.insertions),
                   result, vertex_map, tuple(collapsed), tuple(existing))


# ---------------------------------------------------------------------------
# validity of a surgery
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SurgeryValidity:
    touches_D: bool
    created_cycles: Tuple[Tuple[int, ...], ...]  # in the result's ids; collapsed ones in G's ids
    created_cycle_lengths: Tuple[int, ...]
    creates_triangular7: bool
    triangular7_witnesses: Tuple[Tuple[Walk, Walk], ...]
    D_still_good: bool
    D_image: Optional[Walk]
    verdict_general: bool
    verdict_strong: bool
    triangular_mode: str

    def to_json(self) -> dict:
        return {
            "touches_D": self.touches_D,
            "created_cycles": [list(c) for c in self.created_cycles],
            "created_cycle_lengths": list(self.created_cycle_lengths),
            "creates_triangular7": self.creates_triangular7,
            "triangular7_witnesses": [[list(a), list(b)] for a, b in self.triangular7_witnesses],
            "triangular_mode": self.triangular_mode,
            "D_still_good": self.D_still_good,
            "D_image": list(self.D_image) if self.D_image is not None else None,
            "verdict_general": self.verdict_general,
            "verdict_strong": self.verdict_strong,
        }


TRIANGULAR_MODES = ("shared-edge", "chord")


def _image_cycles(g: PlaneGraph, s: Surgery, max_len: int) -> Set[Walk]:
    out = set()
    r = s.result
    for c in simple_cycles(g, max_len):
        if not all(v in s.vertex_map for v in c):
            continue
        img = [s.vertex_map[v] for v in c]
        if len(set(img)) != len(img):
            continue
        if all(r.adjacent(a, b) for a, b in walk_darts(tuple(img))):
            out.add(canonical_cycle(img))
    return out


def _triangular7(r: PlaneGraph, new: Set[Walk], mode: str) -> List[Tuple[Walk, Walk]]:
    sevens = simple_cycles(r, 7, lengths=(7,))
    triangles = simple_cycles(r, 3, lengths=(3,))
    out = []
    for c in sevens:
        cedges = {frozenset(e) for e in walk_darts(c)}
        for t in triangles:
            if c not in new and t not in new:
                continue
            tedges = {frozenset(e) for e in walk_darts(t)}
            if mode == "chord":
                # a chord of c closing a triangle with two consecutive edges of c
                if len(tedges & cedges) == 2 and set(t) <= set(c):
                    out.append((c, t))
            else:
                if tedges & cedges:
                    out.append((c, t))
    return out


def validate_surgery(g: PlaneGraph, s: Surgery, D: Optional[Sequence[int]] = None,
                     triangular_mode: str = "shared-edge") -> SurgeryValidity:
    if triangular_mode not in TRIANGULAR_MODES:
        raise ValueError(f"unknown triangular mode {triangular_mode!r}")
    D = tuple(D) if D is not None else g.outer_walk
    on_d = set(D)
    touches = any(a in on_d and b in on_d for a, b in s.identifications + s.insertions)

    r = s.result
    before = _image_cycles(g, s, 7)
    after = set(simple_cycles(r, 7))
    new = after - before
    created = sorted(new, key=lambda c: (len(c), c))
    created_all = [tuple(c) for _k, c in s.collapsed_cycles] + [tuple(c) for c in created]
    lengths = tuple(sorted([k for k, _c in s.collapsed_cycles] + [len(c) for c in created]))
    tri = _triangular7(r, new, triangular_mode)

    d_img: Optional[Walk] = None
    d_good = False
    if all(v in s.vertex_map for v in D):
        img = tuple(s.vertex_map[v] for v in D)
        if len(set(img)) == len(img) and all(r.adjacent(a, b) for a, b in walk_darts(img)):
            d_img = img
            d_good = classify_cycle(r, img, allow_long=True).is_good
    general = (not touches) and not any(k in (1, 2, 4, 6) for k in lengths) and d_good
    strong = (not touches) and not any(k <= 6 for k in lengths) and not tri
    return SurgeryValidity(touches, tuple(created_all), lengths, bool(tri),
                           tuple(tri[:5]), d_good, d_img, general, strong, triangular_mode)
