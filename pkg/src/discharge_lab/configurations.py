"""Reducible configurations: detection, surgery plans and extension recipes.

Every kind carries three pieces:

* a detector that lists all bindings of the configuration's named vertices
  in a plane graph, with the proof case resolved from the rotation order;
* a surgery plan (deletions, identifications, insertions);
* a recipe that extends a coloring of the reduced graph back to G.

Naming conventions (shared with the oracle in :mod:`oracle`):

* "cw successor on a face" is the next vertex of the face's traced walk;
  bounded faces are traced clockwise;
* a primed name such as ``u1'`` is the neighbour of ``u1`` off the named
  face; ``v1'``/``v1''`` for a 4-vertex are its two off-face neighbours in
  clockwise rotation order, starting after the face corner;
* names listed in ``ALIASES`` repeat another role (e.g. ``x`` is whichever
  of ``v1, v2`` is adjacent to ``x'``) and are exempt from injectivity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from .coloring import COLORS, super_extend
from .cycles import cycle_record, find_bad_partition
from .plane_graph import PlaneGraph, build_from_rotation, simple_cycles, trace_rotation
from .recipes import Ctx, Recipe
from .structures import (is_internal, is_light, light_outer_neighbors, pendencies,
                         typed_face, wheels)
from .surgery import RecipeInapplicable, SurgeryPlan

KINDS: Tuple[str, ...] = (
    "MinDegree",
    "SeparatingGoodCycle",
    "CutVertex",
    "LightCluster",
    "LightTriangle334",
    "TwoPendent",
    "IncidentPlusPendent",
    "TwoIncident344",
    "FiveVertexTwoIncident",
    "FiveVertexPendent333",
    "SixVertexTwoWeak336",
    "Wheel",
    "AntiwheelAllLight",
    "FiveFaceAllLight",
    "SmallFiveFaceWith4Vertex",
    "AdjacentFiveFaces",
)

ALIASES: Dict[str, Tuple[str, ...]] = {
    "FiveVertexTwoIncident": ("x", "y"),
    "SixVertexTwoWeak336": ("x", "y", "z"),
}

# proof cases resolved from the structure (case_tag) and branch tags the
# recipe must reach on the shipped hosts
CASES: Dict[str, Tuple[str, ...]] = {k: ("main",) for k in KINDS}
CASES.update({
    "TwoPendent": ("case1", "case2"),
    "TwoIncident344": ("case1", "case2.1", "case2.2"),
    "FiveVertexTwoIncident": ("case1", "case2"),
})
REQUIRED_BRANCHES: Dict[str, Tuple[str, ...]] = {k: () for k in KINDS}
REQUIRED_BRANCHES.update({
    "IncidentPlusPendent": ("u1-free", "u1-blocked"),
    "TwoIncident344": ("case1-both-one", "case1-v-one", "case1-recolor-v",
                       "case2.1-alpha-free", "case2.1-v3-alpha", "case2.1-v1-alpha",
                       "case2.2-recolor-v"),
    "FiveVertexTwoIncident": ("case2-direct", "case2-v3-one"),
    "SixVertexTwoWeak336": ("v-alpha", "v-not-alpha"),
    "Wheel": ("case1", "case1-direct", "case1-u2", "case1-v2", "case2", "case2-recolor-u"),
    "AntiwheelAllLight": ("case1", "case1-recolor-v2", "case1-v2-blocked", "case1-exchange",
                          "case2", "case2-alpha-one", "case2-beta", "case2-fixed"),
    "FiveFaceAllLight": ("u5'-not-one", "u2'-not-one", "both-one"),
    "SmallFiveFaceWith4Vertex": ("u5'-not-one", "u2'-not-one", "both-one"),
})


class UnknownKind(ValueError):
    pass


@dataclass(frozen=True)
class ConfigurationMatch:
    kind: str
    binding: Tuple[Tuple[str, int], ...]
    case_tag: str = "main"

    @property
    def b(self) -> Dict[str, int]:
        return dict(self.binding)

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(set(v for _, v in self.binding)))

    def key(self) -> tuple:
        return (KINDS.index(self.kind), self.case_tag, tuple(sorted(self.binding)))

    def to_json(self) -> dict:
        return {"kind": self.kind, "case_tag": self.case_tag,
                "binding": {k: v for k, v in self.binding}}

    @staticmethod
    def from_json(d: dict) -> "ConfigurationMatch":
        return ConfigurationMatch(d["kind"], tuple((k, int(v)) for k, v in d["binding"].items()),
                                  d.get("case_tag", "main"))


def make_match(kind: str, case: str, **named: int) -> ConfigurationMatch:
    return ConfigurationMatch(kind, tuple(named.items()), case)


def _m(kind: str, case: str, items: Sequence[Tuple[str, int]]) -> Optional[ConfigurationMatch]:
    aliases = set(ALIASES.get(kind, ()))
    prim = [v for k, v in items if k not in aliases]
    if len(set(prim)) != len(prim):
        return None
    return ConfigurationMatch(kind, tuple(items), case)


# ---------------------------------------------------------------------------
# local helpers
# ---------------------------------------------------------------------------

def _face_with(g: PlaneGraph, vs: Sequence[int]) -> Optional[int]:
    """The bounded face whose boundary is the cycle on exactly `vs`."""
    target = set(vs)
    for u in vs:
        for w in g.rotation[u]:
            f = g.face_of_dart(u, w)
            walk = g.faces[f]
            if f != g.outer_face_id and len(walk) == len(target) and set(walk) == target:
                return f
    return None


def _tri_pairs(g: PlaneGraph, v: int) -> List[Tuple[int, int, int]]:
    """(a, b, f): a immediately precedes b in the rotation at v and
    [v a b] is a bounded 3-face f."""
    rot = g.rotation[v]
    out = []
    for i, a in enumerate(rot):
        b = rot[(i + 1) % len(rot)]
        if a == b:
            continue
        f = _face_with(g, (v, a, b))
        if f is not None:
            out.append((a, b, f))
    return out


def _off(g: PlaneGraph, x: int, exclude: Sequence[int]) -> List[int]:
    ex = set(exclude)
    return [y for y in g.rotation[x] if y not in ex]


def _one_off(g: PlaneGraph, x: int, exclude: Sequence[int]) -> Optional[int]:
    r = _off(g, x, exclude)
    return r[0] if len(r) == 1 else None


def _walk_next(g: PlaneGraph, f: int, x: int, step: int = 1) -> int:
    walk = g.faces[f]
    return walk[(walk.index(x) + step) % len(walk)]


def _after_corner(g: PlaneGraph, x: int, a: int, b: int) -> Optional[Tuple[int, int]]:
    """The two neighbours of the 4-vertex x other than a, b, in clockwise
    order starting right after the corner formed by a and b."""
    rot = g.rotation[x]
    if len(rot) != 4:
        return None
    for i in range(4):
        if {rot[i], rot[(i + 1) % 4]} == {a, b}:
            return rot[(i + 2) % 4], rot[(i + 3) % 4]
    return None


def _deg(g: PlaneGraph, v: int) -> int:
    return g.degree(v)


# ---------------------------------------------------------------------------
# detectors
# ---------------------------------------------------------------------------

def detect_min_degree(g: PlaneGraph) -> List[ConfigurationMatch]:
    return [make_match("MinDegree", "main", v=v) for v in g.vertices
            if is_internal(g, v) and g.degree(v) <= 2]


def separating_good_cycles(g: PlaneGraph, max_len: int = 11):
    for cyc in simple_cycles(g, max_len):
        rec = cycle_record(g, cyc)
        if rec.is_separating and find_bad_partition(g, cyc) is None:
            yield rec


def detect_separating_good_cycle(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for rec in separating_good_cycles(g):
        out.append(ConfigurationMatch("SeparatingGoodCycle",
                                      tuple((f"c{i + 1}", v) for i, v in enumerate(rec.vertices)),
                                      "main"))
    return out


def to_networkx(g: PlaneGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(g.vertices)
    G.add_edges_from(g.edges)
    return G


def leaf_blocks(g: PlaneGraph) -> List[Tuple[int, Tuple[int, ...]]]:
    """(cut vertex, block vertices) for every block with one cut vertex."""
    G = to_networkx(g)
    cuts = set(nx.articulation_points(G))
    out = []
    for comp in nx.biconnected_components(G):
        cv = sorted(comp & cuts)
        if len(cv) == 1:
            out.append((cv[0], tuple(sorted(comp))))
    return sorted(out)


def detect_cut_vertex(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    on_d = g.outer_vertices
    for v, block in leaf_blocks(g):
        rest = [x for x in block if x != v]
        if any(x in on_d for x in rest):
            continue
        items = [("v", v)] + [(f"b{i + 1}", x) for i, x in enumerate(rest)]
        out.append(ConfigurationMatch("CutVertex", tuple(items), "main"))
    return out


def detect_light_cluster(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for v in g.vertices:
        if not is_light(g, v) or not all(is_light(g, u) for u in g.rotation[v]):
            continue
        rot = g.rotation[v]
        i = rot.index(min(rot))
        v1, v2, v3 = rot[i], rot[(i + 1) % 3], rot[(i + 2) % 3]
        m = _m("LightCluster", "main", [("v", v), ("v1", v1), ("v2", v2), ("v3", v3)])
        if m:
            out.append(m)
    return out


def detect_light_triangle(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for f in range(len(g.faces)):
        if not typed_face(g, f, (3, 3, 4)):
            continue
        walk = g.faces[f]
        w = next(z for z in walk if g.degree(z) == 4)
        for u, x in light_outer_neighbors(g, f):
            v = next(z for z in walk if z not in (u, w))
            m = _m("LightTriangle334", "main", [("u", u), ("v", v), ("w", w), ("x", x)])
            if m:
                out.append(m)
    return out


def detect_two_pendent(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for x in g.vertices:
        if not is_internal(g, x) or g.degree(x) != 4:
            continue
        pend = pendencies(g, x)
        rot = g.rotation[x]
        for u1, fu in pend:
            if not typed_face(g, fu, (3, 3, 3)):
                continue
            for v1, fv in pend:
                if v1 == u1 or fv == fu or not typed_face(g, fv, (3, 3, "4-")):
                    continue
                if set(g.faces[fu]) & set(g.faces[fv]):
                    continue
                vw = g.faces[fv]
                fours = [z for z in vw if g.degree(z) == 4]
                if fours:
                    v3 = fours[0]
                    v2 = next(z for z in vw if z not in (v1, v3))
                else:
                    v2 = _walk_next(g, fv, v1)
                    v3 = next(z for z in vw if z not in (v1, v2))
                i = rot.index(u1)
                r = [rot[(i + k) % 4] for k in range(4)]
                if r[2] == v1:
                    x1, x2 = r[1], r[3]
                    u2 = _walk_next(g, fu, u1)
                    u3 = next(z for z in g.faces[fu] if z not in (u1, u2))
                    items = [("x", x), ("x1", x1), ("x2", x2), ("u1", u1), ("u2", u2), ("u3", u3),
                             ("v1", v1), ("v2", v2), ("v3", v3)]
                    m = _m("TwoPendent", "case1", items)
                else:
                    if r[3] == v1:
                        x1, x2 = r[1], r[2]
                        u2 = _walk_next(g, fu, u1, 1)
                    else:
                        x1, x2 = r[3], r[2]
                        u2 = _walk_next(g, fu, u1, -1)
                    u3 = next(z for z in g.faces[fu] if z not in (u1, u2))
                    y = _one_off(g, u2, (u1, u3))
                    if y is None:
                        continue
                    items = [("x", x), ("x1", x1), ("x2", x2), ("u1", u1), ("u2", u2), ("u3", u3),
                             ("v1", v1), ("v2", v2), ("v3", v3), ("y", y)]
                    m = _m("TwoPendent", "case2", items)
                if m:
                    out.append(m)
    return out


def detect_incident_plus_pendent(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for u in g.vertices:
        if not is_internal(g, u) or g.degree(u) != 4:
            continue
        rot = g.rotation[u]
        pend = pendencies(g, u)
        for a, b, f in _tri_pairs(g, u):
            if not typed_face(g, f, (3, "4-", 4)):
                continue
            i = rot.index(a)
            # the pendent vertex sits next to one face vertex in the rotation
            for u2, u1, u3, u4 in ((b, a, rot[(i + 2) % 4], rot[(i + 3) % 4]),
                                   (a, b, rot[(i + 3) % 4], rot[(i + 2) % 4])):
                for p, fp in pend:
                    if p != u3 or not typed_face(g, fp, (3, 3, "4-")):
                        continue
                    s1 = _walk_next(g, fp, u3)
                    s2 = next(z for z in g.faces[fp] if z not in (u3, s1))
                    items = [("u", u), ("u1", u1), ("u2", u2), ("u3", u3), ("u4", u4),
                             ("u3'", s1), ("u3''", s2)]
                    m = _m("IncidentPlusPendent", "main", items)
                    if m:
                        out.append(m)
    return out


def detect_two_incident(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for v in g.vertices:
        if g.degree(v) != 4:
            continue
        rot = g.rotation[v]
        tris = {(a, b): f for a, b, f in _tri_pairs(g, v) if typed_face(g, f, (3, "4-", 4))}
        for (a, b), f in tris.items():
            i = rot.index(a)
            c, d = rot[(i + 2) % 4], rot[(i + 3) % 4]
            if (c, d) not in tris:
                continue
            fa = tris[(c, d)]
            if typed_face(g, f, (3, 3, 4)):
                v1p = _one_off(g, a, (v, b))
                v2p = _one_off(g, b, (v, a))
                if v1p is None or v2p is None:
                    continue
                items = [("v", v), ("v1", a), ("v2", b), ("v3", c), ("v4", d),
                         ("v1'", v1p), ("v2'", v2p)]
                m = _m("TwoIncident344", "case1", items)
                if m:
                    out.append(m)
            if not (typed_face(g, f, (3, 4, 4)) and typed_face(g, fa, (3, 4, 4))):
                continue
            # both (3,4,4): start at a (clockwise) or at b (mirrored)
            for v1, v2, v3, v4 in ((a, b, c, d), (b, a, d, c)):
                if g.degree(v1) != 4:
                    continue
                if g.degree(v3) == 4:
                    v2p = _one_off(g, v2, (v, v1))
                    v4p = _one_off(g, v4, (v, v3))
                    if v2p is None or v4p is None:
                        continue
                    items = [("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("v4", v4),
                             ("v2'", v2p), ("v4'", v4p)]
                    m = _m("TwoIncident344", "case2.1", items)
                elif g.degree(v4) == 4:
                    v2p = _one_off(g, v2, (v, v1))
                    v3p = _one_off(g, v3, (v, v4))
                    p1 = _after_corner(g, v1, v, v2)
                    p4 = _after_corner(g, v4, v, v3)
                    if None in (v2p, v3p, p1, p4):
                        continue
                    items = [("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("v4", v4),
                             ("v1'", p1[0]), ("v1''", p1[1]), ("v2'", v2p), ("v3'", v3p),
                             ("v4'", p4[0]), ("v4''", p4[1])]
                    m = _m("TwoIncident344", "case2.2", items)
                else:
                    m = None
                if m:
                    out.append(m)
    return out


def _ordered_around(rot: Sequence[int], k: int, mirrored: bool) -> List[int]:
    n = len(rot)
    step = -1 if mirrored else 1
    return [rot[(k + step * t) % n] for t in range(n)]


def detect_five_two_incident(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for v in g.vertices:
        if not is_internal(g, v) or g.degree(v) != 5:
            continue
        rot = g.rotation[v]
        tris = _tri_pairs(g, v)
        for a, b, f1 in tris:
            if not (typed_face(g, f1, (3, 3, 5)) and light_outer_neighbors(g, f1)):
                continue
            for c, d, f2 in tris:
                if f2 == f1 or {c, d} & {a, b} or not typed_face(g, f2, (3, "4-", 5)):
                    continue
                rest = [z for z in rot if z not in (a, b, c, d)]
                if len(rest) != 1:
                    continue
                v5 = rest[0]
                k = rot.index(v5)
                for mirrored in (False, True):
                    seq = _ordered_around(rot, k, mirrored)  # v5, v1, v2, v3, v4
                    v1, v2, v3, v4 = seq[1:]
                    if {v1, v2} != {a, b} or {v3, v4} != {c, d}:
                        continue
                    if g.degree(v4) == 3:
                        case = "case1"
                    elif g.degree(v4) == 4:
                        case = "case2"
                    else:
                        continue
                    for x, xp in light_outer_neighbors(g, f1):
                        y = v2 if x == v1 else v1
                        items = [("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("v4", v4),
                                 ("v5", v5), ("x", x), ("y", y), ("x'", xp)]
                        if case == "case2":
                            v3p = _one_off(g, v3, (v, v4))
                            if v3p is None:
                                continue
                            items.append(("v3'", v3p))
                        m = _m("FiveVertexTwoIncident", case, items)
                        if m:
                            out.append(m)
    return out


def detect_five_pendent(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for v in g.vertices:
        if not is_internal(g, v) or g.degree(v) != 5:
            continue
        tris = _tri_pairs(g, v)
        pend = [(p, f) for p, f in pendencies(g, v) if typed_face(g, f, (3, 3, 3))]
        for a, b, f1 in tris:
            if not typed_face(g, f1, (3, 3, 5)):
                continue
            for c, d, f2 in tris:
                if f2 == f1 or {a, b} & {c, d} or not typed_face(g, f2, (3, 5, "5+")):
                    continue
                v4 = c if g.degree(c) == 3 else d
                v5 = d if v4 == c else c
                for x3, v3p in light_outer_neighbors(g, f1):
                    v3 = x3
                    v2 = b if v3 == a else a
                    for x4, v4p in light_outer_neighbors(g, f2):
                        if x4 != v4:
                            continue
                        for v1, fp in pend:
                            w1 = _walk_next(g, fp, v1)
                            w2 = next(z for z in g.faces[fp] if z not in (v1, w1))
                            items = [("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("v4", v4),
                                     ("v5", v5), ("w1", w1), ("w2", w2), ("v3'", v3p), ("v4'", v4p)]
                            m = _m("FiveVertexPendent333", "main", items)
                            if m:
                                out.append(m)
    return out


def detect_six_vertex(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for v in g.vertices:
        if not is_internal(g, v) or g.degree(v) != 6:
            continue
        rot = g.rotation[v]
        for k in range(6):
            for mirrored in (False, True):
                s = _ordered_around(rot, k, mirrored)
                faces = [_face_with(g, (v, s[0], s[1])), _face_with(g, (v, s[2], s[3])),
                         _face_with(g, (v, s[4], s[5]))]
                if None in faces:
                    continue
                F1, F2, F3 = faces
                if not typed_face(g, F1, (3, "4-", 6)) or g.degree(s[1]) != 3:
                    continue
                if not (typed_face(g, F2, (3, 3, 6)) and typed_face(g, F3, (3, 3, 6))):
                    continue
                v1, v2, v3, v4, v5, v6 = s
                v2p = _one_off(g, v2, (v, v1))
                v5p = _one_off(g, v5, (v, v6))
                v6p = _one_off(g, v6, (v, v5))
                if None in (v2p, v5p, v6p):
                    continue
                for x, xp in light_outer_neighbors(g, F2):
                    y = v4 if x == v3 else v3
                    for _zn, z in light_outer_neighbors(g, F3):
                        items = [("v", v), ("v1", v1), ("v2", v2), ("v3", v3), ("v4", v4),
                                 ("v5", v5), ("v6", v6), ("x", x), ("y", y), ("x'", xp),
                                 ("z", z), ("v2'", v2p), ("v5'", v5p), ("v6'", v6p)]
                        m = _m("SixVertexTwoWeak336", "main", items)
                        if m:
                            out.append(m)
    return out


def _wheel_items(g: PlaneGraph, W, prime_names: Sequence[str]) -> Optional[List[Tuple[str, int]]]:
    b = W.binding()
    items = list(b.items())
    corner = {"u1": (W.u, W.u2), "u2": (W.u, W.u1), "v1": (W.v, W.v2), "v2": (W.v, W.v1),
              "w1": (W.w, W.w2), "w2": (W.w, W.w1)}
    for name in prime_names:
        base = name[:-1]
        p = _one_off(g, b[base], corner[base])
        if p is None:
            return None
        items.append((name, p))
    return items


def detect_wheel(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for W in wheels(g):
        if W.kind != "wheel":
            continue
        items = _wheel_items(g, W, ("u1'", "v1'", "w1'"))
        m = _m("Wheel", "main", items) if items else None
        if m:
            out.append(m)
    return out


def detect_antiwheel(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for W in wheels(g):
        if W.kind != "antiwheel":
            continue
        items = _wheel_items(g, W, ("u1'", "v1'", "w2'"))
        if not items:
            continue
        d = dict(items)
        if not all(is_light(g, d[k]) for k in ("u1'", "v1'", "w2'")):
            continue
        m = _m("AntiwheelAllLight", "main", items)
        if m:
            out.append(m)
    return out


def _five_faces(g: PlaneGraph) -> List[int]:
    return [f for f in range(len(g.faces)) if f != g.outer_face_id
            and len(g.faces[f]) == 5 and len(set(g.faces[f])) == 5]


def detect_five_face_all_light(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for f in _five_faces(g):
        walk = g.faces[f]
        if not all(is_light(g, z) for z in walk):
            continue
        primes = {}
        for i, z in enumerate(walk):
            primes[z] = _one_off(g, z, (walk[i - 1], walk[(i + 1) % 5]))
        if None in primes.values():
            continue
        for i in range(5):
            u = [walk[(i + t) % 5] for t in range(5)]  # u1..u5
            if not all(is_internal(g, primes[u[j]]) for j in (4, 0, 1)):
                continue
            items = [(f"u{j + 1}", u[j]) for j in range(5)] + \
                    [(f"u{j + 1}'", primes[u[j]]) for j in range(5)]
            m = _m("FiveFaceAllLight", "main", items)
            if m:
                out.append(m)
    return out


def detect_small_five_face(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    for f in _five_faces(g):
        walk = g.faces[f]
        lights = [z for z in walk if is_light(g, z)]
        rest = [z for z in walk if not is_light(g, z)]
        if len(lights) != 4 or g.degree(rest[0]) != 4 or not is_internal(g, rest[0]):
            continue
        i = walk.index(rest[0])
        u = [walk[(i + t) % 5] for t in range(5)]
        p1 = _after_corner(g, u[0], u[4], u[1])
        if p1 is None:
            continue
        items = [(f"u{j + 1}", u[j]) for j in range(5)] + [("u1'", p1[0]), ("u1''", p1[1])]
        ok = True
        for j in range(1, 5):
            p = _one_off(g, u[j], (u[j - 1], u[(j + 1) % 5]))
            if p is None:
                ok = False
                break
            items.append((f"u{j + 1}'", p))
        m = _m("SmallFiveFaceWith4Vertex", "main", items) if ok else None
        if m:
            out.append(m)
    return out


def detect_adjacent_five_faces(g: PlaneGraph) -> List[ConfigurationMatch]:
    out = []
    fives = _five_faces(g)
    for i, f in enumerate(fives):
        for h in fives[i + 1:]:
            ef = {frozenset(e) for e in zip(g.faces[f], g.faces[f][1:] + g.faces[f][:1])}
            eh = {frozenset(e) for e in zip(g.faces[h], g.faces[h][1:] + g.faces[h][:1])}
            common = ef & eh
            if len(common) != 1:
                continue
            a, b = tuple(next(iter(common)))
            for u, v in ((a, b), (b, a)):
                if not (is_internal(g, u) and g.degree(u) == 5):
                    continue
                others = (set(g.faces[f]) | set(g.faces[h])) - {u}
                if not all(is_light(g, z) for z in others):
                    continue
                seqs = []
                for face in (f, h):
                    walk = g.faces[face]
                    k = walk.index(u)
                    step = -1 if walk[(k + 1) % 5] == v else 1
                    seqs.append([walk[(k + step * t) % 5] for t in range(1, 4)])
                fs, gs = sorted(seqs, key=lambda s: s[0])
                items = [("u", u), ("v", v)] + [(f"f{t + 1}", fs[t]) for t in range(3)] + \
                        [(f"g{t + 1}", gs[t]) for t in range(3)]
                m = _m("AdjacentFiveFaces", "main", items)
                if m:
                    out.append(m)
    return out


DETECTORS: Dict[str, Callable[[PlaneGraph], List[ConfigurationMatch]]] = {
    "MinDegree": detect_min_degree,
    "SeparatingGoodCycle": detect_separating_good_cycle,
    "CutVertex": detect_cut_vertex,
    "LightCluster": detect_light_cluster,
    "LightTriangle334": detect_light_triangle,
    "TwoPendent": detect_two_pendent,
    "IncidentPlusPendent": detect_incident_plus_pendent,
    "TwoIncident344": detect_two_incident,
    "FiveVertexTwoIncident": detect_five_two_incident,
    "FiveVertexPendent333": detect_five_pendent,
    "SixVertexTwoWeak336": detect_six_vertex,
    "Wheel": detect_wheel,
    "AntiwheelAllLight": detect_antiwheel,
    "FiveFaceAllLight": detect_five_face_all_light,
    "SmallFiveFaceWith4Vertex": detect_small_five_face,
    "AdjacentFiveFaces": detect_adjacent_five_faces,
}


def check_kind(kind: str) -> str:
    if kind not in KINDS:
        raise UnknownKind(f"unknown configuration kind {kind!r}; expected one of {', '.join(KINDS)}")
    return kind


def detect(g: PlaneGraph, kind: str) -> List[ConfigurationMatch]:
    check_kind(kind)
    return sorted(set(DETECTORS[kind](g)), key=lambda m: m.key())


def detect_all(g: PlaneGraph, kinds: Optional[Sequence[str]] = None) -> List[ConfigurationMatch]:
    out: List[ConfigurationMatch] = []
    for kind in (kinds or KINDS):
        out.extend(detect(g, kind))
    return out


# ---------------------------------------------------------------------------
# surgery plans
# ---------------------------------------------------------------------------

def _names(b: Dict[str, int], *names: str) -> Tuple[int, ...]:
    return tuple(b[n] for n in names)


def plan_for(g: PlaneGraph, m: ConfigurationMatch) -> SurgeryPlan:
    b = m.b
    k = m.kind
    if k == "MinDegree":
        return SurgeryPlan((b["v"],))
    if k == "SeparatingGoodCycle":
        rec = cycle_record(g, [v for _, v in m.binding])
        return SurgeryPlan(tuple(sorted(rec.interior)))
    if k == "CutVertex":
        return SurgeryPlan(tuple(v for n, v in m.binding if n != "v"))
    if k == "LightCluster":
        return SurgeryPlan(_names(b, "v", "v1", "v2", "v3"))
    if k == "LightTriangle334":
        return SurgeryPlan(_names(b, "u", "v", "w", "x"))
    if k == "TwoPendent":
        dels = _names(b, "x", "u1", "u2", "u3", "v1", "v2", "v3")
        if m.case_tag == "case1":
            return SurgeryPlan(dels, ((b["x1"], b["x2"]),))
        return SurgeryPlan(dels, ((b["x2"], b["y"]),))
    if k == "IncidentPlusPendent":
        return SurgeryPlan(_names(b, "u1", "u", "u3", "u3'", "u3''"), ((b["u2"], b["u4"]),))
    if k == "TwoIncident344":
        dels = _names(b, "v", "v1", "v2", "v3", "v4")
        if m.case_tag == "case1":
            return SurgeryPlan(dels)
        if m.case_tag == "case2.1":
            return SurgeryPlan(dels, ((b["v2'"], b["v4'"]),))
        return SurgeryPlan(dels, ((b["v1'"], b["v3'"]),))
    if k == "FiveVertexTwoIncident":
        if m.case_tag == "case1":
            return SurgeryPlan(_names(b, "v", "v1", "v2", "x'", "v4"), ((b["v3"], b["v5"]),))
        return SurgeryPlan(_names(b, "v", "v1", "v2", "v3", "v4", "x'"), (), ((b["v3'"], b["v5"]),))
    if k == "FiveVertexPendent333":
        return SurgeryPlan(_names(b, "v", "v1", "v2", "v3", "v4", "w1", "w2", "v3'", "v4'"))
    if k == "SixVertexTwoWeak336":
        return SurgeryPlan(_names(b, "v", "v1", "v2", "v3", "v4", "v5", "v6", "x'"),
                           ((b["v2'"], b["v5'"]),))
    if k == "Wheel":
        dels = _names(b, "u", "v", "w", "u1", "u2", "v1", "v2", "w1", "w2")
        p, q, r = _names(b, "u1'", "v1'", "w1'")
        return SurgeryPlan(dels, (), ((p, q), (q, r), (r, p)))
    if k == "AntiwheelAllLight":
        dels = _names(b, "u", "v", "w", "u1", "u2", "v1", "w1", "w2")
        return SurgeryPlan(dels, ((b["v2"], b["w2'"]),), ((b["u1'"], b["v1'"]),))
    if k in ("FiveFaceAllLight", "SmallFiveFaceWith4Vertex"):
        return SurgeryPlan(_names(b, "u1", "u2", "u3", "u4", "u5"), (), ((b["u2'"], b["u5'"]),))
    if k == "AdjacentFiveFaces":
        return SurgeryPlan(_names(b, "u", "v", "f1", "f2", "f3", "g1", "g2", "g3"))
    raise UnknownKind(k)


# ---------------------------------------------------------------------------
# recipes
# ---------------------------------------------------------------------------

def _other_nonone(c: int) -> int:
    return 5 - c  # 2 <-> 3


def _subgraph(g: PlaneGraph, keep: Sequence[int], outer: Sequence[int]):
    """Induced plane subgraph with renumbered vertices and the named outer cycle."""
    ks = sorted(set(keep))
    idx = {v: i + 1 for i, v in enumerate(ks)}
    rot = {idx[v]: tuple(idx[u] for u in g.rotation[v] if u in idx) for v in ks}
    target = [idx[v] for v in outer]
    faces = trace_rotation(rot)
    walk = next((w for w in faces if len(w) == len(target) and set(w) == set(target)), None)
    if walk is None:
        raise RecipeInapplicable("the cycle is not a face of the induced subgraph")
    return build_from_rotation(len(ks), rot, walk), idx


def recipe_for(g: PlaneGraph, m: ConfigurationMatch) -> Recipe:
    b = m.b
    k = m.kind

    if k == "MinDegree":
        def r(ctx: Ctx):
            ctx.three_color(b["v"])
        return r

    if k == "SeparatingGoodCycle":
        cyc = [v for _, v in m.binding]
        rec = cycle_record(g, cyc)
        H, idx = _subgraph(g, list(cyc) + sorted(rec.interior), cyc)
        inv = {i: v for v, i in idx.items()}

        def r(ctx: Ctx):
            pre = {idx[v]: ctx.c(v) for v in cyc}
            wit = super_extend(H, pre)
            ctx.claim(wit is not None, "the good cycle's coloring super-extends to its interior")
            for i, c in sorted(wit.coloring.items()):
                if inv[i] not in ctx.col:
                    ctx.assign(inv[i], c)
        return r

    if k == "CutVertex":
        block = [v for _, v in m.binding]
        v0 = b["v"]

        def r(ctx: Ctx):
            col = _proper_3(g, block)
            ctx.claim(col is not None, "the block is 3-colorable")
            perm = {col[v0]: ctx.c(v0)}
            rest = [c for c in COLORS if c != ctx.c(v0)]
            for c in COLORS:
                if c not in perm:
                    perm[c] = rest.pop(0)
            ctx.tag("permuted")
            for x in block:
                if x != v0:
                    ctx.assign(x, perm[col[x]])
        return r

    if k == "LightCluster":
        def r(ctx: Ctx):
            ctx.three_color(*_names(b, "v1", "v2", "v3"))
            ctx.one00_color(b["v"])
        return r

    if k == "LightTriangle334":
        def r(ctx: Ctx):
            ctx.three_color(*_names(b, "w", "v", "x"))
            ctx.one00_color(b["u"])
        return r

    if k == "TwoPendent":
        if m.case_tag == "case1":
            def r(ctx: Ctx):
                ctx.tag("case1")
                ctx.three_color(*_names(b, "v3", "v2", "v1", "x", "u2", "u3"))
                ctx.one00_color(b["u1"])
        else:
            def r(ctx: Ctx):
                ctx.tag("case2")
                ctx.three_color(*_names(b, "x", "u3", "u1", "u2", "v3", "v2"))
                ctx.one00_color(b["v1"])
        return r

    if k == "IncidentPlusPendent":
        def r(ctx: Ctx):
            ctx.three_color(b["u3'"], b["u3''"])
            if ctx.can_three_color(b["u1"]):
                ctx.tag("u1-free")
                ctx.three_color(b["u1"], b["u"])
            else:
                ctx.tag("u1-blocked")
                ctx.assign(b["u1"], ctx.c(b["u2"]))
                ctx.uncolor(b["u2"])
                ctx.three_color(b["u2"])
                ctx.three_color(b["u"])
            ctx.one00_color(b["u3"])
        return r

    if k == "TwoIncident344":
        v, v1, v2, v3, v4 = _names(b, "v", "v1", "v2", "v3", "v4")
        if m.case_tag == "case1":
            v1p, v2p = b["v1'"], b["v2'"]

            def r(ctx: Ctx):
                ctx.tag("case1")
                ctx.three_color(v, v3, v4)
                a1, a2 = ctx.c(v1p), ctx.c(v2p)
                if a1 == a2 != ctx.c(v):
                    if 1 not in (a1, ctx.c(v)):
                        ctx.tag("case1-both-one")
                        ctx.assign(v1, 1)
                        ctx.assign(v2, 1)
                    elif ctx.c(v) == 1:
                        ctx.tag("case1-v-one")
                        ctx.assign(v1, 1)
                        ctx.three_color(v2)
                    else:
                        ctx.tag("case1-recolor-v")
                        ctx.assign(v, 1)
                        ctx.three_color(v1, v2)
                else:
                    ctx.three_color(v1, v2)
            return r
        if m.case_tag == "case2.1":
            v2p = b["v2'"]

            def r(ctx: Ctx):
                ctx.tag("case2.1")
                ctx.three_color(v1, v3)
                alpha = ctx.c(v2p)
                if alpha not in (ctx.c(v1), ctx.c(v3)):
                    ctx.tag("case2.1-alpha-free")
                    ctx.assign(v, alpha)
                    ctx.three_color(v2, v4)
                elif ctx.c(v3) == alpha:
                    ctx.tag("case2.1-v3-alpha")
                    ctx.three_color(v2)
                    ctx.one00_color(v)
                    ctx.three_color(v4)
                else:
                    ctx.tag("case2.1-v1-alpha")
                    ctx.three_color(v4)
                    ctx.one00_color(v)
                    ctx.three_color(v2)
            return r

        def r(ctx: Ctx):
            ctx.tag("case2.2")
            ctx.three_color(v4, v1, v3, v)
            if ctx.one00_options(v2):
                ctx.one00_color(v2)
            else:
                ctx.tag("case2.2-recolor-v")
                ctx.assign(v, 1)
                ctx.three_color(v2)
        return r

    if k == "FiveVertexTwoIncident":
        v, v3, v4, v5, x, y, xp = _names(b, "v", "v3", "v4", "v5", "x", "y", "x'")
        if m.case_tag == "case1":
            def r(ctx: Ctx):
                ctx.tag("case1")
                ctx.three_color(v4, v, xp, y)
                ctx.one00_color(x)
            return r
        v3p = b["v3'"]

        def r(ctx: Ctx):
            ctx.tag("case2")
            ctx.three_color(v4)
            a, c5, c4 = ctx.c(v3p), ctx.c(v5), ctx.c(v4)
            if a != c5 or a == c5 == c4:
                ctx.tag("case2-direct")
                ctx.three_color(v, v3, xp, y)
            else:
                ctx.tag("case2-v3-one")
                ctx.assign(v3, 1)
                ctx.three_color(v, xp, y)
            ctx.one00_color(x)
        return r

    if k == "FiveVertexPendent333":
        def r(ctx: Ctx):
            ctx.three_color(b["v4'"], b["v4"], b["v"])
            if ctx.c(b["v"]) == 1:
                ctx.tag("swap")
                ctx.swap(b["v"], b["v4"])
            ctx.three_color(b["v3'"], b["v2"], b["w1"], b["w2"])
            ctx.one00_color(b["v3"], b["v1"])
        return r

    if k == "SixVertexTwoWeak336":
        v, v1, v2, v5, v6, x, y, xp, z = _names(b, "v", "v1", "v2", "v5", "v6", "x", "y", "x'", "z")
        near = v5 if g.adjacent(z, v5) else v6
        far = v6 if near == v5 else v5

        def r(ctx: Ctx):
            alpha = ctx.c(b["v2'"])
            ctx.three_color(v1, v2, v)
            if ctx.c(v) == alpha:
                ctx.tag("v-alpha")
                ctx.three_color(v6, v5, xp, y)
                ctx.one00_color(x)
            else:
                ctx.tag("v-not-alpha")
                if ctx.c(v) == 1:
                    ctx.swap(v, v2)
                ctx.three_color(xp, y)
                ctx.one00_color(x)
                ctx.uncolor(z)
                ctx.three_color(z, far)
                ctx.one00_color(near)
        return r

    if k == "Wheel":
        corners = [_names(b, "u", "u1", "u2", "u1'"), _names(b, "v", "v1", "v2", "v1'"),
                   _names(b, "w", "w1", "w2", "w1'")]

        def r(ctx: Ctx):
            cols = [ctx.c(t[3]) for t in corners]
            if len(set(cols)) == 3:
                ctx.tag("case1")
                s = (cols.index(1) + 1) % 3
                (U, U1, U2, U1p), (V, V1, V2, V1p), (Wc, W1, W2, _W1p) = \
                    corners[s:] + corners[:s]
                a, bb = ctx.c(U1p), ctx.c(V1p)
                ctx.three_color(U2, V2, W2)
                if ctx.c(U2) != a and ctx.c(V2) != bb:
                    ctx.tag("case1-direct")
                    ctx.assign(U, a)
                    ctx.assign(V, bb)
                    ctx.assign(Wc, 1)
                    ctx.three_color(U1, V1, W1)
                    return
                if ctx.c(U2) == a:
                    ctx.tag("case1-u2")
                    ctx.assign(U1, bb)
                    ctx.assign(U, 1)
                    ctx.three_color(V, V1)
                else:
                    ctx.tag("case1-v2")
                    ctx.assign(V1, a)
                    ctx.assign(V, 1)
                    ctx.three_color(U, U1)
                if ctx.c(W2) == 1:
                    ctx.three_color(Wc, W1)
                else:
                    ctx.assign(Wc, 1)
                    ctx.three_color(W1)
                return
            ctx.tag("case2")
            ctx.claim(cols.count(1) == 2, "exactly two outer neighbours have color 1")
            s = cols.index(next(c for c in cols if c != 1))
            s = (s + 1) % 3  # rotate so the corner without color 1 comes last
            (U, U1, U2, _), (V, V1, V2, _), (Wc, W1, W2, _) = corners[s:] + corners[:s]
            ctx.three_color(U2, V2, W2, W1, Wc)
            if ctx.c(Wc) == 1:
                ctx.swap(Wc, W1)
            cw = ctx.c(Wc)
            ctx.three_color(U, ignore=(V,))
            ctx.three_color(U1)
            ctx.three_color(V, ignore=(U,))
            ctx.three_color(V1)
            # two adjacent 1s are allowed; only equal non-1 colors conflict
            if ctx.c(U) == ctx.c(V) != 1:
                ctx.tag("case2-recolor-u")
                ctx.claim(ctx.c(U1) == cw and ctx.c(U2) == 1, "u1 has w's color and u2 has color 1")
                ctx.assign(U, 1)
        return r

    if k == "AntiwheelAllLight":
        u, v, w, u1, u2, v1, v2, w1, w2, u1p, v1p, w2p = _names(
            b, "u", "v", "w", "u1", "u2", "v1", "v2", "w1", "w2", "u1'", "v1'", "w2'")

        def r(ctx: Ctx):
            alpha, beta = ctx.c(v2), ctx.c(u1p)
            ctx.three_color(u2, w1)
            if not (ctx.c(u2) == alpha and ctx.c(w1) == alpha):
                ctx.tag("case1")
                ctx.three_color(u, v, w)
                ctx.uncolor(u1p, w2p)
                ctx.three_color(u1p, w2p)
                ctx.one00_color(u1, w2)
                if ctx.three_options(v2, ignore=(v2,)):
                    ctx.tag("case1-recolor-v2")
                    ctx.uncolor(v2)
                    ctx.three_color(v2)
                    ctx.uncolor(v1p)
                    ctx.three_color(v1p)
                    ctx.one00_color(v1)
                    return
                ctx.tag("case1-v2-blocked")
                c = ctx.c(v)
                ctx.claim(ctx.c(v2) == 1 and c != 1, "v2 has color 1 and v does not")
                cbar = _other_nonone(c)
                if ctx.c(v1p) != cbar:
                    ctx.three_color(v1)
                    return
                ctx.tag("case1-exchange")
                ctx.assign(v1, 1)
                ctx.assign(v2, c)
                ctx.assign(v, cbar)
                ctx.uncolor(u1, u, w, w2)
                ctx.assign(w2p, 1)
                ctx.assign(u1p, beta)
                ctx.three_color(u, u1)
                if ctx.c(w1) == cbar:
                    ctx.three_color(w)
                    ctx.one00_color(w2)
                else:
                    ctx.assign(w2, cbar)
                    ctx.one00_color(w)
                return
            ctx.tag("case2")
            if alpha == 1:
                ctx.tag("case2-alpha-one")
                ctx.assign(u, 1)
                ctx.three_color(u1, v1, v, w, w2)
                return
            abar = _other_nonone(alpha)
            if beta != abar:
                ctx.tag("case2-beta")
                ctx.three_color(v1, v, w, w2)
                ctx.assign(u, 1)
                ctx.three_color(u1)
            else:
                ctx.tag("case2-fixed")
                for z in (u, w2, v1):
                    ctx.assign(z, abar)
                for z in (u1, w, v):
                    ctx.assign(z, 1)
        return r

    if k in ("FiveFaceAllLight", "SmallFiveFaceWith4Vertex"):
        u1, u2, u3, u4, u5 = _names(b, "u1", "u2", "u3", "u4", "u5")

        def r(ctx: Ctx):
            if ctx.c(b["u5'"]) != 1:
                ctx.tag("u5'-not-one")
                ctx.three_color(u1, u2, u3, u4)
                ctx.one00_color(u5)
            elif ctx.c(b["u2'"]) != 1:
                ctx.tag("u2'-not-one")
                ctx.three_color(u1, u5, u4, u3)
                ctx.one00_color(u2)
            else:
                ctx.tag("both-one")
                ctx.three_color(u1, u2, u3, u4)
                ctx.one00_color(u5)
        return r

    if k == "AdjacentFiveFaces":
        def r(ctx: Ctx):
            ctx.three_color(*_names(b, "u", "f1", "f2", "f3", "g1", "g2", "g3"))
            ctx.one00_color(b["v"])
        return r

    raise UnknownKind(k)


def _proper_3(g: PlaneGraph, vertices: Sequence[int]) -> Optional[Dict[int, int]]:
    vs = sorted(vertices)
    inside = set(vs)
    col: Dict[int, int] = {}

    def rec(i: int) -> bool:
        if i == len(vs):
            return True
        v = vs[i]
        for c in COLORS:
            if all(col.get(u) != c for u in g.rotation[v] if u in inside):
                col[v] = c
                if rec(i + 1):
                    return True
                del col[v]
        return False

    return dict(col) if rec(0) else None


def recolorable(m: ConfigurationMatch, plan: SurgeryPlan) -> Tuple[int, ...]:
    """Surviving vertices a recipe may read or recolor."""
    dels = set(plan.deletions)
    return tuple(sorted({v for _, v in m.binding if v not in dels}))
