"""Construction of small class-G host graphs around a configuration core.

A core is a straight-line drawing of the configuration (named vertices with
coordinates and edges).  Degrees are padded with pendant leaves, which
create no cycles and leave the colors next to the configuration
unconstrained, so that every local coloring pattern of the reduced graph
occurs.  Ports are points on a large circle D, each joined to one or more
core vertices; the ports are joined around the circle into the outer cycle
D, with a number of subdivision vertices between consecutive ports.  The
subdivision counts are searched (fewest extra vertices first) until the
graph has no 4- or 6-cycles and the wanted configuration is detected with
the wanted proof case.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .plane_graph import PlaneGraph, from_coordinates, validate_class_G

Point = Tuple[float, float]
RADIUS = 10.0
LEAF_LENGTH = 0.35


def polar(r: float, deg: float) -> Point:
    a = math.radians(deg)
    return (r * math.cos(a), r * math.sin(a))


@dataclass
class CoreSpec:
    name: str
    kind: str
    case: str
    coords: Dict[str, Point]
    edges: List[Tuple[str, str]]
    ports: List[Tuple[float, Tuple[str, ...]]]  # (angle in degrees, attached core vertices)
    leaves: List[Tuple[str, float]] = field(default_factory=list)  # (core vertex, direction)
    note: str = ""

    def port_order(self) -> List[Tuple[float, Tuple[str, ...]]]:
        # clockwise around the circle, i.e. decreasing angle
        return sorted(self.ports, key=lambda p: -(p[0] % 360.0))


@dataclass
class BuiltHost:
    spec: CoreSpec
    graph: PlaneGraph
    names: Dict[str, int]
    subdivisions: Tuple[int, ...]


def assemble(spec: CoreSpec, subdivisions: Sequence[int]) -> Tuple[PlaneGraph, Dict[str, int]]:
    ports = spec.port_order()
    if len(subdivisions) != len(ports):
        raise ValueError("one subdivision count per gap between consecutive ports")
    names: Dict[str, int] = {}
    coords: Dict[int, Point] = {}
    for nm, p in spec.coords.items():
        names[nm] = len(names) + 1
        coords[names[nm]] = p
    edges = [(names[a], names[b]) for a, b in spec.edges]
    for i, (nm, ang) in enumerate(spec.leaves):
        lid = len(coords) + 1
        names[f"leaf{i}"] = lid
        dx, dy = polar(LEAF_LENGTH, ang)
        coords[lid] = (spec.coords[nm][0] + dx, spec.coords[nm][1] + dy)
        edges.append((names[nm], lid))
    ring: List[int] = []
    angles = [a % 360.0 for a, _ in ports]
    for i, (ang, att) in enumerate(ports):
        pid = len(coords) + 1
        names[f"d{i}"] = pid
        coords[pid] = polar(RADIUS, ang)
        for a in att:
            edges.append((names[a], pid))
        ring.append(pid)
        nxt = angles[(i + 1) % len(ports)]
        gap = (ang - nxt) % 360.0 or 360.0
        for k in range(subdivisions[i]):
            sid = len(coords) + 1
            names[f"d{i}.{k + 1}"] = sid
            coords[sid] = polar(RADIUS, ang - gap * (k + 1) / (subdivisions[i] + 1))
            ring.append(sid)
    for a, b in zip(ring, ring[1:] + ring[:1]):
        edges.append((a, b))
    return from_coordinates(coords, edges), names


def _vectors(n: int, max_extra: int, max_per_gap: int):
    for total in range(max_extra + 1):
        for combo in itertools.product(range(max_per_gap + 1), repeat=n):
            if sum(combo) == total:
                yield combo


def build(spec: CoreSpec, accept: Optional[Callable[[PlaneGraph, Dict[str, int]], bool]] = None,
          max_extra: int = 6, max_per_gap: int = 3) -> BuiltHost:
    """The smallest subdivision of D giving a class-G host accepted by `accept`."""
    n = len(spec.ports)
    last_error = None
    for combo in _vectors(n, max_extra, max_per_gap):
        try:
            g, names = assemble(spec, combo)
        except ValueError as exc:
            last_error = exc
            continue
        if not validate_class_G(g).verdict:
            continue
        if accept is not None and not accept(g, names):
            continue
        return BuiltHost(spec, g, names, tuple(combo))
    raise ValueError(f"no subdivision of D makes {spec.name} a class-G host"
                     + (f" ({last_error})" if last_error else ""))


# ---------------------------------------------------------------------------
# cores, one per configuration kind and proof case
# ---------------------------------------------------------------------------

def _ring(center: Point, r: float, angles: Sequence[float]) -> List[Point]:
    return [(center[0] + p[0], center[1] + p[1]) for p in (polar(r, a) for a in angles)]


def _outward(c: Dict[str, Point], nm: str, spread: Sequence[float] = (0,)) -> List[Tuple[str, float]]:
    """Leaves at `nm` pointing away from the origin, fanned by `spread` degrees."""
    x, y = c[nm]
    base = math.degrees(math.atan2(y, x))
    return [(nm, base + s) for s in spread]


def core_specs() -> List[CoreSpec]:
    S: List[CoreSpec] = []

    # an internal 2-vertex
    S.append(CoreSpec(
        "min_degree", "MinDegree", "main",
        {"v": (0, 0), "a": (-1, 0), "b": (1, 0)},
        [("v", "a"), ("v", "b")],
        [(150, ("a",)), (210, ("a",)), (30, ("b",)), (-30, ("b",))]))

    # a triangle with a pendant vertex inside
    c = dict(zip(("c1", "c2", "c3"), _ring((0, 0), 1.0, (90, -30, 210))))
    c["p"] = (0.0, 0.2)
    S.append(CoreSpec(
        "separating_triangle", "SeparatingGoodCycle", "main", c,
        [("c1", "c2"), ("c2", "c3"), ("c3", "c1"), ("p", "c1")],
        [(90, ("c1",))], _outward(c, "c2") + _outward(c, "c3")))

    # a triangle block hanging from v
    S.append(CoreSpec(
        "leaf_block", "CutVertex", "main",
        {"v": (0, 0), "b1": (-0.4, 0.7), "b2": (0.4, 0.7)},
        [("v", "b1"), ("v", "b2"), ("b1", "b2")],
        [(270, ("v",))]))

    # light vertex with three light neighbours
    c = {"v": (0, 0)}
    c.update(dict(zip(("v1", "v2", "v3"), _ring((0, 0), 1.0, (90, -30, 210)))))
    ports = []
    for nm, a in (("v1", 90), ("v2", -30), ("v3", 210)):
        ports += [(a + 20, (nm,)), (a - 20, (nm,))]
    S.append(CoreSpec("light_cluster", "LightCluster", "main", c,
                      [("v", "v1"), ("v", "v2"), ("v", "v3")], ports))

    # (3,3,4)-face with a light outer neighbour
    c = {"u": (0, 0.6), "v": (-0.6, -0.3), "w": (0.6, -0.3), "x": (0, 1.5)}
    S.append(CoreSpec(
        "light_triangle", "LightTriangle334", "main", c,
        [("u", "v"), ("v", "w"), ("w", "u"), ("u", "x")],
        [(-60, ("w",))],
        _outward(c, "x", (-30, 30)) + _outward(c, "v") + [("w", 10)]))

    # two pendent faces at a 4-vertex x: opposite (case 1) and adjacent (case 2)
    def two_pendent(name: str, case: str, v_angle: float, free: Sequence[float]) -> CoreSpec:
        c = {"x": (0, 0), "u1": polar(1.0, 90), "v1": polar(1.0, v_angle)}
        c["u2"], c["u3"] = _ring(c["u1"], 0.7, (135, 45))
        c["v2"], c["v3"] = _ring(c["v1"], 0.7, (v_angle + 45, v_angle - 45))
        edges = [("x", "u1"), ("x", "v1"), ("u1", "u2"), ("u2", "u3"), ("u3", "u1"),
                 ("v1", "v2"), ("v2", "v3"), ("v3", "v1")]
        leaves = [("x", free[1])]
        for nm in ("u2", "u3", "v2", "v3"):
            leaves += _outward(c, nm)
        return CoreSpec(name, "TwoPendent", case, c, edges, [(free[0], ("x",))], leaves)

    S.append(two_pendent("two_pendent_opposite", "case1", 270, (0, 180)))
    S.append(two_pendent("two_pendent_adjacent", "case2", 0, (270, 180)))

    # a 4-vertex u on a (3,3,4)-face and a pendent (3,3,3)-face
    c = {"u": (0, 0), "a": polar(1.0, 120), "b": polar(1.0, 60), "u3": polar(1.0, -20)}
    c["s1"], c["s2"] = _ring(c["u3"], 0.7, (25, -65))
    for name, a_spread in (("incident_plus_pendent", (0,)), ("incident_344_plus_pendent", (-25, 25))):
        S.append(CoreSpec(
            name, "IncidentPlusPendent", "main", c,
            [("u", "a"), ("u", "b"), ("a", "b"), ("u", "u3"), ("u3", "s1"), ("u3", "s2"),
             ("s1", "s2")],
            [(200, ("u",))],
            _outward(c, "a", a_spread) + _outward(c, "b") + [("s1", 25), ("s2", -65)]))

    # two (3,4-,4)-faces at a 4-vertex v
    def two_incident(name: str, case: str, degrees: Dict[str, int], light_v2p: bool = False) -> CoreSpec:
        ang = {"v1": 120, "v2": 60, "v3": -60, "v4": -120}
        c = {"v": (0, 0)}
        c.update({k: polar(1.0, a) for k, a in ang.items()})
        edges = [("v", k) for k in ang] + [("v1", "v2"), ("v3", "v4")]
        leaves = []
        for k in ang:
            if k == "v2" and light_v2p:
                # v2's outer neighbour is light, so it may already see a 1
                c["v2p"] = polar(2.0, 60)
                edges.append(("v2", "v2p"))
                leaves += _outward(c, "v2p", (-30, 30))
            else:
                leaves += _outward(c, k, (0,) if degrees[k] == 3 else (-25, 25))
        # the first leaf of v1 becomes the port
        port_angle = leaves[0][1]
        return CoreSpec(name, "TwoIncident344", case, c, edges,
                        [(port_angle, ("v1",))], leaves[1:])

    S.append(two_incident("two_incident_334", "case1", {"v1": 3, "v2": 3, "v3": 3, "v4": 3}))
    S.append(two_incident("two_incident_344_opposite", "case2.1", {"v1": 4, "v2": 3, "v3": 4, "v4": 3}))
    S.append(two_incident("two_incident_344_adjacent", "case2.2", {"v1": 4, "v2": 3, "v3": 3, "v4": 4}))
    S.append(two_incident("two_incident_344_adjacent_light", "case2.2",
                          {"v1": 4, "v2": 3, "v3": 3, "v4": 4}, light_v2p=True))

    # a 5-vertex with a weak (3,3,5)-face and a (3,4-,5)-face
    def five_two(name: str, case: str, d4: int) -> CoreSpec:
        ang = {"v1": 18, "v2": -54, "v3": -126, "v4": 162}
        c = {"v": (0, 0)}
        c.update({k: polar(1.0, a) for k, a in ang.items()})
        c["xp"] = polar(2.0, 25)
        edges = [("v", k) for k in ang] + [("v1", "v2"), ("v3", "v4"), ("v1", "xp")]
        leaves = ([("v", 90)] + _outward(c, "xp", (-30, 30))
                  + _outward(c, "v3") + _outward(c, "v4", (0,) if d4 == 3 else (-25, 25)))
        return CoreSpec(name, "FiveVertexTwoIncident", case, c, edges,
                        [(-90, ("v2",))], leaves)

    S.append(five_two("five_two_incident_3", "case1", 3))
    S.append(five_two("five_two_incident_4", "case2", 4))

    # a 5-vertex with a pendent (3,3,3)-face
    ang = {"v1": 90, "v2": 18, "v3": -54, "v4": -126, "v5": 162}
    c = {"v": (0, 0)}
    c.update({k: polar(1.0, a) for k, a in ang.items()})
    c["w1"], c["w2"] = _ring(c["v1"], 0.7, (45, 135))
    c["v3p"] = polar(2.0, -60)
    c["v4p"] = polar(2.0, -120)
    S.append(CoreSpec(
        "five_pendent_333", "FiveVertexPendent333", "main", c,
        [("v", k) for k in ang] + [("v2", "v3"), ("v4", "v5"), ("v1", "w1"), ("v1", "w2"),
                                   ("w1", "w2"), ("v3", "v3p"), ("v4", "v4p")],
        [(18, ("v2",))],
        [("w1", 45), ("w2", 135), ("v3p", -35), ("v3p", -85), ("v4p", -95), ("v4p", -145)]
        + _outward(c, "v5", (-30, 0, 30))))

    # a 6-vertex with a (3,4-,6)-face and two weak (3,3,6)-faces
    ang = {"v1": 90, "v2": 30, "v3": -30, "v4": -90, "v5": -150, "v6": 150}
    c = {"v": (0, 0)}
    c.update({k: polar(1.0, a) for k, a in ang.items()})
    c["xp"] = polar(2.0, -30)
    c["v5p"] = polar(2.0, -150)
    S.append(CoreSpec(
        "six_two_weak", "SixVertexTwoWeak336", "main", c,
        [("v", k) for k in ang] + [("v1", "v2"), ("v3", "v4"), ("v5", "v6"),
                                   ("v3", "xp"), ("v5", "v5p")],
        [(90, ("v1",))],
        _outward(c, "v2") + _outward(c, "xp", (-30, 30)) + _outward(c, "v4")
        + _outward(c, "v5p", (-30, 30)) + _outward(c, "v6")))

    # wheel and antiwheel around a (4,4,4)-face u v w
    def wheel_core(anti: bool) -> CoreSpec:
        corner = {"u": 90, "v": -30, "w": 210}
        c = {k: polar(0.6, a) for k, a in corner.items()}
        edges = [("u", "v"), ("v", "w"), ("w", "u")]
        leaves: List[Tuple[str, float]] = []
        ports: List[Tuple[float, Tuple[str, ...]]] = []
        for k, a in corner.items():
            first, second = f"{k}1", f"{k}2"
            # clockwise at the corner: first the vertex at a+20, then at a-20
            deg_first = 4 if (anti and k == "w") else 3
            c[first] = polar(1.6, a + 20)
            c[second] = polar(1.6, a - 20)
            edges += [(k, first), (k, second), (first, second)]
            for nm, at, d in ((first, a + 20, deg_first), (second, a - 20, 7 - deg_first)):
                if d == 4:
                    leaves += [(nm, at + 25), (nm, at - 25)]
                else:
                    p = nm + "p"
                    c[p] = polar(2.6, at)
                    edges.append((nm, p))
        if anti:
            # u1' and v1' share t, v1' and w2' share s; all three primes light
            c["t"] = polar(3.6, 40)
            c["s"] = polar(3.6, 260)
            edges += [("u1p", "t"), ("v1p", "t"), ("v1p", "s"), ("w2p", "s")]
            ports += [(110, ("u1p",)), (190, ("w2p",))]
        else:
            ports.append((110, ("u1p",)))
        name = "antiwheel" if anti else "wheel"
        kind = "AntiwheelAllLight" if anti else "Wheel"
        return CoreSpec(name, kind, "main", c, edges, ports, leaves)

    S.append(wheel_core(False))
    S.append(wheel_core(True))

    # an all-light 5-face; u5', u1', u2' internal
    ang5 = [90 - 72 * i for i in range(5)]
    c = {f"u{i + 1}": polar(1.0, a) for i, a in enumerate(ang5)}
    edges = [(f"u{i + 1}", f"u{(i + 1) % 5 + 1}") for i in range(5)]
    S.append(CoreSpec(
        "five_face_all_light", "FiveFaceAllLight", "main", c, edges,
        [(ang5[2], ("u3",))],
        [(f"u{i + 1}", ang5[i]) for i in (0, 1, 3, 4)]))

    # a 5-face with four light vertices and an internal 4-vertex
    c = {f"u{i + 1}": polar(1.0, a) for i, a in enumerate(ang5)}
    edges = [(f"u{i + 1}", f"u{(i + 1) % 5 + 1}") for i in range(5)]
    S.append(CoreSpec(
        "small_five_face", "SmallFiveFaceWith4Vertex", "main", c, edges,
        [(ang5[2], ("u3",))],
        [("u1", 110), ("u1", 70)] + [(f"u{i + 1}", ang5[i]) for i in (1, 3, 4)]))

    # two 5-faces sharing the edge uv, u an internal 5-vertex
    c = {"u": (0, 0.5), "v": (0, -0.5), "f1": (-1, 1), "f2": (-1.6, 0), "f3": (-1, -1),
         "g1": (1, 1), "g2": (1.6, 0), "g3": (1, -1)}
    edges = [("u", "v"), ("u", "f1"), ("f1", "f2"), ("f2", "f3"), ("f3", "v"),
             ("u", "g1"), ("g1", "g2"), ("g2", "g3"), ("g3", "v")]
    S.append(CoreSpec(
        "adjacent_five_faces", "AdjacentFiveFaces", "main", c, edges,
        [(180, ("f2",))],
        [("u", 110), ("u", 70), ("f1", 135), ("f3", 225), ("g1", 45), ("g2", 0), ("g3", -45)]))
    return S


def seven_vertex_spec() -> CoreSpec:
    """An internal 7-vertex on three 3-faces with one pendent 3-face and no
    5-faces (n3 = 3, n5 = 0, m3 = 1), for the discharging corpus."""
    ring = _ring((0, 0), 1.0, [90 - k * 360 / 7 for k in range(7)])
    c = {"v": (0.0, 0.0)}
    c.update({f"n{k}": ring[k] for k in range(7)})
    c["a"] = (ring[6][0] * 2.0 + 0.3, ring[6][1] * 2.0 + 0.3)
    c["b"] = (ring[6][0] * 2.0 - 0.3, ring[6][1] * 2.0 - 0.3)
    edges = [("v", f"n{k}") for k in range(7)]
    edges += [("n0", "n1"), ("n2", "n3"), ("n4", "n5"), ("n6", "a"), ("n6", "b"), ("a", "b")]
    return CoreSpec("seven_vertex", "", "main", c, edges, [(90, ("n0",))],
                    note="internal 7-vertex with n3=3, n5=0, m3=1")


def build_kind_host(spec: CoreSpec, result_bound: Optional[int] = 14, **kw) -> BuiltHost:
    """Build a host in which the spec's kind is detected with the spec's case."""
    from .configurations import detect
    from .reducibility import apply_surgery

    def accept(g: PlaneGraph, names: Dict[str, int]) -> bool:
        ms = [m for m in detect(g, spec.kind) if m.case_tag == spec.case]
        if not ms:
            return False
        if result_bound is None:
            return True
        try:
            return apply_surgery(g, ms[0]).result.vertex_count <= result_bound
        except ValueError:
            return False

    try:
        return build(spec, accept, **kw)
    except ValueError:
        if result_bound is None:
            raise
        return build_kind_host(spec, None, **kw)
