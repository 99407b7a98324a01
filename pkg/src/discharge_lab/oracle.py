"""Brute-force reference detector for the reducible configurations.

Each configuration is restated as a small constraint-satisfaction problem
over its named vertices: variables are bound one at a time from a domain
(all vertices, or the neighbours of an already bound vertex) and every
constraint whose variables are bound is checked immediately.  The
constraints are written directly from the configuration statements
(adjacency, degree, internal/light, 3-faces and their degree patterns,
clockwise order) and share no code with :mod:`configurations` beyond the
plane-graph primitives, so agreement of the two is a meaningful test.

Labeling conventions (which of two symmetric vertices is called ``v1``)
follow the module documentation of :mod:`configurations`.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

import networkx as nx

from .cycles import cycle_record, find_bad_partition
from .plane_graph import PlaneGraph, canonical_cycle

B = Dict[str, int]
Domain = Callable[[PlaneGraph, B], Iterable[int]]
Check = Callable[[PlaneGraph, B], bool]


class Var:
    def __init__(self, name: str, domain: Domain, *checks: Check, alias: bool = False):
        self.name = name
        self.domain = domain
        self.checks = checks
        self.alias = alias


def solve_csp(g: PlaneGraph, variables: Sequence[Var]) -> Iterator[B]:
    b: B = {}
    used: Set[int] = set()

    def rec(i: int) -> Iterator[B]:
        if i == len(variables):
            yield dict(b)
            return
        var = variables[i]
        for x in sorted(set(var.domain(g, b))):
            if not var.alias and x in used:
                continue
            b[var.name] = x
            if not var.alias:
                used.add(x)
            if all(chk(g, b) for chk in var.checks):
                yield from rec(i + 1)
            if not var.alias:
                used.discard(x)
            del b[var.name]

    yield from rec(0)


# -- predicates ---------------------------------------------------------------

def ALL(g: PlaneGraph, b: B) -> Iterable[int]:
    return g.vertices


def N(name: str) -> Domain:
    return lambda g, b: g.rotation[b[name]]


def ONE_OF(*names: str) -> Domain:
    return lambda g, b: [b[n] for n in names]


def internal(g: PlaneGraph, v: int) -> bool:
    return v not in set(g.faces[g.outer_face_id])


def light(g: PlaneGraph, v: int) -> bool:
    return internal(g, v) and len(g.rotation[v]) == 3


def deg_ok(d: int, spec) -> bool:
    if isinstance(spec, int):
        return d == spec
    k = int(spec[:-1])
    return d <= k if spec.endswith("-") else d >= k


def tri_face(g: PlaneGraph, a: int, b: int, c: int) -> Optional[Tuple[int, ...]]:
    """The bounded face walk whose vertex set is {a, b, c}, if any."""
    for f, walk in enumerate(g.faces):
        if f != g.outer_face_id and len(walk) == 3 and set(walk) == {a, b, c}:
            return walk
    return None


def typed(g: PlaneGraph, vs: Sequence[int], specs: Sequence) -> bool:
    """vs spans a 3-face of internal vertices whose degrees can be matched
    to specs by some bijection."""
    if len(set(vs)) != 3 or tri_face(g, *vs) is None:
        return False
    if not all(internal(g, x) for x in vs):
        return False
    degs = [len(g.rotation[x]) for x in vs]
    return any(all(deg_ok(d, s) for d, s in zip(p, specs)) for p in itertools.permutations(degs))


def face_next(g: PlaneGraph, vs: Sequence[int], a: int, step: int = 1) -> int:
    walk = tri_face(g, *vs)
    return walk[(walk.index(a) + step) % 3]


def rot_after(g: PlaneGraph, v: int, a: int, k: int = 1) -> int:
    r = g.rotation[v]
    return r[(r.index(a) + k) % len(r)]


def off(g: PlaneGraph, x: int, exclude: Sequence[int]) -> List[int]:
    return [y for y in g.rotation[x] if y not in exclude]


def is_deg(name: str, spec) -> Check:
    return lambda g, b: deg_ok(len(g.rotation[b[name]]), spec)


def is_internal(name: str) -> Check:
    return lambda g, b: internal(g, b[name])


def is_light(name: str) -> Check:
    return lambda g, b: light(g, b[name])


def adj(x: str, y: str) -> Check:
    return lambda g, b: g.adjacent(b[x], b[y])


def only_off(name: str, *exclude: str) -> Domain:
    """The unique neighbour of `name` outside `exclude` (empty if not unique)."""
    def dom(g, b):
        r = off(g, b[name], [b[e] for e in exclude])
        return r if len(r) == 1 else []
    return dom


def corner_pair(g: PlaneGraph, x: int, a: int, b: int) -> Optional[Tuple[int, int]]:
    """For a 4-vertex x with a, b consecutive in its rotation: the other two
    neighbours clockwise starting after the corner."""
    r = g.rotation[x]
    if len(r) != 4:
        return None
    for i in range(4):
        if {r[i], r[(i + 1) % 4]} == {a, b}:
            return r[(i + 2) % 4], r[(i + 3) % 4]
    return None


# -- the configurations ---------------------------------------------------------

def _min_degree():
    return [("main", [Var("v", ALL, is_internal("v"), lambda g, b: len(g.rotation[b["v"]]) <= 2)])]


def _light_cluster():
    return [("main", [
        Var("v", ALL, is_light("v"), lambda g, b: all(light(g, u) for u in g.rotation[b["v"]])),
        Var("v1", N("v"), lambda g, b: b["v1"] == min(g.rotation[b["v"]])),
        Var("v2", N("v"), lambda g, b: b["v2"] == rot_after(g, b["v"], b["v1"])),
        Var("v3", N("v"), lambda g, b: b["v3"] == rot_after(g, b["v"], b["v2"])),
    ])]


def _light_triangle():
    return [("main", [
        Var("w", ALL, is_deg("w", 4)),
        Var("u", N("w"), is_light("u")),
        Var("v", N("w"), adj("u", "v"),
            lambda g, b: typed(g, (b["u"], b["v"], b["w"]), (3, 3, 4))),
        Var("x", N("u"), is_light("x")),
    ])]


def _pendent(center: str, p: str, q: str, r: str, specs) -> List[Var]:
    """p adjacent to center, [p q r] a 3-face of pattern specs avoiding center."""
    return [
        Var(p, N(center), is_light(p)),
        Var(q, N(p)),
        Var(r, N(p), adj(q, r),
            lambda g, b: typed(g, (b[p], b[q], b[r]), specs)),
    ]


def _two_pendent():
    out = []
    for case in ("case1", "case2"):
        vs = [Var("x", ALL, is_internal("x"), is_deg("x", 4))]
        vs += [Var("u1", N("x"), is_light("u1"))]
        vs += [Var("v1", N("x"), is_light("v1"))]
        # the (3,3,3)-face through u1: u2 is its successor on the face walk
        # in case 1 and in case 2 when v1 comes just before u1 at x;
        # otherwise u2 is the predecessor
        def u2_dom(case):
            def dom(g, b):
                out = []
                for a in g.rotation[b["u1"]]:
                    for c in g.rotation[b["u1"]]:
                        if a < c and g.adjacent(a, c) and b["x"] not in (a, c) \
                                and typed(g, (b["u1"], a, c), (3, 3, 3)):
                            r = g.rotation[b["x"]]
                            i = r.index(b["u1"])
                            if case == "case1" or r[(i + 3) % 4] == b["v1"]:
                                out.append(face_next(g, (b["u1"], a, c), b["u1"]))
                            else:
                                out.append(face_next(g, (b["u1"], a, c), b["u1"], -1))
                return out
            return dom
        vs += [Var("u2", u2_dom(case)),
               Var("u3", N("u1"), adj("u2", "u3"), lambda g, b: b["x"] != b["u3"]
                   and typed(g, (b["u1"], b["u2"], b["u3"]), (3, 3, 3)))]

        def v_dom(g, b):
            res = []
            for a in g.rotation[b["v1"]]:
                for c in g.rotation[b["v1"]]:
                    if a != c and g.adjacent(a, c) and b["x"] not in (a, c) \
                            and typed(g, (b["v1"], a, c), (3, 3, "4-")):
                        fours = [z for z in (a, c) if len(g.rotation[z]) == 4]
                        if fours:
                            v3 = fours[0]
                            v2 = a if v3 == c else c
                        else:
                            v2 = face_next(g, (b["v1"], a, c), b["v1"])
                            v3 = a if v2 == c else c
                        res.append((v2, v3))
            return res

        vs += [Var("v2", lambda g, b: [p[0] for p in v_dom(g, b)]),
               Var("v3", lambda g, b: [p[1] for p in v_dom(g, b) if p[0] == b["v2"]],
                   lambda g, b: not ({b["u1"], b["u2"], b["u3"]} & {b["v1"], b["v2"], b["v3"]}))]

        def position(g, b, case=case):
            r = g.rotation[b["x"]]
            i = r.index(b["u1"])
            opp = r[(i + 2) % 4] == b["v1"]
            return opp == (case == "case1")

        vs[2].checks = vs[2].checks + (position,)
        if case == "case1":
            vs += [Var("x1", N("x"), lambda g, b: b["x1"] == rot_after(g, b["x"], b["u1"], 1)),
                   Var("x2", N("x"), lambda g, b: b["x2"] == rot_after(g, b["x"], b["u1"], 3))]
        else:
            def x_names(g, b):
                r = g.rotation[b["x"]]
                i = r.index(b["u1"])
                if r[(i + 3) % 4] == b["v1"]:  # order u1, a, b, v1
                    return r[(i + 1) % 4], r[(i + 2) % 4]
                return r[(i + 3) % 4], r[(i + 2) % 4]  # order u1, v1, a, b
            vs += [Var("x1", N("x"), lambda g, b: b["x1"] == x_names(g, b)[0]),
                   Var("x2", N("x"), lambda g, b: b["x2"] == x_names(g, b)[1]),
                   Var("y", only_off("u2", "u1", "u3"))]
        out.append((case, vs))
    return out


def _incident_plus_pendent():
    def labels(g, b):
        """(u1, u2, u3, u4) choices from the 3-face [u a c] at u."""
        r = g.rotation[b["u"]]
        res = []
        for i in range(4):
            a, c = r[i], r[(i + 1) % 4]
            if tri_face(g, b["u"], a, c) and typed(g, (b["u"], a, c), (3, "4-", 4)):
                res.append((a, c, r[(i + 2) % 4], r[(i + 3) % 4]))
                res.append((c, a, r[(i + 3) % 4], r[(i + 2) % 4]))
        return res

    return [("main", [
        Var("u", ALL, is_internal("u"), is_deg("u", 4)),
        Var("u1", lambda g, b: [t[0] for t in labels(g, b)]),
        Var("u2", lambda g, b: [t[1] for t in labels(g, b) if t[0] == b["u1"]]),
        Var("u3", lambda g, b: [t[2] for t in labels(g, b) if t[:2] == (b["u1"], b["u2"])],
            is_light("u3")),
        Var("u4", lambda g, b: [t[3] for t in labels(g, b) if t[:3] == (b["u1"], b["u2"], b["u3"])]),
        Var("u3'", N("u3"), lambda g, b: b["u3'"] != b["u"]),
        Var("u3''", N("u3"), adj("u3'", "u3''"),
            lambda g, b: typed(g, (b["u3"], b["u3'"], b["u3''"]), (3, 3, "4-"))
            and b["u3'"] == face_next(g, (b["u3"], b["u3'"], b["u3''"]), b["u3"])),
    ])]


def _two_incident():
    out = []
    # case 1: [v v1 v2] is a (3,3,4)-face, v1 before v2 clockwise; [v v3 v4] next
    vs = [Var("v", ALL, is_deg("v", 4)),
          Var("v1", N("v")),
          Var("v2", N("v"), lambda g, b: b["v2"] == rot_after(g, b["v"], b["v1"]),
              lambda g, b: typed(g, (b["v"], b["v1"], b["v2"]), (3, 3, 4))),
          Var("v3", N("v"), lambda g, b: b["v3"] == rot_after(g, b["v"], b["v1"], 2)),
          Var("v4", N("v"), lambda g, b: b["v4"] == rot_after(g, b["v"], b["v1"], 3),
              lambda g, b: typed(g, (b["v"], b["v3"], b["v4"]), (3, "4-", 4))),
          Var("v1'", only_off("v1", "v", "v2")),
          Var("v2'", only_off("v2", "v", "v1"))]
    out.append(("case1", vs))
    # case 2: both faces (3,4,4); v1 a 4-vertex; v2 next to v1 either clockwise
    # or counter-clockwise, v3 opposite v1, v4 opposite v2
    for case, need in (("case2.1", "v3"), ("case2.2", "v4")):
        vs = [Var("v", ALL, is_deg("v", 4)),
              Var("v1", N("v"), is_deg("v1", 4)),
              Var("v2", N("v"), lambda g, b: b["v2"] in (rot_after(g, b["v"], b["v1"], 1),
                                                        rot_after(g, b["v"], b["v1"], -1)),
                  lambda g, b: typed(g, (b["v"], b["v1"], b["v2"]), (3, 4, 4))),
              Var("v3", N("v"), lambda g, b: b["v3"] == rot_after(g, b["v"], b["v1"], 2)),
              Var("v4", N("v"), lambda g, b: b["v4"] == rot_after(g, b["v"], b["v2"], 2),
                  lambda g, b: typed(g, (b["v"], b["v3"], b["v4"]), (3, 4, 4)),
                  is_deg(need, 4))]
        if case == "case2.1":
            vs += [Var("v2'", only_off("v2", "v", "v1")), Var("v4'", only_off("v4", "v", "v3"))]
        else:
            vs += [Var("v1'", lambda g, b: [corner_pair(g, b["v1"], b["v"], b["v2"])[0]]),
                   Var("v1''", lambda g, b: [corner_pair(g, b["v1"], b["v"], b["v2"])[1]]),
                   Var("v2'", only_off("v2", "v", "v1")),
                   Var("v3'", only_off("v3", "v", "v4")),
                   Var("v4'", lambda g, b: [corner_pair(g, b["v4"], b["v"], b["v3"])[0]]),
                   Var("v4''", lambda g, b: [corner_pair(g, b["v4"], b["v"], b["v3"])[1]])]
        out.append((case, vs))
    return out


def _around(step_name: str):
    """Rotation neighbour of v after `step_name` in the binding's direction."""
    def dom(g, b):
        r = g.rotation[b["v"]]
        i = r.index(b[step_name])
        return [r[(i + b["_dir"]) % len(r)]]
    return dom


def _dir_var():
    return Var("_dir", lambda g, b: [1, -1], alias=True)


def _five_two_incident():
    out = []
    for case, d4 in (("case1", 3), ("case2", 4)):
        vs = [Var("v", ALL, is_internal("v"), is_deg("v", 5)),
              Var("v5", N("v")), _dir_var(),
              Var("v1", _around("v5")), Var("v2", _around("v1"),
                                              lambda g, b: typed(g, (b["v"], b["v1"], b["v2"]), (3, 3, 5))),
              Var("v3", _around("v2")), Var("v4", _around("v3"),
                                              lambda g, b: typed(g, (b["v"], b["v3"], b["v4"]), (3, "4-", 5)),
                                              is_deg("v4", d4)),
              Var("x", ONE_OF("v1", "v2"), alias=True),
              Var("y", ONE_OF("v1", "v2"), lambda g, b: b["y"] != b["x"], alias=True),
              Var("x'", N("x"), lambda g, b: b["x'"] not in (b["v"], b["y"]), is_light("x'"))]
        if case == "case2":
            vs.append(Var("v3'", only_off("v3", "v", "v4")))
        out.append((case, vs))
    return out


def _five_pendent():
    return [("main", [
        Var("v", ALL, is_internal("v"), is_deg("v", 5)),
        Var("v2", N("v")), Var("v3", N("v"), adj("v2", "v3"),
                               lambda g, b: typed(g, (b["v"], b["v2"], b["v3"]), (3, 3, 5))),
        Var("v3'", N("v3"), lambda g, b: b["v3'"] not in (b["v"], b["v2"]), is_light("v3'")),
        Var("v4", N("v"), is_deg("v4", 3)),
        Var("v5", N("v"), adj("v4", "v5"),
            lambda g, b: typed(g, (b["v"], b["v4"], b["v5"]), (3, 5, "5+"))),
        Var("v4'", N("v4"), lambda g, b: b["v4'"] not in (b["v"], b["v5"]), is_light("v4'")),
        Var("v1", N("v"), is_light("v1")),
        Var("w1", N("v1")),
        Var("w2", N("v1"), adj("w1", "w2"),
            lambda g, b: typed(g, (b["v1"], b["w1"], b["w2"]), (3, 3, 3))
            and b["w1"] == face_next(g, (b["v1"], b["w1"], b["w2"]), b["v1"])),
    ])]


def _six_vertex():
    return [("main", [
        Var("v", ALL, is_internal("v"), is_deg("v", 6)),
        Var("v1", N("v")), _dir_var(),
        Var("v2", _around("v1"), is_deg("v2", 3),
            lambda g, b: typed(g, (b["v"], b["v1"], b["v2"]), (3, "4-", 6))),
        Var("v3", _around("v2")),
        Var("v4", _around("v3"), lambda g, b: typed(g, (b["v"], b["v3"], b["v4"]), (3, 3, 6))),
        Var("v5", _around("v4")),
        Var("v6", _around("v5"), lambda g, b: typed(g, (b["v"], b["v5"], b["v6"]), (3, 3, 6))),
        Var("x", ONE_OF("v3", "v4"), alias=True),
        Var("y", ONE_OF("v3", "v4"), lambda g, b: b["y"] != b["x"], alias=True),
        Var("x'", N("x"), lambda g, b: b["x'"] not in (b["v"], b["y"]), is_light("x'")),
        Var("v2'", only_off("v2", "v", "v1")),
        Var("v5'", only_off("v5", "v", "v6")),
        Var("v6'", only_off("v6", "v", "v5")),
        Var("z", ONE_OF("v5'", "v6'"), is_light("z"), alias=True),
    ])]


def _wheelish(anti: bool):
    """Central (4,4,4)-face [u v w] met in the order u, v, w (clockwise, or
    counter-clockwise for the mirrored reading); at each corner the two
    off-face neighbours are listed in the order they are met going around
    the corner in the same direction, starting from the face."""

    def pair(name: str, prev_name: str, idx: int) -> Domain:
        def dom(g, b):
            r = g.rotation[b[name]]
            if len(r) != 4:
                return []
            k = r.index(b[prev_name])
            s = b["_dir"]
            return [r[(k + s * (idx + 1)) % 4]]
        return dom

    def tri_ok(x: str, a: str, c: str) -> Check:
        return lambda g, b: tri_face(g, b[x], b[a], b[c]) is not None

    def degs(first: str, second: str, d1: int, d2: int) -> Check:
        return lambda g, b: len(g.rotation[b[first]]) == d1 and len(g.rotation[b[second]]) == d2

    dfirst = {"u": 3, "v": 3, "w": 4 if anti else 3}
    vs = [Var("u", ALL, is_internal("u"), is_deg("u", 4)), _dir_var(),
          Var("v", N("u"), is_internal("v"), is_deg("v", 4)),
          Var("w", N("v"), adj("w", "u"), is_internal("w"), is_deg("w", 4),
              lambda g, b: bool(_walk_from(g, b)))]
    if not anti:
        # a wheel is read once: from its smallest corner
        vs[3].checks += (lambda g, b: b["u"] < min(b["v"], b["w"]),)
    for x, prev in (("u", "w"), ("v", "u"), ("w", "v")):
        f, s = f"{x}1", f"{x}2"
        vs.append(Var(f, pair(x, prev, 0)))
        vs.append(Var(s, pair(x, prev, 1), tri_ok(x, f, s),
                      degs(f, s, dfirst[x], 7 - dfirst[x]),
                      is_internal(f), is_internal(s)))
    primes = ("u1'", "v1'", "w2'") if anti else ("u1'", "v1'", "w1'")
    for p in primes:
        base = p[:-1]
        other = base[0] + ("2" if base[1] == "1" else "1")
        vs.append(Var(p, only_off(base, base[0], other), *((is_light(p),) if anti else ())))
    return vs


def _walk_from(g: PlaneGraph, b: B) -> Tuple[int, ...]:
    """The face walk of [u v w] read from u in the binding's direction."""
    walk = (b["u"], b["v"], b["w"]) if b["_dir"] == 1 else (b["u"], b["w"], b["v"])
    real = tri_face(g, b["u"], b["v"], b["w"])
    if real is None:
        return ()
    i = real.index(b["u"])
    rot = real[i:] + real[:i]
    return real if rot == walk else ()


def _wheel():
    return [("main", _wheelish(False))]


def _antiwheel():
    return [("main", _wheelish(True))]


def _five_face_all_light():
    vs = [Var("u1", ALL, is_light("u1"))]
    for i in range(2, 6):
        vs.append(Var(f"u{i}", N(f"u{i - 1}"), is_light(f"u{i}")))
    vs[-1].checks = vs[-1].checks + (lambda g, b: _pentagon(g, b),)
    for i in range(1, 6):
        prv, nxt = f"u{(i - 2) % 5 + 1}", f"u{i % 5 + 1}"
        checks = (is_internal(f"u{i}'"),) if i in (5, 1, 2) else ()
        vs.append(Var(f"u{i}'", only_off(f"u{i}", prv, nxt), *checks))
    return [("main", vs)]


def _pentagon(g: PlaneGraph, b: B) -> bool:
    """u1..u5 is a bounded 5-face read in its clockwise walk order."""
    seq = tuple(b[f"u{i}"] for i in range(1, 6))
    for f, walk in enumerate(g.faces):
        if f != g.outer_face_id and len(walk) == 5 and len(set(walk)) == 5 and set(walk) == set(seq):
            i = walk.index(seq[0])
            return walk[i:] + walk[:i] == seq
    return False


def _small_five_face():
    vs = [Var("u1", ALL, is_internal("u1"), is_deg("u1", 4))]
    for i in range(2, 6):
        vs.append(Var(f"u{i}", N(f"u{i - 1}"), is_light(f"u{i}")))
    vs[-1].checks = vs[-1].checks + (lambda g, b: _pentagon(g, b),)
    vs.append(Var("u1'", lambda g, b: [corner_pair(g, b["u1"], b["u5"], b["u2"])[0]]))
    vs.append(Var("u1''", lambda g, b: [corner_pair(g, b["u1"], b["u5"], b["u2"])[1]]))
    for i in range(2, 6):
        prv, nxt = f"u{i - 1}", f"u{i % 5 + 1}"
        vs.append(Var(f"u{i}'", only_off(f"u{i}", prv, nxt)))
    return [("main", vs)]


def _adjacent_five_faces():
    def five_face(g, seq):
        for f, walk in enumerate(g.faces):
            if f != g.outer_face_id and len(walk) == 5 and len(set(walk)) == 5 and set(walk) == set(seq):
                return True
        return False

    def faces_ok(g, b):
        a = [b["u"], b["f1"], b["f2"], b["f3"], b["v"]]
        c = [b["u"], b["g1"], b["g2"], b["g3"], b["v"]]
        if not (five_face(g, a) and five_face(g, c)):
            return False
        ea = {frozenset(e) for e in zip(a, a[1:] + a[:1])}
        ec = {frozenset(e) for e in zip(c, c[1:] + c[:1])}
        return len(ea & ec) == 1 and b["f1"] < b["g1"]

    return [("main", [
        Var("u", ALL, is_internal("u"), is_deg("u", 5)),
        Var("v", N("u"), is_light("v")),
        Var("f1", N("u"), is_light("f1")), Var("f2", N("f1"), is_light("f2")),
        Var("f3", N("f2"), is_light("f3"), adj("f3", "v")),
        Var("g1", N("u"), is_light("g1")), Var("g2", N("g1"), is_light("g2")),
        Var("g3", N("g2"), is_light("g3"), adj("g3", "v"), faces_ok),
    ])]


CSPS = {
    "MinDegree": _min_degree,
    "LightCluster": _light_cluster,
    "LightTriangle334": _light_triangle,
    "TwoPendent": _two_pendent,
    "IncidentPlusPendent": _incident_plus_pendent,
    "TwoIncident344": _two_incident,
    "FiveVertexTwoIncident": _five_two_incident,
    "FiveVertexPendent333": _five_pendent,
    "SixVertexTwoWeak336": _six_vertex,
    "Wheel": _wheel,
    "AntiwheelAllLight": _antiwheel,
    "FiveFaceAllLight": _five_face_all_light,
    "SmallFiveFaceWith4Vertex": _small_five_face,
    "AdjacentFiveFaces": _adjacent_five_faces,
}


def _separating_good_cycles(g: PlaneGraph) -> Set[tuple]:
    G = nx.Graph(list(g.edges))
    out = set()
    for c in nx.simple_cycles(G, length_bound=11):
        if len(c) < 3:
            continue
        cyc = canonical_cycle(c)
        rec = cycle_record(g, cyc)
        if rec.interior and rec.exterior and find_bad_partition(g, cyc) is None:
            out.add(("main", tuple((f"c{i + 1}", v) for i, v in enumerate(cyc))))
    return out


def _cut_vertex(g: PlaneGraph) -> Set[tuple]:
    outer = set(g.faces[g.outer_face_id])
    out = set()
    for v in g.vertices:
        rest = [x for x in g.vertices if x != v]
        comps = _components(g, rest)
        if len(comps) < 2:
            continue
        for comp in comps:
            block = set(comp) | {v}
            if comp & outer:
                continue
            if _biconnected(g, block):
                items = [("v", v)] + [(f"b{i + 1}", x) for i, x in enumerate(sorted(comp))]
                out.add(("main", tuple(items)))
    return out


def _components(g: PlaneGraph, vs: Iterable[int]) -> List[Set[int]]:
    allowed = set(vs)
    seen: Set[int] = set()
    comps = []
    for s in sorted(allowed):
        if s in seen:
            continue
        comp = {s}
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.rotation[x]:
                if y in allowed and y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def _biconnected(g: PlaneGraph, block: Set[int]) -> bool:
    if len(block) == 2:
        a, c = sorted(block)
        return g.adjacent(a, c)
    if len(_components(g, block)) != 1:
        return False
    return all(len(_components(g, block - {x})) == 1 for x in block)


def oracle_matches(g: PlaneGraph, kind: str) -> Set[tuple]:
    """Set of (case_tag, sorted binding items) for one kind."""
    if kind == "SeparatingGoodCycle":
        return {(c, tuple(sorted(items))) for c, items in _separating_good_cycles(g)}
    if kind == "CutVertex":
        return {(c, tuple(sorted(items))) for c, items in _cut_vertex(g)}
    out = set()
    for case, variables in CSPS[kind]():
        for b in solve_csp(g, variables):
            items = tuple(sorted((k, v) for k, v in b.items() if not k.startswith("_")))
            out.add((case, items))
    return out


def detector_matches(g: PlaneGraph, kind: str) -> Set[tuple]:
    from .configurations import detect
    return {(m.case_tag, tuple(sorted(m.binding))) for m in detect(g, kind)}


def compare(g: PlaneGraph, kinds: Optional[Sequence[str]] = None) -> Dict[str, dict]:
    from .configurations import KINDS
    report = {}
    for kind in kinds or KINDS:
        o = oracle_matches(g, kind)
        d = detector_matches(g, kind)
        report[kind] = {
            "oracle": len(o),
            "detector": len(d),
            "missing": sorted(o - d),
            "extra": sorted(d - o),
            "agree": o == d,
        }
    return report


# ---------------------------------------------------------------------------
# bad cycles by exhaustive interior-subgraph search
# ---------------------------------------------------------------------------

_CELL_TABLE = {
    "claw": {(5, 5, 5): "Claw_555", (3, 7, 7): "Claw_377", (5, 5, 7): "Claw_557"},
    "edge": {((3, 3), (7, 7)): "EdgeClaw_3737", ((5, 5), (5, 5)): "EdgeClaw_5555",
             ((3, 3), (7, 8)): "EdgeClaw_3738"},
}


def _shape(n: int, m: int) -> Optional[str]:
    return {(1, 0): "claw", (2, 1): "edge", (3, 2): "path", (5, 5): "pentagon"}.get((n, m))


def _faces_of(g: PlaneGraph, edges: Set[frozenset]) -> List[Tuple[int, ...]]:
    from .plane_graph import trace_rotation
    verts = {x for e in edges for x in e}
    rot = {v: tuple(u for u in g.rotation[v] if frozenset((u, v)) in edges) for v in verts}
    return trace_rotation(rot)


def bad_kinds_bruteforce(g: PlaneGraph, cycle: Sequence[int]) -> Set[str]:
    """Every bad template realised by some subgraph T inside the cycle C.

    T ranges over all connected subgraphs on 1, 2, 3 or 5 interior vertices
    in which every vertex of T has degree exactly 3 in C + T; the cells of
    C + T (its faces inside C) are compared with the template lengths.
    """
    from .cycles import sides_of_cycle
    cyc = tuple(cycle)
    interior, _ = sides_of_cycle(g, cyc)
    on = set(cyc)
    c_edges = {frozenset((cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))}
    found: Set[str] = set()
    inner = sorted(interior)
    for size in (1, 2, 3, 5):
        for X in itertools.combinations(inner, size):
            xs = set(X)
            inside = [frozenset((a, b)) for a, b in itertools.combinations(X, 2) if g.adjacent(a, b)]
            for k in range(len(inside) + 1):
                for E in itertools.combinations(inside, k):
                    shape = _shape(size, k)
                    if shape is None or not _tree_or_cycle_connected(X, E):
                        continue
                    cdeg = {x: sum(1 for e in E if x in e) for x in X}
                    opts = []
                    for x in X:
                        need = 3 - cdeg[x]
                        cn = sorted(u for u in g.rotation[x] if u in on)
                        if need < 0 or len(cn) < need:
                            break
                        opts.append([[frozenset((x, u)) for u in ch] for ch in itertools.combinations(cn, need)])
                    else:
                        for pick in itertools.product(*opts):
                            H = set(c_edges) | set(E) | {e for grp in pick for e in grp}
                            cells = [w for w in _faces_of(g, H) if not (len(w) == len(cyc) and set(w) == on)]
                            kind = _template(shape, X, cells)
                            if kind:
                                found.add(kind)
    return found


def _tree_or_cycle_connected(X: Sequence[int], E: Sequence[frozenset]) -> bool:
    seen = {X[0]}
    stack = [X[0]]
    while stack:
        x = stack.pop()
        for e in E:
            if x in e:
                (y,) = e - {x}
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == len(X)


def _template(shape: str, X: Sequence[int], cells: List[Tuple[int, ...]]) -> Optional[str]:
    lengths = sorted(len(w) for w in cells)
    if shape == "claw":
        return _CELL_TABLE["claw"].get(tuple(lengths)) if len(lengths) == 3 else None
    if shape == "edge":
        if len(cells) != 4:
            return None
        a, b = X
        cross = sorted(len(w) for w in cells if a in w and b in w)
        ends = sorted(len(w) for w in cells if not (a in w and b in w))
        return _CELL_TABLE["edge"].get((tuple(ends), tuple(cross)))
    if shape == "path":
        return "PathClaw_55555" if lengths == [5] * 5 else None
    return "PentagonClaw_55555" if lengths == [5] * 6 else None
