"""Discharging: initial charges, rules R1-R12 as exact rational transfers,
and the audit of conservation, final-charge signs and counting inequalities.

Every transfer amount is a function of the graph structure alone, so the
rules can be applied in any order; the ledger serializes its transfers in
the canonical order (rule, source, target) and is therefore byte-identical
under every permutation of the rules.

Elements are named ``v<id>`` for vertices and ``f<k>`` for faces, where
``f0`` is the exterior face and the bounded faces are numbered 1, 2, ...
in trace order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .plane_graph import PlaneGraph, walk_darts
from .structures import (bounded_faces, contact, is_344, is_444, is_abnormal, is_internal,
                         is_k_face, is_light, is_small_five, is_strong, is_weak, outer_edges,
                         pendencies, tri_degrees, wheels)

F = Fraction
RULES = tuple(f"R{i}" for i in range(1, 13))
RULE_CONSTANTS = frozenset(F(x) for x in (
    1, F(1, 3), F(7, 2), 3, F(8, 3), F(5, 2), 6, F(9, 2), F(10, 3), 5, 4, F(5, 3),
    F(3, 2), F(5, 4), F(1, 6), F(13, 6), F(1, 2)))


class AmbiguousRule(RuntimeError):
    """A structure matches two mutually exclusive rule clauses, or none of
    the clauses a rule assumes to be exhaustive."""


@dataclass(frozen=True)
class RuleOptions:
    r12_split: bool = False  # R12 pendent amount split like R6 instead of a flat 5/3
    r3_ten_thirds: bool = False  # R3 sends 10/3 to a strong (3,5,5)-face
    strict: bool = False  # raise AmbiguousRule instead of recording a finding

    def to_json(self) -> dict:
        return {"r12_split": self.r12_split, "r3_ten_thirds": self.r3_ten_thirds}


# ---------------------------------------------------------------------------
# rationals and element names
# ---------------------------------------------------------------------------

def fmt(q: Fraction) -> str:
    q = F(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    s = str(s).strip().replace("−", "-")
    if not s or any(c in s for c in ".eE"):
        raise ValueError(f"not an exact rational: {s!r}")
    return F(s)


def face_names(g: PlaneGraph) -> Dict[int, str]:
    names = {g.outer_face_id: "f0"}
    for k, f in enumerate(bounded_faces(g), start=1):
        names[f] = f"f{k}"
    return names


def element_order(name: str) -> Tuple[int, int]:
    return (0 if name[0] == "v" else 1, int(name[1:]))


def rule_order(rule: str) -> int:
    return int(rule[1:])


# ---------------------------------------------------------------------------
# the ledger
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Transfer:
    rule: str
    source: str
    target: str
    amount: Fraction

    def sort_key(self) -> tuple:
        return (rule_order(self.rule), element_order(self.source), element_order(self.target), self.amount)

    def to_json(self) -> dict:
        return {"rule": self.rule, "from": self.source, "to": self.target, "amount": fmt(self.amount)}


@dataclass
class ChargeLedger:
    initial: Dict[str, Fraction]
    charge: Dict[str, Fraction]
    transfers: List[Transfer] = field(default_factory=list)
    findings: List[str] = field(default_factory=list)
    options: RuleOptions = RuleOptions()

    @property
    def elements(self) -> List[str]:
        return sorted(self.initial, key=element_order)

    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), F(0))

    def total_final(self) -> Fraction:
        return sum(self.charge.values(), F(0))

    def record(self, t: Transfer) -> None:
        self.transfers.append(t)
        self.charge[t.source] -= t.amount
        self.charge[t.target] += t.amount

    def sorted_transfers(self) -> List[Transfer]:
        return sorted(self.transfers, key=Transfer.sort_key)

    def to_json(self) -> dict:
        by_elem: Dict[str, List[Transfer]] = {e: [] for e in self.initial}
        for t in self.sorted_transfers():
            by_elem[t.source].append(t)
            if t.target != t.source:
                by_elem[t.target].append(t)
        return {
            "options": self.options.to_json(),
            "total_initial": fmt(self.total_initial()),
            "total_final": fmt(self.total_final()),
            "elements": [
                {"element": e, "initial": fmt(self.initial[e]), "final": fmt(self.charge[e]),
                 "transfers": [t.to_json() for t in by_elem[e]]}
                for e in self.elements
            ],
            "findings": sorted(set(self.findings)),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @staticmethod
    def from_json(d: dict) -> "ChargeLedger":
        """Rebuild a ledger from its JSON form; every rational must be exact."""
        initial = {e["element"]: parse_rational(e["initial"]) for e in d["elements"]}
        final = {e["element"]: parse_rational(e["final"]) for e in d["elements"]}
        # every transfer is listed once under its source (and again under
        # its target); repeated identical transfers are legitimate
        transfers = [Transfer(t["rule"], t["from"], t["to"], parse_rational(t["amount"]))
                     for e in d["elements"] for t in e["transfers"] if t["from"] == e["element"]]
        opts = d.get("options", {})
        return ChargeLedger(initial, final, transfers, list(d.get("findings", [])),
                            RuleOptions(bool(opts.get("r12_split")), bool(opts.get("r3_ten_thirds"))))


def load_ledger(path) -> ChargeLedger:
    with open(path, encoding="utf-8") as fh:
        return ChargeLedger.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# initial charges
# ---------------------------------------------------------------------------

def initial_charges(g: PlaneGraph, options: RuleOptions = RuleOptions()) -> ChargeLedger:
    names = face_names(g)
    init: Dict[str, Fraction] = {}
    for v in g.vertices:
        init[f"v{v}"] = F(5 * g.degree(v) - 14)
    for f, name in names.items():
        d = g.face_degree(f)
        init[name] = F(d + 24) if f == g.outer_face_id else F(2 * d - 14)
    return ChargeLedger(init, dict(init), [], [], options)


def expected_total(g: PlaneGraph) -> Fraction:
    """Σ ch = 14(|E| - |V| - |F|) + 38 - d(f0), which is 10 - d(f0) for a
    connected plane graph by Euler's formula."""
    c = len(g.components())
    return F(38 - 28 * c - g.face_degree(g.outer_face_id))


# ---------------------------------------------------------------------------
# structure profiles
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FaceProfile:
    face: str
    degree: int
    vertex_degrees: Tuple[int, ...]
    is_weak: bool
    is_strong: bool
    is_small: bool
    ceiling_class: str  # "none", "sticking", "<i>-ceiling", "other"
    pendent_owners: Tuple[int, ...]

    def to_json(self) -> dict:
        return {"face": self.face, "degree": self.degree, "vertex_degrees": list(self.vertex_degrees),
                "is_weak": self.is_weak, "is_strong": self.is_strong, "is_small": self.is_small,
                "ceiling_class": self.ceiling_class, "pendent_owners": list(self.pendent_owners)}


@dataclass(frozen=True)
class VertexRole:
    vertex: int
    is_abnormal: bool
    wheel_memberships: Tuple[str, ...]

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "is_abnormal": self.is_abnormal,
                "wheel_memberships": list(self.wheel_memberships)}


def face_type(g: PlaneGraph, f: int) -> Tuple[int, ...]:
    """Sorted vertex degrees of a 3-face, e.g. (3, 4, 4)."""
    return tuple(sorted(g.degree(x) for x in g.faces[f]))


def profile_faces(g: PlaneGraph) -> Dict[str, FaceProfile]:
    names = face_names(g)
    owners: Dict[int, List[int]] = {}
    for v in g.vertices:
        for _, f in pendencies(g, v):
            owners.setdefault(f, []).append(v)
    out = {}
    for f in bounded_faces(g):
        tri = is_k_face(g, f, 3)
        out[names[f]] = FaceProfile(
            names[f], g.face_degree(f), tuple(sorted(g.degree(x) for x in g.faces[f])),
            is_weak(g, f), tri and is_strong(g, f), is_small_five(g, f),
            contact(g, f).label(), tuple(sorted(owners.get(f, []))))
    return out


def vertex_roles(g: PlaneGraph) -> Dict[int, VertexRole]:
    member: Dict[int, List[str]] = {v: [] for v in g.vertices}
    names = face_names(g)
    for W in wheels(g):
        label = f"{W.kind}@{names[W.center_face]}"
        for x in (W.u, W.v, W.w):
            if label not in member[x]:
                member[x].append(label)
    return {v: VertexRole(v, any(is_444(g, f) for f in g.faces_at(v)) and is_abnormal(g, v),
                          tuple(member[v])) for v in g.vertices}


# ---------------------------------------------------------------------------
# the rules
# ---------------------------------------------------------------------------

Emit = Callable[[str, str, Fraction], None]


class _Env:
    def __init__(self, g: PlaneGraph, ledger: ChargeLedger):
        self.g = g
        self.names = face_names(g)
        self.ledger = ledger
        self.options = ledger.options

    def V(self, v: int) -> str:
        return f"v{v}"

    def Fc(self, f: int) -> str:
        return self.names[f]

    def finding(self, text: str) -> None:
        if self.options.strict:
            raise AmbiguousRule(text)
        self.ledger.findings.append(text)


def _internal_deg(g: PlaneGraph, v: int, lo: int, hi: Optional[int] = None) -> bool:
    d = g.degree(v)
    return is_internal(g, v) and d >= lo and (hi is None or d <= hi)


def r1(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for v in g.vertices:
        if _internal_deg(g, v, 3, 3):
            for f in g.faces_at(v):
                amt = F(1) if g.face_degree(f) == 3 else F(1, 3)
                yield Transfer("R1", env.V(v), env.Fc(f), amt)


def r2(env: _Env) -> Iterator[Transfer]:
    g = env.g
    table = {(3, 4, 4): F(7, 2), (3, 3, 4): F(3), (4, 4, 4): F(8, 3)}
    for v in g.vertices:
        if _internal_deg(g, v, 4, 4):
            for f in g.faces_at(v):
                if is_k_face(g, f, 3):
                    yield Transfer("R2", env.V(v), env.Fc(f), table.get(face_type(g, f), F(5, 2)))


def r3(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for v in g.vertices:
        if not _internal_deg(g, v, 5, 5):
            continue
        for f in g.faces_at(v):
            if not is_k_face(g, f, 3):
                continue
            t, weak = face_type(g, f), is_weak(g, f)
            if t == (3, 3, 5) and weak:
                amt = F(6)
            elif t == (3, 4, 5):
                amt = F(9, 2)
            elif (t == (3, 5, 5) and weak) or (t == (3, 3, 5) and not weak):
                amt = F(7, 2)
            elif t == (3, 5, 5) and env.options.r3_ten_thirds:
                amt = F(10, 3)
            else:
                amt = F(3)
            yield Transfer("R3", env.V(v), env.Fc(f), amt)


def r4(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for v in g.vertices:
        if not _internal_deg(g, v, 6, 6):
            continue
        for f in g.faces_at(v):
            if not is_k_face(g, f, 3):
                continue
            t = face_type(g, f)
            if t == (3, 3, 6) and is_weak(g, f):
                amt = F(6)
            elif t == (3, 4, 6):
                amt = F(5)
            else:
                amt = F(4)
            yield Transfer("R4", env.V(v), env.Fc(f), amt)


def r5(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for v in g.vertices:
        if _internal_deg(g, v, 7):
            for f in g.faces_at(v):
                if is_k_face(g, f, 3):
                    yield Transfer("R5", env.V(v), env.Fc(f), F(6))


def _pendent_split(g: PlaneGraph, f: int) -> Fraction:
    t = face_type(g, f)
    if t == (3, 3, 3):
        return F(5, 3)
    if t == (3, 3, 4):
        return F(3, 2)
    return F(5, 4)


def r6(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for v in g.vertices:
        if _internal_deg(g, v, 4):
            # one transfer per pendency: a face pendent to v through two
            # different 3-vertices receives the amount twice
            for _, f in pendencies(g, v):
                yield Transfer("R6", env.V(v), env.Fc(f), _pendent_split(g, f))


def r7(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for v in g.vertices:
        if _internal_deg(g, v, 4):
            for f in g.faces_at(v):
                if is_k_face(g, f, 5):
                    amt = F(8, 3) if g.degree(v) >= 5 and is_small_five(g, f) else F(3, 2)
                    yield Transfer("R7", env.V(v), env.Fc(f), amt)


def r8(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for f in bounded_faces(g):
        if not is_444(g, f):
            continue
        walk = g.faces[f]
        for a in walk:
            if is_abnormal(g, a):
                continue
            for b in walk:
                if b != a and is_abnormal(g, b):
                    yield Transfer("R8", env.V(a), env.V(b), F(1, 6))


def r9(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for W in wheels(g):
        if W.kind != "antiwheel":
            continue
        for f in W.faces:
            if is_344(g, f) and is_strong(g, f):
                for x in (W.u, W.v, W.w):
                    yield Transfer("R9", env.Fc(f), env.V(x), F(1, 6))


def r10(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for v in sorted(set(g.outer_walk)):
        if g.degree(v) > 0:
            yield Transfer("R10", "f0", env.V(v), F(3))


def r11(env: _Env) -> Iterator[Transfer]:
    g = env.g
    for v in g.vertices:
        if g.degree(v) != 2:
            continue
        others = [f for f in g.faces_at(v) if f != g.outer_face_id]
        if len(others) == 1:
            yield Transfer("R11", env.Fc(others[0]), env.V(v), F(1))
        else:
            env.finding(f"R11: 2-vertex v{v} has {len(others)} incident faces other than f0")


_R12_CEILING = {
    (3, 1): F(7, 2),
    (5, 1): F(3, 2),
    (5, 2): F(13, 6),
    (7, 2): F(1, 2),
    (7, 3): F(1),
}


def r12(env: _Env) -> Iterator[Transfer]:
    g = env.g
    on_d = set(g.outer_walk)
    for v in sorted(on_d):
        if g.degree(v) < 3:
            continue
        for f in g.faces_at(v):
            if f == g.outer_face_id:
                continue
            d = g.face_degree(f)
            simple = is_k_face(g, f, d)
            c = contact(g, f)
            if simple and c.kind == "sticking" and d in (3, 5):
                yield Transfer("R12", env.V(v), env.Fc(f), F(6) if d == 3 else F(8, 3))
            elif simple and c.kind == "ceiling":
                amt = _R12_CEILING.get((d, c.length))
                if amt is not None and v in (c.path[0], c.path[-1]):
                    yield Transfer("R12", env.V(v), env.Fc(f), amt)
                elif d == 3:
                    env.finding(f"R12: {env.Fc(f)} is a {c.length}-ceiling 3-face")
            elif d == 3 and c.kind == "other":
                env.finding(f"R12: 3-face {env.Fc(f)} meets D in more than a path")
        for _, f in pendencies(g, v):
            amt = _pendent_split(g, f) if env.options.r12_split else F(5, 3)
            yield Transfer("R12", env.V(v), env.Fc(f), amt)


RULE_FUNCS: Dict[str, Callable[[_Env], Iterator[Transfer]]] = {
    "R1": r1, "R2": r2, "R3": r3, "R4": r4, "R5": r5, "R6": r6,
    "R7": r7, "R8": r8, "R9": r9, "R10": r10, "R11": r11, "R12": r12,
}


def apply_rules(g: PlaneGraph, ledger: ChargeLedger, order: Optional[Sequence[str]] = None) -> ChargeLedger:
    """Apply the rules (in `order`, default R1..R12) to a copy of `ledger`.

    Each amount depends only on the structure, never on current charges,
    so the result is the same for every order.
    """
    out = ChargeLedger(dict(ledger.initial), dict(ledger.charge), list(ledger.transfers),
                       list(ledger.findings), ledger.options)
    env = _Env(g, out)
    for rule in order or RULES:
        for t in RULE_FUNCS[rule](env):
            out.record(t)
    return out


def discharge(g: PlaneGraph, options: RuleOptions = RuleOptions(),
              order: Optional[Sequence[str]] = None) -> ChargeLedger:
    return apply_rules(g, initial_charges(g, options), order)


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Counters:
    vertex: int
    internal: bool
    degree: int
    n3: int
    n5: int
    m3: int

    @property
    def zeta(self) -> int:
        return 2 * self.n3 + self.n5 + self.m3

    @property
    def eta(self) -> Fraction:
        return 6 * self.n3 + F(8, 3) * self.n5 + F(5, 3) * self.m3

    @property
    def eq1(self) -> bool:
        return self.zeta <= self.degree

    @property
    def eq2_applies(self) -> bool:
        return self.n5 not in (0, self.degree)

    @property
    def eq2(self) -> bool:
        return not self.eq2_applies or self.zeta <= self.degree - 1


def counters(g: PlaneGraph, v: int) -> Counters:
    n3 = sum(1 for f in g.faces_at(v) if is_k_face(g, f, 3))
    n5 = sum(1 for f in g.faces_at(v) if is_k_face(g, f, 5))
    return Counters(v, is_internal(g, v), g.degree(v), n3, n5, len(pendencies(g, v)))


def ceiling_faces(g: PlaneGraph, v: int) -> List[int]:
    """The bounded faces on the far side of the two D-edges at an external v."""
    d_edges = outer_edges(g)
    out = []
    for u in g.rotation[v]:
        if frozenset((u, v)) in d_edges:
            for f in (g.face_of_dart(v, u), g.face_of_dart(u, v)):
                if f != g.outer_face_id and f not in out:
                    out.append(f)
    return out


def eq3_bound(g: PlaneGraph, v: int) -> Optional[int]:
    """The strengthened bound on ζ(v) for an external 3+-vertex."""
    fs = ceiling_faces(g, v)
    if g.degree(v) < 3 or len(fs) != 2:
        return None
    d1, d2 = sorted(g.face_degree(f) for f in fs)
    if d1 == d2 == 3:
        return g.degree(v)
    if (d1 == 3 and d2 >= 5) or d1 == d2 == 5:
        return g.degree(v) - 1
    return g.degree(v) - 2


def vertex_case(g: PlaneGraph, v: int) -> str:
    """The case of the vertex analysis a vertex falls under."""
    d = g.degree(v)
    if not is_internal(g, v):
        return "vertex/1" if d <= 2 else "vertex/1.1" if d == 3 else "vertex/1.2"
    if d <= 2:
        return "vertex/2.0"
    if d == 3:
        return "vertex/2.1"
    n3 = counters(g, v).n3
    if d == 4:
        return f"vertex/2.2.{min(n3, 2) + 1}"
    if d == 5:
        return f"vertex/2.3.{3 - min(n3, 2)}"
    return "vertex/2.4" if d == 6 else "vertex/2.5"


def face_case(g: PlaneGraph, f: int) -> str:
    """The case of the face analysis a bounded face falls under."""
    d = g.face_degree(f)
    if set(g.faces[f]) & set(g.outer_walk):
        return {3: "face/1.1", 5: "face/1.2", 7: "face/1.3"}.get(d, "face/1.4" if d >= 8 else "face/1.x")
    if d >= 7:
        return "face/2.1"
    return {5: "face/2.2", 3: "face/2.3"}.get(d, "face/2.x")


@dataclass
class AuditReport:
    conservation: dict
    negative: List[dict]
    counters: List[dict]
    exterior_face: dict
    findings: List[str]
    amounts_ok: bool

    @property
    def ok(self) -> bool:
        return self.conservation["exact"] and self.conservation["identity"] and self.amounts_ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "conservation": self.conservation,
            "amounts_in_rule_constants": self.amounts_ok,
            "exterior_face": self.exterior_face,
            "negative": self.negative,
            "counters": self.counters,
            "findings": self.findings,
        }


def audit(g: PlaneGraph, ledger: ChargeLedger, annotate_matches: bool = True) -> AuditReport:
    names = face_names(g)
    by_name = {n: f for f, n in names.items()}
    init, final = ledger.total_initial(), ledger.total_final()
    expected = expected_total(g)
    d0 = g.face_degree(g.outer_face_id)
    conservation = {
        "initial_total": fmt(init),
        "final_total": fmt(final),
        "expected_total": fmt(expected),
        "exact": init == final,
        "identity": init == expected,
    }
    findings = list(sorted(set(ledger.findings)))
    if init != 0:
        findings.append(f"charge sum is {fmt(init)} = 10 - d(f0) with d(f0) = {d0}, not 0")

    matches = []
    negative = []
    neg = [e for e in ledger.elements if ledger.charge[e] < 0]
    if neg and annotate_matches:
        from .configurations import detect_all
        matches = list(enumerate(detect_all(g)))
    for e in neg:
        if e[0] == "v":
            v = int(e[1:])
            case = vertex_case(g, v)
            involved = [i for i, m in matches if v in m.vertices]
        elif e == "f0":
            case = "exterior-face"
            involved = []
        else:
            f = by_name[e]
            case = face_case(g, f)
            fv = set(g.faces[f])
            involved = [i for i, m in matches if fv <= set(m.vertices)]
        negative.append({"element": e, "final": fmt(ledger.charge[e]), "case": case,
                         "matches": [{"id": i, "kind": matches[i][1].kind} for i in involved]})

    rows = []
    for v in g.vertices:
        c = counters(g, v)
        row = {"vertex": v, "internal": c.internal, "degree": c.degree, "n3": c.n3, "n5": c.n5,
               "m3": c.m3, "zeta": c.zeta, "eta": fmt(c.eta)}
        if c.internal:
            row.update({"eq1": c.eq1, "eq2_applies": c.eq2_applies, "eq2": c.eq2})
        else:
            b = eq3_bound(g, v)
            if b is not None:
                row.update({"eq3_bound": b, "eq3": c.zeta <= b})
        rows.append(row)

    f0_final = ledger.charge["f0"]
    bound = F(24 - 2 * d0)
    exterior = {"initial": fmt(ledger.initial["f0"]), "final": fmt(f0_final),
                "bound": fmt(bound), "meets_bound": f0_final >= bound, "positive": f0_final > 0}
    amounts_ok = all(t.amount in RULE_CONSTANTS for t in ledger.transfers)
    return AuditReport(conservation, negative, rows, exterior, findings, amounts_ok)


def run_audit(g: PlaneGraph, options: RuleOptions = RuleOptions()) -> Tuple[ChargeLedger, AuditReport]:
    ledger = discharge(g, options)
    return ledger, audit(g, ledger)
