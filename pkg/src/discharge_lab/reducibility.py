"""apply_surgery, extend_back and exhaustive reducibility certification."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .coloring import Coloring, iter_colorings, solve_with, verify_coloring
from .configurations import (CASES, KINDS, REQUIRED_BRANCHES, ConfigurationMatch, check_kind,
                             detect, plan_for, recipe_for, recolorable)
from .plane_graph import PlaneGraph
from .recipes import ReplayResult, RecipeStuck, replay
from .surgery import RecipeInapplicable, Surgery, apply_plan

EXHAUSTIVE_BOUND = 14


def apply_surgery(g: PlaneGraph, m: ConfigurationMatch) -> Surgery:
    return apply_plan(g, plan_for(g, m))


def start_coloring(s: Surgery, result_col: Mapping[int, int]) -> Coloring:
    return {v: result_col[nv] for v, nv in s.vertex_map.items()}


def extend_back_full(g: PlaneGraph, m: ConfigurationMatch, result_col: Mapping[int, int],
                     surgery: Optional[Surgery] = None, first_choices: Sequence[int] = ()) -> ReplayResult:
    s = surgery or apply_surgery(g, m)
    bad = verify_coloring(s.result, result_col)
    if bad:
        raise ValueError("input coloring is not valid on the reduced graph: " + str(bad[0]))
    return replay(g, start_coloring(s, result_col), recipe_for(g, m), first_choices)


def extend_back(g: PlaneGraph, m: ConfigurationMatch, result_col: Mapping[int, int]) -> Coloring:
    return extend_back_full(g, m, result_col).coloring


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------

@dataclass
class MatchReport:
    match: ConfigurationMatch
    result_vertices: int
    mode: str  # "exhaustive" or "projection"
    colorings: int = 0
    successes: int = 0
    stuck: List[dict] = field(default_factory=list)
    tags: Dict[str, int] = field(default_factory=dict)
    inapplicable: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.inapplicable is None and not self.stuck and self.successes == self.colorings

    def to_json(self) -> dict:
        return {
            "match": self.match.to_json(),
            "result_vertices": self.result_vertices,
            "mode": self.mode,
            "colorings": self.colorings,
            "successes": self.successes,
            "stuck": self.stuck[:3],
            "stuck_count": len(self.stuck),
            "tags": dict(sorted(self.tags.items())),
            "inapplicable": self.inapplicable,
            "ok": self.ok,
        }


def _relevant(g: PlaneGraph, m: ConfigurationMatch, s: Surgery) -> List[int]:
    """Survivors within distance 2 of the configuration: the recipe's
    behaviour and the validity of its output depend only on their colors."""
    seeds = set(s.deletions) | set(recolorable(m, plan_for(g, m)))
    for a, b in s.identifications + s.insertions:
        seeds |= {a, b}
    near = set(seeds)
    frontier = set(seeds)
    for _ in range(2):
        nxt = set()
        for x in frontier:
            nxt |= set(g.rotation[x])
        frontier = nxt - near
        near |= nxt
    return sorted(v for v in near if v not in set(s.deletions))


def _result_colorings(s: Surgery, rel_result: Sequence[int], exhaustive: bool):
    r = s.result
    if exhaustive:
        yield from iter_colorings(r)
        return
    # one representative full coloring per coloring of the relevant vertices
    for part in iter_colorings(r, rel_result):
        full = solve_with(r, part)
        if full is not None:
            yield full


def certify_match(g: PlaneGraph, m: ConfigurationMatch, exhaustive_bound: int = EXHAUSTIVE_BOUND,
                  max_stuck: int = 5) -> MatchReport:
    try:
        s = apply_surgery(g, m)
    except RecipeInapplicable as exc:
        return MatchReport(m, 0, "none", inapplicable=str(exc))
    recipe = recipe_for(g, m)
    rel = _relevant(g, m, s)
    rel_result = sorted({s.vertex_map[v] for v in rel})
    exhaustive = s.result.vertex_count <= exhaustive_bound
    rep = MatchReport(m, s.result.vertex_count, "exhaustive" if exhaustive else "projection")
    memo: Dict[tuple, Tuple[int, ...]] = {}
    for col in _result_colorings(s, rel_result, exhaustive):
        rep.colorings += 1
        key = tuple(col[v] for v in rel_result)
        start = start_coloring(s, col)
        res = None
        if key in memo:
            try:
                res = replay(g, start, recipe, memo[key], budget=1)
            except RecipeStuck:
                res = None
        if res is None:
            try:
                res = replay(g, start, recipe)
            except RecipeStuck as exc:
                if len(rep.stuck) < max_stuck:
                    rep.stuck.append(exc.to_json())
                else:
                    rep.stuck.append({})
                continue
            memo[key] = res.choices
        rep.successes += 1
        for t in res.tags:
            rep.tags[t] = rep.tags.get(t, 0) + 1
    return rep


@dataclass
class KindReport:
    kind: str
    hosts: List[Tuple[str, List[MatchReport]]]
    required: Tuple[str, ...]

    @property
    def covered(self) -> Set[str]:
        seen = set()
        for _, reps in self.hosts:
            for r in reps:
                if r.ok and r.colorings:
                    seen.add(r.match.case_tag)
                    seen |= set(r.tags)
        return seen

    @property
    def missing(self) -> List[str]:
        return [t for t in self.required if t not in self.covered]

    @property
    def matches(self) -> int:
        return sum(len(reps) for _, reps in self.hosts)

    @property
    def ok(self) -> bool:
        return self.matches > 0 and all(r.ok for _, reps in self.hosts for r in reps) and not self.missing

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "ok": self.ok,
            "matches": self.matches,
            "colorings": sum(r.colorings for _, reps in self.hosts for r in reps),
            "successes": sum(r.successes for _, reps in self.hosts for r in reps),
            "stuck": sum(len(r.stuck) for _, reps in self.hosts for r in reps),
            "required_cases": list(self.required),
            "covered": sorted(self.covered),
            "missing": self.missing,
            "hosts": [{"host": name, "matches": [r.to_json() for r in reps]} for name, reps in self.hosts],
        }


def required_tags(kind: str) -> Tuple[str, ...]:
    cases = CASES[kind]
    base = () if cases == ("main",) else cases
    return tuple(base) + tuple(t for t in REQUIRED_BRANCHES[kind] if t not in base)


def _certify_host(args) -> Tuple[str, List[MatchReport]]:
    kind, name, g, max_matches = args
    matches = detect(g, kind)
    if max_matches is not None:
        matches = _spread(matches, max_matches)
    return name, [certify_match(g, m) for m in matches]


def _spread(matches: List[ConfigurationMatch], k: int) -> List[ConfigurationMatch]:
    """At most k matches, keeping at least one per case tag."""
    out, seen = [], set()
    for m in matches:
        if m.case_tag not in seen:
            seen.add(m.case_tag)
            out.append(m)
    for m in matches:
        if len(out) >= k:
            break
        if m not in out:
            out.append(m)
    return sorted(out, key=lambda m: m.key())


def thread_count() -> int:
    raw = os.environ.get("DISCHARGE_LAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return max(1, min(8, os.cpu_count() or 1))


def verify_reducibility(kind: str, hosts: Sequence[Tuple[str, PlaneGraph]],
                        max_matches: Optional[int] = 4, workers: Optional[int] = None) -> KindReport:
    check_kind(kind)
    jobs = [(kind, name, g, max_matches) for name, g in hosts]
    workers = workers or thread_count()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as ex:
            results = list(ex.map(_certify_host, jobs))
    else:
        results = [_certify_host(j) for j in jobs]
    return KindReport(kind, results, required_tags(kind))
