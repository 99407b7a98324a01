"""Acceptance checks over the corpus, shared by ``corpus-run`` and the tests.

Every manifest entry is checked independently (`check_entry`), host graphs
are additionally certified (`check_host`), and `aggregate` folds the
per-entry results into one pass/fail verdict per acceptance criterion.
Times are summed per criterion over entries, so they do not depend on how
many workers ran the entries.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from .corpus import CorpusEntry, CorpusManifest, load_manifest

CRITERIA = {
    1: "solve agrees with exhaustive enumeration on >= 200 graphs with <= 12 vertices",
    2: "solve finds a coloring of >= 100 class-G graphs with <= 20 vertices",
    3: "every precoloring of a good outer cycle of length <= 9 super-extends",
    4: "find_bad_partition agrees with brute force on graphs with <= 14 vertices; bad cycles have length 9, 10 or 11",
    5: "every result coloring extends back and every required branch is covered",
    6: "charge is conserved and the initial total is 10 - d(f0)",
    7: "2 n3 + n5 + m3 <= d(v), strictly when 0 < n5 < d(v), at internal vertices",
    8: "ledgers are byte-equal under 10 permutations of the rule order",
    9: "golden ledgers reproduce byte for byte",
}
MIN_COUNT = {1: 200, 2: 100, 3: 1, 4: 1, 6: 1, 7: 1, 8: 1}
TIME_LIMIT = {1: 60.0, 2: 120.0, 3: 300.0, 5: 600.0}
REQUIRED_GOLDEN = ("basic/k3.plg", "basic/claw_host.plg", "hosts/small_five_face.plg", "hosts/antiwheel.plg")
PERMUTATIONS = 10
MAX_FAILURES_SHOWN = 5


def _part() -> dict:
    return {"checked": 0, "failures": [], "seconds": 0.0}


def check_entry(root: str, entry: CorpusEntry) -> dict:
    """Criteria 1-4 and 6-9 plus the manifest's own claims for one entry."""
    from .coloring import (BoundaryNotCycle, boundary_cycle, boundary_precolorings, enumerate_all,
                           solve, super_extend, verify_coloring)
    from .configurations import KINDS, detect_all
    from .cycles import find_bad_partition, is_good_cycle
    from .discharging import RULES, audit, discharge, expected_total
    from .oracle import bad_kinds_bruteforce
    from .plane_graph import simple_cycles, validate_class_G

    man = CorpusManifest(Path(root))
    g = man.load_graph(entry)
    n = g.vertex_count
    out: Dict[str, dict] = {}

    def part(key: str) -> dict:
        return out.setdefault(key, _part())

    t = time.perf_counter()
    p = part("manifest")
    p["checked"] = 1
    verdict = validate_class_G(g).verdict
    if verdict != entry.class_G:
        p["failures"].append(f"{entry.path}: class-G verdict {verdict}, manifest says {entry.class_G}")
    found = {m.kind for m in detect_all(g)}
    kinds = [k for k in KINDS if k in found]
    if tuple(kinds) != tuple(entry.kinds):
        p["failures"].append(f"{entry.path}: detected kinds {kinds}, manifest says {list(entry.kinds)}")
    p["seconds"] = time.perf_counter() - t

    if n <= 12:
        t = time.perf_counter()
        p = part("1")
        p["checked"] = 1
        s, every = solve(g), enumerate_all(g)
        if (s is None) != (not every):
            p["failures"].append(f"{entry.path}: solve found {'none' if s is None else 'one'}, "
                                 f"enumeration found {len(every)}")
        elif s is not None and verify_coloring(g, s):
            p["failures"].append(f"{entry.path}: solve returned an invalid coloring")
        p["seconds"] = time.perf_counter() - t

    if entry.class_G and n <= 20:
        t = time.perf_counter()
        p = part("2")
        p["checked"] = 1
        s = solve(g)
        if s is None or verify_coloring(g, s):
            p["failures"].append(f"{entry.path}: no valid coloring found")
        p["seconds"] = time.perf_counter() - t

    if entry.class_G:
        t = time.perf_counter()
        try:
            D = boundary_cycle(g)
        except BoundaryNotCycle:
            D = None
        if D is not None and len(D) <= 9 and is_good_cycle(g, D):
            p = part("3")
            p["checked"] = 1
            for pre in boundary_precolorings(g):
                w = super_extend(g, pre)
                if w is None or not w.respects_boundary:
                    p["failures"].append(f"{entry.path}: precoloring {sorted(pre.items())} does not super-extend")
                    break
            p["seconds"] = time.perf_counter() - t

    if n <= 14:
        t = time.perf_counter()
        p = part("4")
        for c in simple_cycles(g, 11):
            p["checked"] += 1
            bp = find_bad_partition(g, c)
            brute = bad_kinds_bruteforce(g, c)
            if (bp is None) != (not brute) or (bp is not None and bp.kind not in brute):
                p["failures"].append(f"{entry.path}: cycle {list(c)} partition "
                                     f"{bp.kind if bp else None}, brute force {sorted(brute)}")
            if bp is not None and len(c) not in (9, 10, 11):
                p["failures"].append(f"{entry.path}: bad cycle {list(c)} of length {len(c)}")
        p["seconds"] = time.perf_counter() - t

    t = time.perf_counter()
    ledger = discharge(g)
    text = ledger.dumps()
    p = part("6")
    p["checked"] = 1
    init, final = ledger.total_initial(), ledger.total_final()
    d0 = g.face_degree(g.outer_face_id)
    if init != final:
        p["failures"].append(f"{entry.path}: initial total {init} but final total {final}")
    if init != expected_total(g) or (g.is_connected() and init != 10 - d0):
        p["failures"].append(f"{entry.path}: initial total {init}, d(f0) = {d0}")
    p["seconds"] = time.perf_counter() - t

    if entry.class_G:
        t = time.perf_counter()
        p = part("7")
        for row in audit(g, ledger, annotate_matches=False).counters:
            if not row["internal"]:
                continue
            p["checked"] += 1
            if not (row["eq1"] and row["eq2"]):
                p["failures"].append(f"{entry.path}: vertex {row['vertex']} has degree {row['degree']}, "
                                     f"n3={row['n3']} n5={row['n5']} m3={row['m3']}")
        p["seconds"] = time.perf_counter() - t

    t = time.perf_counter()
    p = part("8")
    p["checked"] = 1
    rng = random.Random(entry.path)
    for _ in range(PERMUTATIONS):
        order = list(RULES)
        rng.shuffle(order)
        if discharge(g, order=order).dumps() != text:
            p["failures"].append(f"{entry.path}: ledger differs under order {','.join(order)}")
            break
    p["seconds"] = time.perf_counter() - t

    if entry.golden:
        t = time.perf_counter()
        p = part("9")
        p["checked"] = 1
        p["golden"] = [entry.path]
        want = man.resolve(entry.golden).read_bytes()
        if text.encode("utf-8") != want:
            p["failures"].append(f"{entry.path}: ledger differs from {entry.golden}")
        p["seconds"] = time.perf_counter() - t
    return out


def check_host(root: str, entry: CorpusEntry) -> dict:
    """Criterion 5 for one host graph: certify every match of its kind."""
    from .reducibility import verify_reducibility

    t = time.perf_counter()
    g = CorpusManifest(Path(root)).load_graph(entry)
    rep = verify_reducibility(entry.host_for, [(entry.path, g)], max_matches=None, workers=1)
    p = _part()
    p["checked"] = rep.matches
    p["kind"] = entry.host_for
    p["covered"] = sorted(rep.covered)
    p["required"] = list(rep.required)
    p["colorings"] = sum(r.colorings for _, reps in rep.hosts for r in reps)
    p["successes"] = sum(r.successes for _, reps in rep.hosts for r in reps)
    for _, reps in rep.hosts:
        for r in reps:
            if not r.ok:
                why = r.inapplicable or f"{len(r.stuck)} of {r.colorings} colorings stuck"
                p["failures"].append(f"{entry.path}: {r.match.kind} {r.match.case_tag} "
                                     f"{dict(r.match.binding)}: {why}")
    if rep.matches == 0:
        p["failures"].append(f"{entry.path}: no {entry.host_for} match")
    p["seconds"] = time.perf_counter() - t
    return {"5": p}


def _job(args):
    fn, root, entry = args
    return fn(root, entry)


def run_jobs(man: CorpusManifest, workers: int = 1, hosts: bool = True) -> List[dict]:
    root = str(man.root)
    jobs = [(check_entry, root, e) for e in man.entries]
    if hosts:
        jobs += [(check_host, root, e) for e in man.entries if e.host_for]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_job, jobs, chunksize=4))
    return [_job(j) for j in jobs]


def aggregate(parts: Sequence[dict]) -> dict:
    from .configurations import KINDS

    merged: Dict[str, dict] = {}
    for res in parts:
        for key, p in res.items():
            m = merged.setdefault(key, {"checked": 0, "failures": [], "seconds": 0.0,
                                        "entries": 0, "golden": [], "kinds": {}})
            m["checked"] += p["checked"]
            m["entries"] += 1 if p["checked"] else 0
            m["failures"].extend(p["failures"])
            m["seconds"] += p["seconds"]
            m["golden"].extend(p.get("golden", []))
            if "kind" in p:
                k = m["kinds"].setdefault(p["kind"], {"covered": set(), "required": p["required"],
                                                      "colorings": 0, "successes": 0})
                k["covered"] |= set(p["covered"])
                k["colorings"] += p["colorings"]
                k["successes"] += p["successes"]

    criteria = []
    for num, text in CRITERIA.items():
        m = merged.get(str(num), {"checked": 0, "failures": [], "seconds": 0.0, "entries": 0,
                                  "golden": [], "kinds": {}})
        problems = list(m["failures"])
        unit = "cycles" if num == 4 else "vertices" if num == 7 else "matches" if num == 5 else "graphs"
        if m["checked"] < MIN_COUNT.get(num, 0):
            problems.append(f"only {m['checked']} {unit} checked, need {MIN_COUNT[num]}")
        limit = TIME_LIMIT.get(num)
        if limit is not None and m["seconds"] > limit:
            problems.append(f"took {m['seconds']:.1f}s, limit {limit:.0f}s")
        detail = {}
        if num == 5:
            kinds = {}
            for kind in KINDS:
                k = m["kinds"].get(kind)
                if k is None:
                    problems.append(f"no host for {kind}")
                    continue
                missing = [t for t in k["required"] if t not in k["covered"]]
                if missing:
                    problems.append(f"{kind}: branches {missing} not covered")
                kinds[kind] = {"colorings": k["colorings"], "successes": k["successes"],
                               "covered": sorted(k["covered"]), "missing": missing}
            detail["kinds"] = kinds
        if num == 9:
            for path in REQUIRED_GOLDEN:
                if path not in m["golden"]:
                    problems.append(f"no golden ledger for {path}")
            detail["golden"] = sorted(m["golden"])
        row = {"criterion": num, "description": text, "pass": not problems,
               "checked": m["checked"], "entries": m["entries"], "seconds": round(m["seconds"], 1),
               "failure_count": len(problems), "failures": problems[:MAX_FAILURES_SHOWN]}
        row.update(detail)
        criteria.append(row)

    mf = merged.get("manifest", {"checked": 0, "failures": []})
    manifest = {"pass": not mf["failures"], "entries": mf["checked"],
                "failure_count": len(mf["failures"]), "failures": mf["failures"][:MAX_FAILURES_SHOWN]}
    return {"pass": manifest["pass"] and all(c["pass"] for c in criteria),
            "manifest": manifest, "criteria": criteria}


def run_corpus(path, workers: int = 1, hosts: bool = True,
               manifest: Optional[CorpusManifest] = None) -> dict:
    man = manifest or load_manifest(path)
    return aggregate(run_jobs(man, workers, hosts))


def summary_lines(report: dict) -> List[str]:
    lines = []
    for c in report["criteria"]:
        status = "PASS" if c["pass"] else "FAIL"
        line = f"criterion {c['criterion']}: {status} ({c['checked']} checked, {c['seconds']}s) {c['description']}"
        if not c["pass"]:
            line += " -- " + "; ".join(c["failures"][:2])
        lines.append(line)
    return lines
