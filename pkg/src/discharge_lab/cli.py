"""Command-line entry point: ``discharge-lab <subcommand> ...``.

Every subcommand prints deterministic JSON (``dot`` prints DOT).  Exit
codes: 0 when the requested object was found or the check passed, 2 when
it does not exist or the check failed, 1 on malformed input, with a
one-line diagnostic naming the file and line on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__

OK, NONE, INPUT_ERROR = 0, 2, 1


class InputError(Exception):
    """Malformed input; the message is the one-line diagnostic."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=False, ensure_ascii=True)


def _emit(obj, out) -> None:
    out.write(_dump(obj) + "\n")


def _pretty(obj, out) -> None:
    out.write(json.dumps(obj, indent=2, ensure_ascii=True) + "\n")


# ---------------------------------------------------------------------------
# loading inputs
# ---------------------------------------------------------------------------

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="ascii")
    except FileNotFoundError:
        raise InputError(f"{path}:0: no such file") from None
    except UnicodeDecodeError as exc:
        line = Path(path).read_bytes()[:exc.start].count(b"\n") + 1
        raise InputError(f"{path}:{line}: non-ASCII byte") from None
    except OSError as exc:
        raise InputError(f"{path}:0: {exc.strerror}") from None


def load_graph(path: str):
    from .plane_graph import PLGParseError, parse_plg
    try:
        return parse_plg(_read_text(path), path)
    except PLGParseError as exc:
        raise InputError(str(exc)) from None


def load_precoloring(path: str):
    from .coloring import ColoringParseError, parse_coloring
    try:
        return parse_coloring(_read_text(path), path)
    except ColoringParseError as exc:
        raise InputError(str(exc)) from None


def _cycle_arg(g, path: str, text: str):
    from .cycles import NotACycle, _check_cycle
    try:
        vs = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise InputError(f"{path}:0: --cycle expects comma-separated vertex ids, got {text!r}") from None
    try:
        return _check_cycle(g, vs)
    except (NotACycle, ValueError) as exc:
        raise InputError(f"{path}:0: {exc}") from None


def _manifest(path: str):
    from .corpus import ManifestError, load_manifest
    try:
        return load_manifest(path)
    except ManifestError as exc:
        raise InputError(str(exc)) from None


def _options(args):
    from .discharging import RuleOptions
    return RuleOptions(r12_split=args.r12_split, r3_ten_thirds=args.r3_ten_thirds, strict=args.strict)


def _order(args) -> Optional[List[str]]:
    from .discharging import RULES
    if not args.order:
        return None
    order = [r.strip().upper() for r in args.order.split(",") if r.strip()]
    if sorted(order) != sorted(RULES) or len(order) != len(RULES):
        raise InputError(f"--order must be a permutation of {','.join(RULES)}")
    return order


def _match(g, path: str, ident: int):
    from .configurations import detect_all
    matches = detect_all(g)
    if not 0 <= ident < len(matches):
        raise InputError(f"{path}:0: no match with id {ident} ({len(matches)} matches)")
    return matches[ident]


# ---------------------------------------------------------------------------
# cycle reports
# ---------------------------------------------------------------------------

def cycle_json(g, cyc, with_record: bool = False) -> dict:
    from .cycles import classify_cycle, cycle_record
    c = classify_cycle(g, cyc, allow_long=True)
    out = {"vertices": list(cyc), "length": len(cyc), "verdict": c.verdict,
           "kind": c.partition.kind if c.partition else None,
           "cells": ([{"vertices": list(w), "length": k} for w, k in c.partition.cells]
                     if c.partition else [])}
    if c.partition:
        out["core"] = list(c.partition.core)
        out["attachments"] = [list(a) for a in c.partition.attachments]
    if with_record:
        rec = cycle_record(g, cyc)
        out["chords"] = [list(ch) for ch in rec.chords]
        out["interior"] = sorted(rec.interior)
        out["exterior"] = sorted(rec.exterior)
        out["separating"] = rec.is_separating
    return out


def _cycles_of(g, args):
    from .plane_graph import simple_cycles
    if getattr(args, "cycle", None):
        return [_cycle_arg(g, args.graph, args.cycle)]
    return simple_cycles(g, args.max_len)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_validate(args, out) -> int:
    from .plane_graph import validate_class_G
    rep = validate_class_G(load_graph(args.graph))
    _pretty(rep.to_json(), out)
    return OK if rep.verdict else NONE


def cmd_faces(args, out) -> int:
    from .discharging import face_names
    g = load_graph(args.graph)
    names = face_names(g)
    faces = sorted(names, key=lambda f: int(names[f][1:]))
    _pretty({"outer_face": "f0",
             "faces": [{"face": names[f], "length": g.face_degree(f), "vertices": list(g.faces[f])}
                       for f in faces]}, out)
    return OK


def cmd_cycles(args, out) -> int:
    g = load_graph(args.graph)
    for c in _cycles_of(g, args):
        _emit(cycle_json(g, c, with_record=True), out)
    return OK


def cmd_classify(args, out) -> int:
    g = load_graph(args.graph)
    if args.cycle:
        c = _cycles_of(g, args)[0]
        if len(c) > args.max_len:
            raise InputError(f"{args.graph}:0: cycle of length {len(c)} exceeds --max-len {args.max_len}")
        rep = cycle_json(g, c)
        _emit(rep, out)
        return OK
    for c in _cycles_of(g, args):
        _emit(cycle_json(g, c), out)
    return OK


def cmd_remark1(args, out) -> int:
    from .cycles import check_remark1
    g = load_graph(args.graph)
    status = OK
    for c in _cycles_of(g, args):
        rep = cycle_json(g, c)
        if rep["verdict"] == "bad":
            r = check_remark1(g, c)
            rep["remark1"] = r.to_json()
            if not r.passed:
                status = NONE
        elif not args.cycle:
            continue
        else:
            rep["remark1"] = None
        _emit(rep, out)
    return status


def cmd_configs(args, out) -> int:
    from .configurations import UnknownKind, detect_all
    g = load_graph(args.graph)
    try:
        matches = detect_all(g, [args.kind] if args.kind else None)
    except UnknownKind as exc:
        raise InputError(f"--kind: {exc}") from None
    if args.kind:
        # ids always refer to positions in the full detect_all list
        every = detect_all(g)
        ids = [every.index(m) for m in matches]
    else:
        ids = list(range(len(matches)))
    for i, m in zip(ids, matches):
        _emit({"id": i, **m.to_json(), "vertices": list(m.vertices)}, out)
    return OK


def cmd_reduce(args, out) -> int:
    from .reducibility import apply_surgery
    from .surgery import RecipeInapplicable, validate_surgery
    g = load_graph(args.graph)
    m = _match(g, args.graph, args.match)
    try:
        s = apply_surgery(g, m)
    except RecipeInapplicable as exc:
        _pretty({"id": args.match, "match": m.to_json(), "inapplicable": str(exc)}, out)
        return NONE
    v = validate_surgery(g, s, triangular_mode=args.triangular_mode)
    plg = s.result.to_plg()
    if args.out:
        Path(args.out).write_text(plg, encoding="ascii")
    _pretty({"id": args.match, "match": m.to_json(), "surgery": s.to_json(),
             "validity": v.to_json(), "plg": plg}, out)
    return OK


def cmd_certify(args, out) -> int:
    from .configurations import UnknownKind, check_kind
    from .reducibility import thread_count, verify_reducibility
    try:
        kind = check_kind(args.kind)
    except UnknownKind as exc:
        raise InputError(f"--kind: {exc}") from None
    man = _manifest(args.corpus)
    entries = [e for e in man.entries if e.host_for == kind]
    if args.all_entries:
        entries += [e for e in man.entries if kind in e.kinds and e not in entries]
    hosts = [(e.path, man.load_graph(e)) for e in entries]
    if not hosts:
        _pretty({"kind": kind, "ok": False, "matches": 0, "hosts": [], "missing": ["no host in corpus"]}, out)
        return NONE
    rep = verify_reducibility(kind, hosts, max_matches=args.max_matches, workers=thread_count())
    _pretty(rep.to_json(), out)
    return OK if rep.ok else NONE


def cmd_color(args, out) -> int:
    from .coloring import format_coloring, solve
    g = load_graph(args.graph)
    col = solve(g)
    if col is not None and args.out:
        Path(args.out).write_text(format_coloring(col), encoding="ascii")
    _pretty({"coloring": None if col is None else {str(v): c for v, c in sorted(col.items())}}, out)
    return OK if col is not None else NONE


def cmd_extend(args, out) -> int:
    from .coloring import BoundaryNotCycle, InvalidPrecoloring, super_extend
    g = load_graph(args.graph)
    pre = load_precoloring(args.precoloring)
    try:
        w = super_extend(g, pre)
    except BoundaryNotCycle as exc:
        raise InputError(f"{args.graph}:0: {exc}") from None
    except InvalidPrecoloring as exc:
        raise InputError(f"{args.precoloring}:0: {exc}") from None
    _pretty({"extension": None if w is None else w.to_json()}, out)
    return OK if w is not None else NONE


def cmd_oracle(args, out) -> int:
    from .coloring import enumerate_all, solve, verify_coloring
    from .oracle import compare
    if args.graphs:
        items = [(p, None) for p in args.graphs]
    else:
        man = _manifest(args.corpus)
        items = [(str(man.resolve(e.path)), e.path) for e in man.entries]
    checked = disagreements = 0
    for path, label in items:
        g = load_graph(path)
        if g.vertex_count > args.max_n:
            continue
        checked += 1
        s = solve(g)
        every = enumerate_all(g, bound=max(args.max_n, g.vertex_count))
        agree = (s is None) == (not every) and (s is None or not verify_coloring(g, s))
        row = {"graph": label or path, "vertices": g.vertex_count, "colorable": bool(every),
               "colorings": len(every), "solver_agrees": agree}
        if args.configs:
            cmp = compare(g)
            row["configs_agree"] = all(c["agree"] for c in cmp.values())
            row["config_mismatches"] = {k: {"missing": c["missing"], "extra": c["extra"]}
                                        for k, c in cmp.items() if not c["agree"]}
            agree = agree and row["configs_agree"]
        disagreements += not agree
        _emit(row, out)
    _emit({"checked": checked, "disagreements": disagreements}, out)
    return OK if disagreements == 0 else NONE


def cmd_discharge(args, out) -> int:
    from .discharging import AmbiguousRule, discharge
    g = load_graph(args.graph)
    try:
        ledger = discharge(g, _options(args), _order(args))
    except AmbiguousRule as exc:
        _pretty({"ambiguous": str(exc)}, out)
        return NONE
    out.write(ledger.dumps())
    return OK


def cmd_audit(args, out) -> int:
    from .discharging import AmbiguousRule, audit, discharge
    g = load_graph(args.graph)
    try:
        ledger = discharge(g, _options(args), _order(args))
    except AmbiguousRule as exc:
        _pretty({"ambiguous": str(exc)}, out)
        return NONE
    rep = audit(g, ledger)
    _pretty(rep.to_json(), out)
    return OK if rep.ok else NONE


def cmd_corpus_run(args, out) -> int:
    from .acceptance import run_corpus, summary_lines
    from .reducibility import thread_count
    man = _manifest(args.corpus)
    report = run_corpus(None, workers=thread_count(), hosts=not args.skip_certify, manifest=man)
    _pretty(report, out)
    for line in summary_lines(report):
        print(line, file=sys.stderr)
    return OK if report["pass"] else NONE


def cmd_dot(args, out) -> int:
    from .coloring import solve
    from .configurations import detect_all
    from .cycles import find_bad_partition
    from .dot import emit_dot, match_highlight, partition_highlight
    g = load_graph(args.graph)
    col = None
    if args.coloring:
        col = load_precoloring(args.coloring)
        unknown = [v for v in col if not 1 <= v <= g.vertex_count]
        if unknown:
            raise InputError(f"{args.coloring}:0: vertex {unknown[0]} is not in {args.graph}")
    elif args.solve:
        col = solve(g)
    highlights = []
    if args.match:
        every = detect_all(g)
        for i in args.match:
            if not 0 <= i < len(every):
                raise InputError(f"{args.graph}:0: no match with id {i} ({len(every)} matches)")
            highlights.append(match_highlight(every[i], i))
    if args.bad_cycle:
        c = _cycle_arg(g, args.graph, args.bad_cycle)
        bp = find_bad_partition(g, c)
        if bp is not None:
            highlights.append(partition_highlight(bp))
    out.write(emit_dot(g, col, highlights, name=Path(args.graph).stem))
    return OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _discharge_flags(p) -> None:
    p.add_argument("--r12-split", action="store_true",
                   help="split R12's pendent charge like R6 instead of a flat 5/3")
    p.add_argument("--r3-ten-thirds", action="store_true",
                   help="let R3 send 10/3 to a strong (3,5,5)-face")
    p.add_argument("--strict", action="store_true",
                   help="fail on an ambiguous rule application instead of recording a finding")
    p.add_argument("--order", help="comma-separated rule order (the ledger must not depend on it)")


def build_parser() -> argparse.ArgumentParser:
    from .corpus import default_corpus_dir
    from .cycles import CLASSIFY_MAX_LEN
    from .surgery import TRIANGULAR_MODES

    ap = _Parser(prog="discharge-lab",
                 description="Plane-graph toolkit for (1,0,0)-colorings of planar graphs "
                             "without 4- and 6-cycles.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    corpus_default = str(default_corpus_dir())

    def graph_cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_, description=help_)
        p.add_argument("graph", help="PLG file")
        p.set_defaults(fn=fn)
        return p

    graph_cmd("validate", cmd_validate, "check class-G membership (exit 2 if not in the class)")
    graph_cmd("faces", cmd_faces, "list the faces of the embedding")
    for name, fn, help_ in (("cycles", cmd_cycles, "list cycles with chords and sides"),
                            ("classify", cmd_classify, "classify cycles as good or bad"),
                            ("remark1", cmd_remark1, "audit the structure inside bad cycles")):
        p = graph_cmd(name, fn, help_)
        p.add_argument("--cycle", help="comma-separated vertices of one cycle")
        p.add_argument("--max-len", type=int, default=CLASSIFY_MAX_LEN)
    p = graph_cmd("configs", cmd_configs, "list configuration matches")
    p.add_argument("--kind")
    p = graph_cmd("reduce", cmd_reduce, "apply the surgery for one match")
    p.add_argument("--match", type=int, required=True, help="match id as listed by configs")
    p.add_argument("--out", help="also write the reduced graph as PLG")
    p.add_argument("--triangular-mode", choices=TRIANGULAR_MODES, default=TRIANGULAR_MODES[0])

    p = sub.add_parser("certify", help="certify reducibility of one kind over the corpus hosts")
    p.add_argument("--kind", required=True)
    p.add_argument("--corpus", default=corpus_default)
    p.add_argument("--max-matches", type=int, default=None)
    p.add_argument("--all-entries", action="store_true",
                   help="also use every corpus entry in which the kind is detected")
    p.set_defaults(fn=cmd_certify)

    p = graph_cmd("color", cmd_color, "find a (1,0,0)-coloring")
    p.add_argument("--out", help="also write the coloring in `col v c` format")
    p = graph_cmd("extend", cmd_extend, "super-extend a precoloring of the outer cycle")
    p.add_argument("--precoloring", required=True)

    p = sub.add_parser("oracle", help="compare the solver with exhaustive enumeration")
    p.add_argument("graphs", nargs="*", help="PLG files (default: the corpus)")
    p.add_argument("--max-n", type=int, default=12)
    p.add_argument("--corpus", default=corpus_default)
    p.add_argument("--configs", action="store_true",
                   help="also compare configuration detectors with their brute-force oracles")
    p.set_defaults(fn=cmd_oracle)

    p = graph_cmd("discharge", cmd_discharge, "run the discharging rules and print the ledger")
    _discharge_flags(p)
    p = graph_cmd("audit", cmd_audit, "discharge and audit the ledger")
    _discharge_flags(p)

    p = sub.add_parser("corpus-run", help="check the acceptance criteria over a corpus")
    p.add_argument("corpus", nargs="?", default=corpus_default)
    p.add_argument("--skip-certify", action="store_true", help="skip reducibility certification")
    p.set_defaults(fn=cmd_corpus_run)

    p = graph_cmd("dot", cmd_dot, "draw the graph in Graphviz DOT")
    p.add_argument("--coloring", help="coloring file (`col v c` lines)")
    p.add_argument("--solve", action="store_true", help="color with the solver")
    p.add_argument("--match", type=int, action="append", help="highlight a match id (repeatable)")
    p.add_argument("--bad-cycle", help="highlight the bad partition of this cycle")
    return ap


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command == "oracle" and args.max_n < 1:
            raise InputError("--max-n must be positive")
        return args.fn(args, out)
    except InputError as exc:
        print(f"discharge-lab: error: {exc}", file=sys.stderr)
        return INPUT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        code = run(argv)
        sys.stdout.flush()
        return code
    except BrokenPipeError:
        # the reader went away (e.g. `| head`); silence the final flush
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return OK


if __name__ == "__main__":
    raise SystemExit(main())
