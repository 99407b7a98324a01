"""(1,0,0)-colorings: verification, search, super-extension and enumeration.

Color 1 may induce a matching; colors 2 and 3 must be independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from .plane_graph import PlaneGraph, walk_darts

Coloring = Dict[int, int]
COLORS = (1, 2, 3)
DEFAULT_ENUM_BOUND = 14


class BoundaryNotCycle(ValueError):
    pass


class InvalidPrecoloring(ValueError):
    pass


class SizeBound(ValueError):
    pass


class ColoringParseError(ValueError):
    def __init__(self, message: str, path: str = "<string>", line: int = 0):
        super().__init__(f"{path}:{line}: {message}")
        self.path, self.line = path, line


@dataclass(frozen=True)
class Violation:
    rule: str  # "one_degree" or "monochromatic"
    vertex: Optional[int]
    edges: Tuple[Tuple[int, int], ...]
    color: int

    def to_json(self) -> dict:
        return {"rule": self.rule, "vertex": self.vertex,
                "edges": [list(e) for e in self.edges], "color": self.color}

    def __str__(self) -> str:
        if self.rule == "one_degree":
            return f"vertex {self.vertex} has {len(self.edges)} neighbours of color 1"
        (a, b), = self.edges
        return f"edge {a}-{b} is monochromatic in color {self.color}"


@dataclass(frozen=True)
class ExtensionWitness:
    coloring: Coloring
    respects_boundary: bool

    def to_json(self) -> dict:
        return {"coloring": {str(v): c for v, c in sorted(self.coloring.items())},
                "respects_boundary": self.respects_boundary}


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

def _check_total(g: PlaneGraph, col: Mapping[int, int], vertices) -> None:
    for v in vertices:
        if v not in col:
            raise ValueError(f"vertex {v} is uncolored")
        if col[v] not in COLORS:
            raise ValueError(f"vertex {v} has color {col[v]} outside 1..3")


def violations_on(g: PlaneGraph, col: Mapping[int, int], vertices) -> List[Violation]:
    """Violations of the induced subgraph on `vertices`."""
    vs = set(vertices)
    out: List[Violation] = []
    for v in sorted(vs):
        if col[v] == 1:
            ones = [u for u in sorted(g.rotation[v]) if u in vs and col[u] == 1]
            if len(ones) > 1:
                out.append(Violation("one_degree", v, tuple((v, u) for u in ones), 1))
    for a, b in g.edges:
        if a in vs and b in vs and col[a] == col[b] and col[a] != 1:
            out.append(Violation("monochromatic", None, ((a, b),), col[a]))
    return out


def verify_coloring(g: PlaneGraph, col: Mapping[int, int]) -> List[Violation]:
    _check_total(g, col, g.vertices)
    return violations_on(g, col, g.vertices)


def is_valid(g: PlaneGraph, col: Mapping[int, int]) -> bool:
    return not verify_coloring(g, col)


# ---------------------------------------------------------------------------
# backtracking search
# ---------------------------------------------------------------------------

class _Search:
    """MRV backtracking with per-vertex color-1 defect counters."""

    def __init__(self, g: PlaneGraph, fixed: Mapping[int, int],
                 forbid: Mapping[int, Set[int]], free: Sequence[int]):
        self.g = g
        self.col: Dict[int, int] = dict(fixed)
        self.forbid = forbid
        self.free = list(free)
        self.ones = {v: 0 for v in g.vertices}
        for v, c in self.col.items():
            if c == 1:
                for u in g.rotation[v]:
                    self.ones[u] += 1

    def allowed(self, v: int) -> List[int]:
        g, col = self.g, self.col
        bad = set(self.forbid.get(v, ()))
        out = []
        for c in COLORS:
            if c in bad:
                continue
            if c == 1:
                if self.ones[v] > 1:
                    continue
                if any(col.get(u) == 1 and self.ones[u] > 0 for u in g.rotation[v]):
                    continue
            elif any(col.get(u) == c for u in g.rotation[v]):
                continue
            out.append(c)
        return out

    def _assign(self, v: int, c: int) -> None:
        self.col[v] = c
        if c == 1:
            for u in self.g.rotation[v]:
                self.ones[u] += 1

    def _unassign(self, v: int) -> None:
        if self.col.pop(v) == 1:
            for u in self.g.rotation[v]:
                self.ones[u] -= 1

    def run(self) -> Optional[Coloring]:
        pending = [v for v in self.free if v not in self.col]
        if not pending:
            return dict(self.col)
        best, best_opts = None, None
        for v in pending:
            opts = self.allowed(v)
            key = (len(opts), -self.g.degree(v), v)
            if best is None or key < best:
                best, best_opts = key, (v, opts)
            if not opts:
                return None
        v, opts = best_opts
        for c in opts:
            self._assign(v, c)
            res = self.run()
            if res is not None:
                return res
            self._unassign(v)
        return None


def solve(g: PlaneGraph) -> Optional[Coloring]:
    return _Search(g, {}, {}, list(g.vertices)).run()


def solve_with(g: PlaneGraph, fixed: Mapping[int, int],
               forbid: Optional[Mapping[int, Set[int]]] = None) -> Optional[Coloring]:
    """Complete a partial coloring (assumed valid on its own support)."""
    return _Search(g, fixed, forbid or {}, list(g.vertices)).run()


# ---------------------------------------------------------------------------
# super-extension
# ---------------------------------------------------------------------------

def boundary_cycle(g: PlaneGraph) -> Tuple[int, ...]:
    walk = g.outer_walk
    if len(walk) < 3 or len(set(walk)) != len(walk):
        raise BoundaryNotCycle(f"outer boundary {list(walk)} is not a cycle")
    return walk


def check_precoloring(g: PlaneGraph, pre: Mapping[int, int]) -> Tuple[int, ...]:
    D = boundary_cycle(g)
    if set(pre) != set(D):
        raise InvalidPrecoloring("precoloring must be defined exactly on the outer cycle")
    if any(c not in COLORS for c in pre.values()):
        raise InvalidPrecoloring("colors must be 1, 2 or 3")
    bad = violations_on(g, pre, D)
    if bad:
        raise InvalidPrecoloring("; ".join(str(b) for b in bad))
    return D


def super_extend(g: PlaneGraph, pre: Mapping[int, int]) -> Optional[ExtensionWitness]:
    D = check_precoloring(g, pre)
    on = set(D)
    forbid = {v: {pre[u] for u in g.rotation[v] if u in on}
              for v in g.vertices if v not in on}
    res = _Search(g, pre, forbid, [v for v in g.vertices if v not in on]).run()
    if res is None:
        return None
    respects = all(res[a] != res[b] for a in D for b in g.rotation[a] if b not in on)
    return ExtensionWitness(res, respects)


def boundary_precolorings(g: PlaneGraph) -> Iterator[Coloring]:
    """All valid (1,0,0)-colorings of G[V(D)] for the outer cycle D."""
    D = boundary_cycle(g)
    yield from iter_colorings(g, D)


# ---------------------------------------------------------------------------
# exhaustive enumeration (oracle)
# ---------------------------------------------------------------------------

def iter_colorings(g: PlaneGraph, vertices: Optional[Sequence[int]] = None) -> Iterator[Coloring]:
    """Valid colorings of G[vertices] in lexicographic order of (c(v1), c(v2), ...).

    Plain ordered backtracking that checks each completed prefix against
    the definition; it yields exactly the members of {1,2,3}^V that pass
    verify_coloring, without sharing code with the solver.
    """
    order = sorted(vertices) if vertices is not None else list(g.vertices)
    idx = {v: i for i, v in enumerate(order)}
    earlier = [[u for u in g.rotation[v] if u in idx and idx[u] < i] for i, v in enumerate(order)]
    nbrs = [[u for u in g.rotation[v] if u in idx] for v in order]
    col: Dict[int, int] = {}

    def ok(i: int, v: int, c: int) -> bool:
        for u in earlier[i]:
            if col[u] == c and c != 1:
                return False
        if c == 1:
            ones = [u for u in earlier[i] if col[u] == 1]
            if len(ones) > 1:
                return False
            for u in ones:
                # u's already-decided 1-neighbours, plus v
                if sum(1 for w in nbrs[idx[u]] if w in col and col[w] == 1) >= 1:
                    return False
        return True

    def rec(i: int):
        if i == len(order):
            yield dict(col)
            return
        v = order[i]
        for c in COLORS:
            if ok(i, v, c):
                col[v] = c
                yield from rec(i + 1)
                del col[v]

    yield from rec(0)


def enumerate_all(g: PlaneGraph, bound: int = DEFAULT_ENUM_BOUND) -> List[Coloring]:
    if g.vertex_count > bound:
        raise SizeBound(f"{g.vertex_count} vertices exceed the enumeration bound {bound}")
    return list(iter_colorings(g))


def has_coloring_bruteforce(g: PlaneGraph, bound: int = DEFAULT_ENUM_BOUND) -> bool:
    if g.vertex_count > bound:
        raise SizeBound(f"{g.vertex_count} vertices exceed the enumeration bound {bound}")
    return next(iter_colorings(g), None) is not None


def swap_23(col: Mapping[int, int]) -> Coloring:
    return {v: {1: 1, 2: 3, 3: 2}[c] for v, c in col.items()}


# ---------------------------------------------------------------------------
# file format: `col <v> <c>`
# ---------------------------------------------------------------------------

def parse_coloring(text: str, path: str = "<string>") -> Coloring:
    out: Coloring = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3 or parts[0] != "col":
            raise ColoringParseError("expected `col <v> <c>`", path, lineno)
        try:
            v, c = int(parts[1]), int(parts[2])
        except ValueError:
            raise ColoringParseError("vertex and color must be integers", path, lineno) from None
        if c not in COLORS:
            raise ColoringParseError(f"color {c} outside 1..3", path, lineno)
        if v in out:
            raise ColoringParseError(f"vertex {v} colored twice", path, lineno)
        out[v] = c
    return out


def load_coloring(path) -> Coloring:
    return parse_coloring(Path(path).read_text(), str(path))


def format_coloring(col: Mapping[int, int]) -> str:
    return "".join(f"col {v} {c}\n" for v, c in sorted(col.items()))
