"""Replay engine for coloring-extension recipes.

A recipe is straight-line Python code that colors the deleted part of a
graph step by step ("3-color v", "(1,0,0)-color u", "give v the color of
w", ...).  Whenever a step has several admissible colors the engine makes
a choice; if a later step finds no admissible color, or the final coloring
is invalid, the run is replayed with the next choice vector.  Only when
every choice vector fails is a RecipeStuck raised, carrying the state of
the most advanced attempt.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .coloring import COLORS, Coloring, verify_coloring
from .plane_graph import PlaneGraph

DEFAULT_REPLAY_BUDGET = 20000


class RecipeStuck(RuntimeError):
    """A recipe step claimed to succeed but no choice of colors made it work."""

    def __init__(self, message: str, state: Optional[dict] = None):
        super().__init__(message)
        self.state = state or {}

    def to_json(self) -> dict:
        return {"message": str(self), "state": self.state}


class _Dead(Exception):
    def __init__(self, step: str):
        super().__init__(step)
        self.step = step


class Ctx:
    """Mutable coloring state seen by a recipe during one replay."""

    def __init__(self, g: PlaneGraph, col: Mapping[int, int], choices: List[int]):
        self.g = g
        self.col: Dict[int, int] = dict(col)
        self._choices = choices
        self._arity: List[int] = []
        self.tags: List[str] = []
        self.trace: List[str] = []

    # -- nondeterminism ----------------------------------------------------

    def _choose(self, options: Sequence[int], step: str) -> int:
        if not options:
            raise _Dead(step)
        k = len(self._arity)
        if k >= len(self._choices):
            self._choices.append(0)
        self._arity.append(len(options))
        return options[self._choices[k]]

    # -- queries -------------------------------------------------------------

    def c(self, v: int) -> Optional[int]:
        return self.col.get(v)

    def three_options(self, v: int, ignore: Iterable[int] = ()) -> List[int]:
        ign = set(ignore)
        used = {self.col[u] for u in self.g.rotation[v] if u in self.col and u not in ign}
        return [c for c in COLORS if c not in used]

    def one00_options(self, v: int) -> List[int]:
        opts = self.three_options(v)
        if 1 not in opts:
            ones = [u for u in self.g.rotation[v] if self.col.get(u) == 1]
            if len(ones) == 1:
                u = ones[0]
                if not any(self.col.get(w) == 1 for w in self.g.rotation[u] if w != v):
                    opts = sorted(opts + [1])
        return opts

    def can_three_color(self, v: int, ignore: Iterable[int] = ()) -> bool:
        return bool(self.three_options(v, ignore))

    # -- steps -----------------------------------------------------------------

    def three_color(self, *vs: int, ignore: Iterable[int] = ()) -> None:
        for v in vs:
            c = self._choose(self.three_options(v, ignore), f"3-color {v}")
            self.col[v] = c
            self.trace.append(f"3-color {v} -> {c}")

    def one00_color(self, *vs: int) -> None:
        for v in vs:
            c = self._choose(self.one00_options(v), f"(1,0,0)-color {v}")
            self.col[v] = c
            self.trace.append(f"(1,0,0)-color {v} -> {c}")

    def assign(self, v: int, c: int) -> None:
        self.col[v] = c
        self.trace.append(f"assign {v} := {c}")

    def uncolor(self, *vs: int) -> None:
        for v in vs:
            self.col.pop(v, None)
            self.trace.append(f"uncolor {v}")

    def swap(self, a: int, b: int) -> None:
        self.col[a], self.col[b] = self.col[b], self.col[a]
        self.trace.append(f"swap {a} <-> {b}")

    def claim(self, ok: bool, what: str) -> None:
        if not ok:
            raise _Dead(f"claim failed: {what}")

    def tag(self, name: str) -> None:
        if name not in self.tags:
            self.tags.append(name)


@dataclass
class ReplayResult:
    coloring: Coloring
    tags: Tuple[str, ...]
    choices: Tuple[int, ...]
    attempts: int
    trace: Tuple[str, ...] = ()


Recipe = Callable[[Ctx], None]


def _advance(choices: List[int], arity: List[int]) -> bool:
    """Odometer step over the choice points reached in the last run."""
    del choices[len(arity):]
    for k in range(len(arity) - 1, -1, -1):
        if choices[k] + 1 < arity[k]:
            choices[k] += 1
            del choices[k + 1:]
            return True
    return False


def replay(g: PlaneGraph, start: Mapping[int, int], recipe: Recipe,
           first_choices: Sequence[int] = (), budget: int = DEFAULT_REPLAY_BUDGET) -> ReplayResult:
    """Run `recipe` from the partial coloring `start` until it produces a
    valid (1,0,0)-coloring of g, exploring choice vectors in order."""
    choices = list(first_choices)
    attempts = 0
    deepest: Tuple[int, dict] = (-1, {})
    while True:
        attempts += 1
        ctx = Ctx(g, start, choices)
        failure = None
        try:
            recipe(ctx)
            missing = [v for v in g.vertices if v not in ctx.col]
            if missing:
                failure = f"recipe left {missing} uncolored"
            else:
                bad = verify_coloring(g, ctx.col)
                if not bad:
                    return ReplayResult(dict(ctx.col), tuple(ctx.tags), tuple(choices[:len(ctx._arity)]),
                                        attempts, tuple(ctx.trace))
                failure = "final coloring invalid: " + "; ".join(str(b) for b in bad)
        except _Dead as dead:
            failure = dead.step
        if len(ctx.trace) > deepest[0]:
            deepest = (len(ctx.trace), {
                "failure": failure,
                "trace": list(ctx.trace),
                "tags": list(ctx.tags),
                "coloring": {str(v): c for v, c in sorted(ctx.col.items())},
                "start": {str(v): c for v, c in sorted(start.items())},
            })
        if attempts >= budget or not _advance(choices, ctx._arity):
            state = dict(deepest[1])
            state["attempts"] = attempts
            raise RecipeStuck(f"no choice sequence completes the recipe ({state.get('failure')})", state)
