"""Connectedness: component counting per colour plus a counter relation.

The constraint holds when the total number of same-colour connected
components relates to the counter and no colour is fragmented.  Two
probing/updating modes exist:

* ``exact`` (default): probes and commits recount the two touched colour
  classes, so deltas and caches are correct under arbitrary moves,
  including articulation splits and multi-component merges.
* ``paper-fast``: the literal constant-per-neighbour estimate.  It tests
  only whether the moved vertex starts or ends a component among its
  neighbours, so it miscounts splits and merges; the engine keeps it for
  cheap probing and for measuring how often the estimate diverges.
"""

from __future__ import annotations

import random
from typing import Dict, Optional, Set

from ..errors import InitError, InputError
from ..relation import check_relop, holds
from ..state import ColourState, class_component_count, class_components, grow_regions
from .base import Constraint

MODES = ("exact", "paper-fast")


def connected_check(state: ColourState, relop: str, n_val: int) -> bool:
    """Cache-free semantics: component count relates to ``n_val`` and every
    colour has at most one component."""
    counts: Dict[int, int] = {}
    base = state.env.base
    members: Dict[int, Set[int]] = {}
    for v in state.env.vertices:
        members.setdefault(state.colour(v), set()).add(v)
    for c, vs in members.items():
        counts[c] = len(class_components(base, vs))
    total = sum(counts.values())
    return holds(relop, total, n_val) and all(k <= 1 for k in counts.values())


class ConnectedConstraint(Constraint):
    def __init__(
        self,
        state: ColourState,
        relop: str,
        counter: int,
        mode: str = "exact",
        id: str = "connected",
    ):
        super().__init__(state)
        self.relop = check_relop(relop)
        self.counter_value = int(counter)
        if mode not in MODES:
            raise InputError(f"unknown mode {mode!r}, expected one of {MODES}")
        self.mode = mode
        self.id = id
        self.rebuild()

    def rebuild(self) -> None:
        base = self.state.env.base
        self.members: Dict[int, Set[int]] = {c: set() for c in range(1, self.state.n + 1)}
        for v in self.state.env.vertices:
            self.members[self.state.colour(v)].add(v)
        self.ncc_by_colour: Dict[int, int] = {
            c: len(class_components(base, vs)) for c, vs in self.members.items()
        }
        self.ncc: int = sum(self.ncc_by_colour.values())
        self._excess: int = sum(max(k - 1, 0) for k in self.ncc_by_colour.values())

    # measurement -------------------------------------------------------
    def violation(self) -> int:
        return self.var_violation_counter() + self._excess

    def var_violation_counter(self) -> int:
        return 1 - int(holds(self.relop, self.ncc, self.counter_value))

    def var_violation_colour(self, v: int) -> int:
        return self.ncc_by_colour[self.state.colour(v)] - 1

    def var_violation(self, v: int) -> int:
        return self.var_violation_colour(v)

    def check(self, n_val: Optional[int] = None) -> bool:
        if n_val is None:
            n_val = self.counter_value
        return connected_check(self.state, self.relop, n_val)

    # differentiation ----------------------------------------------------
    def _fast_pm(self, v: int, new: int, old: int):
        neighbours = self.state.env.base.adjacent(v)
        p = int(all(self.state.colour(w) != new for w in neighbours))
        m = int(all(self.state.colour(w) != old for w in neighbours))
        return p, m

    def probe_assign(self, v: int, colour: int) -> int:
        d = self.state.colour(v)
        if colour == d:
            return 0
        if self.mode == "paper-fast":
            p, m = self._fast_pm(v, colour, d)
            return (
                p
                - m
                + int(holds(self.relop, self.ncc, self.counter_value))
                - int(holds(self.relop, self.ncc + p - m, self.counter_value))
            )
        base = self.state.env.base
        k_old = self.ncc_by_colour[d]
        k_new = self.ncc_by_colour[colour]
        k_old2 = class_component_count(base, self.members[d], drop=v)
        k_new2 = class_component_count(base, self.members[colour], add=v)
        ncc2 = self.ncc - k_old - k_new + k_old2 + k_new2
        d_counter = int(holds(self.relop, self.ncc, self.counter_value)) - int(
            holds(self.relop, ncc2, self.counter_value)
        )
        d_excess = (
            max(k_old2 - 1, 0)
            + max(k_new2 - 1, 0)
            - max(k_old - 1, 0)
            - max(k_new - 1, 0)
        )
        return d_counter + d_excess

    def probe_counter(self, n_new: int) -> int:
        return int(holds(self.relop, self.ncc, self.counter_value)) - int(
            holds(self.relop, self.ncc, n_new)
        )

    # incrementality ------------------------------------------------------
    def commit_assign(self, v: int, old: int, new: int) -> None:
        if old == new:
            return
        base = self.state.env.base
        self.members[old].discard(v)
        self.members[new].add(v)
        if self.mode == "paper-fast":
            # neighbour colours are unchanged by this move, so the p/m
            # tests still see the pre-move situation
            p, m = self._fast_pm(v, new, old)
            k_old2 = self.ncc_by_colour[old] - m
            k_new2 = self.ncc_by_colour[new] + p
        else:
            k_old2 = class_component_count(base, self.members[old])
            k_new2 = class_component_count(base, self.members[new])
        k_old = self.ncc_by_colour[old]
        k_new = self.ncc_by_colour[new]
        self.ncc += k_old2 + k_new2 - k_old - k_new
        self._excess += (
            max(k_old2 - 1, 0)
            + max(k_new2 - 1, 0)
            - max(k_old - 1, 0)
            - max(k_new - 1, 0)
        )
        self.ncc_by_colour[old] = k_old2
        self.ncc_by_colour[new] = k_new2

    def commit_counter(self, n_new: int) -> None:
        self.counter_value = int(n_new)

    # divergence analysis --------------------------------------------------
    def new_colour_merge_count(self, v: int, colour: int) -> int:
        """How many distinct components of ``colour`` the move would join."""
        base = self.state.env.base
        comps = class_components(base, self.members[colour])
        neighbours = base.adjacent(v)
        return sum(1 for comp in comps if comp & neighbours)

    def old_colour_split_pieces(self, v: int) -> int:
        """How many pieces v's current component falls into without v."""
        base = self.state.env.base
        d = self.state.colour(v)
        comp = next(c for c in class_components(base, self.members[d]) if v in c)
        return class_component_count(base, comp, drop=v)

    # hard mode -------------------------------------------------------------
    def hard_init(self, rng: Optional[random.Random] = None) -> None:
        """Partition the graph into a component count satisfying the
        relation, by seeded region growing; raises when impossible."""
        if rng is None:
            rng = random.Random(0)
        n_vertices = len(self.state.env.vertices)
        limit = min(self.state.n, n_vertices)
        target = None
        for k in range(1, limit + 1):
            if holds(self.relop, k, self.counter_value):
                target = k
                break
        if target is None:
            raise InitError(
                f"no feasible component count in 1..{limit} "
                f"satisfies {self.relop} {self.counter_value}"
            )
        colours = grow_regions(self.state.env, target, rng)
        self.state.set_all(colours)
        self.rebuild()
        if not self.check():
            raise InitError("region growing failed to satisfy the constraint")
