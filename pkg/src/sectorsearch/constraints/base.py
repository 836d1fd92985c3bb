"""Protocol shared by all constraint objects.

A constraint owns incremental caches over one :class:`ColourState`.  The
caches are initialised from the state at construction time and kept in
sync through the commit hooks, which the state invokes for every change
once the constraint is registered.  Probes never mutate anything.
"""

from __future__ import annotations

from ..state import ColourState


class Constraint:
    id: str = "constraint"

    def __init__(self, state: ColourState):
        self.state = state

    # measurement -------------------------------------------------------
    def violation(self):
        """Non-negative measure; zero iff the constraint is satisfied."""
        raise NotImplementedError

    def var_violation(self, v: int):
        """How much a suitable change of vertex ``v`` may help."""
        raise NotImplementedError

    def check(self) -> bool:
        """Semantics of the constraint on the current state, cache-free."""
        raise NotImplementedError

    # differentiation ----------------------------------------------------
    def probe_assign(self, v: int, colour: int):
        """Violation delta of the move ``colour(v) := colour``."""
        raise NotImplementedError

    # incrementality ------------------------------------------------------
    def commit_assign(self, v: int, old: int, new: int) -> None:
        """Hook called by the state after ``colour(v)`` changed."""
        raise NotImplementedError

    def rebuild(self) -> None:
        """Recompute every cache from the current state."""
        raise NotImplementedError
