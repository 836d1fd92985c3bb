"""Search orchestration: weighted constraint registry, probe/commit
protocol, border-move neighbourhood and a tabu min-conflicts loop.

Swap moves are probed as the sequential composition of their two
assignments: probe the first, commit it, probe the second, then roll the
first back.  Every constraint's caches are functions of the state (or, for
the paper-fast connectedness counters, restored exactly by the inverse
assignment), so a rollback leaves the model observably unchanged.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InitError, InputError
from .state import ColourState, grow_regions

#: total violations below this are treated as zero (Compact contributes
#: floats; everything else is integer)
TOLERANCE = 1e-9


@dataclass(frozen=True)
class Move:
    kind: str
    vertex: Optional[int] = None
    colour: Optional[int] = None
    other: Optional[int] = None
    counter_id: Optional[str] = None
    value: Optional[int] = None
    provenance: str = ""

    @classmethod
    def assign(cls, v: int, c: int, provenance: str = "") -> "Move":
        return cls(kind="assign", vertex=v, colour=c, provenance=provenance)

    @classmethod
    def swap(cls, v: int, w: int, provenance: str = "") -> "Move":
        return cls(kind="swap", vertex=v, other=w, provenance=provenance)

    @classmethod
    def counter(cls, constraint_id: str, value: int, provenance: str = "") -> "Move":
        return cls(kind="counter", counter_id=constraint_id, value=value,
                   provenance=provenance)


@dataclass
class SearchConfig:
    max_iterations: int = 20000
    seed: int = 0
    tabu_tenure: int = 8
    restart_after: int = 2000
    moves_per_iter: int = 12
    neighbourhood: str = "border"  # "border" | "full"
    noise: float = 0.08
    hard: Tuple[str, ...] = ()
    init: str = "regions"  # "regions" | "random" | "keep"


@dataclass
class SearchResult:
    colours: Dict[int, int]
    violation: float
    iterations: int
    trace: List[Tuple]
    seed: int


class Model:
    """A colour state plus weighted constraints and searchable counters."""

    def __init__(
        self,
        state: ColourState,
        constraints: Sequence[Tuple],
        searchable_counters: Optional[Dict[str, Sequence[int]]] = None,
    ):
        self.state = state
        self.entries: List[Tuple] = []
        self.by_id: Dict[str, Tuple] = {}
        for constraint, weight in constraints:
            if weight <= 0:
                raise InputError(f"constraint weight must be positive, got {weight}")
            if constraint.id in self.by_id:
                raise InputError(f"duplicate constraint id {constraint.id!r}")
            entry = (constraint, weight)
            self.entries.append(entry)
            self.by_id[constraint.id] = entry
            state.register(constraint)
        self.searchable_counters: Dict[str, Tuple[int, ...]] = {}
        for cid, domain in (searchable_counters or {}).items():
            if cid not in self.by_id:
                raise InputError(f"unknown constraint id {cid!r} for counter domain")
            if not hasattr(self.by_id[cid][0], "probe_counter"):
                raise InputError(f"constraint {cid!r} has no counter variable")
            self.searchable_counters[cid] = tuple(domain)
        self.frozen_counters: set = set()

    # measurement -------------------------------------------------------
    def violations(self) -> Dict[str, float]:
        return {c.id: c.violation() for c, _ in self.entries}

    def total_violation(self) -> float:
        return sum(w * c.violation() for c, w in self.entries)

    def constraint(self, cid: str):
        return self.by_id[cid][0]

    # differentiation ----------------------------------------------------
    def probe_parts(self, move: Move) -> Dict[str, float]:
        """Per-constraint weighted deltas of an assign or counter move."""
        if move.kind == "assign":
            return {
                c.id: w * c.probe_assign(move.vertex, move.colour)
                for c, w in self.entries
            }
        if move.kind == "counter":
            constraint, weight = self.by_id[move.counter_id]
            return {constraint.id: weight * constraint.probe_counter(move.value)}
        raise InputError(f"probe_parts does not handle {move.kind!r} moves")

    def probe(self, move: Move) -> float:
        if move.kind in ("assign", "counter"):
            return sum(self.probe_parts(move).values())
        if move.kind == "swap":
            v, w = move.vertex, move.other
            cv, cw = self.state.colour(v), self.state.colour(w)
            if cv == cw:
                return 0
            first = sum(self.probe_parts(Move.assign(v, cw)).values())
            self.state.assign(v, cw)
            second = sum(self.probe_parts(Move.assign(w, cv)).values())
            self.state.assign(v, cv)  # roll back
            return first + second
        raise InputError(f"unknown move kind {move.kind!r}")

    # incrementality ------------------------------------------------------
    def commit(self, move: Move) -> None:
        if move.kind == "assign":
            self.state.assign(move.vertex, move.colour)
        elif move.kind == "swap":
            cv = self.state.colour(move.vertex)
            cw = self.state.colour(move.other)
            self.state.assign(move.vertex, cw)
            self.state.assign(move.other, cv)
        elif move.kind == "counter":
            if move.counter_id in self.frozen_counters:
                raise InputError(
                    f"counter of hard constraint {move.counter_id!r} is frozen"
                )
            self.constraint(move.counter_id).commit_counter(move.value)
        else:
            raise InputError(f"unknown move kind {move.kind!r}")


def neighbourhood(model: Model, selector: str = "border") -> List[Move]:
    """Candidate moves: border-vertex recolourings plus counter moves.

    Border vertices are those with a differently coloured neighbour; they
    may take an adjacent component's colour or an unused colour.  Vertices
    on the geometry boundary additionally qualify when an unused colour
    exists, which keeps monochrome states escapable.
    """
    state = model.state
    base = state.env.base
    in_use = {state.colour(v) for v in state.env.vertices}
    unused = [c for c in range(1, state.n + 1) if c not in in_use]
    moves: List[Move] = []
    for v in sorted(state.env.vertices):
        cv = state.colour(v)
        if selector == "full":
            cands = [c for c in range(1, state.n + 1) if c != cv]
        else:
            diff = {state.colour(w) for w in base.adjacent(v)} - {cv}
            if diff:
                cands = sorted(diff | set(unused))
            elif unused and state.env.is_border(v):
                cands = list(unused)
            else:
                continue
        for c in cands:
            moves.append(Move.assign(v, c, provenance=selector))
    for cid, domain in model.searchable_counters.items():
        if cid in model.frozen_counters:
            continue
        current = model.constraint(cid).counter_value
        for value in domain:
            if value != current:
                moves.append(Move.counter(cid, value, provenance="counter"))
    return moves


def _candidate_colours(model: Model, v: int, selector: str, unused: List[int]) -> List[int]:
    state = model.state
    cv = state.colour(v)
    if selector == "full":
        return [c for c in range(1, state.n + 1) if c != cv]
    diff = {state.colour(w) for w in state.env.base.adjacent(v)} - {cv}
    cands = diff | set(unused)
    return sorted(cands)


def _initialise(model: Model, cfg: SearchConfig, rng: random.Random) -> None:
    state = model.state
    if cfg.init == "random":
        state.set_all({v: rng.randint(1, state.n) for v in state.env.vertices})
    elif cfg.init == "regions":
        state.set_all(grow_regions(state.env, state.n, rng))
    elif cfg.init != "keep":
        raise InputError(f"unknown init policy {cfg.init!r}")
    for cid in cfg.hard:
        constraint = model.constraint(cid)
        if not hasattr(constraint, "hard_init"):
            raise InitError(f"constraint {cid!r} cannot be made hard")
        constraint.hard_init(rng)
        if cid in model.searchable_counters or hasattr(constraint, "counter_value"):
            model.frozen_counters.add(cid)
    for cid in cfg.hard:
        if model.constraint(cid).violation() != 0:
            raise InitError(f"hard constraints conflict at initialisation ({cid})")


def search(model: Model, cfg: SearchConfig) -> SearchResult:
    """Tabu min-conflicts over the configured neighbourhood.

    The seed fully determines the run.  Returns the best state visited and
    a per-iteration violation trace.
    """
    rng = random.Random(cfg.seed)
    state = model.state
    _initialise(model, cfg, rng)
    hard_ids = set(cfg.hard)

    total = model.total_violation()
    best_total = total
    best_colours = state.snapshot()
    trace: List[Tuple] = [(0, total, tuple(c.violation() for c, _ in model.entries))]
    tabu: Dict[Tuple, int] = {}
    since_best = 0
    vertices = sorted(state.env.vertices)
    iteration = 0

    for iteration in range(1, cfg.max_iterations + 1):
        if total <= TOLERANCE:
            break
        if since_best > cfg.restart_after:
            _initialise(model, cfg, rng)
            tabu.clear()
            since_best = 0
            total = model.total_violation()
            if total < best_total - TOLERANCE:
                best_total = total
                best_colours = state.snapshot()
            trace.append((iteration, total, tuple(c.violation() for c, _ in model.entries)))
            continue

        in_use = {state.colour(v) for v in vertices}
        unused = [c for c in range(1, state.n + 1) if c not in in_use]
        pool = [
            v
            for v in vertices
            if any(w * c.var_violation(v) > 0 for c, w in model.entries)
        ]
        if not pool:
            pool = [
                v
                for v in vertices
                if any(state.colour(w) != state.colour(v)
                       for w in state.env.base.adjacent(v))
            ] or vertices

        focus = rng.choice(pool)
        moves = [Move.assign(focus, c) for c in _candidate_colours(model, focus, cfg.neighbourhood, unused)]
        for _ in range(cfg.moves_per_iter):
            v = rng.choice(vertices)
            cands = _candidate_colours(model, v, cfg.neighbourhood, unused)
            if cands:
                moves.append(Move.assign(v, rng.choice(cands)))
        for cid, domain in model.searchable_counters.items():
            if cid in model.frozen_counters:
                continue
            current = model.constraint(cid).counter_value
            moves.extend(Move.counter(cid, val) for val in domain if val != current)

        evaluated = []
        for move in moves:
            parts = model.probe_parts(move)
            if hard_ids and any(
                abs(parts.get(cid, 0)) > TOLERANCE for cid in hard_ids
            ):
                continue
            evaluated.append((move, sum(parts.values())))
        if not evaluated:
            since_best += 1
            trace.append((iteration, total, tuple(c.violation() for c, _ in model.entries)))
            continue

        if cfg.noise > 0 and rng.random() < cfg.noise:
            move, delta = evaluated[rng.randrange(len(evaluated))]
        else:
            allowed = []
            for move, delta in evaluated:
                key = _tabu_key(model, move)
                if tabu.get(key, 0) >= iteration and total + delta >= best_total - TOLERANCE:
                    continue
                allowed.append((move, delta))
            if not allowed:
                allowed = evaluated
            best_delta = min(d for _, d in allowed)
            ties = [m for m, d in allowed if abs(d - best_delta) <= TOLERANCE]
            move = ties[rng.randrange(len(ties))]

        if move.kind == "assign":
            tabu[("assign", move.vertex, state.colour(move.vertex))] = (
                iteration + cfg.tabu_tenure
            )
        elif move.kind == "counter":
            tabu[("counter", move.counter_id,
                  model.constraint(move.counter_id).counter_value)] = (
                iteration + cfg.tabu_tenure
            )
        model.commit(move)
        total = model.total_violation()
        if hard_ids:
            for cid in hard_ids:
                assert model.constraint(cid).violation() == 0, (
                    f"hard constraint {cid} violated after commit"
                )
        if total < best_total - TOLERANCE:
            best_total = total
            best_colours = state.snapshot()
            since_best = 0
        else:
            since_best += 1
        trace.append((iteration, total, tuple(c.violation() for c, _ in model.entries)))

    return SearchResult(
        colours=best_colours,
        violation=best_total,
        iterations=iteration,
        trace=trace,
        seed=cfg.seed,
    )


def _tabu_key(model: Model, move: Move) -> Tuple:
    if move.kind == "assign":
        return ("assign", move.vertex, move.colour)
    return ("counter", move.counter_id, move.value)
