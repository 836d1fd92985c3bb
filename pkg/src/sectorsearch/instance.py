"""Instance and solution files, synthetic generation, model assembly.

Both file formats are line oriented and canonical: the writer emits
sections and keys in one fixed order with plain integer formatting, so a
save/load round trip reproduces the file byte for byte and golden files
stay stable across platforms.  ``#`` starts a comment when reading.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .constraints import (
    BalancedConstraint,
    BoundedConstraint,
    CompactConstraint,
    ConnectedConstraint,
    NonBorderConstraint,
    StretchSumConstraint,
)
from .engine import Model, SearchConfig
from .errors import FormatError, InputError
from .geometry import Geometry, envelop, grid
from .state import ColourState
from .systematic import brute_force_solve
from .traffic import FlightPlan, dwell_values, validate, visited_path

INSTANCE_MAGIC = "sector-instance 1"
SOLUTION_MAGIC = "sector-solution 1"

CONSTRAINT_KINDS = (
    "connected",
    "compact",
    "balanced",
    "balanced_size",
    "bounded",
    "stretchsum",
    "nonborder",
)


@dataclass
class GridSpec:
    width: int
    height: int
    depth: int = 1
    dim: int = 2
    cell_area: int = 1
    cell_volume: int = 1

    def build(self) -> Geometry:
        return grid(
            self.width,
            self.height,
            self.depth,
            cell_area=self.cell_area,
            cell_volume=self.cell_volume,
            dim=self.dim,
        )


@dataclass
class ConstraintSpec:
    id: str
    kind: str
    weight: int = 1
    params: Dict[str, object] = field(default_factory=dict)


@dataclass
class Instance:
    colours: int
    grid: GridSpec
    workloads: Dict[int, int]
    flights: List[FlightPlan]
    constraints: List[ConstraintSpec]
    search: SearchConfig

    def workload_total(self) -> int:
        return sum(self.workloads.values())

    def validate(self) -> None:
        g = self.grid.build()
        for v in g.vertices:
            if v not in self.workloads:
                raise FormatError("workloads", f"vertex {v} has no workload")
        for v in self.workloads:
            if v not in g.vertices:
                raise FormatError("workloads", f"unknown vertex {v}")
        for i, plan in enumerate(self.flights):
            try:
                validate(plan, g)
            except InputError as exc:
                raise FormatError(f"flight {i}", str(exc)) from exc
        for spec in self.constraints:
            if spec.kind not in CONSTRAINT_KINDS:
                raise FormatError(
                    f"constraint {spec.id}", f"unknown constraint kind {spec.kind!r}"
                )
            flight = spec.params.get("flight")
            if flight is not None and not 0 <= int(flight) < len(self.flights):
                raise FormatError(
                    f"constraint {spec.id}", f"flight {flight} does not exist"
                )

    def build(
        self,
        colours: Optional[Dict[int, int]] = None,
        mode_override: Optional[str] = None,
        weight_overrides: Optional[Dict[str, int]] = None,
    ) -> Model:
        """Assemble the state and all configured constraints into a model."""
        self.validate()
        env = envelop(self.grid.build())
        if colours is not None:
            unknown = sorted(set(colours) - env.vertices)
            if unknown:
                raise FormatError("solution", f"unknown vertices {unknown}")
        state = ColourState(env, self.colours, colours=colours)
        entries = []
        counters: Dict[str, Sequence[int]] = {}
        for spec in self.constraints:
            weight = spec.weight
            if weight_overrides and spec.id in weight_overrides:
                weight = weight_overrides[spec.id]
            p = spec.params
            if spec.kind == "connected":
                mode = mode_override or str(p.get("mode", "exact"))
                constraint = ConnectedConstraint(
                    state,
                    str(p.get("relop", "=")),
                    int(p["counter"]),
                    mode=mode,
                    id=spec.id,
                )
                if "counter_min" in p:
                    counters[spec.id] = tuple(
                        range(int(p["counter_min"]), int(p["counter_max"]) + 1)
                    )
            elif spec.kind == "compact":
                constraint = CompactConstraint(
                    state,
                    int(p["threshold"]),
                    mode=str(p.get("mode", "B")),
                    weight=str(p.get("weight_fn", "identity")),
                    exact_probe=str(p.get("probe", "fast")) == "exact",
                    id=spec.id,
                )
            elif spec.kind == "balanced":
                constraint = BalancedConstraint(
                    state, self.workloads, int(p["delta_scaled"]), id=spec.id
                )
            elif spec.kind == "balanced_size":
                volumes = {v: env.base.volume(v) for v in env.vertices}
                constraint = BalancedConstraint(
                    state, volumes, int(p["delta_scaled"]), id=spec.id
                )
            elif spec.kind == "bounded":
                constraint = BoundedConstraint(
                    state,
                    self.workloads,
                    str(p.get("relop", "<=")),
                    int(p["threshold"]),
                    id=spec.id,
                )
            elif spec.kind == "stretchsum":
                plan = self.flights[int(p["flight"])]
                constraint = StretchSumConstraint(
                    state,
                    visited_path(plan),
                    dwell_values(plan),
                    relop=str(p.get("relop", ">=")),
                    threshold=int(p.get("threshold", 120)),
                    id=spec.id,
                )
            elif spec.kind == "nonborder":
                plan = self.flights[int(p["flight"])]
                constraint = NonBorderConstraint(
                    state, visited_path(plan), id=spec.id
                )
            else:
                raise FormatError(
                    f"constraint {spec.id}", f"unknown constraint kind {spec.kind!r}"
                )
            entries.append((constraint, weight))
        return Model(state, entries, searchable_counters=counters)


def enumerate_solutions(instance: Instance, limit: int = 10) -> List[Dict[int, int]]:
    """Brute-force oracle over a whole instance (small instances only)."""
    return brute_force_solve(instance.build(), limit=limit)


# ---------------------------------------------------------------------------
# serialisation

_SEARCH_KEYS = (
    ("seed", int),
    ("max_iterations", int),
    ("tabu_tenure", int),
    ("restart_after", int),
    ("moves_per_iter", int),
    ("neighbourhood", str),
    ("noise", float),
    ("init", str),
)

_CONSTRAINT_PARAM_ORDER = (
    "relop",
    "counter",
    "counter_min",
    "counter_max",
    "mode",
    "threshold",
    "weight_fn",
    "probe",
    "delta_scaled",
    "flight",
)

_INT_PARAMS = {
    "counter",
    "counter_min",
    "counter_max",
    "threshold",
    "delta_scaled",
    "flight",
}


def save(instance: Instance, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(dumps(instance))


def dumps(instance: Instance) -> str:
    lines = [INSTANCE_MAGIC]
    lines.append("[model]")
    lines.append(f"colours {instance.colours}")
    g = instance.grid
    lines.append("[grid]")
    for key in ("width", "height", "depth", "dim", "cell_area", "cell_volume"):
        lines.append(f"{key} {getattr(g, key)}")
    lines.append("[workloads]")
    for v in sorted(instance.workloads):
        lines.append(f"w {v} {instance.workloads[v]}")
    for i, plan in enumerate(instance.flights):
        lines.append(f"[flight {i}]")
        for v, t_in, t_out in plan.legs:
            lines.append(f"leg {v} {t_in} {t_out}")
    for spec in instance.constraints:
        lines.append(f"[constraint {spec.id}]")
        lines.append(f"kind {spec.kind}")
        lines.append(f"weight {spec.weight}")
        for key in _CONSTRAINT_PARAM_ORDER:
            if key in spec.params:
                lines.append(f"{key} {spec.params[key]}")
    lines.append("[search]")
    cfg = instance.search
    for key, _ in _SEARCH_KEYS:
        lines.append(f"{key} {getattr(cfg, key)}")
    lines.append(f"hard {','.join(cfg.hard) if cfg.hard else '-'}")
    return "\n".join(lines) + "\n"


def load(path: str) -> Instance:
    with open(path, "r", encoding="utf-8") as handle:
        return loads(handle.read(), origin=path)


def loads(text: str, origin: str = "<string>") -> Instance:
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        lines.append(stripped)
    body = [(i + 1, line) for i, line in enumerate(lines) if line]
    if not body or body[0][1] != INSTANCE_MAGIC:
        raise FormatError(f"{origin}:1", f"expected header {INSTANCE_MAGIC!r}")

    colours: Optional[int] = None
    grid_fields: Dict[str, int] = {}
    workloads: Dict[int, int] = {}
    flights: Dict[int, List[Tuple[int, int, int]]] = {}
    constraints: List[ConstraintSpec] = []
    search_fields: Dict[str, object] = {}
    hard: Tuple[str, ...] = ()

    section = None
    section_arg = None
    for lineno, line in body[1:]:
        where = f"{origin}:{lineno}"
        if line.startswith("["):
            if not line.endswith("]"):
                raise FormatError(where, f"malformed section header {line!r}")
            parts = line[1:-1].split()
            section = parts[0]
            section_arg = parts[1] if len(parts) > 1 else None
            if section == "flight":
                if section_arg is None or not section_arg.isdigit():
                    raise FormatError(where, "flight sections need a numeric id")
                flights.setdefault(int(section_arg), [])
            elif section == "constraint":
                if section_arg is None:
                    raise FormatError(where, "constraint sections need an id")
                constraints.append(ConstraintSpec(id=section_arg, kind=""))
            elif section not in ("model", "grid", "workloads", "search"):
                raise FormatError(where, f"unknown section {section!r}")
            continue
        if section is None:
            raise FormatError(where, f"content outside any section: {line!r}")
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if section == "model":
                if key != "colours":
                    raise FormatError(where, f"unknown model key {key!r}")
                colours = int(rest)
            elif section == "grid":
                grid_fields[key] = int(rest)
            elif section == "workloads":
                if key != "w":
                    raise FormatError(where, f"unknown workloads key {key!r}")
                v, value = rest.split()
                workloads[int(v)] = int(value)
            elif section == "flight":
                if key != "leg":
                    raise FormatError(where, f"unknown flight key {key!r}")
                v, t_in, t_out = rest.split()
                flights[int(section_arg)].append((int(v), int(t_in), int(t_out)))
            elif section == "constraint":
                spec = constraints[-1]
                if key == "kind":
                    spec.kind = rest
                elif key == "weight":
                    spec.weight = int(rest)
                elif key in _INT_PARAMS:
                    spec.params[key] = int(rest)
                elif key in _CONSTRAINT_PARAM_ORDER:
                    spec.params[key] = rest
                else:
                    raise FormatError(where, f"unknown constraint key {key!r}")
            elif section == "search":
                if key == "hard":
                    hard = tuple(p for p in rest.split(",") if p and p != "-")
                else:
                    caster = dict(_SEARCH_KEYS).get(key)
                    if caster is None:
                        raise FormatError(where, f"unknown search key {key!r}")
                    search_fields[key] = caster(rest)
        except FormatError:
            raise
        except ValueError as exc:
            raise FormatError(where, f"bad value in {line!r}: {exc}") from exc

    if colours is None:
        raise FormatError(f"{origin}:[model]", "missing colours")
    for required in ("width", "height"):
        if required not in grid_fields:
            raise FormatError(f"{origin}:[grid]", f"missing {required}")
    spec = GridSpec(
        width=grid_fields["width"],
        height=grid_fields["height"],
        depth=grid_fields.get("depth", 1),
        dim=grid_fields.get("dim", 2),
        cell_area=grid_fields.get("cell_area", 1),
        cell_volume=grid_fields.get("cell_volume", 1),
    )
    if sorted(flights) != list(range(len(flights))):
        raise FormatError(
            f"{origin}:[flight]", f"flight ids must be 0..{len(flights) - 1}"
        )
    plans = [FlightPlan(tuple(flights[i])) for i in sorted(flights)]
    for spec_c in constraints:
        if not spec_c.kind:
            raise FormatError(
                f"{origin}:[constraint {spec_c.id}]", "missing kind"
            )
    search = SearchConfig(hard=hard, **search_fields)
    instance = Instance(
        colours=colours,
        grid=spec,
        workloads=workloads,
        flights=plans,
        constraints=constraints,
        search=search,
    )
    instance.validate()
    return instance


def save_solution(colours: Dict[int, int], path: str) -> None:
    lines = [SOLUTION_MAGIC]
    for v in sorted(colours):
        lines.append(f"colour {v} {colours[v]}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def load_solution(path: str) -> Dict[int, int]:
    with open(path, "r", encoding="utf-8") as handle:
        raw_lines = handle.read().splitlines()
    lines = [
        (i + 1, line.split("#", 1)[0].strip())
        for i, line in enumerate(raw_lines)
    ]
    body = [(no, line) for no, line in lines if line]
    if not body or body[0][1] != SOLUTION_MAGIC:
        raise FormatError(f"{path}:1", f"expected header {SOLUTION_MAGIC!r}")
    colours: Dict[int, int] = {}
    for no, line in body[1:]:
        parts = line.split()
        if len(parts) != 3 or parts[0] != "colour":
            raise FormatError(f"{path}:{no}", f"expected 'colour <vertex> <colour>'")
        colours[int(parts[1])] = int(parts[2])
    return colours


# ---------------------------------------------------------------------------
# synthetic generation

def generate(
    seed: int,
    width: int,
    height: int,
    depth: int = 1,
    dim: int = 2,
    colours: int = 4,
    flights: int = 1,
    dwell: Tuple[int, int] = (30, 180),
    workload: Tuple[int, int] = (1, 9),
    balanced_share: float = 0.10,
    with_compact: bool = False,
    with_nonborder: bool = False,
    bounded_threshold: Optional[int] = None,
) -> Instance:
    """Deterministic synthetic instance over a grid.

    Flights are random monotone grid paths (steps only increase
    coordinates), so they are simple and adjacent by construction; the
    balance threshold defaults to a deviation budget of
    ``balanced_share`` of the total workload, in scaled units.
    """
    rng = random.Random(seed)
    g = grid(width, height, depth, dim=dim)
    workloads = {v: rng.randint(*workload) for v in sorted(g.vertices)}

    def vid(x: int, y: int, z: int) -> int:
        return x + width * (y + height * z)

    plans: List[FlightPlan] = []
    for _ in range(flights):
        x = rng.randrange(max(width - 1, 1))
        y = rng.randrange(height)
        z = 0
        legs: List[Tuple[int, int, int]] = []
        t = 0
        length = rng.randint(min(width, height), width + height - 1)
        for _ in range(length):
            duration = rng.randint(*dwell)
            legs.append((vid(x, y, z), t, t + duration))
            t += duration
            steps = []
            if x + 1 < width:
                steps.append("x")
            if y + 1 < height:
                steps.append("y")
            if depth > 1 and z + 1 < depth:
                steps.append("z")
            if not steps:
                break
            step = rng.choice(steps)
            if step == "x":
                x += 1
            elif step == "y":
                y += 1
            else:
                z += 1
        plans.append(FlightPlan(tuple(legs)))

    total = sum(workloads.values())
    specs = [
        ConstraintSpec(
            id="connected",
            kind="connected",
            params={"relop": "=", "counter": colours, "mode": "exact"},
        ),
        ConstraintSpec(
            id="balance",
            kind="balanced",
            params={"delta_scaled": round(balanced_share * colours * total)},
        ),
    ]
    for i in range(flights):
        specs.append(
            ConstraintSpec(
                id=f"dwell{i}",
                kind="stretchsum",
                params={"flight": i, "relop": ">=", "threshold": 120},
            )
        )
    if with_nonborder:
        for i in range(flights):
            specs.append(
                ConstraintSpec(id=f"inside{i}", kind="nonborder", params={"flight": i})
            )
    if with_compact:
        # allow the border budget of an even split into stripes
        budget = 2 * (width * height + width + height)
        specs.append(
            ConstraintSpec(
                id="compactness",
                kind="compact",
                params={"mode": "B", "threshold": budget, "weight_fn": "identity"},
            )
        )
    if bounded_threshold is not None:
        specs.append(
            ConstraintSpec(
                id="cap",
                kind="bounded",
                params={"relop": "<=", "threshold": bounded_threshold},
            )
        )
    instance = Instance(
        colours=colours,
        grid=GridSpec(width=width, height=height, depth=depth, dim=dim),
        workloads=workloads,
        flights=plans,
        constraints=specs,
        search=SearchConfig(seed=seed),
    )
    instance.validate()
    return instance
