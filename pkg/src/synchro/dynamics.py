"""Admissible dynamics: oracle functions, simulation, invariance checks.

An oracle decides how a cell of each type reacts to any weighted bag of
neighbor states; restricting it to a concrete network gives the admissible
map or vector field. The family shipped here is the homomorphism-coupled
form

    output = g(own state) + sum over inputs of kappa(weight) * h(own, neighbor)

where kappa is additive over the parallel sum and kappa(identity) = 0 --
exactly the conditions under which merging same-state inputs and dropping
zero-weight inputs cannot change the value.

Evaluation first merges the incoming weights of equal-state neighbors in
the exact monoid and only then applies kappa, so cells with equal per-color
sums follow identical floating point paths: discrete trajectories started
synchronized stay synchronized bitwise. ODE integration is classical
fixed-step RK4; exactness claims stop at the monoid algebra, never float
trajectories.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass

import numpy as np

from .balance import _color_types, quotient, row_signature, is_balanced
from .errors import DimensionMismatch, SchemaError, SimulationDiverged, WitnessError
from .monoid import MonoidRegistry, MonoidSpec
from .network import Network
from .partition import Partition, lift

# -- oracle building blocks --------------------------------------------------


@dataclass(frozen=True)
class GFunc:
    """Internal dynamics of one cell type."""

    kind: str = "zero"  # zero | scale | custom
    a: float = 0.0
    fn: object = None

    def __call__(self, x: float) -> float:
        if self.kind == "zero":
            return 0.0
        if self.kind == "scale":
            return self.a * x
        return self.fn(x)  # type: ignore[operator]


@dataclass(frozen=True)
class Coupling:
    """How a neighbor state enters the sum; linear kinds unlock fast paths."""

    kind: str = "neighbor"  # neighbor | diffusive | custom
    fn: object = None

    def __call__(self, x: float, y: float) -> float:
        if self.kind == "neighbor":
            return y
        if self.kind == "diffusive":
            return y - x
        return self.fn(x, y)  # type: ignore[operator]


class Oracle:
    """Evaluation protocol shared by all oracle flavors.

    ``evaluate(type_i, x, inputs)`` receives the merged neighborhood as
    (source type, weight element, source state) triples and returns the
    output of a cell of type ``type_i`` in state ``x``. Oracles with real
    outputs form a vector space; + and scalar * build the sum and scaled
    oracles pointwise.
    """

    def evaluate(self, type_i: int, x: float, inputs) -> float:
        raise NotImplementedError

    def __add__(self, other: "Oracle") -> "Oracle":
        return SumOracle((self, other))

    def __mul__(self, alpha: float) -> "Oracle":
        return ScaledOracle(float(alpha), self)

    __rmul__ = __mul__


@dataclass(frozen=True)
class SumOracle(Oracle):
    parts: tuple[Oracle, ...]

    def evaluate(self, type_i, x, inputs):
        return sum(p.evaluate(type_i, x, inputs) for p in self.parts)


@dataclass(frozen=True)
class ScaledOracle(Oracle):
    alpha: float
    inner: Oracle

    def evaluate(self, type_i, x, inputs):
        return self.alpha * self.inner.evaluate(type_i, x, inputs)


class OracleSpec(Oracle):
    """The homomorphism-coupled family bound to a monoid registry.

    ``g`` maps type index to a GFunc, ``kappa`` maps (target, source) type
    pairs to additive weight maps, ``h`` maps the same pairs to couplings.
    Missing entries default to zero internal dynamics, the natural kappa of
    the registered monoid, and plain neighbor coupling.
    """

    def __init__(self, registry: MonoidRegistry, n_types: int, g=None, kappa=None, h=None):
        self.registry = registry
        self.n_types = n_types
        self._g = dict(g or {})
        self._kappa = dict(kappa or {})
        self._h = dict(h or {})
        self._kappa_cache: dict[tuple[int, int], object] = {}

    def g_for(self, i: int) -> GFunc:
        return self._g.get(i, GFunc("zero"))

    def kappa_for(self, i: int, j: int):
        fn = self._kappa_cache.get((i, j))
        if fn is None:
            fn = self._kappa.get((i, j))
            if fn is None:
                fn = self.registry.require(i, j).default_kappa()
            self._kappa_cache[(i, j)] = fn
        return fn

    def h_for(self, i: int, j: int) -> Coupling:
        return self._h.get((i, j), Coupling("neighbor"))

    def weight_pairs(self):
        """(target type, source type, spec) triples this oracle can see."""
        return [(i, j, spec) for (i, j), spec in self.registry.pairs()]

    def evaluate(self, type_i, x, inputs):
        total = self.g_for(type_i)(x)
        for j, w, y in inputs:
            total += self.kappa_for(type_i, j)(w) * self.h_for(type_i, j)(x, y)
        return total


def coupling_oracle(
    registry: MonoidRegistry,
    n_types: int,
    *,
    kappa_scale: float = 1.0,
    coupling: str = "neighbor",
    self_scale: float = 0.0,
) -> OracleSpec:
    """Uniform oracle: g(x) = self_scale*x, natural kappa times a gain, one coupling kind."""
    g = {i: GFunc("scale", a=self_scale) for i in range(n_types)}
    kappa = {}
    h = {}
    for (i, j), spec in registry.pairs():
        nat = spec.default_kappa()
        kappa[(i, j)] = (lambda f, s: (lambda w: s * f(w)))(nat, kappa_scale)
        h[(i, j)] = Coupling(coupling)
    return OracleSpec(registry, n_types, g=g, kappa=kappa, h=h)


def linear_oracle(net: Network, *, gain: float = 0.5, coupling: str = "neighbor") -> OracleSpec:
    """The canonical linear oracle for a network: decay plus scaled coupling.

    g(x) = -x and the natural kappa is rescaled so the largest absolute row
    sum of coupling gains is ``gain``; that keeps the vector field strictly
    stable and the iterated map inside float range over short horizons.
    """
    rowmax = 0.0
    for c in range(net.n):
        i = net.cell_types[c]
        total = 0.0
        for d, w in net.row_items(c):
            total += abs(net.registry.require(i, net.cell_types[d]).default_kappa()(w))
        rowmax = max(rowmax, total)
    scale = gain / rowmax if math.isfinite(rowmax) and rowmax > 0 else 1.0
    return coupling_oracle(
        net.registry,
        len(net.type_names),
        kappa_scale=scale,
        coupling=coupling,
        self_scale=-1.0,
    )


@dataclass(frozen=True)
class IndicatorOracle(Oracle):
    """Two-valued oracle that fires iff the weight arriving from neighbors
    in one designated state equals a designated parallel sum.

    This is the constructive witness: for an unbalanced coloring there is a
    state on its polydiagonal that this oracle maps off the polydiagonal.
    """

    target_type: int
    source_type: int
    spec: MonoidSpec
    target_state: float
    target_sum: object
    y_hit: float = 1.0
    y_miss: float = 0.0

    def evaluate(self, type_i, x, inputs):
        if type_i != self.target_type:
            return self.y_miss
        total = self.spec.identity
        for j, w, y in inputs:
            if j == self.source_type and y == self.target_state:
                total = self.spec.combine(total, w)
        return self.y_hit if total == self.target_sum else self.y_miss


# -- admissible evaluation ---------------------------------------------------


def _merged_inputs(net: Network, c: int, x) -> list:
    """Merge same-type same-state inputs of one cell in the exact monoid."""
    i = net.cell_types[c]
    groups: dict[tuple[int, float], object] = {}
    for d, w in net.row_items(c):
        j = net.cell_types[d]
        key = (j, x[d])
        if key in groups:
            groups[key] = net.registry.require(i, j).combine(groups[key], w)
        else:
            groups[key] = w
    return [(j, groups[(j, s)], s) for (j, s) in sorted(groups)]


def admissible_eval(net: Network, oracle: Oracle, x) -> list[float]:
    """Evaluate the network restriction of an oracle at a state vector.

    Same-state inputs are merged in the monoid before kappa is applied, so
    two cells with equal per-color sums evaluate through identical float
    operations.
    """
    x = [float(v) for v in x]
    if len(x) != net.n:
        raise DimensionMismatch(f"state has {len(x)} entries, network has {net.n} cells")
    return [
        oracle.evaluate(net.cell_types[c], x[c], _merged_inputs(net, c, x))
        for c in range(net.n)
    ]


# -- consistency fuzzing -----------------------------------------------------


@dataclass(frozen=True)
class ConsistencyViolation:
    law: str  # merge | zero_removal
    type_pair: tuple[int, int]
    raw_inputs: tuple
    reduced_inputs: tuple
    raw_value: float
    reduced_value: float


@dataclass(frozen=True)
class ConsistencyReport:
    trials: int
    skipped: int
    violations: tuple[ConsistencyViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _close(a: float, b: float, rtol: float = 1e-9) -> bool:
    if a == b:
        return True
    if not (math.isfinite(a) and math.isfinite(b)):
        return False
    return abs(a - b) <= rtol * max(1.0, abs(a), abs(b))


def oracle_consistency_check(
    oracle: Oracle,
    trials: int = 1000,
    rng: random.Random | None = None,
    pairs=None,
) -> ConsistencyReport:
    """Fuzz the two self-consistency rules every oracle must obey.

    Random neighborhoods with deliberately repeated states are evaluated
    raw and with the repeats merged through the monoid; both must agree.
    Inserting zero-weight inputs must change nothing either. Trials whose
    outputs are non-finite carry no information and are skipped.
    """
    rng = rng or random.Random(0)
    if pairs is None:
        pairs = oracle.weight_pairs()  # type: ignore[attr-defined]
    violations: list[ConsistencyViolation] = []
    skipped = 0
    for _ in range(trials):
        i, j, spec = pairs[rng.randrange(len(pairs))]
        x_self = rng.uniform(-3, 3)
        states = [rng.uniform(-3, 3) for _ in range(rng.randint(1, 3))]
        raw = []
        for _ in range(rng.randint(1, 4)):
            raw.append((j, spec.sample(rng), states[rng.randrange(len(states))]))

        merged: dict[float, object] = {}
        for _, w, y in raw:
            merged[y] = spec.combine(merged[y], w) if y in merged else w
        reduced = [(j, merged[y], y) for y in sorted(merged)]

        raw_value = oracle.evaluate(i, x_self, raw)
        reduced_value = oracle.evaluate(i, x_self, reduced)
        if not (math.isfinite(raw_value) and math.isfinite(reduced_value)):
            skipped += 1
        elif not _close(raw_value, reduced_value):
            violations.append(
                ConsistencyViolation(
                    "merge", (i, j), tuple(raw), tuple(reduced), raw_value, reduced_value
                )
            )

        padded = list(raw)
        for _ in range(rng.randint(1, 2)):
            pos = rng.randrange(len(padded) + 1)
            padded.insert(pos, (j, spec.identity, rng.uniform(-3, 3)))
        padded_value = oracle.evaluate(i, x_self, padded)
        if not (math.isfinite(padded_value) and math.isfinite(raw_value)):
            skipped += 1
        elif not _close(padded_value, raw_value):
            violations.append(
                ConsistencyViolation(
                    "zero_removal", (i, j), tuple(padded), tuple(raw), padded_value, raw_value
                )
            )
    return ConsistencyReport(trials=trials, skipped=skipped, violations=tuple(violations))


# -- simulation --------------------------------------------------------------


@dataclass(frozen=True)
class Trajectory:
    """A uniformly sampled orbit: one state row per time point."""

    times: tuple
    states: tuple[tuple[float, ...], ...]
    kind: str  # map | ode

    def __len__(self):
        return len(self.states)


def simulate_map(net: Network, oracle: Oracle, x0, steps: int) -> Trajectory:
    """Iterate the admissible map; aborts on the first non-finite state."""
    x = [float(v) for v in x0]
    if len(x) != net.n:
        raise DimensionMismatch(f"x0 has {len(x)} entries, network has {net.n} cells")
    if not all(math.isfinite(v) for v in x):
        raise SimulationDiverged(0)
    states = [tuple(x)]
    for n in range(steps):
        x = admissible_eval(net, oracle, x)
        if not all(math.isfinite(v) for v in x):
            raise SimulationDiverged(n + 1)
        states.append(tuple(x))
    return Trajectory(times=tuple(range(steps + 1)), states=tuple(states), kind="map")


def _fast_linear_rhs(net: Network, oracle: Oracle):
    """Dense coupling-matrix right-hand side when every piece is linear.

    Same mathematical function as the merged-input evaluation (kappa is
    additive), differing only in float summation order; used to keep long
    RK4 integrations affordable.
    """
    if not isinstance(oracle, OracleSpec):
        return None
    for i in set(net.cell_types):
        if oracle.g_for(i).kind not in ("zero", "scale"):
            return None
    n = net.n
    gains = np.zeros((n, n))
    diag = np.zeros(n)
    for c in range(n):
        i = net.cell_types[c]
        for d, w in net.row_items(c):
            j = net.cell_types[d]
            h = oracle.h_for(i, j)
            if h.kind not in ("neighbor", "diffusive"):
                return None
            k = oracle.kappa_for(i, j)(w)
            gains[c, d] += k
            if h.kind == "diffusive":
                diag[c] -= k
        diag[c] += oracle.g_for(i).a if oracle.g_for(i).kind == "scale" else 0.0
    gains[np.arange(n), np.arange(n)] += diag

    def rhs(x: np.ndarray) -> np.ndarray:
        return gains @ x

    return rhs


def _integrate_rk4(net: Network, oracle: Oracle, x0, t_end: float, dt: float) -> np.ndarray:
    """RK4 sweep returning the whole orbit as a (steps+1, n) array."""
    if dt <= 0:
        raise DimensionMismatch("dt must be positive")
    x = np.asarray([float(v) for v in x0], dtype=np.float64)
    if x.shape[0] != net.n:
        raise DimensionMismatch(f"x0 has {x.shape[0]} entries, network has {net.n} cells")
    rhs = _fast_linear_rhs(net, oracle)
    if rhs is None:
        def rhs(state):
            return np.asarray(admissible_eval(net, oracle, state.tolist()))

    steps = int(round(t_end / dt))
    out = np.empty((steps + 1, net.n), dtype=np.float64)
    out[0] = x
    half = dt / 2.0
    sixth = dt / 6.0
    for n in range(steps):
        k1 = rhs(x)
        k2 = rhs(x + half * k1)
        k3 = rhs(x + half * k2)
        k4 = rhs(x + dt * k3)
        x = x + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.isfinite(x).all():
            raise SimulationDiverged(n + 1)
        out[n + 1] = x
    return out


def simulate_ode(net: Network, oracle: Oracle, x0, t_end: float, dt: float) -> Trajectory:
    """Classical fixed-step RK4 with the admissible vector field."""
    orbit = _integrate_rk4(net, oracle, x0, t_end, dt)
    times = tuple(n * dt for n in range(orbit.shape[0]))
    return Trajectory(times=times, states=tuple(map(tuple, orbit)), kind="ode")


def quotient_match(
    net: Network,
    partition: Partition,
    oracle: Oracle,
    reduced0,
    horizon: float = 10.0,
    dt: float = 1e-3,
    mode: str = "ode",
    steps: int = 100,
) -> float:
    """Max deviation between the full orbit from a synchronized start and
    the lifted orbit of the quotient network under the same oracle."""
    qres = quotient(net, partition)
    reduced0 = [float(v) for v in reduced0]
    x0 = lift(partition, reduced0)
    if mode == "map":
        full_arr = np.asarray(simulate_map(net, oracle, x0, steps).states)
        red_arr = np.asarray(simulate_map(qres.quotient, oracle, reduced0, steps).states)
    elif mode == "ode":
        full_arr = _integrate_rk4(net, oracle, x0, horizon, dt)
        red_arr = _integrate_rk4(qres.quotient, oracle, reduced0, horizon, dt)
    else:
        raise ValueError(f"mode must be 'map' or 'ode', got {mode!r}")
    lift_idx = partition.as_array0()
    return float(np.max(np.abs(full_arr - red_arr[:, lift_idx])))


# -- witnesses and linearity -------------------------------------------------


def unbalance_witness(net: Network, partition: Partition):
    """A (oracle, state) pair proving an unbalanced coloring is not invariant.

    The state lies on the coloring's polydiagonal with the offending color's
    value distinct from all others; the indicator oracle separates the two
    cells whose per-color sums differ. Raises WitnessError when the coloring
    is balanced (then no admissible map can leave the polydiagonal).
    """
    result = is_balanced(net, partition)
    if result.balanced:
        raise WitnessError("partition is balanced; no witness exists")
    c_id, d_id, k = result.counterexample
    c = net.index(c_id)
    i = net.cell_types[c]
    j = _color_types(net, partition)[k - 1]
    spec = net.registry.require(i, j)
    target_sum = row_signature(net, partition, c_id).sums[k - 1]
    reduced = [1.0 + l for l in range(partition.rank)]
    oracle = IndicatorOracle(
        target_type=i,
        source_type=j,
        spec=spec,
        target_state=reduced[k - 1],
        target_sum=target_sum,
    )
    return oracle, lift(partition, reduced)


@dataclass(frozen=True)
class LinearityReport:
    additive_deviation: float
    homogeneous_deviation: float
    tolerance: float

    @property
    def ok(self) -> bool:
        return (
            self.additive_deviation <= self.tolerance
            and self.homogeneous_deviation <= self.tolerance
        )


def linearity_check(
    net: Network,
    oracle_a: Oracle,
    oracle_b: Oracle,
    samples: int = 20,
    rng: random.Random | None = None,
    tolerance: float = 1e-12,
) -> LinearityReport:
    """Evaluation at a network is linear in the oracle: sums and scalings
    of oracles evaluate to sums and scalings of the outputs."""
    rng = rng or random.Random(0)
    add_dev = 0.0
    hom_dev = 0.0
    for _ in range(samples):
        x = [rng.uniform(-2, 2) for _ in range(net.n)]
        alpha = rng.uniform(-3, 3)
        both = admissible_eval(net, oracle_a + oracle_b, x)
        fa = admissible_eval(net, oracle_a, x)
        fb = admissible_eval(net, oracle_b, x)
        add_dev = max(
            add_dev, max(abs(s - (p + q)) for s, p, q in zip(both, fa, fb))
        )
        scaled = admissible_eval(net, alpha * oracle_a, x)
        hom_dev = max(
            hom_dev, max(abs(s - alpha * p) for s, p in zip(scaled, fa))
        )
    return LinearityReport(add_dev, hom_dev, tolerance)


# -- CLI-facing plumbing -----------------------------------------------------


def trajectory_csv(traj: Trajectory, cells) -> str:
    """One row per time point: t (or step) followed by one column per cell."""
    head = "t" if traj.kind == "ode" else "n"
    lines = [",".join([head, *cells])]
    for t, state in zip(traj.times, traj.states):
        lines.append(",".join([repr(t) if traj.kind == "ode" else str(t), *[repr(v) for v in state]]))
    return "\n".join(lines) + "\n"


def parse_oracle_json(obj, net: Network) -> OracleSpec:
    """Build an OracleSpec from its JSON description.

    {"g": [{"type", "kind", "a"?}...],
     "kappa": [{"target_type", "source_type", "scale"}...],
     "h": [{"target_type", "source_type", "kind"}...]}

    Everything is optional; defaults are zero internal dynamics, natural
    kappa with scale 1 and neighbor coupling.
    """
    if not isinstance(obj, dict):
        raise SchemaError("oracle file must hold a JSON object")
    unknown = set(obj) - {"g", "kappa", "h"}
    if unknown:
        raise SchemaError(f"unknown oracle fields {sorted(unknown)}")
    for field in ("g", "kappa", "h"):
        entries = obj.get(field, [])
        if not isinstance(entries, list) or not all(isinstance(e, dict) for e in entries):
            raise SchemaError(f"oracle field {field!r} must be a list of objects")
    name_to_idx = {name: i for i, name in enumerate(net.type_names)}

    def type_idx(entry, field):
        name = entry.get(field)
        if name not in name_to_idx:
            raise SchemaError(f"oracle entry has unknown {field} {name!r}")
        return name_to_idx[name]

    g = {}
    for entry in obj.get("g", []):
        i = type_idx(entry, "type")
        kind = entry.get("kind", "zero")
        if kind == "zero":
            g[i] = GFunc("zero")
        elif kind == "scale":
            g[i] = GFunc("scale", a=float(entry.get("a", 0.0)))
        else:
            raise SchemaError(f"unknown g kind {kind!r} (use zero or scale)")
    kappa = {}
    for entry in obj.get("kappa", []):
        i = type_idx(entry, "target_type")
        j = type_idx(entry, "source_type")
        if entry.get("kind", "natural") != "natural":
            raise SchemaError("only the natural kappa kind is file-configurable")
        scale = float(entry.get("scale", 1.0))
        nat = net.registry.require(i, j).default_kappa()
        kappa[(i, j)] = (lambda f, s: (lambda w: s * f(w)))(nat, scale)
    h = {}
    for entry in obj.get("h", []):
        i = type_idx(entry, "target_type")
        j = type_idx(entry, "source_type")
        kind = entry.get("kind", "neighbor")
        if kind not in ("neighbor", "diffusive"):
            raise SchemaError(f"unknown h kind {kind!r} (use neighbor or diffusive)")
        h[(i, j)] = Coupling(kind)
    return OracleSpec(net.registry, len(net.type_names), g=g, kappa=kappa, h=h)


def parse_oracle(text: str, net: Network) -> OracleSpec:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid oracle JSON: {exc.msg} (line {exc.lineno})") from None
    return parse_oracle_json(obj, net)
