"""Commutative monoids used as edge-weight algebras.

Every carrier value is exact (rationals, integers, canonical multisets,
tuples); equality is structural, so deciding whether two weight sums agree
never touches floating point. Specs and elements are immutable values and
all operations are pure, so they are safe to share between threads.

Shipped kinds:

* ``ResistorParallel`` -- nonnegative rationals plus infinity under parallel
  composition, stored as conductances (``g = 1/r``, ``g = 0`` for the
  infinite "no edge" resistor). The zero-ohm short circuit is an annihilator.
* ``NaturalAdd`` / ``NaturalMul`` -- nonnegative integers under + and *.
* ``FreeCommutative`` -- finite multisets of string generators.
* ``ProductMonoid`` -- componentwise direct product of other specs.
* ``WithAnnihilator`` -- any spec extended with a fresh absorbing element.

The convolution monoid of real functions is intentionally not shipped: its
equality is undecidable, which would make balance checking meaningless.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import MonoidMismatch, SchemaError


class _Short:
    """The zero-ohm resistor: infinite conductance, absorbs any parallel."""

    __slots__ = ()

    def __repr__(self):
        return "SHORT"


class _Annihilator:
    """Fresh absorbing element adjoined by WithAnnihilator."""

    __slots__ = ()

    def __repr__(self):
        return "ANNIHILATOR"


SHORT = _Short()
ANNIHILATOR = _Annihilator()


class MonoidSpec:
    """A computable commutative monoid: identity, combine, exact equality."""

    kind: str = "abstract"

    @property
    def identity(self):
        raise NotImplementedError

    def contains(self, value) -> bool:
        raise NotImplementedError

    def _combine(self, a, b):
        raise NotImplementedError

    def combine(self, a, b):
        """a ∥ b. Raises MonoidMismatch if either value is outside the carrier."""
        self.check(a)
        self.check(b)
        return self._combine(a, b)

    def check(self, value):
        if not self.contains(value):
            raise MonoidMismatch(f"{value!r} is not an element of {self.describe()}")

    def sum(self, items):
        """Fold of combine over ``items`` starting from the identity."""
        acc = self.identity
        for item in items:
            acc = self.combine(acc, item)
        return acc

    def is_identity(self, value) -> bool:
        self.check(value)
        return value == self.identity

    @property
    def annihilator(self):
        """The absorbing element, or None if this monoid has none."""
        return None

    def key(self) -> tuple:
        """Hashable canonical identity of the spec (equal specs share codes)."""
        raise NotImplementedError

    def describe(self) -> str:
        return self.kind

    def display(self, value) -> str:
        raise NotImplementedError

    def encode(self, value) -> bytes:
        """Canonical injective byte serialization, used as interning key."""
        raise NotImplementedError

    def element_to_json(self, value):
        raise NotImplementedError

    def element_from_json(self, obj):
        raise NotImplementedError

    def sample(self, rng: random.Random):
        """A random carrier element, for fuzzing the algebraic laws."""
        raise NotImplementedError

    def default_kappa(self):
        """The natural additive weight map kappa: carrier -> extended reals.

        Satisfies kappa(a ∥ b) = kappa(a) + kappa(b) and kappa(identity) = 0,
        which is exactly what makes the homomorphism-coupled oracle family
        admissible.
        """
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def __repr__(self):
        return self.describe()


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise MonoidMismatch(f"cannot interpret {x!r} as an exact rational")


@dataclass(frozen=True)
class ResistorParallel(MonoidSpec):
    """Parallel composition of resistors, carried as exact conductances."""

    kind = "resistor_parallel"

    @property
    def identity(self):
        return Fraction(0)  # zero conductance = infinite resistance = no edge

    def contains(self, value):
        if value is SHORT:
            return True
        return isinstance(value, Fraction) and value >= 0

    def _combine(self, a, b):
        if a is SHORT or b is SHORT:
            return SHORT
        return a + b

    @property
    def annihilator(self):
        return SHORT

    def from_resistance(self, r):
        """Build an element from a resistance: Fraction/int/str or "inf"."""
        if r == "inf" or r is None or r is math.inf:
            return Fraction(0)
        r = _as_fraction(r)
        if r < 0:
            raise MonoidMismatch("resistance must be nonnegative")
        if r == 0:
            return SHORT
        return Fraction(1) / r

    def resistance_str(self, value) -> str:
        self.check(value)
        if value is SHORT:
            return "0"
        if value == 0:
            return "inf"
        return str(Fraction(1) / value)

    def key(self):
        return ("resistor_parallel",)

    def display(self, value):
        return self.resistance_str(value)

    def encode(self, value):
        if value is SHORT:
            return b"R!"
        return b"R%d/%d" % (value.numerator, value.denominator)

    def element_to_json(self, value):
        return {"r": self.resistance_str(value)}

    def element_from_json(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"r"} or not isinstance(obj["r"], str):
            raise SchemaError(f'resistor weight must be {{"r": "<value>"}}, got {obj!r}')
        try:
            return self.from_resistance(obj["r"])
        except (ValueError, ZeroDivisionError, MonoidMismatch) as exc:
            raise SchemaError(f"bad resistance {obj['r']!r}: {exc}") from exc

    def sample(self, rng):
        pool = ["inf", "inf", 10, 15, 20, 30, 60, Fraction(1, 3), Fraction(45, 2), 0]
        return self.from_resistance(pool[rng.randrange(len(pool))])

    def default_kappa(self):
        def kappa(value):
            if value is SHORT:
                return math.inf
            return float(value)

        return kappa

    def to_json(self):
        return {"kind": self.kind}


def _natural_ok(value):
    return isinstance(value, int) and not isinstance(value, bool) and value >= 0


@dataclass(frozen=True)
class NaturalAdd(MonoidSpec):
    """Nonnegative integers under addition; 0 means no edge."""

    kind = "natural_add"

    @property
    def identity(self):
        return 0

    def contains(self, value):
        return _natural_ok(value)

    def _combine(self, a, b):
        return a + b

    def key(self):
        return ("natural_add",)

    def display(self, value):
        return str(value)

    def encode(self, value):
        return b"N%d" % value

    def element_to_json(self, value):
        return {"n": value}

    def element_from_json(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"n"} or not _natural_ok(obj["n"]):
            raise SchemaError(f'natural weight must be {{"n": <int >= 0>}}, got {obj!r}')
        return obj["n"]

    def sample(self, rng):
        return rng.randrange(0, 9)

    def default_kappa(self):
        return float

    def to_json(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class NaturalMul(MonoidSpec):
    """Nonnegative integers under multiplication; the identity is 1."""

    kind = "natural_mul"

    @property
    def identity(self):
        return 1

    def contains(self, value):
        return _natural_ok(value)

    def _combine(self, a, b):
        return a * b

    @property
    def annihilator(self):
        return 0

    def key(self):
        return ("natural_mul",)

    def display(self, value):
        return str(value)

    def encode(self, value):
        return b"M%d" % value

    def element_to_json(self, value):
        return {"n": value}

    def element_from_json(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"n"} or not _natural_ok(obj["n"]):
            raise SchemaError(f'natural weight must be {{"n": <int >= 0>}}, got {obj!r}')
        return obj["n"]

    def sample(self, rng):
        return rng.choice([0, 1, 1, 2, 2, 3, 5, 7])

    def default_kappa(self):
        def kappa(value):
            if value == 0:
                return -math.inf
            return math.log(value)

        return kappa

    def to_json(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class FreeCommutative(MonoidSpec):
    """Finite multisets of string generators under multiset union.

    Elements are stored canonically as a tuple of (label, count) pairs sorted
    by label with counts >= 1, so structural equality is multiset equality.
    ``generators=None`` leaves the alphabet open.
    """

    generators: tuple[str, ...] | None = None

    kind = "free_commutative"

    def __post_init__(self):
        if self.generators is not None:
            object.__setattr__(self, "generators", tuple(sorted(set(self.generators))))

    @property
    def identity(self):
        return ()

    def contains(self, value):
        if not isinstance(value, tuple):
            return False
        prev = None
        for pair in value:
            if not (isinstance(pair, tuple) and len(pair) == 2):
                return False
            label, count = pair
            if not isinstance(label, str) or not _natural_ok(count) or count == 0:
                return False
            if prev is not None and label <= prev:
                return False
            if self.generators is not None and label not in self.generators:
                return False
            prev = label
        return True

    def _combine(self, a, b):
        counts = dict(a)
        for label, count in b:
            counts[label] = counts.get(label, 0) + count
        return tuple(sorted(counts.items()))

    def from_counts(self, counts: dict) -> tuple:
        """Canonical element from a {label: multiplicity} mapping."""
        value = tuple(sorted((str(k), v) for k, v in counts.items() if v))
        self.check(value)
        return value

    def key(self):
        return ("free_commutative", self.generators)

    def describe(self):
        if self.generators is None:
            return "free_commutative"
        return f"free_commutative({','.join(self.generators)})"

    def display(self, value):
        if not value:
            return "{}"
        return "{" + ",".join(f"{label}:{count}" for label, count in value) + "}"

    def encode(self, value):
        return b"F" + ";".join(f"{label}={count}" for label, count in value).encode()

    def element_to_json(self, value):
        return {"gens": {label: count for label, count in value}}

    def element_from_json(self, obj):
        if not isinstance(obj, dict) or set(obj) != {"gens"} or not isinstance(obj["gens"], dict):
            raise SchemaError(f'multiset weight must be {{"gens": {{...}}}}, got {obj!r}')
        try:
            return self.from_counts(obj["gens"])
        except MonoidMismatch as exc:
            raise SchemaError(str(exc)) from exc

    def sample(self, rng):
        alphabet = self.generators or ("a", "b", "c")
        counts = {}
        for _ in range(rng.randrange(0, 4)):
            label = alphabet[rng.randrange(len(alphabet))]
            counts[label] = counts.get(label, 0) + 1
        return self.from_counts(counts)

    def default_kappa(self):
        def kappa(value):
            return float(sum(count for _, count in value))

        return kappa

    def to_json(self):
        obj = {"kind": self.kind}
        if self.generators is not None:
            obj["generators"] = list(self.generators)
        return obj


@dataclass(frozen=True)
class ProductMonoid(MonoidSpec):
    """Direct product of other monoids; combine acts componentwise."""

    parts: tuple[MonoidSpec, ...] = field(default_factory=tuple)

    kind = "product"

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise MonoidMismatch("product monoid needs at least one component")

    @property
    def identity(self):
        return tuple(p.identity for p in self.parts)

    def contains(self, value):
        return (
            isinstance(value, tuple)
            and len(value) == len(self.parts)
            and all(p.contains(v) for p, v in zip(self.parts, value))
        )

    def _combine(self, a, b):
        return tuple(p._combine(x, y) for p, x, y in zip(self.parts, a, b))

    def key(self):
        return ("product", tuple(p.key() for p in self.parts))

    def describe(self):
        return "product(" + ", ".join(p.describe() for p in self.parts) + ")"

    def display(self, value):
        return "(" + ", ".join(p.display(v) for p, v in zip(self.parts, value)) + ")"

    def encode(self, value):
        inner = b",".join(p.encode(v) for p, v in zip(self.parts, value))
        return b"P(" + inner + b")"

    def element_to_json(self, value):
        return {"tuple": [p.element_to_json(v) for p, v in zip(self.parts, value)]}

    def element_from_json(self, obj):
        if (
            not isinstance(obj, dict)
            or set(obj) != {"tuple"}
            or not isinstance(obj["tuple"], list)
            or len(obj["tuple"]) != len(self.parts)
        ):
            raise SchemaError(
                f'product weight must be {{"tuple": [... {len(self.parts)} entries]}}, got {obj!r}'
            )
        return tuple(p.element_from_json(v) for p, v in zip(self.parts, obj["tuple"]))

    def sample(self, rng):
        return tuple(p.sample(rng) for p in self.parts)

    def default_kappa(self):
        kappas = [p.default_kappa() for p in self.parts]

        def kappa(value):
            return sum(k(v) for k, v in zip(kappas, value))

        return kappa

    def to_json(self):
        return {"kind": self.kind, "parts": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class WithAnnihilator(MonoidSpec):
    """An existing monoid with a fresh absorbing element adjoined."""

    inner: MonoidSpec = field(default_factory=NaturalAdd)

    kind = "with_annihilator"

    @property
    def identity(self):
        return self.inner.identity

    def contains(self, value):
        return value is ANNIHILATOR or self.inner.contains(value)

    def _combine(self, a, b):
        if a is ANNIHILATOR or b is ANNIHILATOR:
            return ANNIHILATOR
        return self.inner._combine(a, b)

    @property
    def annihilator(self):
        return ANNIHILATOR

    def key(self):
        return ("with_annihilator", self.inner.key())

    def describe(self):
        return f"with_annihilator({self.inner.describe()})"

    def display(self, value):
        if value is ANNIHILATOR:
            return "annihilator"
        return self.inner.display(value)

    def encode(self, value):
        if value is ANNIHILATOR:
            return b"A!"
        return b"A" + self.inner.encode(value)

    def element_to_json(self, value):
        if value is ANNIHILATOR:
            return {"annihilator": True}
        return self.inner.element_to_json(value)

    def element_from_json(self, obj):
        if isinstance(obj, dict) and obj.get("annihilator") is True:
            return ANNIHILATOR
        return self.inner.element_from_json(obj)

    def sample(self, rng):
        if rng.random() < 0.15:
            return ANNIHILATOR
        return self.inner.sample(rng)

    def default_kappa(self):
        inner_kappa = self.inner.default_kappa()

        def kappa(value):
            if value is ANNIHILATOR:
                return math.inf
            return inner_kappa(value)

        return kappa

    def to_json(self):
        return {"kind": self.kind, "inner": self.inner.to_json()}


_KINDS = {
    "resistor_parallel": ResistorParallel,
    "natural_add": NaturalAdd,
    "natural_mul": NaturalMul,
}


def spec_from_json(obj) -> MonoidSpec:
    """Rebuild a MonoidSpec from its tagged JSON form."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SchemaError(f"monoid spec must be an object with a 'kind', got {obj!r}")
    kind = obj["kind"]
    if kind in _KINDS:
        return _KINDS[kind]()
    if kind == "free_commutative":
        gens = obj.get("generators")
        if gens is not None and not (
            isinstance(gens, list) and all(isinstance(g, str) for g in gens)
        ):
            raise SchemaError("'generators' must be a list of strings")
        return FreeCommutative(tuple(gens) if gens is not None else None)
    if kind == "product":
        parts = obj.get("parts")
        if not isinstance(parts, list) or not parts:
            raise SchemaError("product monoid needs a nonempty 'parts' list")
        return ProductMonoid(tuple(spec_from_json(p) for p in parts))
    if kind == "with_annihilator":
        if "inner" not in obj:
            raise SchemaError("with_annihilator monoid needs an 'inner' spec")
        return WithAnnihilator(spec_from_json(obj["inner"]))
    raise SchemaError(f"unknown monoid kind {kind!r}")


def combine(spec: MonoidSpec, a, b):
    """a ∥ b in the given monoid."""
    return spec.combine(a, b)


def monoid_sum(spec: MonoidSpec, items):
    """Parallel sum of many elements; the empty sum is the identity."""
    return spec.sum(items)


def is_identity(spec: MonoidSpec, value) -> bool:
    """True iff ``value`` means "no edge" in this monoid."""
    return spec.is_identity(value)


def product_monoid(parts) -> ProductMonoid:
    """Direct product of the given specs (used to merge edge types)."""
    return ProductMonoid(tuple(parts))


@dataclass(frozen=True)
class LawViolation:
    law: str
    operands: tuple
    left: object
    right: object


@dataclass(frozen=True)
class LawCheckReport:
    spec: MonoidSpec
    trials: int
    violations: tuple[LawViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def law_check(spec: MonoidSpec, samples=None, trials: int = 1000, rng=None) -> LawCheckReport:
    """Fuzz associativity, commutativity, identity and absorption.

    Shipped specs must come back clean; a deliberately broken spec (e.g.
    subtraction as combine) gets its violation reported with the operands.
    """
    rng = rng or random.Random(0)

    def pick():
        if samples:
            return samples[rng.randrange(len(samples))]
        return spec.sample(rng)

    violations = []
    annihilator = spec.annihilator
    for _ in range(trials):
        a, b, c = pick(), pick(), pick()
        ab = spec._combine(a, b)
        ba = spec._combine(b, a)
        if ab != ba:
            violations.append(LawViolation("commutativity", (a, b), ab, ba))
        left = spec._combine(ab, c)
        right = spec._combine(a, spec._combine(b, c))
        if left != right:
            violations.append(LawViolation("associativity", (a, b, c), left, right))
        if spec._combine(a, spec.identity) != a:
            violations.append(
                LawViolation("identity", (a,), spec._combine(a, spec.identity), a)
            )
        if annihilator is not None and spec._combine(a, annihilator) != annihilator:
            violations.append(
                LawViolation("absorption", (a,), spec._combine(a, annihilator), annihilator)
            )
    return LawCheckReport(spec=spec, trials=trials, violations=tuple(violations))


class MonoidRegistry:
    """Monoid specs keyed by ordered (target type, source type) index pairs.

    Only pairs actually used by an edge must be present; a missing pair just
    means "no edges of that flavor can exist".
    """

    def __init__(self, table: dict[tuple[int, int], MonoidSpec]):
        self._table = dict(table)

    @classmethod
    def uniform(cls, spec: MonoidSpec, n_types: int) -> "MonoidRegistry":
        """The single-monoid case: one spec repeated for every type pair."""
        return cls({(i, j): spec for i in range(n_types) for j in range(n_types)})

    def get(self, i: int, j: int) -> MonoidSpec | None:
        return self._table.get((i, j))

    def require(self, i: int, j: int) -> MonoidSpec:
        spec = self._table.get((i, j))
        if spec is None:
            raise MonoidMismatch(f"no monoid registered for type pair ({i}, {j})")
        return spec

    def pairs(self):
        return sorted(self._table.items())

    def __eq__(self, other):
        if not isinstance(other, MonoidRegistry):
            return NotImplemented
        mine = {pair: spec.key() for pair, spec in self._table.items()}
        theirs = {pair: spec.key() for pair, spec in other._table.items()}
        return mine == theirs

    def __repr__(self):
        inner = ", ".join(f"{pair}: {spec.describe()}" for pair, spec in self.pairs())
        return f"MonoidRegistry({{{inner}}})"
