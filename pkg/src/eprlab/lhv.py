"""Exhaustive hidden-variable analysis.

Three layers:

* parity constraints over predetermined +-1 elements, solved by plain
  binary counting (2^6 and 2^4 need no cleverness; transparency beats
  speed);
* the complex local-correlation model, where each particle carries one
  persistent sign s and the pair value m_x*m_y equals s*i;
* the Hardy feasibility check, which consumes a quantum probability table
  and derives the contradiction mechanically from its zero entries.

Assignments stand in for the hidden variable itself: a hidden-variable
state has no operational content beyond the element values it fixes.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from typing import Mapping

PARTICLES = ("A", "B", "C")
AXES = ("x", "y")
MAX_SLOTS = 20
MAX_SIGN_PARTICLES = 10

# Exact complex units; i**k computed by quarter-turn arithmetic, no rounding.
_QUARTER_TURNS = (1 + 0j, 1j, -1 + 0j, -1j)

Slot = tuple[str, str]  # (particle, axis)

HARDY_OBSERVABLES = ("U1", "W1", "U2", "W2")


def slot_name(slot: Slot) -> str:
    particle, axis = slot
    return f"{particle}_{axis}"


@dataclass(frozen=True)
class ParityConstraint:
    """Product of the +-1 elements in ``slots`` must equal ``required_product``."""

    slots: tuple[Slot, ...]
    required_product: int

    def __post_init__(self):
        slots = tuple((str(p), str(a)) for p, a in self.slots)
        if not slots:
            raise ValueError("constraint needs at least one slot")
        if len(set(slots)) != len(slots):
            raise ValueError(f"duplicate slot in constraint: {slots}")
        if self.required_product not in (1, -1):
            raise ValueError("required_product must be +1 or -1")
        object.__setattr__(self, "slots", slots)

    def label(self) -> str:
        terms = "*".join(slot_name(s) for s in self.slots)
        return f"{terms} = {self.required_product:+d}"


@dataclass(frozen=True)
class ElementAssignment:
    """One deterministic valuation of every element slot in play."""

    values: Mapping[Slot, int]

    def __post_init__(self):
        vals = {(str(p), str(a)): int(v) for (p, a), v in dict(self.values).items()}
        if any(v not in (1, -1) for v in vals.values()):
            raise ValueError("element values must be +1 or -1")
        object.__setattr__(self, "values", vals)

    def value(self, particle: str, axis: str) -> int:
        return self.values[(particle, axis)]

    def product(self, slots) -> int:
        out = 1
        for slot in slots:
            out *= self.values[slot]
        return out

    def satisfies(self, constraint: ParityConstraint) -> bool:
        return self.product(constraint.slots) == constraint.required_product


@dataclass(frozen=True)
class ParityCheckResult:
    """Outcome of multiplying a constraint system side by side."""

    rhs_product: int
    slot_multiplicity: Mapping[Slot, int]
    all_slots_even: bool
    contradiction: bool


@dataclass(frozen=True)
class CorrelatedModel:
    """Per-particle sign s with pair value m_x * m_y = s * i."""

    signs: Mapping[str, int]

    def __post_init__(self):
        signs = {str(p): int(s) for p, s in dict(self.signs).items()}
        if any(s not in (1, -1) for s in signs.values()):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    def pair_value(self, particle: str) -> complex:
        return self.signs[particle] * 1j


@dataclass(frozen=True)
class PairProductConstraint:
    """Constraint of the form prefactor * prod_L (m_x^L m_y^L)^k_L in allowed set."""

    exponents: Mapping[str, int]
    allowed_values: tuple[complex, ...]
    prefactor: complex = 1 + 0j
    label: str = ""

    def __post_init__(self):
        exps = {str(p): int(k) for p, k in dict(self.exponents).items() if int(k) != 0}
        if any(k < 0 for k in exps.values()):
            raise ValueError("exponents must be non-negative")
        object.__setattr__(self, "exponents", exps)
        object.__setattr__(self, "allowed_values", tuple(complex(v) for v in self.allowed_values))
        object.__setattr__(self, "prefactor", complex(self.prefactor))


@dataclass(frozen=True)
class CorrelatedEvaluation:
    constraint: PairProductConstraint
    model: CorrelatedModel
    value: complex
    matches: bool


@dataclass(frozen=True)
class HardyLhvInstance:
    """Zero-probability patterns plus the positive-probability witness."""

    zero_events: tuple[Mapping[str, int], ...]
    witness_event: Mapping[str, int]
    witness_probability: float

    def __post_init__(self):
        events = tuple(dict(e) for e in self.zero_events)
        witness = dict(self.witness_event)
        for event in (*events, witness):
            for obs, val in event.items():
                if obs not in HARDY_OBSERVABLES:
                    raise ValueError(f"unknown observable {obs!r}")
                if val not in (0, 1):
                    raise ValueError(f"outcomes must be 0 or 1, got {val!r}")
        object.__setattr__(self, "zero_events", events)
        object.__setattr__(self, "witness_event", witness)


@dataclass(frozen=True)
class HardyFeasibilityReport:
    instance: HardyLhvInstance
    feasible: bool
    vacuous_witness: bool
    survivors: tuple[Mapping[str, int], ...]
    witness_covers: tuple[Mapping[str, int], ...]


def ghz_parity_system() -> list[ParityConstraint]:
    """The four three-particle element-product equations."""
    return [
        ParityConstraint((("A", "x"), ("B", "y"), ("C", "y")), 1),
        ParityConstraint((("A", "y"), ("B", "x"), ("C", "y")), 1),
        ParityConstraint((("A", "y"), ("B", "y"), ("C", "x")), 1),
        ParityConstraint((("A", "x"), ("B", "x"), ("C", "x")), -1),
    ]


def bell_parity_system() -> list[ParityConstraint]:
    """The two-particle element-product equations on the Bell state."""
    return [
        ParityConstraint((("A", "x"), ("B", "x")), -1),
        ParityConstraint((("A", "y"), ("B", "y")), 1),
    ]


def system_slots(system) -> list[Slot]:
    """All slots referenced by a constraint system, sorted for determinism."""
    slots = {slot for c in system for slot in c.slots}
    return sorted(slots)


def enumerate_parity(system, slots) -> list[ElementAssignment]:
    """All assignments over ``slots`` satisfying every constraint.

    Plain binary counting over 2^len(slots) candidates; an empty result
    certifies unsatisfiability.  Slot i of the sorted slot list follows bit
    i of the counter, bit value 0 meaning +1.
    """
    slots = list(slots)
    if len(set(slots)) != len(slots):
        raise ValueError("duplicate slots in enumeration universe")
    if len(slots) > MAX_SLOTS:
        raise ValueError(f"slot count {len(slots)} exceeds cap {MAX_SLOTS}")
    missing = {s for c in system for s in c.slots} - set(slots)
    if missing:
        raise ValueError(f"constraints reference slots outside the universe: {missing}")
    satisfying = []
    for mask in range(1 << len(slots)):
        values = {
            slot: 1 - 2 * ((mask >> i) & 1) for i, slot in enumerate(slots)
        }
        assignment = ElementAssignment(values)
        if all(assignment.satisfies(c) for c in system):
            satisfying.append(assignment)
    return satisfying


def parity_multiply_check(system) -> ParityCheckResult:
    """Multiply the constraints side by side and look for the parity trap.

    If every slot occurs an even number of times the left-hand side is
    identically +1, so a right-hand-side product of -1 certifies that no
    assignment can exist.
    """
    multiplicity: dict[Slot, int] = {}
    rhs = 1
    for c in system:
        rhs *= c.required_product
        for slot in c.slots:
            multiplicity[slot] = multiplicity.get(slot, 0) + 1
    all_even = all(count % 2 == 0 for count in multiplicity.values())
    return ParityCheckResult(
        rhs_product=rhs,
        slot_multiplicity=dict(sorted(multiplicity.items())),
        all_slots_even=all_even,
        contradiction=(all_even and rhs == -1),
    )


def derive_pair_product(system, label: str = "") -> PairProductConstraint:
    """Group the side-by-side product of a parity system into pair powers.

    Requires each particle to contribute equal x and y multiplicities, so
    the product collapses to prod_L (m_x^L m_y^L)^k_L; anything else cannot
    be stated in terms of the correlated pair values alone.
    """
    counts: dict[str, dict[str, int]] = {}
    rhs = 1
    for c in system:
        rhs *= c.required_product
        for particle, axis in c.slots:
            counts.setdefault(particle, {"x": 0, "y": 0})
            counts[particle][axis] = counts[particle].get(axis, 0) + 1
    exponents = {}
    for particle, axis_counts in sorted(counts.items()):
        extra = set(axis_counts) - {"x", "y"}
        if extra:
            raise ValueError(f"axis {extra} has no pair-product form")
        if axis_counts["x"] != axis_counts["y"]:
            raise ValueError(
                f"particle {particle} has x/y multiplicities "
                f"{axis_counts['x']}/{axis_counts['y']}; product is not "
                "expressible in m_x*m_y pairs"
            )
        if axis_counts["x"]:
            exponents[particle] = axis_counts["x"]
    return PairProductConstraint(
        exponents=exponents, allowed_values=(complex(rhs),), label=label
    )


def single_spin_pair_product() -> PairProductConstraint:
    """-i * m_x * m_y must be +1 or -1 for a lone spin."""
    return PairProductConstraint(
        exponents={"A": 1},
        allowed_values=(1 + 0j, -1 + 0j),
        prefactor=-1j,
        label="-i*m_x*m_y",
    )


def evaluate_pair_product(
    constraint: PairProductConstraint, model: CorrelatedModel
) -> complex:
    """Exact value of the pair-product expression under the correlated model."""
    quarter = 0
    sign = 1
    for particle, k in constraint.exponents.items():
        if particle not in model.signs:
            raise ValueError(f"model is missing a sign for particle {particle!r}")
        quarter += k
        if model.signs[particle] == -1 and k % 2 == 1:
            sign = -sign
    unit = sign * _QUARTER_TURNS[quarter % 4]
    return constraint.prefactor * unit


def evaluate_correlated(system, model: CorrelatedModel) -> CorrelatedEvaluation:
    """Evaluate the pair-product expression derived from a parity system."""
    derived = derive_pair_product(system)
    value = evaluate_pair_product(derived, model)
    matches = any(abs(value - allowed) <= 1e-12 for allowed in derived.allowed_values)
    return CorrelatedEvaluation(derived, model, value, matches)


def solve_signs(constraints, particles) -> list[CorrelatedModel]:
    """All sign vectors under which every pair-product constraint holds."""
    particles = list(particles)
    if len(particles) > MAX_SIGN_PARTICLES:
        raise ValueError(f"particle count {len(particles)} exceeds cap {MAX_SIGN_PARTICLES}")
    solutions = []
    for signs in itertools.product((1, -1), repeat=len(particles)):
        model = CorrelatedModel(dict(zip(particles, signs)))
        ok = True
        for c in constraints:
            value = evaluate_pair_product(c, model)
            if not any(abs(value - allowed) <= 1e-12 for allowed in c.allowed_values):
                ok = False
                break
        if ok:
            solutions.append(model)
    return solutions


def _matches(assignment: Mapping[str, int], pattern: Mapping[str, int]) -> bool:
    return all(assignment[obs] == val for obs, val in pattern.items())


def instance_from_table(table, zero_tol: float = 1e-12) -> HardyLhvInstance:
    """Harvest zero events from a Hardy table; the witness is the both-zero
    cell of the (W1,W2) context."""
    pairs = {
        "U1,U2": ("U1", "U2"),
        "W1,U2": ("W1", "U2"),
        "U1,W2": ("U1", "W2"),
        "W1,W2": ("W1", "W2"),
    }
    zero_events = []
    for label, (obs1, obs2) in pairs.items():
        probs = table.context(label)
        for o1 in (0, 1):
            for o2 in (0, 1):
                if probs[o1, o2] < zero_tol:
                    zero_events.append({obs1: o1, obs2: o2})
    witness = {"W1": 0, "W2": 0}
    return HardyLhvInstance(
        zero_events=tuple(zero_events),
        witness_event=witness,
        witness_probability=float(table.ww[0, 0]),
    )


def hardy_lhv_feasible(
    instance: HardyLhvInstance, zero_tol: float = 1e-12
) -> HardyFeasibilityReport:
    """Brute-force feasibility of covering the witness with an assignment.

    Every deterministic (U1,W1,U2,W2) valuation consistent with the zero
    events is a survivor; the instance is infeasible when the witness has
    positive quantum probability yet no survivor produces it.  A witness at
    probability zero makes the check vacuous and the instance feasible.
    """
    vacuous = instance.witness_probability <= zero_tol
    survivors = []
    covers = []
    for bits in itertools.product((0, 1), repeat=4):
        assignment = dict(zip(HARDY_OBSERVABLES, bits))
        if any(_matches(assignment, z) for z in instance.zero_events):
            continue
        survivors.append(assignment)
        if _matches(assignment, instance.witness_event):
            covers.append(assignment)
    feasible = vacuous or bool(covers)
    return HardyFeasibilityReport(
        instance=instance,
        feasible=feasible,
        vacuous_witness=vacuous,
        survivors=tuple(survivors),
        witness_covers=tuple(covers),
    )


def assignments_to_csv_text(assignments, slots) -> str:
    """One assignment per row, +-1 entries, slot names as the header."""
    slots = list(slots)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([slot_name(s) for s in slots])
    for a in assignments:
        writer.writerow([a.values[s] for s in slots])
    return buf.getvalue()


def assignments_to_text(assignments, slots) -> str:
    slots = list(slots)
    header = "  ".join(f"{slot_name(s):>4}" for s in slots)
    lines = [header]
    for a in assignments:
        lines.append("  ".join(f"{a.values[s]:>+4d}" for s in slots))
    return "\n".join(lines)


def models_to_csv_text(models, particles) -> str:
    particles = list(particles)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"s_{p}" for p in particles])
    for m in models:
        writer.writerow([m.signs[p] for p in particles])
    return buf.getvalue()
