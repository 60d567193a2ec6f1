"""Cross-module invariant suite behind the ``selftest`` subcommand.

Every check recomputes its expectation from scratch (closed forms, brute
force, or an independent route through the code) rather than comparing
against stored outputs.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import landscape, lhv, stabilizer, sterngerlach
from .linalg import (
    DenseOperator,
    StateVector,
    anticommutator,
    collapse_measure,
    commutator,
    expectation,
    identity,
    kron,
    projector,
)
from .states import (
    DirectionVector,
    GoldsteinParams,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    pauli_string_operator,
)

STRUCT_TOL = 1e-14
STATE_TOL = 1e-12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_state(rng, dim: int) -> StateVector:
    amp = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(amp / np.linalg.norm(amp))


def _random_hermitian(rng, dim: int) -> DenseOperator:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return DenseOperator((m + m.conj().T) / 2)


def check_pauli_algebra() -> CheckResult:
    worst = 0.0
    eye = identity(2).entries
    paulis = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}
    for p in paulis.values():
        worst = max(worst, float(np.abs(p.entries @ p.entries - eye).max()))
    cyclic = [("x", "y", "z"), ("y", "z", "x"), ("z", "x", "y")]
    for a, b, c in cyclic:
        prod = paulis[a].entries @ paulis[b].entries
        worst = max(worst, float(np.abs(prod - 1j * paulis[c].entries).max()))
        anti = anticommutator(paulis[a], paulis[b])
        worst = max(worst, float(np.abs(anti.entries).max()))
    return CheckResult("pauli-algebra", worst <= STRUCT_TOL, f"max deviation {worst:.2e}")


def check_kron_associativity() -> CheckResult:
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(25):
        mats = [
            DenseOperator(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
            for _ in range(3)
        ]
        left = kron(kron(mats[0], mats[1]), mats[2]).entries
        right = kron(mats[0], kron(mats[1], mats[2])).entries
        worst = max(worst, float(np.abs(left - right).max()))
    return CheckResult("kron-associativity", worst <= STRUCT_TOL, f"max deviation {worst:.2e}")


def check_hermitian_expectation_real() -> CheckResult:
    rng = np.random.default_rng(12)
    worst = 0.0
    for _ in range(50):
        dim = int(rng.choice([2, 4, 8]))
        value = expectation(_random_state(rng, dim), _random_hermitian(rng, dim))
        worst = max(worst, abs(value.imag))
    return CheckResult(
        "hermitian-expectation-real", worst <= STATE_TOL, f"max |imag| {worst:.2e}"
    )


def check_collapse_idempotent() -> CheckResult:
    rng = np.random.default_rng(13)
    up = np.zeros(2, dtype=complex)
    up[0] = 1
    family = (projector(StateVector(up)), projector(StateVector(up[::-1].copy())))
    ok = True
    for _ in range(50):
        state = _random_state(rng, 2)
        first = collapse_measure(state, family, float(rng.random()))
        again = collapse_measure(first.post_state, family, float(rng.random()))
        ok = ok and again.outcome_index == first.outcome_index
        ok = ok and abs(again.probability - 1.0) <= STATE_TOL
    return CheckResult("collapse-idempotent", ok, "re-measurement reproduces outcomes")


def check_ghz_relations() -> CheckResult:
    reports = stabilizer.verify_ghz_relations()
    measured = [r.measured for r in reports]
    ok = all(r.passed for r in reports) and np.allclose(
        measured, [1, 1, 1, -1], atol=STATE_TOL
    )
    return CheckResult("ghz-relations", ok, f"eigenvalues {measured}")


def check_ghz_operators_commute() -> CheckResult:
    ops = [pauli_string_operator(lbl) for lbl, _ in stabilizer.GHZ_RELATIONS]
    worst = 0.0
    for a, b in itertools.combinations(ops, 2):
        worst = max(worst, float(np.abs(commutator(a, b).entries).max()))
    return CheckResult("ghz-operators-commute", worst <= STRUCT_TOL, f"max entry {worst:.2e}")


def check_bell_relations() -> CheckResult:
    reports = stabilizer.verify_bell_relations()
    ok = all(r.passed for r in reports)
    return CheckResult("bell-relations", ok, f"{len(reports)} reports")


def check_sigma_xy() -> CheckResult:
    report = stabilizer.verify_sigma_xy_observable()
    return CheckResult("sigma-xy-observable", report.passed, f"residual {report.residual:.2e}")


def _normalized_grid(points: int):
    values = np.linspace(0.0, 1.0, points)
    for a in values:
        for b in values:
            for c in values:
                if a == 0.0 and b == 0.0 and c == 0.0:
                    continue
                if a == 0.0 and (b == 0.0 or c == 0.0):
                    continue  # beta vector undefined for that particle
                yield GoldsteinParams(a, b, c)


def check_hardy_zero_identities() -> CheckResult:
    worst = 0.0
    boundary_ok = True
    for p in _normalized_grid(20):
        table = stabilizer.hardy_table(p)
        worst = max(worst, float(table.uu[1, 1]), float(table.wu[0, 0]), float(table.uw[0, 0]))
        witness = float(table.ww[0, 0])
        abc = abs(p.a * p.b * p.c)
        if abc > 1e-6:
            boundary_ok = boundary_ok and witness > 1e-10
        else:
            boundary_ok = boundary_ok and witness <= 1e-10
    ok = worst <= STATE_TOL and boundary_ok
    return CheckResult(
        "hardy-zero-identities-20cube", ok, f"max zero-entry {worst:.2e}, boundary {boundary_ok}"
    )


def check_uw_commutator_norm() -> CheckResult:
    worst = 0.0
    for p in _normalized_grid(8):
        for i, x in ((1, p.b), (2, p.c)):
            norm = stabilizer.uw_commutator_norm(p, i)
            denom = abs(p.a) ** 2 + abs(x) ** 2
            closed = abs(p.a) * abs(x) / denom if denom else 0.0
            worst = max(worst, abs(norm - closed))
    return CheckResult("uw-commutator-closed-form", worst <= STATE_TOL, f"max dev {worst:.2e}")


def check_ghz_lhv_contradiction() -> CheckResult:
    system = lhv.ghz_parity_system()
    found = lhv.enumerate_parity(system, lhv.system_slots(system))
    check = lhv.parity_multiply_check(system)
    ok = not found and check.contradiction
    return CheckResult(
        "ghz-lhv-contradiction", ok, f"{len(found)}/64 assignments, contradiction={check.contradiction}"
    )


def check_enumeration_cross_check() -> CheckResult:
    rng = np.random.default_rng(14)
    slots = [(p, a) for p in lhv.PARTICLES for a in lhv.AXES]
    ok = True
    for _ in range(100):
        system = []
        for _ in range(int(rng.integers(1, 5))):
            count = int(rng.integers(1, 4))
            chosen = rng.choice(len(slots), size=count, replace=False)
            system.append(
                lhv.ParityConstraint(
                    tuple(slots[int(i)] for i in chosen),
                    int(rng.choice([1, -1])),
                )
            )
        found = lhv.enumerate_parity(system, slots)
        check = lhv.parity_multiply_check(system)
        if check.contradiction and found:
            ok = False
    return CheckResult("enumeration-vs-multiply", ok, "100 random systems")


def check_correlated_model() -> CheckResult:
    ghz = lhv.ghz_parity_system()
    bell = lhv.bell_parity_system()
    ok = True
    for signs in itertools.product((1, -1), repeat=3):
        ev = lhv.evaluate_correlated(ghz, lhv.CorrelatedModel(dict(zip("ABC", signs))))
        ok = ok and ev.matches and ev.value == -1
    bell_matches = set()
    for signs in itertools.product((1, -1), repeat=2):
        ev = lhv.evaluate_correlated(bell, lhv.CorrelatedModel(dict(zip("AB", signs))))
        if ev.matches:
            bell_matches.add(signs)
    ok = ok and bell_matches == {(1, 1), (-1, -1)}
    single = lhv.single_spin_pair_product()
    for s in (1, -1):
        value = lhv.evaluate_pair_product(single, lhv.CorrelatedModel({"A": s}))
        ok = ok and value == s
    solved = lhv.solve_signs([lhv.derive_pair_product(ghz)], list("ABC"))
    ok = ok and len(solved) == 8
    return CheckResult("correlated-model", ok, "pair-product identities hold")


def check_hardy_grid_feasibility() -> CheckResult:
    ok = True
    for p in _normalized_grid(10):
        table = stabilizer.hardy_table(p)
        report = lhv.hardy_lhv_feasible(lhv.instance_from_table(table))
        abc = abs(p.a * p.b * p.c)
        if abc > 1e-3:
            ok = ok and not report.feasible
        elif abc == 0.0:
            ok = ok and report.feasible
    return CheckResult("hardy-grid-feasibility-10cube", ok, "boundary matches |abc|")


def check_correlation_oracle() -> CheckResult:
    rng = np.random.default_rng(15)
    worst = 0.0
    for _ in range(1000):
        tb, tc = rng.uniform(0.0, 2.0 * math.pi, size=2)
        value = landscape.quantum_correlation(
            DirectionVector.in_yz_plane(tb), DirectionVector.in_yz_plane(tc)
        )
        worst = max(worst, abs(value - landscape.analytic_correlation(tb - tc)))
    return CheckResult("correlation-oracle-1000", worst <= STATE_TOL, f"max dev {worst:.2e}")


def check_landscape_regions() -> CheckResult:
    result = landscape.scan(landscape.AngleGrid(100))
    violating = [c for c in result.cells if c.violation]
    comm_ok = all(c.comm_norm > 0.0 for c in violating)
    diag_ok = all(
        not c.violation for c in result.cells if abs(c.alpha - c.beta) < 1e-12
    )
    ok = len(result.regions) == 4 and comm_ok and diag_ok
    return CheckResult(
        "landscape-regions",
        ok,
        f"{len(result.regions)} regions, comm>0 on violations: {comm_ok}",
    )


def check_max_violation() -> CheckResult:
    alpha, beta, f_star = landscape.max_violation(landscape.AngleGrid(100))
    ok = abs(f_star - 1.5) <= 1e-9
    return CheckResult("max-violation", ok, f"f*={f_star:.12f} at ({alpha:.6f}, {beta:.6f})")


def check_sg_determinism() -> CheckResult:
    a = sterngerlach.run_sequence(2000, seed=42)
    b = sterngerlach.run_sequence(2000, seed=42)
    sharded = (
        sterngerlach._tally(42, 0, 1000),
        sterngerlach._tally(42, 1000, 2000),
    )
    merged = tuple(x + y for x, y in zip(*sharded))
    ok = a == b and merged == (a.y_up, a.window_a, a.window_b)
    return CheckResult("sg-determinism", ok, "reruns and shard merges agree")


def check_sg_statistics() -> CheckResult:
    stats = sterngerlach.run_sequence(20000, seed=7)
    bound_y = 3.0 * 0.5 / math.sqrt(stats.shots)
    bound_a = 3.0 * 0.5 / math.sqrt(stats.y_up)
    ok = (
        abs(stats.y_up_frequency - 0.5) < bound_y
        and abs(stats.window_a_frequency - 0.5) < bound_a
    )
    return CheckResult(
        "sg-statistics",
        ok,
        f"y-up {stats.y_up_frequency:.4f}, window-a {stats.window_a_frequency:.4f}",
    )


ALL_CHECKS = (
    check_pauli_algebra,
    check_kron_associativity,
    check_hermitian_expectation_real,
    check_collapse_idempotent,
    check_ghz_relations,
    check_ghz_operators_commute,
    check_bell_relations,
    check_sigma_xy,
    check_hardy_zero_identities,
    check_uw_commutator_norm,
    check_ghz_lhv_contradiction,
    check_enumeration_cross_check,
    check_correlated_model,
    check_hardy_grid_feasibility,
    check_correlation_oracle,
    check_landscape_regions,
    check_max_violation,
    check_sg_determinism,
    check_sg_statistics,
)


def run_self_test() -> list[CheckResult]:
    return [check() for check in ALL_CHECKS]
