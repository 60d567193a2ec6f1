"""Executable verification of the quantum-side identities.

Each check measures an eigenvalue or a matrix identity directly and returns
a RelationReport; nothing here is asserted from memory.  The Hardy table
computes the four joint measurement contexts of the two-particle
construction by the Born rule, so the hidden-variable analysis downstream
can consume probabilities instead of an assumed inequality chain.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .linalg import (
    STATE_TOL,
    STRUCT_TOL,
    DenseOperator,
    StateVector,
    born_probabilities,
    commutator,
    identity,
    rayleigh_residual,
    spectral_norm,
)
from .states import (
    GoldsteinParams,
    PAULI_X,
    PAULI_Y,
    bell_phi_minus,
    ghz_state,
    goldstein_state,
    pauli_string_operator,
    uw_projectors,
)

# (label, expected eigenvalue) for the three-spin state.
GHZ_RELATIONS = (("xyy", 1.0), ("yxy", 1.0), ("yyx", 1.0), ("xxx", -1.0))
# Same for the two-spin Bell state.
BELL_RELATIONS = (("xx", -1.0), ("yy", 1.0))

HARDY_CONTEXTS = ("U1,U2", "W1,U2", "U1,W2", "W1,W2")


@dataclass(frozen=True)
class RelationReport:
    label: str
    operator_spec: str
    expected: float
    measured: float
    residual: float
    passed: bool


@dataclass(frozen=True, eq=False)
class HardyTable:
    """Joint outcome distributions of the four commuting measurement contexts.

    Each table is a 2x2 array indexed [o1, o2] with outcome 1 meaning "the
    named projector fires" (U: spin-up, W: the beta vector) and outcome 0
    the orthogonal result.
    """

    params: GoldsteinParams
    uu: np.ndarray
    wu: np.ndarray
    uw: np.ndarray
    ww: np.ndarray

    def __post_init__(self):
        for name in ("uu", "wu", "uw", "ww"):
            arr = np.array(getattr(self, name), dtype=np.float64)
            if arr.shape != (2, 2):
                raise ValueError(f"context {name} must be a 2x2 table")
            if arr.min() < -STATE_TOL:
                raise ValueError(f"context {name} has a negative probability")
            if abs(arr.sum() - 1.0) > STATE_TOL:
                raise ValueError(f"context {name} sums to {arr.sum()!r}, expected 1")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def context(self, label: str) -> np.ndarray:
        table = {
            "U1,U2": self.uu,
            "W1,U2": self.wu,
            "U1,W2": self.uw,
            "W1,W2": self.ww,
        }.get(label)
        if table is None:
            raise KeyError(f"unknown context {label!r}")
        return table

    def rows(self):
        """Yield (context, outcome1, outcome2, probability) for serialization."""
        for label in HARDY_CONTEXTS:
            table = self.context(label)
            for o1 in (0, 1):
                for o2 in (0, 1):
                    yield label, o1, o2, float(table[o1, o2])


def relation_report(
    label: str,
    operator_spec: str,
    op: DenseOperator,
    state: StateVector,
    expected: float,
    tol: float = STATE_TOL,
) -> RelationReport:
    """Check that state is an eigenstate of op with the expected eigenvalue."""
    lam, residual = rayleigh_residual(op, state)
    passed = (
        residual <= tol
        and abs(lam.imag) <= tol
        and abs(lam.real - expected) <= tol
    )
    return RelationReport(label, operator_spec, expected, lam.real, residual, passed)


def _pauli_spec(labels: str) -> str:
    return "sigma_" + "*sigma_".join(labels)


def verify_ghz_relations(tol: float = STATE_TOL) -> list[RelationReport]:
    """Eigenvalues (+1, +1, +1, -1) of the four three-spin Pauli strings."""
    state = ghz_state()
    return [
        relation_report(labels, _pauli_spec(labels), pauli_string_operator(labels),
                        state, expected, tol)
        for labels, expected in GHZ_RELATIONS
    ]


def verify_bell_relations(tol: float = STATE_TOL) -> list[RelationReport]:
    """Eigenvalues (-1, +1) of xx and yy on the Bell state, plus commutation."""
    state = bell_phi_minus()
    reports = []
    ops = {}
    for labels, expected in BELL_RELATIONS:
        op = pauli_string_operator(labels)
        ops[labels] = op
        reports.append(
            relation_report(labels, _pauli_spec(labels), op, state, expected, tol)
        )
    comm_norm = spectral_norm(commutator(ops["xx"], ops["yy"]))
    reports.append(
        RelationReport(
            "comm(xx,yy)",
            "[sigma_x*sigma_x, sigma_y*sigma_y]",
            0.0,
            comm_norm,
            comm_norm,
            comm_norm <= tol,
        )
    )
    return reports


def verify_sigma_xy_observable(tol: float = STRUCT_TOL) -> RelationReport:
    """-i sigma_x sigma_y equals diag(1, -1): Hermitian with eigenvalues +-1."""
    m = -1j * (PAULI_X.entries @ PAULI_Y.entries)
    target = np.diag([1.0, -1.0]).astype(np.complex128)
    entry_dev = float(np.abs(m - target).max())
    herm_dev = float(np.abs(m - m.conj().T).max())
    eigs = np.sort(np.linalg.eigvalsh((m + m.conj().T) / 2))
    eig_dev = float(np.abs(eigs - np.array([-1.0, 1.0])).max())
    residual = max(entry_dev, herm_dev, eig_dev)
    return RelationReport(
        "-i*sigma_x*sigma_y",
        "diag(1,-1)",
        1.0,
        float(eigs[-1]),
        residual,
        residual <= tol,
    )


def _joint_projectors(p1: DenseOperator, p2: DenseOperator) -> list[DenseOperator]:
    """Four commuting joint projectors of a two-particle context, ordered
    (0,0), (0,1), (1,0), (1,1) with 1 = "fires"."""
    eye = identity(p1.dim).entries
    fire = {1: (p1.entries, p2.entries), 0: (eye - p1.entries, eye - p2.entries)}
    out = []
    for o1 in (0, 1):
        for o2 in (0, 1):
            out.append(DenseOperator(fire[o1][0] @ fire[o2][1]))
    return out


def hardy_table(p: GoldsteinParams) -> HardyTable:
    """Born-rule joint probabilities for the four commuting contexts."""
    state = goldstein_state(p)
    u1, w1, u2, w2 = uw_projectors(p)
    tables = {}
    for name, (first, second) in {
        "uu": (u1, u2),
        "wu": (w1, u2),
        "uw": (u1, w2),
        "ww": (w1, w2),
    }.items():
        probs = born_probabilities(state, _joint_projectors(first, second))
        tables[name] = probs.reshape(2, 2)
    return HardyTable(params=p, **tables)


def uw_commutator_norm(p: GoldsteinParams, i: int) -> float:
    """Spectral norm of [U_i, W_i]; zero exactly when a*x = 0 (x = b or c)."""
    if i not in (1, 2):
        raise ValueError(f"particle index must be 1 or 2, got {i!r}")
    u1, w1, u2, w2 = uw_projectors(p)
    u, w = (u1, w1) if i == 1 else (u2, w2)
    return spectral_norm(commutator(u, w))


def reports_to_text(reports) -> str:
    """Aligned human-readable table, six significant digits."""
    lines = [f"{'relation':<22} {'expected':>10} {'measured':>12} {'residual':>10}  result"]
    for r in reports:
        lines.append(
            f"{r.label:<22} {r.expected:>10.6g} {r.measured:>12.6g} "
            f"{r.residual:>10.3g}  {'pass' if r.passed else 'FAIL'}"
        )
    return "\n".join(lines)


def write_reports_csv(reports, fileobj) -> None:
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(["label", "expected", "measured", "residual", "pass"])
    for r in reports:
        writer.writerow(
            [r.label, f"{r.expected:.12g}", f"{r.measured:.12g}", f"{r.residual:.12g}",
             int(r.passed)]
        )


def reports_to_csv_text(reports) -> str:
    buf = io.StringIO()
    write_reports_csv(reports, buf)
    return buf.getvalue()
