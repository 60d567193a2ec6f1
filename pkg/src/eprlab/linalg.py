"""Exact dense complex linear algebra for few-spin verification work.

Everything lives in dimension 2^n with n <= 4 spins, so all matrices stay
dense and every check is a direct numpy computation.  Values are immutable
after construction and all operations are pure functions; callers supply
their own randomness where an operation needs it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DIM = 16

# Structural identities between exactly representable matrices.
STRUCT_TOL = 1e-14
# State-level checks: norms, eigenrelation residuals, Born sums.
STATE_TOL = 1e-12

# Outcomes this improbable are never collapsed into (division hazard).
MIN_OUTCOME_PROB = 1e-15


def _as_complex_array(values, shape_name: str) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{shape_name} contains non-finite entries")
    return arr


def _check_power_of_two(dim: int, what: str) -> None:
    if dim < 1 or dim > MAX_DIM or (dim & (dim - 1)) != 0:
        raise ValueError(
            f"{what} dimension must be a power of two in [1, {MAX_DIM}], got {dim}"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex amplitude vector of dimension 2^n, n <= 4."""

    amplitudes: np.ndarray

    def __post_init__(self):
        arr = _as_complex_array(self.amplitudes, "state vector")
        if arr.ndim != 1:
            raise ValueError("state vector must be one-dimensional")
        _check_power_of_two(arr.shape[0], "state vector")
        nsq = float(np.sum(np.abs(arr) ** 2))
        if abs(nsq - 1.0) > STATE_TOL:
            raise ValueError(f"state vector not normalized: sum |amp|^2 = {nsq!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def num_particles(self) -> int:
        return self.dim.bit_length() - 1

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "StateVector") -> complex:
        """Inner product <self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def normalized_state(amplitudes) -> StateVector:
    """Build a StateVector from an unnormalized amplitude list."""
    arr = _as_complex_array(amplitudes, "state vector")
    n = np.linalg.norm(arr)
    if n == 0.0:
        raise ValueError("cannot normalize the zero vector")
    return StateVector(arr / n)


@dataclass(frozen=True, eq=False)
class DenseOperator:
    """Square complex matrix acting on a StateVector."""

    entries: np.ndarray

    def __post_init__(self):
        arr = _as_complex_array(self.entries, "operator")
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"operator must be square, got shape {arr.shape}")
        _check_power_of_two(arr.shape[0], "operator")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def apply(self, state: StateVector) -> np.ndarray:
        """Raw matrix-vector product (not renormalized)."""
        _check_same_dim(self, state)
        return self.entries @ state.amplitudes

    def dagger(self) -> "DenseOperator":
        return DenseOperator(self.entries.conj().T)

    def is_hermitian(self, tol: float = STATE_TOL) -> bool:
        return float(np.abs(self.entries - self.entries.conj().T).max()) <= tol


@dataclass(frozen=True)
class MeasurementRecord:
    """Outcome of one projective measurement: index, Born probability, post state."""

    outcome_index: int
    probability: float
    post_state: StateVector


def identity(dim: int) -> DenseOperator:
    _check_power_of_two(dim, "identity")
    return DenseOperator(np.eye(dim, dtype=np.complex128))


def projector(state: StateVector) -> DenseOperator:
    """Rank-one projector |state><state|."""
    v = state.amplitudes
    return DenseOperator(np.outer(v, v.conj()))


def _check_same_dim(a, b) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def kron(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    """Tensor product; entry ((i,k),(j,l)) = a[i,j] * b[k,l]."""
    d = a.dim * b.dim
    if d > MAX_DIM:
        raise ValueError(f"tensor product dimension {d} exceeds maximum {MAX_DIM}")
    return DenseOperator(np.kron(a.entries, b.entries))


def kron_all(operators) -> DenseOperator:
    """Left-to-right tensor product of a sequence of operators."""
    ops = list(operators)
    if not ops:
        raise ValueError("empty operator sequence")
    out = ops[0]
    for op in ops[1:]:
        out = kron(out, op)
    return out


def commutator(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    _check_same_dim(a, b)
    return DenseOperator(a.entries @ b.entries - b.entries @ a.entries)


def anticommutator(a: DenseOperator, b: DenseOperator) -> DenseOperator:
    _check_same_dim(a, b)
    return DenseOperator(a.entries @ b.entries + b.entries @ a.entries)


def spectral_norm(op: DenseOperator) -> float:
    """Largest singular value."""
    return float(np.linalg.norm(op.entries, 2))


def expectation(state: StateVector, op: DenseOperator) -> complex:
    """<state|op|state>.  Real to STATE_TOL whenever op is Hermitian."""
    _check_same_dim(op, state)
    return complex(np.vdot(state.amplitudes, op.entries @ state.amplitudes))


def eigencheck(op: DenseOperator, state: StateVector, tol: float = STATE_TOL):
    """Eigenvalue of op on state, or None if state is not an eigenstate.

    The candidate eigenvalue is the Rayleigh quotient <state|op|state>;
    membership holds when ||op state - lambda state|| <= tol.
    """
    lam, residual = rayleigh_residual(op, state)
    return lam if residual <= tol else None


def rayleigh_residual(op: DenseOperator, state: StateVector) -> tuple[complex, float]:
    """Rayleigh quotient of op on state and the eigenrelation residual norm."""
    _check_same_dim(op, state)
    image = op.entries @ state.amplitudes
    lam = complex(np.vdot(state.amplitudes, image))
    residual = float(np.linalg.norm(image - lam * state.amplitudes))
    return lam, residual


def _validate_projector_family(projectors, dim: int, tol: float) -> None:
    total = np.zeros((dim, dim), dtype=np.complex128)
    for k, p in enumerate(projectors):
        if p.dim != dim:
            raise ValueError(f"projector {k} has dimension {p.dim}, expected {dim}")
        m = p.entries
        herm = float(np.abs(m - m.conj().T).max())
        if herm > tol:
            raise ValueError(f"projector {k} is not Hermitian (deviation {herm:.3e})")
        idem = float(np.abs(m @ m - m).max())
        if idem > tol:
            raise ValueError(f"projector {k} is not idempotent (deviation {idem:.3e})")
        total = total + m
    dev = float(np.abs(total - np.eye(dim)).max())
    if dev > tol:
        raise ValueError(f"projectors do not sum to identity (deviation {dev:.3e})")


def born_probabilities(
    state: StateVector, projectors, tol: float = STATE_TOL
) -> np.ndarray:
    """Born-rule outcome probabilities of a complete projective measurement.

    The projectors must be Hermitian, idempotent, and sum to the identity,
    each within tol; violations are rejected with a diagnostic.
    """
    projectors = list(projectors)
    if not projectors:
        raise ValueError("empty projector family")
    _validate_projector_family(projectors, state.dim, tol)
    psi = state.amplitudes
    probs = np.array(
        [np.vdot(psi, p.entries @ psi).real for p in projectors], dtype=np.float64
    )
    if probs.min() < -tol or probs.max() > 1.0 + tol:
        raise ValueError(f"Born probabilities out of range: {probs!r}")
    if abs(probs.sum() - 1.0) > tol:
        raise ValueError(f"Born probabilities sum to {probs.sum()!r}, expected 1")
    return probs


def collapse_measure(
    state: StateVector, projectors, rand01: float, tol: float = STATE_TOL
) -> MeasurementRecord:
    """Projective measurement collapse driven by a caller-supplied uniform.

    The outcome is the first index k whose cumulative Born probability
    exceeds rand01; the post state is P_k|state> renormalized.  Keeping the
    uniform an argument keeps the operation deterministic and replayable.
    """
    if not 0.0 <= rand01 < 1.0:
        raise ValueError(f"rand01 must lie in [0, 1), got {rand01!r}")
    projectors = list(projectors)
    probs = born_probabilities(state, projectors, tol)
    cumulative = np.cumsum(probs)
    k = int(np.searchsorted(cumulative, rand01, side="right"))
    if k >= len(probs):  # rounding pushed the total slightly below rand01
        k = len(probs) - 1
    p = float(probs[k])
    if p < MIN_OUTCOME_PROB:
        raise ValueError(
            f"outcome {k} has probability {p:.3e} < {MIN_OUTCOME_PROB}; refusing to collapse"
        )
    post = projectors[k].entries @ state.amplitudes
    post = post / np.sqrt(p)
    return MeasurementRecord(outcome_index=k, probability=p, post_state=StateVector(post))
