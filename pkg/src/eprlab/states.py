"""Constructors for the named states and observables of the workbench.

Basis convention, fixed once: particle A is the most significant qubit and
spin-up is index 0, so |up,up,up> sits at index 0 and |dn,dn,dn> at the
last index.  All example amplitudes in the test suite rely on this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    STATE_TOL,
    DenseOperator,
    StateVector,
    identity,
    kron,
    kron_all,
    projector,
)

PAULI_X = DenseOperator(np.array([[0, 1], [1, 0]], dtype=np.complex128))
PAULI_Y = DenseOperator(np.array([[0, -1j], [1j, 0]], dtype=np.complex128))
PAULI_Z = DenseOperator(np.array([[1, 0], [0, -1]], dtype=np.complex128))
IDENTITY_2 = identity(2)

# Axis labels accepted in Pauli strings; "i" is the one-particle identity.
PAULI_BY_AXIS = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z, "i": IDENTITY_2}

UP = StateVector(np.array([1, 0], dtype=np.complex128))
DOWN = StateVector(np.array([0, 1], dtype=np.complex128))


@dataclass(frozen=True)
class PauliStringSpec:
    """One axis label per particle, e.g. ("x", "y", "y") for three spins."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        if not 1 <= len(labels) <= 4:
            raise ValueError(f"particle count must be in [1, 4], got {len(labels)}")
        for lab in labels:
            if lab not in PAULI_BY_AXIS:
                raise ValueError(f"invalid axis label {lab!r}; expected one of x,y,z,i")
        if all(lab == "i" for lab in labels):
            raise ValueError("Pauli string needs at least one non-identity label")
        object.__setattr__(self, "labels", labels)

    @property
    def num_particles(self) -> int:
        return len(self.labels)

    def __str__(self) -> str:
        return "".join(self.labels)


@dataclass(frozen=True)
class GoldsteinParams:
    """Coefficients (a, b, c) of the two-particle Hardy-type state.

    Construction normalizes |a|^2+|b|^2+|c|^2 to one; the raw input is kept
    for reporting.  ``abc_nonzero`` records whether the state is of the
    non-maximally-entangled kind the Hardy contradiction needs.
    """

    a: complex
    b: complex
    c: complex
    raw: tuple[complex, complex, complex] = field(init=False, repr=False)
    abc_nonzero: bool = field(init=False)

    def __post_init__(self):
        raw = (complex(self.a), complex(self.b), complex(self.c))
        if any(not (math.isfinite(z.real) and math.isfinite(z.imag)) for z in raw):
            raise ValueError("coefficients must be finite")
        norm = math.sqrt(sum(abs(z) ** 2 for z in raw))
        if norm == 0.0:
            raise ValueError("coefficients (a, b, c) must not all vanish")
        a, b, c = (z / norm for z in raw)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "raw", raw)
        object.__setattr__(self, "abc_nonzero", a != 0 and b != 0 and c != 0)


@dataclass(frozen=True)
class DirectionVector:
    """Unit vector in spin space."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))
        n = math.sqrt(self.x**2 + self.y**2 + self.z**2)
        if not math.isfinite(n) or abs(n - 1.0) > STATE_TOL:
            raise ValueError(f"direction vector must have unit norm, got {n!r}")

    @classmethod
    def in_yz_plane(cls, angle: float) -> "DirectionVector":
        """Direction at ``angle`` radians from the z axis, inside the y-z plane."""
        return cls(0.0, math.sin(angle), math.cos(angle))


def ghz_state() -> StateVector:
    """(|up,up,up> - |dn,dn,dn>) / sqrt(2)."""
    amp = np.zeros(8, dtype=np.complex128)
    amp[0] = 1 / math.sqrt(2)
    amp[7] = -1 / math.sqrt(2)
    return StateVector(amp)


def bell_phi_minus() -> StateVector:
    """(|up,up> - |dn,dn>) / sqrt(2)."""
    amp = np.zeros(4, dtype=np.complex128)
    amp[0] = 1 / math.sqrt(2)
    amp[3] = -1 / math.sqrt(2)
    return StateVector(amp)


def goldstein_state(p: GoldsteinParams) -> StateVector:
    """a|dn,dn> + b|up,dn> + c|dn,up>, with the |up,up> amplitude exactly zero."""
    amp = np.zeros(4, dtype=np.complex128)
    amp[1] = p.b  # |up,dn>
    amp[2] = p.c  # |dn,up>
    amp[3] = p.a  # |dn,dn>
    return StateVector(amp)


def beta_vector(a: complex, x: complex) -> StateVector:
    """(a|dn> + x|up>) / sqrt(|a|^2 + |x|^2), the tilted one-particle direction."""
    a = complex(a)
    x = complex(x)
    n = math.sqrt(abs(a) ** 2 + abs(x) ** 2)
    if n == 0.0:
        raise ValueError("beta vector needs (a, x) != (0, 0)")
    amp = np.array([x / n, a / n], dtype=np.complex128)
    return StateVector(amp)


def uw_projectors(
    p: GoldsteinParams,
) -> tuple[DenseOperator, DenseOperator, DenseOperator, DenseOperator]:
    """Two-particle projectors (U1, W1, U2, W2).

    U_i projects particle i onto |up>, W_i onto its beta vector; each acts
    as the identity on the other particle.
    """
    up_proj = projector(UP)
    w1 = projector(beta_vector(p.a, p.b))
    w2 = projector(beta_vector(p.a, p.c))
    u1 = kron(up_proj, IDENTITY_2)
    w1_full = kron(w1, IDENTITY_2)
    u2 = kron(IDENTITY_2, up_proj)
    w2_full = kron(IDENTITY_2, w2)
    return u1, w1_full, u2, w2_full


def pauli_string_operator(spec: PauliStringSpec | str) -> DenseOperator:
    """Tensor product of per-particle Paulis/identities in particle order."""
    if isinstance(spec, str):
        spec = PauliStringSpec(tuple(spec))
    return kron_all(PAULI_BY_AXIS[lab] for lab in spec.labels)


def direction_operator(n: DirectionVector) -> DenseOperator:
    """Spin component along n: n_x sigma_x + n_y sigma_y + n_z sigma_z."""
    m = n.x * PAULI_X.entries + n.y * PAULI_Y.entries + n.z * PAULI_Z.entries
    return DenseOperator(m)


def spin_eigenstate(axis: str, sign: int) -> StateVector:
    """Single-particle eigenstate of sigma_axis with eigenvalue sign (+1 or -1)."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    if axis == "z":
        return UP if sign == 1 else DOWN
    if axis == "x":
        amp = np.array([1, sign], dtype=np.complex128) / math.sqrt(2)
        return StateVector(amp)
    if axis == "y":
        amp = np.array([1, sign * 1j], dtype=np.complex128) / math.sqrt(2)
        return StateVector(amp)
    raise ValueError(f"invalid axis {axis!r}; expected one of x,y,z")
