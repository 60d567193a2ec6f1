"""Bell-inequality landscape over the angle plane.

The two test directions sit at angles alpha and beta from the reference
direction, all inside the y-z plane of spin space, where the two-particle
correlation of the Bell state is exactly the cosine of the angle between
the directions.  The landscape value is

    f(alpha, beta) = |cos(alpha) - cos(beta)| + cos(beta - alpha),

bounded by 1 for any local theory; the scan maps where quantum mechanics
exceeds the bound and how that region relates to the non-commutativity of
the two measured spin components (norm 2|sin(beta - alpha)|).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .linalg import expectation, kron
from .states import DirectionVector, bell_phi_minus, direction_operator

TWO_PI = 2.0 * math.pi
MIN_RESOLUTION = 8

# Guard above the classical bound so the f = 1 ridge never counts as
# violation under rounding.
VIOLATION_EPS = 1e-9


@dataclass(frozen=True)
class AngleGrid:
    """Uniform cells over the torus [0, 2pi) x [0, 2pi)."""

    resolution: int

    def __post_init__(self):
        if self.resolution < MIN_RESOLUTION:
            raise ValueError(
                f"resolution must be at least {MIN_RESOLUTION}, got {self.resolution}"
            )

    def angles(self) -> np.ndarray:
        return np.arange(self.resolution) * (TWO_PI / self.resolution)

    @property
    def spacing(self) -> float:
        return TWO_PI / self.resolution


@dataclass(frozen=True)
class LandscapeCell:
    alpha: float
    beta: float
    f: float
    violation: bool
    comm_norm: float


@dataclass(frozen=True)
class ViolationRegion:
    """4-connected component of violating cells on the torus."""

    members: tuple[tuple[int, int], ...]  # (beta_index, alpha_index)
    peak_value: float
    peak_alpha: float
    peak_beta: float

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ScanResult:
    grid: AngleGrid
    cells: tuple[LandscapeCell, ...]  # row-major in beta
    regions: tuple[ViolationRegion, ...]


def analytic_correlation(angle: float) -> float:
    """Two-particle correlation as a function of the angle between directions."""
    if not math.isfinite(angle):
        raise ValueError("angle must be finite")
    return math.cos(angle)


def quantum_correlation(n_b: DirectionVector, n_c: DirectionVector) -> float:
    """<(n_b . sigma) x (n_c . sigma)> on the two-particle Bell state."""
    op = kron(direction_operator(n_b), direction_operator(n_c))
    value = expectation(bell_phi_minus(), op)
    return value.real


def f_value(alpha: float, beta: float) -> float:
    """|cos(alpha) - cos(beta)| + cos(beta - alpha)."""
    if not (math.isfinite(alpha) and math.isfinite(beta)):
        raise ValueError("angles must be finite")
    return abs(math.cos(alpha) - math.cos(beta)) + math.cos(beta - alpha)


def f_value_quantum(alpha: float, beta: float) -> float:
    """Same landscape value, but computed from Bell-state expectations."""
    ref = DirectionVector.in_yz_plane(0.0)
    b = DirectionVector.in_yz_plane(alpha)
    c = DirectionVector.in_yz_plane(beta)
    return abs(
        quantum_correlation(ref, b) - quantum_correlation(ref, c)
    ) + quantum_correlation(b, c)


def _f_matrix(grid: AngleGrid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(F, comm, angles) with F[j, i] = f(alpha_i, beta_j)."""
    angles = grid.angles()
    alpha = angles[np.newaxis, :]
    beta = angles[:, np.newaxis]
    f = np.abs(np.cos(alpha) - np.cos(beta)) + np.cos(beta - alpha)
    comm = 2.0 * np.abs(np.sin(beta - alpha))
    return f, comm, angles


def _label_regions(violating: np.ndarray) -> list[list[tuple[int, int]]]:
    """4-connected components with periodic wraparound, found by flood fill."""
    res = violating.shape[0]
    labels = np.full(violating.shape, -1, dtype=np.int64)
    components: list[list[tuple[int, int]]] = []
    for j0, i0 in zip(*np.nonzero(violating)):
        if labels[j0, i0] >= 0:
            continue
        index = len(components)
        stack = [(int(j0), int(i0))]
        labels[j0, i0] = index
        members = []
        while stack:
            j, i = stack.pop()
            members.append((j, i))
            for dj, di in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nj, ni = (j + dj) % res, (i + di) % res
                if violating[nj, ni] and labels[nj, ni] < 0:
                    labels[nj, ni] = index
                    stack.append((nj, ni))
        components.append(sorted(members))
    return components


def scan(grid: AngleGrid) -> ScanResult:
    """Evaluate every cell and group violating cells into torus regions."""
    f, comm, angles = _f_matrix(grid)
    violating = f > 1.0 + VIOLATION_EPS
    cells = []
    res = grid.resolution
    for j in range(res):
        for i in range(res):
            cells.append(
                LandscapeCell(
                    alpha=float(angles[i]),
                    beta=float(angles[j]),
                    f=float(f[j, i]),
                    violation=bool(violating[j, i]),
                    comm_norm=float(comm[j, i]),
                )
            )
    regions = []
    for members in _label_regions(violating):
        peak_j, peak_i = max(members, key=lambda ji: f[ji[0], ji[1]])
        regions.append(
            ViolationRegion(
                members=tuple(members),
                peak_value=float(f[peak_j, peak_i]),
                peak_alpha=float(angles[peak_i]),
                peak_beta=float(angles[peak_j]),
            )
        )
    regions.sort(key=lambda r: (-r.peak_value, r.peak_beta, r.peak_alpha))
    return ScanResult(grid=grid, cells=tuple(cells), regions=tuple(regions))


def _golden_max(func, lo: float, hi: float, tol: float) -> float:
    """Golden-section maximizer of a unimodal function on [lo, hi]."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    x1 = b - inv_phi * (b - a)
    x2 = a + inv_phi * (b - a)
    f1, f2 = func(x1), func(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + inv_phi * (b - a)
            f2 = func(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - inv_phi * (b - a)
            f1 = func(x1)
    return (a + b) / 2.0


def max_violation(grid: AngleGrid, angle_tol: float = 1e-9) -> tuple[float, float, float]:
    """Argmax cell of the scan refined by alternating golden-section search.

    Returns (alpha*, beta*, f*); the refinement converges well below
    angle_tol because the landscape is smooth and locally concave at its
    peaks.
    """
    f, _, angles = _f_matrix(grid)
    j, i = np.unravel_index(int(np.argmax(f)), f.shape)
    alpha, beta = float(angles[i]), float(angles[j])
    h = grid.spacing
    for _ in range(40):
        new_alpha = _golden_max(lambda t: f_value(t, beta), alpha - h, alpha + h,
                                tol=angle_tol * 1e-3)
        new_beta = _golden_max(lambda t: f_value(new_alpha, t), beta - h, beta + h,
                               tol=angle_tol * 1e-3)
        moved = max(abs(new_alpha - alpha), abs(new_beta - beta))
        alpha, beta = new_alpha, new_beta
        if moved < angle_tol * 1e-2:
            break
    return alpha, beta, f_value(alpha, beta)


def cells_to_csv_text(cells) -> str:
    cells = list(cells)
    if not cells:
        raise ValueError("no cells to export")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha", "beta", "f", "violation", "comm_norm"])
    for c in cells:
        writer.writerow(
            [f"{c.alpha:.12g}", f"{c.beta:.12g}", f"{c.f:.12g}", int(c.violation),
             f"{c.comm_norm:.12g}"]
        )
    return buf.getvalue()


def cells_to_pgm_text(cells) -> str:
    """16-bit ASCII PGM, one image row per beta value, f mapped to [0, 65535]."""
    cells = list(cells)
    if not cells:
        raise ValueError("no cells to export")
    rows: list[list[LandscapeCell]] = []
    betas: dict[float, int] = {}
    for c in cells:
        if c.beta not in betas:
            betas[c.beta] = len(rows)
            rows.append([])
        rows[betas[c.beta]].append(c)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("cells do not form a full rectangular grid")
    values = np.array([[c.f for c in row] for row in rows], dtype=np.float64)
    lo, hi = float(values.min()), float(values.max())
    if hi > lo:
        pixels = np.rint((values - lo) / (hi - lo) * 65535.0).astype(np.int64)
    else:
        pixels = np.zeros_like(values, dtype=np.int64)
    lines = ["P2", f"{width} {len(rows)}", "65535"]
    for row in pixels:
        # 11 five-digit values per line stays under the 70-char PGM limit
        for start in range(0, width, 11):
            lines.append(" ".join(str(v) for v in row[start : start + 11]))
    return "\n".join(lines) + "\n"


def export(cells, path, fmt: str) -> None:
    """Write a scan to disk as CSV or ASCII PGM."""
    if fmt == "csv":
        text = cells_to_csv_text(cells)
    elif fmt == "pgm":
        text = cells_to_pgm_text(cells)
    else:
        raise ValueError(f"unknown export format {fmt!r}; expected csv or pgm")
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(text)
