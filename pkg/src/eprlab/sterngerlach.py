"""Monte Carlo simulation of the sequential Stern-Gerlach experiment.

Each shot prepares a spin polarized along +x, measures the y component,
keeps only the upper branch, measures the x component, and tallies the two
exit windows.

Randomness comes from one counter-based Philox stream keyed by the seed;
shot i owns counter block i (four 64-bit words, of which it reads at most
two).  Substreams are therefore addressed by shot index alone, so results
are bit-identical however the shots are sharded.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import born_probabilities, collapse_measure, projector
from .states import spin_eigenstate

GENERATOR_ID = "numpy-philox4x64,key=seed,counter-block=shot"

_MASK64 = (1 << 64) - 1
_CHUNK = 1 << 20  # shots per vectorized chunk

PLUS_X = spin_eigenstate("x", +1)
# Outcome index 0 is the +1 eigenstate in both bases.
Y_BASIS = (projector(spin_eigenstate("y", +1)), projector(spin_eigenstate("y", -1)))
X_BASIS = (projector(spin_eigenstate("x", +1)), projector(spin_eigenstate("x", -1)))


@dataclass(frozen=True)
class ShotRecord:
    """One shot: y outcome, post-selection flag, x outcome when selected."""

    index: int
    y_outcome: int
    selected: bool
    x_outcome: Optional[int]

    def __post_init__(self):
        if self.y_outcome not in (1, -1):
            raise ValueError("y outcome must be +1 or -1")
        if self.selected != (self.x_outcome is not None):
            raise ValueError("x outcome must be present exactly when selected")
        if self.x_outcome is not None and self.x_outcome not in (1, -1):
            raise ValueError("x outcome must be +1 or -1")


@dataclass(frozen=True)
class BranchStats:
    """Tallies of one run; frequencies carry binomial standard errors."""

    shots: int
    seed: int
    generator: str
    y_up: int
    window_a: int
    window_b: int

    def __post_init__(self):
        if self.window_a + self.window_b != self.y_up:
            raise ValueError("window counts must add up to the selected count")

    @property
    def y_up_frequency(self) -> float:
        return self.y_up / self.shots

    @property
    def y_up_stderr(self) -> float:
        f = self.y_up_frequency
        return math.sqrt(f * (1.0 - f) / self.shots)

    @property
    def window_a_frequency(self) -> float:
        return self.window_a / self.y_up if self.y_up else math.nan

    @property
    def window_b_frequency(self) -> float:
        return self.window_b / self.y_up if self.y_up else math.nan

    @property
    def window_a_stderr(self) -> float:
        if not self.y_up:
            return math.nan
        f = self.window_a_frequency
        return math.sqrt(f * (1.0 - f) / self.y_up)


@dataclass(frozen=True)
class BranchProbabilities:
    """Exact Born-rule tree of the sequence."""

    p_y_up: float
    p_x_up_given_y_up: float
    p_window_a: float


def _shot_rng(seed: int, shot: int) -> np.random.Generator:
    """Generator positioned at the start of the shot's counter block."""
    bg = np.random.Philox(key=seed & _MASK64)
    bg.advance(shot)
    return np.random.Generator(bg)


def simulate_shot(shot: int, seed: int) -> ShotRecord:
    """Run one shot through the full collapse machinery."""
    rng = _shot_rng(seed, shot)
    first = collapse_measure(PLUS_X, Y_BASIS, float(rng.random()))
    y = +1 if first.outcome_index == 0 else -1
    if y != +1:
        return ShotRecord(index=shot, y_outcome=y, selected=False, x_outcome=None)
    second = collapse_measure(first.post_state, X_BASIS, float(rng.random()))
    x = +1 if second.outcome_index == 0 else -1
    return ShotRecord(index=shot, y_outcome=y, selected=True, x_outcome=x)


def _measurement_thresholds() -> tuple[float, float]:
    """Cumulative thresholds of the two-step tree, from the Born rule.

    The pre-measurement states are fixed (|+x>, then the y-up branch), so
    each shot's collapse reduces to comparing its two uniforms against
    these constants; this replays collapse_measure exactly.
    """
    p_y = born_probabilities(PLUS_X, Y_BASIS)
    up_branch = collapse_measure(PLUS_X, Y_BASIS, 0.0).post_state
    p_x = born_probabilities(up_branch, X_BASIS)
    return float(p_y[0]), float(p_x[0])


def _tally(seed: int, start: int, stop: int) -> tuple[int, int, int]:
    """(y_up, window_a, window_b) over the shot index range [start, stop)."""
    t_y, t_x = _measurement_thresholds()
    y_up = window_a = 0
    for chunk_start in range(start, stop, _CHUNK):
        chunk_stop = min(chunk_start + _CHUNK, stop)
        n = chunk_stop - chunk_start
        bg = np.random.Philox(key=seed & _MASK64)
        bg.advance(chunk_start)
        draws = np.random.Generator(bg).random(4 * n)
        u1 = draws[0::4]
        u2 = draws[1::4]
        selected = u1 < t_y
        y_up += int(selected.sum())
        window_a += int((selected & (u2 < t_x)).sum())
    return y_up, window_a, y_up - window_a


def run_sequence(shots: int, seed: int) -> BranchStats:
    """Simulate the full sequence; deterministic for a fixed seed."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    y_up, window_a, window_b = _tally(seed, 0, shots)
    return BranchStats(
        shots=shots,
        seed=seed,
        generator=GENERATOR_ID,
        y_up=y_up,
        window_a=window_a,
        window_b=window_b,
    )


def branch_probabilities() -> BranchProbabilities:
    """Exact probability table: P(y=+1), P(x=+1 | y=+1), P(window a)."""
    t_y, t_x = _measurement_thresholds()
    return BranchProbabilities(
        p_y_up=t_y, p_x_up_given_y_up=t_x, p_window_a=t_y * t_x
    )


def _stat_items(stats: BranchStats) -> list[tuple[str, str]]:
    return [
        ("shots", str(stats.shots)),
        ("seed", str(stats.seed)),
        ("generator", stats.generator),
        ("y_up", str(stats.y_up)),
        ("window_a", str(stats.window_a)),
        ("window_b", str(stats.window_b)),
        ("y_up_frequency", f"{stats.y_up_frequency:.12g}"),
        ("y_up_stderr", f"{stats.y_up_stderr:.12g}"),
        ("window_a_frequency", f"{stats.window_a_frequency:.12g}"),
        ("window_b_frequency", f"{stats.window_b_frequency:.12g}"),
        ("window_a_stderr", f"{stats.window_a_stderr:.12g}"),
    ]


def stats_to_lines(stats: BranchStats) -> str:
    """key=value serialization; always names the seed and the generator."""
    return "\n".join(f"{k}={v}" for k, v in _stat_items(stats)) + "\n"


def stats_to_csv_text(stats: BranchStats) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    items = _stat_items(stats)
    writer.writerow([k for k, _ in items])
    writer.writerow([v for _, v in items])
    return buf.getvalue()
