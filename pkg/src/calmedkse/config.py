"""Run configuration shared by the time stepper, experiment harness, and CLI."""

from __future__ import annotations

from dataclasses import dataclass

from .dynamics import EquationForm

PRESETS = ("grad-sines", "high-osc", "custom")

DEFAULT_N = 128
DEFAULT_DT = 4.2943e-4
DEFAULT_LAMBDA = 4.1
DEFAULT_T = 1.0
DEFAULT_SNAPSHOT_EVERY = 0.1


@dataclass(frozen=True)
class RunConfig:
    """Everything a single time-integration run needs.

    ``T = 0`` is allowed and produces a trajectory holding only the initial
    state (useful for inspecting initial data through the same pipeline).
    """

    form: EquationForm
    n: int = DEFAULT_N
    dt: float = DEFAULT_DT
    T: float = DEFAULT_T
    snapshot_every: float = DEFAULT_SNAPSHOT_EVERY
    initial: str = "grad-sines"
    initial_file: str | None = None
    output_dir: str | None = None

    def __post_init__(self) -> None:
        if self.n % 2 != 0:
            raise ValueError(f"n must be even, got {self.n}")
        if not self.dt > 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if self.T < 0.0:
            raise ValueError(f"T must be >= 0, got {self.T}")
        if self.T > 0.0 and self.dt > self.T * (1.0 + 1e-12):
            raise ValueError(f"dt={self.dt} exceeds horizon T={self.T}")
        if not self.snapshot_every > 0.0:
            raise ValueError(f"snapshot_every must be > 0, got {self.snapshot_every}")
        if self.initial not in PRESETS:
            raise ValueError(f"unknown initial preset {self.initial!r}; expected one of {PRESETS}")
        if self.initial == "custom" and not self.initial_file:
            raise ValueError("initial='custom' requires initial_file")
