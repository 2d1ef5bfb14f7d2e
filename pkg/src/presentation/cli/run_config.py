"""
Run configuration.
Command-line values merged over config.yaml, validated before any computation.
"""
from pathlib import Path
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.business.floquet.integrator import MAX_TOL, MIN_TOL
from src.business.spectrum import EnergyBox
from src.custom_types import Command, OutputFormat

SVG_COMMANDS = {Command.DISCRIMINANT, Command.SPECTRUM}


class RunConfig(BaseModel):
    spec_path: Path = Field(description="Potential spec JSON file")
    command: Command
    ode_tol: float = Field(default=1e-10, ge=MIN_TOL, le=MAX_TOL)
    trace_tol: float = Field(default=1e-8, ge=MIN_TOL, le=MAX_TOL)
    window: Optional[Tuple[float, float]] = None
    box: Optional[Tuple[float, float, float, float]] = None
    grid: int = Field(default=16, ge=4)
    points: int = Field(default=601, ge=2)
    out: Optional[Path] = None
    format: OutputFormat = OutputFormat.JSON
    parameter: str = Field(default="A", pattern=r"^[A-Za-z_][A-Za-z0-9_]*$")
    values: Optional[Tuple[float, float, int]] = Field(
        default=None, description="Amplitude sweep start, stop and count")

    @model_validator(mode="after")
    def check_ranges(self) -> 'RunConfig':
        if self.window is not None and not self.window[0] < self.window[1]:
            raise ValueError(f"window must satisfy A < B, got {self.window}")
        if self.box is not None:
            re_min, re_max, im_min, im_max = self.box
            if not (re_min < re_max and im_min <= im_max):
                raise ValueError(f"box must satisfy A < B and C <= D, got {self.box}")
        if self.format == OutputFormat.SVG and self.command not in SVG_COMMANDS:
            raise ValueError(f"{self.command.value} does not support svg output")
        if self.command == Command.DISCRIMINANT:
            if self.window is None and self.box is None:
                raise ValueError("discriminant needs --window or --box")
            if self.format == OutputFormat.SVG and self.window is None:
                raise ValueError("svg discriminant plots need --window")
        if self.command == Command.VERIFY and self.box is None:
            raise ValueError("verify needs --box")
        if self.command == Command.SCAN_FAMILY:
            if self.window is None or self.values is None:
                raise ValueError("scan-family needs --window and --values")
            if self.values[2] < 1:
                raise ValueError(f"--values needs a positive count, got {self.values[2]}")
        return self

    @property
    def energy_box(self) -> Optional[EnergyBox]:
        return EnergyBox(*self.box) if self.box is not None else None

    @property
    def amplitudes(self) -> Tuple[float, ...]:
        start, stop, count = self.values
        return tuple(float(v) for v in np.linspace(start, stop, int(count)))
