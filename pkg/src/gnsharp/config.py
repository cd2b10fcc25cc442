"""Numerical knobs shared by the quadrature and contour evaluators."""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import ParameterError


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-10
    max_panels: int = 4000
    osc_accel_terms: int = 40
    truncation_safety: float = 10.0
    # Mellin-Barnes line integrals
    mb_tol: float = 1e-13
    mb_max_height: float = 400.0
    # trial-family regularization grid
    eps_min: float = 0.01
    eps_max: float = 5.0
    eps_step: float = 0.01
    refine_eps: bool = False
    # rotated-contour Hankel transform
    contour_angle: float = 0.7853981633974483
    rho_max: float = 1e7
    workers: int = 0

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0 or self.mb_tol <= 0:
            raise ParameterError("tolerances must be positive")
        if self.max_panels < 16:
            raise ParameterError("max_panels must be at least 16")
        if not 0 < self.eps_min <= self.eps_max or self.eps_step <= 0:
            raise ParameterError("invalid eps grid bounds")
        if not 0 < self.contour_angle < 1.5707963267948966:
            raise ParameterError("contour_angle must lie in (0, pi/2)")

    def eps_grid(self):
        import numpy as np

        count = int(round((self.eps_max - self.eps_min) / self.eps_step)) + 1
        return np.round(self.eps_min + self.eps_step * np.arange(count), 12)

    def worker_count(self) -> int:
        """Worker cap: explicit setting, else GNS_THREADS, else 1."""
        if self.workers > 0:
            return self.workers
        env = os.environ.get("GNS_THREADS", "").strip()
        if env:
            try:
                return max(1, int(env))
            except ValueError as exc:
                raise ParameterError(f"GNS_THREADS must be an integer, got {env!r}") from exc
        return 1

    def updated(self, **changes) -> "QuadratureConfig":
        return replace(self, **changes)

    @classmethod
    def from_mapping(cls, mapping: dict) -> "QuadratureConfig":
        """Build from string key/value pairs, e.g. a parsed config file."""
        types = {f.name: f.type for f in fields(cls)}
        kwargs = {}
        for key, raw in mapping.items():
            if key not in types:
                raise ParameterError(f"unknown config key {key!r}")
            kind = types[key]
            try:
                if kind == "bool":
                    kwargs[key] = str(raw).strip().lower() in ("1", "true", "yes", "on")
                elif kind == "int":
                    kwargs[key] = int(raw)
                else:
                    kwargs[key] = float(raw)
            except ValueError as exc:
                raise ParameterError(f"bad value for {key}: {raw!r}") from exc
        return cls(**kwargs)


def read_config_file(path: str) -> dict:
    """Parse a key=value file; '#' starts a comment."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


DEFAULT_CONFIG = QuadratureConfig()
