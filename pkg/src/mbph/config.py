"""Configuration files: a single JSON document describing the system,
the boundary trajectory and the run parameters.

Loading fills defaults and validates; serializing emits sorted keys so
that parse -> serialize -> parse is the identity on the canonical form.
"""

import json
from pathlib import Path

import numpy as np

from .discretization import BoundaryConditions
from .domain import (
    BenchmarkTrajectory,
    BoundaryTrajectory,
    LinearTrajectory,
    PiecewiseFrozen,
    StaticTrajectory,
)
from .errors import ConfigError
from .system import PHSystem, tl_system
from .timeloop import SimConfig

_DEFAULTS = {
    "system": {"kind": "tl", "L": 1.0, "C": 1.0},
    "trajectory": {"family": "benchmark"},
    "n_elements": 10,
    "dt": None,
    "t_start": 0.0,
    "t_end": 15.0,
    "cfl_fraction": 0.5,
    "quad_order": 8,
    "quad_panels": 64,
    "output_every": 25,
    "seed": 0,
    "boundary": "analytic",
    "reference": "causal",
    "initial": "zero",
    "align_times": [7.5],
    "dirac": {"times": [0.0, 2.0, 4.0, 6.0, 7.5, 10.0], "n_samples": 100, "degree": 4},
    "converge": {"n_list": [10, 20, 40]},
}

_CHOICES = {
    "boundary": {"analytic", "zero"},
    "reference": {"causal", "smooth", "none"},
    "initial": {"zero", "reference"},
}


def demo_config() -> dict:
    """The built-in moving-segment demo: unit-parameter line, ten
    elements, benchmark trajectory, fifteen seconds."""
    return normalize_config({})


def normalize_config(raw: dict) -> dict:
    """Fill defaults and validate a raw configuration dictionary."""
    if not isinstance(raw, dict):
        raise ConfigError("configuration root must be an object")
    unknown = set(raw) - set(_DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {sorted(unknown)}")
    cfg = json.loads(json.dumps(_DEFAULTS))  # deep copy
    for key, value in raw.items():
        if isinstance(_DEFAULTS[key], dict) and isinstance(value, dict):
            bad = set(value) - set(_DEFAULTS[key]) if key in ("dirac", "converge") else set()
            if bad:
                raise ConfigError(f"unknown keys under {key!r}: {sorted(bad)}")
            cfg[key].update(value)
        else:
            cfg[key] = value

    for key, choices in _CHOICES.items():
        if cfg[key] not in choices:
            raise ConfigError(f"{key!r} must be one of {sorted(choices)}, got {cfg[key]!r}")
    if not (isinstance(cfg["n_elements"], int) and cfg["n_elements"] >= 1):
        raise ConfigError("n_elements must be an integer >= 1")
    if cfg["dt"] is not None and not cfg["dt"] > 0:
        raise ConfigError("dt must be positive or null")
    if not cfg["t_end"] > cfg["t_start"]:
        raise ConfigError("t_end must exceed t_start")
    if not (isinstance(cfg["output_every"], int) and cfg["output_every"] >= 1):
        raise ConfigError("output_every must be an integer >= 1")
    if cfg["reference"] == "none" and cfg["boundary"] == "analytic":
        raise ConfigError("boundary 'analytic' needs a reference solution; set boundary 'zero'")
    if cfg["reference"] == "none" and cfg["initial"] == "reference":
        raise ConfigError("initial 'reference' needs a reference solution")
    # constructing the objects validates the numeric content
    system_from_spec(cfg["system"])
    trajectory_from_spec(cfg["trajectory"])
    return cfg


def load_config(path) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"configuration is not valid JSON: {exc}") from exc
    return normalize_config(raw)


def dump_config(cfg: dict) -> str:
    return json.dumps(cfg, indent=2, sort_keys=True) + "\n"


def system_from_spec(spec: dict) -> PHSystem:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("system section needs a 'kind'")
    kind = spec["kind"]
    if kind == "tl":
        try:
            return tl_system(float(spec.get("L", 1.0)), float(spec.get("C", 1.0)))
        except Exception as exc:
            raise ConfigError(f"invalid line parameters: {exc}") from exc
    if kind == "matrices":
        try:
            return PHSystem(
                J0=np.asarray(spec["J0"], dtype=float),
                J1=np.asarray(spec["J1"], dtype=float),
                Q=np.asarray(spec["Q"], dtype=float),
            )
        except KeyError as exc:
            raise ConfigError(f"matrices system needs J0, J1 and Q: missing {exc}") from exc
        except Exception as exc:
            raise ConfigError(f"invalid system matrices: {exc}") from exc
    raise ConfigError(f"unknown system kind {kind!r}")


def trajectory_from_spec(spec: dict) -> BoundaryTrajectory:
    if not isinstance(spec, dict) or "family" not in spec:
        raise ConfigError("trajectory section needs a 'family'")
    family = spec["family"]
    try:
        if family == "static":
            return StaticTrajectory(float(spec["a"]), float(spec["b"]))
        if family == "linear":
            return LinearTrajectory(
                float(spec["a0"]), float(spec["b0"]), float(spec["va"]), float(spec["vb"])
            )
        if family == "benchmark":
            return BenchmarkTrajectory(float(spec.get("t_freeze", 7.5)))
        if family == "frozen":
            return PiecewiseFrozen(
                inner=trajectory_from_spec(spec["inner"]), t_freeze=float(spec["t_freeze"])
            )
    except ConfigError:
        raise
    except KeyError as exc:
        raise ConfigError(f"trajectory family {family!r} misses parameter {exc}") from exc
    except Exception as exc:
        raise ConfigError(f"invalid trajectory parameters: {exc}") from exc
    raise ConfigError(f"unknown trajectory family {family!r}")


def build_sim_config(cfg: dict, **overrides) -> SimConfig:
    """Turn a canonical configuration dictionary into a SimConfig."""
    cfg = dict(cfg)
    for key, value in overrides.items():
        if value is not None:
            cfg[key] = value
    system = system_from_spec(cfg["system"])
    trajectory = trajectory_from_spec(cfg["trajectory"])
    bc: BoundaryConditions | None = None  # derived from 'boundary'/'reference' in simulate
    if cfg["boundary"] == "zero":
        from .timeloop import zero_bc

        bc = zero_bc()
    return SimConfig(
        system=system,
        trajectory=trajectory,
        n_elements=int(cfg["n_elements"]),
        t_end=float(cfg["t_end"]),
        dt=None if cfg["dt"] is None else float(cfg["dt"]),
        t_start=float(cfg["t_start"]),
        cfl_fraction=float(cfg["cfl_fraction"]),
        quad_order=int(cfg["quad_order"]),
        quad_panels=int(cfg["quad_panels"]),
        output_every=int(cfg["output_every"]),
        seed=int(cfg["seed"]),
        bc=bc,
        reference=cfg["reference"],
        initial=cfg["initial"],
        align_times=tuple(float(t) for t in cfg["align_times"]),
    )
