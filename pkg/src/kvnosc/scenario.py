"""Scenario configuration: presets, key-value files, overrides, hashing.

A scenario bundles everything a run needs: the frequency profile, auxiliary
initial data, the initial Gaussian density, integration controls, snapshot
times, and the RNG seed.  Scenarios hash to a short hex digest recorded in
every output file so downstream consumers can refuse mismatched inputs.

Config file grammar (one assignment per line):

    # comment
    key = value

with keys: label, profile (hyperbolic | inverse_quadratic | oscillatory |
constant | tabulated), beta, gamma, delta, omega, k0, knots (t:k pairs
separated by ';'), rho0, rho_dot0, xc0, pc0, sigma_x, sigma_p, t_end, step,
seed, method (rk4 | rk45), snapshots (comma-separated times).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from typing import Mapping

from .errors import ConfigError
from .freq import (
    Constant,
    FrequencyProfile,
    Hyperbolic,
    InverseQuadratic,
    Oscillatory,
    Tabulated,
    profile_label,
)

_PROFILE_KEYS = {
    "hyperbolic": ("beta",),
    "inverse_quadratic": ("gamma",),
    "oscillatory": ("delta", "omega"),
    "constant": ("k0",),
    "tabulated": ("knots",),
}

_FLOAT_KEYS = (
    "beta", "gamma", "delta", "omega", "k0",
    "rho0", "rho_dot0", "xc0", "pc0", "sigma_x", "sigma_p",
    "t_end", "step",
)
_KNOWN_KEYS = set(_FLOAT_KEYS) | {
    "label", "profile", "knots", "seed", "method", "snapshots",
}


@dataclass(frozen=True)
class Scenario:
    label: str
    profile: FrequencyProfile
    rho0: float = 1.0
    rho_dot0: float = 0.0
    xc0: float = 0.0
    pc0: float = 0.0
    sigma_x: float = 1.0
    sigma_p: float = 1.0
    t_end: float = 10.0
    step: float = 1e-3
    seed: int = 2024
    method: str = "rk4"
    snapshots: "tuple[float, ...]" = (0.0, 2.5, 5.0)

    def canonical_items(self) -> "list[tuple[str, str]]":
        return [
            ("label", self.label),
            ("profile", profile_label(self.profile)),
            ("rho0", repr(self.rho0)),
            ("rho_dot0", repr(self.rho_dot0)),
            ("xc0", repr(self.xc0)),
            ("pc0", repr(self.pc0)),
            ("sigma_x", repr(self.sigma_x)),
            ("sigma_p", repr(self.sigma_p)),
            ("t_end", repr(self.t_end)),
            ("step", repr(self.step)),
            ("seed", repr(self.seed)),
            ("method", self.method),
            ("snapshots", ",".join(repr(s) for s in self.snapshots)),
        ]

    @property
    def hash(self) -> str:
        blob = "\n".join(f"{k}={v}" for k, v in self.canonical_items())
        return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _build_profile(kind: str, values: Mapping[str, str]) -> FrequencyProfile:
    if kind not in _PROFILE_KEYS:
        raise ConfigError(
            f"unknown profile {kind!r}; expected one of {sorted(_PROFILE_KEYS)}"
        )
    missing = [k for k in _PROFILE_KEYS[kind] if k not in values]
    if missing:
        raise ConfigError(f"profile {kind!r} needs keys {missing}")
    if kind == "hyperbolic":
        return Hyperbolic(beta=_to_float("beta", values["beta"]))
    if kind == "inverse_quadratic":
        return InverseQuadratic(gamma=_to_float("gamma", values["gamma"]))
    if kind == "oscillatory":
        return Oscillatory(
            delta=_to_float("delta", values["delta"]),
            omega=_to_float("omega", values["omega"]),
        )
    if kind == "constant":
        return Constant(k0=_to_float("k0", values["k0"]))
    knots = []
    for pair in values["knots"].split(";"):
        pair = pair.strip()
        if not pair:
            continue
        try:
            t_str, k_str = pair.split(":")
            knots.append((float(t_str), float(k_str)))
        except ValueError as exc:
            raise ConfigError(f"bad knot {pair!r}: want t:k") from exc
    if len(knots) < 2:
        raise ConfigError("tabulated profile needs at least two t:k knots")
    return Tabulated(
        times=tuple(t for t, _ in knots), values=tuple(k for _, k in knots)
    )


def _to_float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"key {key!r}: cannot parse {raw!r} as number") from exc


def parse_scenario_file(path) -> "dict[str, str]":
    """Read a flat key=value file; '#' starts a comment."""
    out: "dict[str, str]" = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            if "=" not in body:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, _, value = body.partition("=")
            key = key.strip()
            if key not in _KNOWN_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            out[key] = value.strip()
    return out


def scenario_from_values(values: Mapping[str, str], default_label: str = "run") -> Scenario:
    """Assemble a Scenario from string key-value pairs (file or CLI)."""
    unknown = set(values) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown keys: {sorted(unknown)}")
    if "profile" not in values:
        raise ConfigError("scenario needs a 'profile' key")
    profile = _build_profile(values["profile"].strip().lower(), values)
    kwargs = {}
    for key in ("rho0", "rho_dot0", "xc0", "pc0", "sigma_x", "sigma_p",
                "t_end", "step"):
        if key in values:
            kwargs[key] = _to_float(key, values[key])
    if "seed" in values:
        try:
            kwargs["seed"] = int(values["seed"])
        except ValueError as exc:
            raise ConfigError(f"seed: cannot parse {values['seed']!r}") from exc
    if "method" in values:
        method = values["method"].strip()
        if method not in ("rk4", "rk45"):
            raise ConfigError(f"method must be rk4 or rk45, got {method!r}")
        kwargs["method"] = method
    if "snapshots" in values:
        try:
            kwargs["snapshots"] = tuple(
                float(s) for s in values["snapshots"].split(",") if s.strip()
            )
        except ValueError as exc:
            raise ConfigError(
                f"snapshots: cannot parse {values['snapshots']!r}"
            ) from exc
    label = values.get("label", default_label)
    scenario = Scenario(label=label, profile=profile, **kwargs)
    _validate(scenario)
    return scenario


def _validate(s: Scenario) -> None:
    import math

    numeric = [s.rho0, s.rho_dot0, s.xc0, s.pc0, s.sigma_x, s.sigma_p,
               s.t_end, s.step, *s.snapshots]
    if not all(math.isfinite(v) for v in numeric):
        raise ConfigError("all numeric scenario fields must be finite")
    if s.step <= 0:
        raise ConfigError(f"step must be positive, got {s.step!r}")
    if s.t_end < 0:
        raise ConfigError(f"t_end must be nonnegative, got {s.t_end!r}")


def preset_scenarios(name: str) -> "list[Scenario]":
    """Named presets behind the two figure scenarios plus a constant check.

    fig1 sweeps the hyperbolic pulse over beta in {0.5, 1.0, 2.0} (the
    source scenario leaves beta open) with the auxiliary initial data set
    to the closed form's values (rho0 = 1/beta, rho_dot0 = 0) and centre
    (-3, 3).  fig2 is the oscillatory profile delta=0.5, omega=2.5 with
    rho0=1, rho_dot0=0 and centre (2, 2).  constant is k0=1 with centre
    (-3, 3), whose evolution is a pure rotation.
    """
    if name == "fig1":
        return [
            Scenario(
                label=f"fig1_beta{beta}",
                profile=Hyperbolic(beta=beta),
                rho0=1.0 / beta,
                rho_dot0=0.0,
                xc0=-3.0,
                pc0=3.0,
            )
            for beta in (0.5, 1.0, 2.0)
        ]
    if name == "fig2":
        return [
            Scenario(
                label="fig2",
                profile=Oscillatory(delta=0.5, omega=2.5),
                xc0=2.0,
                pc0=2.0,
            )
        ]
    if name == "constant":
        return [
            Scenario(
                label="constant",
                profile=Constant(k0=1.0),
                xc0=-3.0,
                pc0=3.0,
            )
        ]
    raise ConfigError(
        f"unknown preset {name!r}; expected fig1, fig2 or constant"
    )


def build_scenarios(
    preset: "str | None" = None,
    scenario_file=None,
    overrides: "Mapping[str, str] | None" = None,
) -> "list[Scenario]":
    """Resolve preset, optional file and CLI overrides into scenarios.

    Precedence: preset values < file values < override flags.
    """
    overrides = dict(overrides or {})
    file_values = parse_scenario_file(scenario_file) if scenario_file else {}
    if preset is None and not file_values:
        raise ConfigError("need --preset and/or --scenario to define a run")

    if preset is None:
        merged = {**file_values, **overrides}
        return [scenario_from_values(merged)]

    merged = {**file_values, **overrides}
    if "profile" in merged:
        raise ConfigError(
            "--preset already fixes the profile; drop the 'profile' key "
            "or omit --preset"
        )
    bases = preset_scenarios(preset)
    if "label" in merged and len(bases) > 1:
        raise ConfigError(
            f"preset {preset!r} expands to {len(bases)} scenarios; "
            "a single label override would make them collide"
        )
    scenarios = []
    for base in bases:
        updates = {}
        for key in ("rho0", "rho_dot0", "xc0", "pc0", "sigma_x",
                    "sigma_p", "t_end", "step"):
            if key in merged:
                updates[key] = _to_float(key, merged[key])
        if "seed" in merged:
            try:
                updates["seed"] = int(merged["seed"])
            except ValueError as exc:
                raise ConfigError(
                    f"seed: cannot parse {merged['seed']!r}"
                ) from exc
        if "method" in merged:
            method = merged["method"]
            if method not in ("rk4", "rk45"):
                raise ConfigError(f"method must be rk4 or rk45, got {method!r}")
            updates["method"] = method
        if "snapshots" in merged:
            try:
                updates["snapshots"] = tuple(
                    float(s) for s in merged["snapshots"].split(",") if s.strip()
                )
            except ValueError as exc:
                raise ConfigError(
                    f"snapshots: cannot parse {merged['snapshots']!r}"
                ) from exc
        if "label" in merged:
            updates["label"] = merged["label"]
        scenario = replace(base, **updates)
        _validate(scenario)
        scenarios.append(scenario)
    return scenarios
