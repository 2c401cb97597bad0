"""Scenario file parsing, validation, and dispatch.

Scenario files are JSON with a top-level ``"schema": 1``.  Angles accept
"pi"-suffixed literals ("0.5pi", "-pi"); complex amplitudes accept a real
number, an [re, im] pair, or {"mag": ..., "phase": ...}.  Validation errors
carry the dotted path of the offending field.
"""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from typing import Any

from . import dv, fock, gaussian, nongaussian
from .absorber import AbsorberSpec
from .modes import K, MINUS_K
from .results import ScenarioResult

SCHEMA_VERSION = 1

FOCK_KINDS = {
    "SINGLE_PHOTON",
    "BELL_PSI_PLUS",
    "BELL_PSI_MINUS",
    "BELL_PHI_PLUS",
    "BELL_PHI_MINUS",
    "NOON",
    "CAT_CAT",
    "COHERENT_SQUEEZED",
    "COHERENT_CAT",
    "SQUEEZED_PAIR",
    "EPR",
}
GAUSSIAN_KINDS = {"SQUEEZED_PAIR", "EPR"}


class ScenarioFileError(ValueError):
    """Validation failure with the dotted field path."""

    def __init__(self, path: str, message: str) -> None:
        self.path = path
        super().__init__(f"{path}: {message}")


def parse_angle(value: Any, path: str) -> float:
    """Float radians; strings may carry a 'pi' suffix (e.g. '0.5pi')."""
    if isinstance(value, bool):
        raise ScenarioFileError(path, "expected an angle, got a boolean")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        text = value.strip().lower().replace(" ", "")
        if text.endswith("pi"):
            head = text[:-2]
            if head in ("", "+"):
                return math.pi
            if head == "-":
                return -math.pi
            try:
                return float(head) * math.pi
            except ValueError:
                raise ScenarioFileError(path, f"bad pi literal {value!r}") from None
        try:
            return float(text)
        except ValueError:
            raise ScenarioFileError(path, f"bad angle {value!r}") from None
    raise ScenarioFileError(path, f"expected an angle, got {type(value).__name__}")


def parse_complex(value: Any, path: str) -> complex:
    """Complex from a real number, [re, im], or {'mag':..., 'phase':...}."""
    if isinstance(value, bool):
        raise ScenarioFileError(path, "expected a complex amplitude, got a boolean")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list):
        if len(value) != 2 or not all(isinstance(v, (int, float)) for v in value):
            raise ScenarioFileError(path, "expected [re, im]")
        return complex(value[0], value[1])
    if isinstance(value, dict):
        extra = set(value) - {"mag", "phase"}
        if extra:
            raise ScenarioFileError(path, f"unknown keys {sorted(extra)}")
        mag = value.get("mag", 0.0)
        if not isinstance(mag, (int, float)):
            raise ScenarioFileError(f"{path}.mag", "expected a number")
        return mag * cmath.exp(1j * parse_angle(value.get("phase", 0.0), f"{path}.phase"))
    raise ScenarioFileError(path, f"bad complex amplitude {value!r}")


def _require_number(obj: dict, key: str, path: str, default: float | None = None) -> float:
    if key not in obj:
        if default is None:
            raise ScenarioFileError(f"{path}.{key}", "missing required field")
        return default
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioFileError(f"{path}.{key}", f"expected a number, got {value!r}")
    return float(value)


@dataclass
class SweepSpec:
    parameter: str
    start: float
    stop: float
    points: int


@dataclass
class ScenarioFile:
    engine: str
    scenario: dict
    absorber: AbsorberSpec
    cutoff: int | None
    tolerance: float
    sweep: SweepSpec | None = None
    raw: dict = field(default_factory=dict)


def _parse_absorber(obj: Any, path: str) -> AbsorberSpec:
    if obj is None:
        return AbsorberSpec()
    if not isinstance(obj, dict):
        raise ScenarioFileError(path, "expected an object")
    extra = set(obj) - {"r", "tau_c", "swap_roles"}
    if extra:
        raise ScenarioFileError(path, f"unknown keys {sorted(extra)}")
    swap = obj.get("swap_roles", False)
    if not isinstance(swap, bool):
        raise ScenarioFileError(f"{path}.swap_roles", "expected a boolean")
    if "r" in obj and "tau_c" in obj:
        raise ScenarioFileError(path, "give either r or tau_c, not both")
    if "tau_c" in obj:
        tau = _require_number(obj, "tau_c", path)
        if not 0.0 <= tau <= 1.0:
            raise ScenarioFileError(f"{path}.tau_c", "must lie in [0, 1]")
        reflection = (tau - 1.0) / 2.0
    else:
        reflection = _require_number(obj, "r", path, default=-0.5)
    try:
        return AbsorberSpec(reflection=reflection, swap_roles=swap)
    except ValueError as exc:
        raise ScenarioFileError(f"{path}.r", str(exc)) from None


def parse_scenario_dict(obj: Any) -> ScenarioFile:
    if not isinstance(obj, dict):
        raise ScenarioFileError("$", "scenario file must be a JSON object")
    schema = obj.get("schema")
    if schema != SCHEMA_VERSION:
        raise ScenarioFileError("schema", f"expected {SCHEMA_VERSION}, got {schema!r}")
    engine = obj.get("engine")
    if engine not in ("FOCK", "GAUSSIAN"):
        raise ScenarioFileError("engine", f"expected FOCK or GAUSSIAN, got {engine!r}")
    scenario = obj.get("scenario")
    if not isinstance(scenario, dict):
        raise ScenarioFileError("scenario", "expected an object")
    kind = scenario.get("kind")
    allowed = FOCK_KINDS if engine == "FOCK" else GAUSSIAN_KINDS
    if kind not in allowed:
        raise ScenarioFileError(
            "scenario.kind",
            f"{kind!r} not valid for engine {engine} (choose from {sorted(allowed)})",
        )
    absorber = _parse_absorber(obj.get("absorber"), "absorber")
    numerics = obj.get("numerics", {})
    if not isinstance(numerics, dict):
        raise ScenarioFileError("numerics", "expected an object")
    extra = set(numerics) - {"cutoff", "tolerance"}
    if extra:
        raise ScenarioFileError("numerics", f"unknown keys {sorted(extra)}")
    cutoff = None
    if "cutoff" in numerics:
        raw_cutoff = numerics["cutoff"]
        if isinstance(raw_cutoff, bool) or not isinstance(raw_cutoff, int) or raw_cutoff < 1:
            raise ScenarioFileError("numerics.cutoff", "expected a positive integer")
        cutoff = raw_cutoff
    tolerance = _require_number(numerics, "tolerance", "numerics", default=1e-9)
    sweep = None
    if obj.get("sweep") is not None:
        sobj = obj["sweep"]
        if not isinstance(sobj, dict):
            raise ScenarioFileError("sweep", "expected an object")
        extra = set(sobj) - {"parameter", "start", "stop", "points"}
        if extra:
            raise ScenarioFileError("sweep", f"unknown keys {sorted(extra)}")
        parameter = sobj.get("parameter")
        if not isinstance(parameter, str) or not parameter:
            raise ScenarioFileError("sweep.parameter", "expected a dotted field path")
        points = sobj.get("points")
        if isinstance(points, bool) or not isinstance(points, int) or points < 2:
            raise ScenarioFileError("sweep.points", "expected an integer >= 2")
        sweep = SweepSpec(
            parameter=parameter,
            start=parse_angle(sobj.get("start", None), "sweep.start"),
            stop=parse_angle(sobj.get("stop", None), "sweep.stop"),
            points=points,
        )
    known = {"schema", "engine", "scenario", "absorber", "numerics", "sweep"}
    extra = set(obj) - known
    if extra:
        raise ScenarioFileError("$", f"unknown top-level keys {sorted(extra)}")
    return ScenarioFile(
        engine=engine,
        scenario=scenario,
        absorber=absorber,
        cutoff=cutoff,
        tolerance=tolerance,
        sweep=sweep,
        raw=obj,
    )


def load_scenario_file(path: str) -> ScenarioFile:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ScenarioFileError("$", f"invalid JSON: {exc}") from None
    return parse_scenario_dict(obj)


def _squeezed_spec(obj: Any, path: str) -> gaussian.SqueezedSpec:
    if not isinstance(obj, dict):
        raise ScenarioFileError(path, "expected an object with alpha/xi/phi")
    extra = set(obj) - {"alpha", "xi", "phi"}
    if extra:
        raise ScenarioFileError(path, f"unknown keys {sorted(extra)}")
    return gaussian.SqueezedSpec(
        alpha=parse_complex(obj.get("alpha", 0.0), f"{path}.alpha"),
        xi=_require_number(obj, "xi", path, default=0.0),
        phi=parse_angle(obj.get("phi", 0.0), f"{path}.phi"),
    )


def run_scenario_file(spec: ScenarioFile) -> ScenarioResult:
    """Dispatch a validated scenario to the right engine."""
    scenario = spec.scenario
    kind = scenario["kind"]
    path = "scenario"

    def check_keys(allowed: set[str]) -> None:
        extra = set(scenario) - allowed - {"kind"}
        if extra:
            raise ScenarioFileError(path, f"unknown keys {sorted(extra)} for kind {kind}")

    if spec.engine == "GAUSSIAN":
        if kind == "SQUEEZED_PAIR":
            check_keys({"k", "minus_k"})
            return gaussian.run_squeezed_pair(
                _squeezed_spec(scenario.get("k"), f"{path}.k"),
                _squeezed_spec(scenario.get("minus_k"), f"{path}.minus_k"),
                spec.absorber,
            )
        check_keys({"alpha_g", "alpha_h", "xi"})
        return gaussian.run_epr(
            parse_complex(scenario.get("alpha_g", 0.0), f"{path}.alpha_g"),
            parse_complex(scenario.get("alpha_h", 0.0), f"{path}.alpha_h"),
            _require_number(scenario, "xi", path),
            spec.absorber,
        )

    cutoff = spec.cutoff if spec.cutoff is not None else fock.DEFAULT_CUTOFF
    if kind in ("SINGLE_PHOTON", "NOON") or kind.startswith("BELL_"):
        check_keys({"n", "delta_theta"})
        n = scenario.get("n", 1)
        if isinstance(n, bool) or not isinstance(n, int):
            raise ScenarioFileError(f"{path}.n", "expected an integer")
        dv_scenario = dv.DvScenario(
            kind=dv.DvKind(kind),
            n=n,
            delta_theta=parse_angle(scenario.get("delta_theta", 0.0), f"{path}.delta_theta"),
        )
        return dv.run_scenario(
            dv_scenario, spec.absorber, cutoff, report_threshold=spec.tolerance
        )
    if kind == "CAT_CAT":
        check_keys({"alpha"})
        return nongaussian.run_cat_cat(
            parse_complex(scenario.get("alpha", 0.0), f"{path}.alpha"),
            spec.absorber,
            spec.cutoff,
        )
    if kind == "COHERENT_SQUEEZED":
        check_keys({"alpha", "xi"})
        return nongaussian.run_asymmetric(
            nongaussian.AsymmetricKind.COHERENT_SQUEEZED,
            parse_complex(scenario.get("alpha", 0.0), f"{path}.alpha"),
            _require_number(scenario, "xi", path, default=0.0),
            spec.absorber,
            spec.cutoff,
        )
    if kind == "COHERENT_CAT":
        check_keys({"alpha", "cat_alpha"})
        alpha = parse_complex(scenario.get("alpha", 0.0), f"{path}.alpha")
        cat_alpha = parse_complex(scenario.get("cat_alpha", alpha), f"{path}.cat_alpha")
        return nongaussian.run_asymmetric(
            nongaussian.AsymmetricKind.COHERENT_CAT,
            alpha,
            cat_alpha,
            spec.absorber,
            spec.cutoff,
        )
    if kind == "SQUEEZED_PAIR":
        check_keys({"k", "minus_k"})
        spec_k = _squeezed_spec(scenario.get("k"), f"{path}.k")
        spec_mk = _squeezed_spec(scenario.get("minus_k"), f"{path}.minus_k")
        state = fock.tensor(
            fock.squeezed_coherent_state(spec_k.alpha, spec_k.xi, spec_k.phi, cutoff, K),
            fock.squeezed_coherent_state(
                spec_mk.alpha, spec_mk.xi, spec_mk.phi, cutoff, MINUS_K
            ),
        )
        echo = {
            "kind": "SQUEEZED_PAIR",
            "k": {"alpha": spec_k.alpha, "xi": spec_k.xi, "phi": spec_k.phi},
            "minus_k": {"alpha": spec_mk.alpha, "xi": spec_mk.xi, "phi": spec_mk.phi},
        }
        return run_bridged_fock(echo, state, spec.absorber, cutoff)
    # EPR bridged onto the Fock engine via the preceding modes
    check_keys({"alpha_g", "alpha_h", "xi"})
    alpha_g = parse_complex(scenario.get("alpha_g", 0.0), f"{path}.alpha_g")
    alpha_h = parse_complex(scenario.get("alpha_h", 0.0), f"{path}.alpha_h")
    xi = _require_number(scenario, "xi", path)
    preceding = fock.tensor(
        fock.squeezed_coherent_state(alpha_g, xi, math.pi, cutoff, K),
        fock.squeezed_coherent_state(alpha_h, xi, 0.0, cutoff, MINUS_K),
    )
    state = fock.bs_transform(preceding, K, MINUS_K)
    echo = {"kind": "EPR", "alpha_g": alpha_g, "alpha_h": alpha_h, "xi": xi}
    return run_bridged_fock(echo, state, spec.absorber, cutoff)


def run_bridged_fock(
    scenario_echo: dict,
    state: "fock.PureState",
    absorber: AbsorberSpec,
    cutoff: int,
) -> ScenarioResult:
    """Run a continuous-variable input bridged onto the truncated Fock engine."""
    import time

    start = time.perf_counter()
    joint = fock.full_pipeline(state, absorber)
    distribution = fock.absorbed_photon_distribution(joint)
    coeff_int, coeff_coh = fock.absorption_coefficients(state, K, MINUS_K)
    env_modes = [m for m in joint.modes if m.is_env]
    return ScenarioResult(
        engine="FOCK",
        scenario=scenario_echo,
        absorber={"r": absorber.reflection, "swap_roles": absorber.swap_roles},
        numerics={"cutoff": cutoff, "truncation_tolerance": fock.TRUNCATION_TOL},
        absorbed_distribution=distribution,
        mean_intensity_absorption=coeff_int,
        coherence_absorption=coeff_coh,
        separability={
            "env_entanglement_entropy": fock.entanglement_entropy(joint, env_modes)
        },
        diagnostics={"wall_clock_s": time.perf_counter() - start},
    )
