"""Discrete-variable scenarios: path-entangled photons, Bell pairs, NOON states.

Bell states of two labeled photons are encoded dual-rail: one travelling pair
per internal label (rail "A" and rail "B"), with path operations acting
identically on both rails.  All states here carry a finite photon number, so
runs are exact: the working cutoff is the total photon number.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import fock
from .absorber import CANONICAL, AbsorberSpec
from .fock import CutoffError, PureState
from .modes import K, MINUS_K, ModeLabel
from .results import ScenarioResult

RAIL_A, RAIL_B = "A", "B"


class DvKind(Enum):
    SINGLE_PHOTON = "SINGLE_PHOTON"
    BELL_PSI_PLUS = "BELL_PSI_PLUS"
    BELL_PSI_MINUS = "BELL_PSI_MINUS"
    BELL_PHI_PLUS = "BELL_PHI_PLUS"
    BELL_PHI_MINUS = "BELL_PHI_MINUS"
    NOON = "NOON"


BELL_KINDS = {
    DvKind.BELL_PSI_PLUS,
    DvKind.BELL_PSI_MINUS,
    DvKind.BELL_PHI_PLUS,
    DvKind.BELL_PHI_MINUS,
}


@dataclass(frozen=True)
class DvScenario:
    kind: DvKind
    n: int = 1
    delta_theta: float = 0.0

    def __post_init__(self) -> None:
        if self.kind is DvKind.NOON and self.n < 1:
            raise ValueError("NOON needs n >= 1")
        if not math.isfinite(self.delta_theta):
            raise ValueError("delta_theta must be finite")

    @property
    def total_photons(self) -> int:
        if self.kind is DvKind.SINGLE_PHOTON:
            return 1
        if self.kind in BELL_KINDS:
            return 2
        return self.n


def _bell_terms(kind: DvKind) -> list[tuple[complex, dict[ModeLabel, int]]]:
    k_a, k_b = K.with_rail(RAIL_A), K.with_rail(RAIL_B)
    mk_a, mk_b = MINUS_K.with_rail(RAIL_A), MINUS_K.with_rail(RAIL_B)
    amp = 1.0 / math.sqrt(2.0)
    if kind is DvKind.BELL_PSI_PLUS:
        return [(amp, {k_a: 1, mk_b: 1}), (amp, {k_b: 1, mk_a: 1})]
    if kind is DvKind.BELL_PSI_MINUS:
        return [(amp, {k_a: 1, mk_b: 1}), (-amp, {k_b: 1, mk_a: 1})]
    if kind is DvKind.BELL_PHI_PLUS:
        return [(amp, {k_a: 1, k_b: 1}), (amp, {mk_a: 1, mk_b: 1})]
    if kind is DvKind.BELL_PHI_MINUS:
        return [(amp, {k_a: 1, k_b: 1}), (-amp, {mk_a: 1, mk_b: 1})]
    raise ValueError(f"not a Bell kind: {kind}")


def build_input(scenario: DvScenario, cutoff: int) -> PureState:
    """Travelling-basis input ket for the scenario."""
    if cutoff < scenario.total_photons:
        raise CutoffError(
            f"cutoff {cutoff} below photon content {scenario.total_photons}"
        )
    amp = 1.0 / math.sqrt(2.0)
    phase = np.exp(1j * scenario.delta_theta)
    if scenario.kind is DvKind.SINGLE_PHOTON:
        terms = [(amp, {K: 1, MINUS_K: 0}), (amp * phase, {K: 0, MINUS_K: 1})]
        return fock.superposition(terms, (K, MINUS_K), cutoff)
    if scenario.kind is DvKind.NOON:
        n = scenario.n
        terms = [(amp, {K: n, MINUS_K: 0}), (amp * phase, {K: 0, MINUS_K: n})]
        return fock.superposition(terms, (K, MINUS_K), cutoff)
    modes = (
        K.with_rail(RAIL_A),
        K.with_rail(RAIL_B),
        MINUS_K.with_rail(RAIL_A),
        MINUS_K.with_rail(RAIL_B),
    )
    return fock.superposition(_bell_terms(scenario.kind), modes, cutoff)


def bell_standing_state(kind: DvKind, cutoff: int = 2) -> PureState:
    """Expected standing-basis Bell state (on travelling labels, rail-encoded)."""
    return build_input(DvScenario(kind), cutoff)


def noon_standing_decomposition(
    n: int, delta_theta: float
) -> list[tuple[int, complex]]:
    """Standing-basis expansion coefficients of a NOON input.

    Entry (m, c_m) multiplies the ket with n-m photons in the cosine mode and
    m in the sine mode.  Squared magnitudes follow the cosine law
    binom(n, m) cos^2((pi m + delta)/2) / 2^(n-1); the i^m factor keeps the
    expansion exactly consistent with the balanced-beamsplitter convention
    (Hadamard, no extra phase), so the list matches bs_transform output up to
    a global phase.
    """
    if n < 1:
        raise ValueError("n >= 1 required")
    scale = 1.0 / math.sqrt(2.0 ** (n - 1))
    out: list[tuple[int, complex]] = []
    for m in range(n + 1):
        magnitude = math.sqrt(math.comb(n, m)) * math.cos((math.pi * m + delta_theta) / 2.0)
        out.append((m, (1j ** m) * magnitude * scale))
    return out


def mean_intensity_absorption(distribution: dict[int, float], total_photons: int) -> float:
    """Absorbed fraction of the mean photon number."""
    absorbed = sum(m * p for m, p in distribution.items())
    return absorbed / total_photons


def run_scenario(
    scenario: DvScenario,
    absorber: AbsorberSpec = CANONICAL,
    cutoff: int = fock.DEFAULT_CUTOFF,
    report_threshold: float = 1e-9,
) -> ScenarioResult:
    """Build the input, run the absorber pipeline, and collect statistics.

    Photon number is conserved, so the tensors are held at the exact photon
    content of the scenario regardless of the (validated) requested cutoff.
    """
    if cutoff < scenario.total_photons:
        raise CutoffError(
            f"cutoff {cutoff} below photon content {scenario.total_photons}"
        )
    start = time.perf_counter()
    working_cutoff = scenario.total_photons
    state = build_input(scenario, working_cutoff)
    joint = fock.full_pipeline(state, absorber)
    distribution = fock.absorbed_photon_distribution(joint)
    env_modes = [m for m in joint.modes if m.is_env]
    env_entropy = fock.entanglement_entropy(joint, env_modes)
    conditionals = []
    for m, prob in sorted(distribution.items()):
        if prob <= report_threshold:
            continue
        rho = fock.conditional_output(joint, m)
        conditionals.append(
            {
                "absorbed": m,
                "probability": prob,
                "purity": rho.purity(),
                "mean_output_photons": {
                    str(mode): fock.mode_moments(rho, mode)[1] for mode in rho.modes
                },
            }
        )
    return ScenarioResult(
        engine="FOCK",
        scenario={
            "kind": scenario.kind.value,
            "n": scenario.n,
            "delta_theta": scenario.delta_theta,
        },
        absorber={"r": absorber.reflection, "swap_roles": absorber.swap_roles},
        numerics={"cutoff": cutoff, "working_cutoff": working_cutoff},
        absorbed_distribution=distribution,
        mean_intensity_absorption=mean_intensity_absorption(
            distribution, scenario.total_photons
        ),
        conditional_outputs=conditionals,
        separability={"env_entanglement_entropy": env_entropy},
        diagnostics={"wall_clock_s": time.perf_counter() - start},
    )
