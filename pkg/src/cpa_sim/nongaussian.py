"""Cat-state and asymmetric illumination scenarios on the Fock engine.

The even cat |alpha> + |-alpha> interferes with itself (or with a coherent /
squeezed partner) on the standing-wave basis change, concentrating all light
in one standing mode; the absorber then takes everything or nothing.  The
branch overlap of non-orthogonal coherent states makes the 50/50 split an
asymptotic statement, so runners report the exact truncated values.
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
from .modes import K, MINUS_K
from .results import ScenarioResult


class CatParity(Enum):
    EVEN = "EVEN"


@dataclass(frozen=True)
class CatSpec:
    alpha: complex
    cutoff: int
    parity: CatParity = CatParity.EVEN


def cat_cutoff(alpha: complex) -> int:
    """Cutoff keeping the sqrt(2)-amplified standing branch representable."""
    mag = abs(alpha)
    return math.ceil(2.0 * mag * mag + 8.0 * math.sqrt(2.0) * mag)


def poisson_tail_cutoff(mean_photons: float) -> int:
    """Occupation above which a Poissonian tail is numerically negligible."""
    return math.ceil(mean_photons + 8.0 * math.sqrt(2.0 * max(mean_photons, 1.0)) + 2.0)


def squeezed_vacuum_cutoff(xi: float, tail: float = 1e-12) -> int:
    """Even occupation beyond which a squeezed vacuum carries < tail weight."""
    ratio = math.tanh(abs(xi)) ** 2
    if ratio == 0.0:
        return 2
    term = 1.0 / math.cosh(xi)  # weight of the vacuum component
    m = 0
    while term * ratio / (1.0 - ratio) > tail and m < 500:
        m += 1
        term *= ratio * (2 * m - 1) / (2 * m)
    return 2 * (m + 1)


def build_cat(spec: CatSpec, mode=K) -> PureState:
    """Normalized even cat state; only even occupations are populated."""
    mag2 = abs(spec.alpha) ** 2
    norm = 1.0 / math.sqrt(2.0 * (1.0 + math.exp(-2.0 * mag2)))
    dim = spec.cutoff + 1
    coh = np.zeros(dim, dtype=complex)
    coh[0] = math.exp(-mag2 / 2.0)
    for n in range(1, dim):
        coh[n] = coh[n - 1] * spec.alpha / math.sqrt(n)
    amps = np.zeros(dim, dtype=complex)
    amps[0::2] = 2.0 * norm * coh[0::2]
    truncated_norm = float(np.linalg.norm(amps))
    if 1.0 - truncated_norm > fock.TRUNCATION_TOL:
        raise CutoffError(
            f"cat state at |alpha|={abs(spec.alpha):.3f} loses {1 - truncated_norm:.2e} "
            f"of its norm at cutoff {spec.cutoff}"
        )
    return PureState((mode,), spec.cutoff, amps / truncated_norm)


class AsymmetricKind(Enum):
    COHERENT_SQUEEZED = "COHERENT_SQUEEZED"
    COHERENT_CAT = "COHERENT_CAT"


def _survival_probabilities(joint: PureState) -> tuple[float, float]:
    """(P(no photons leave), P(no photons absorbed)) for a pipeline output."""
    output_modes = [m for m in joint.modes if not m.is_env]
    out_dist = fock.total_occupation_distribution(joint, output_modes)
    env_dist = fock.absorbed_photon_distribution(joint)
    return out_dist.get(0, 0.0), env_dist.get(0, 0.0)


def _base_result(
    kind: str,
    scenario: dict,
    absorber: AbsorberSpec,
    cutoff: int,
    joint: PureState,
    input_state: PureState,
    start: float,
) -> ScenarioResult:
    distribution = fock.absorbed_photon_distribution(joint)
    coeff_int, coeff_coh = fock.absorption_coefficients(input_state, K, MINUS_K)
    env_modes = [m for m in joint.modes if m.is_env]
    return ScenarioResult(
        engine="FOCK",
        scenario={"kind": kind, **scenario},
        absorber={"r": absorber.reflection, "swap_roles": absorber.swap_roles},
        numerics={"cutoff": cutoff},
        absorbed_distribution=distribution,
        mean_intensity_absorption=coeff_int,
        coherence_absorption=coeff_coh,
        separability={
            "env_entanglement_entropy": fock.entanglement_entropy(joint, env_modes)
        },
        diagnostics={"wall_clock_s": time.perf_counter() - start},
    )


def run_cat_cat(
    alpha: complex,
    absorber: AbsorberSpec = CANONICAL,
    cutoff: int | None = None,
) -> ScenarioResult:
    """Identical even cats on both sides of the absorber.

    Reports the all-absorbed / all-transmitted probabilities, the
    zero-absorption conditional output, and the light-absorber entanglement.
    """
    start = time.perf_counter()
    needed = cat_cutoff(alpha)
    if cutoff is None:
        # +2 keeps the even-cat parity doubling of the photon-number tail
        # inside the truncation budget of the basis change
        cutoff = needed + 2
    elif cutoff < needed:
        raise CutoffError(f"cutoff {cutoff} below required {needed} for |alpha|={abs(alpha)}")
    cat_k = build_cat(CatSpec(alpha, cutoff), K)
    cat_mk = build_cat(CatSpec(alpha, cutoff), MINUS_K)
    input_state = fock.tensor(cat_k, cat_mk)
    joint = fock.full_pipeline(input_state, absorber)
    result = _base_result(
        "CAT_CAT", {"alpha": alpha}, absorber, cutoff, joint, input_state, start
    )
    p_all_absorbed, p_all_transmitted = _survival_probabilities(joint)
    zero_cond = fock.conditional_output(joint, 0)
    # survivors exit as |alpha>|-alpha> + |-alpha>|alpha> (up to branch overlap)
    target = fock.superposition_of_coherent_pair(alpha, cutoff)
    result.extras = {
        "p_all_absorbed": p_all_absorbed,
        "p_all_transmitted": p_all_transmitted,
        "zero_absorption_fidelity_with_opposite_pair": zero_cond.expectation_with_pure(
            target
        ),
    }
    result.conditional_outputs = [
        {
            "absorbed": 0,
            "probability": result.absorbed_distribution.get(0, 0.0),
            "purity": zero_cond.purity(),
        }
    ]
    return result


def run_asymmetric(
    kind: AsymmetricKind,
    alpha: complex,
    partner_parameter: float | complex,
    absorber: AbsorberSpec = CANONICAL,
    cutoff: int | None = None,
) -> ScenarioResult:
    """Coherent light against a squeezed vacuum or a cat on the other side.

    ``partner_parameter`` is the squeezing magnitude for COHERENT_SQUEEZED and
    the cat amplitude for COHERENT_CAT.  Reports the absorption coefficients,
    the absorbed-photon distribution, and the standing-basis joint photon
    distribution (whose anti-correlation is the NOON-like signature of the
    coherent-squeezed case).
    """
    start = time.perf_counter()
    if kind is AsymmetricKind.COHERENT_SQUEEZED:
        xi = float(np.real(partner_parameter))
        needed = poisson_tail_cutoff(abs(alpha) ** 2) + squeezed_vacuum_cutoff(xi)
        if cutoff is None:
            cutoff = needed
        elif cutoff < needed:
            raise CutoffError(f"cutoff {cutoff} below required {needed}")
        partner = fock.squeezed_coherent_state(0.0, xi, 0.0, cutoff, MINUS_K)
        scenario = {"alpha": alpha, "xi": xi}
    else:
        cat_alpha = complex(partner_parameter)
        needed = poisson_tail_cutoff(abs(alpha) ** 2 + abs(cat_alpha) ** 2) + 2
        if cutoff is None:
            cutoff = needed
        elif cutoff < needed:
            raise CutoffError(f"cutoff {cutoff} below required {needed}")
        partner = build_cat(CatSpec(cat_alpha, cutoff), MINUS_K)
        scenario = {"alpha": alpha, "cat_alpha": cat_alpha}
    input_state = fock.tensor(fock.coherent_state(alpha, cutoff, K), partner)
    standing = fock.bs_transform(input_state, K, MINUS_K)
    joint = fock.full_pipeline(input_state, absorber)
    result = _base_result(
        kind.value, scenario, absorber, cutoff, joint, input_state, start
    )
    standing_dist = fock.joint_occupation_distribution(standing, K, MINUS_K)
    cross_mass = sum(p for (na, nb), p in standing_dist.items() if na > 0 and nb > 0)
    p_all_absorbed, p_all_transmitted = _survival_probabilities(joint)
    result.extras = {
        "standing_joint_distribution": {
            f"{na},{nb}": p for (na, nb), p in sorted(standing_dist.items()) if p > 1e-12
        },
        "standing_cross_sector_mass": cross_mass,
        "p_all_absorbed": p_all_absorbed,
        "p_all_transmitted": p_all_transmitted,
    }
    return result
