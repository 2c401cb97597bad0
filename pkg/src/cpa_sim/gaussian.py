"""Gaussian-state engine: quadrature means and covariances.

Quadratures follow the X1 = a + a^dag, X2 = -i(a - a^dag) convention with
[X1, X2] = 2i, so vacuum and coherent states have unit variance in both
quadratures (covariance = identity).  The beamsplitter is the orthogonal
Hadamard block acting identically on both quadrature sectors; the absorber
channel contracts the absorbed standing mode towards vacuum and can
optionally keep the environment mode for light-absorber bookkeeping.
"""
from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .absorber import CANONICAL, AbsorberSpec
from .modes import (
    C,
    ENV_C,
    K,
    MINUS_K,
    S,
    STANDING_OF,
    TRAVELLING_OF,
    ModeError,
    ModeKind,
    ModeLabel,
    check_mode_consistency,
)

SHOT_NOISE = 2.0  # Duan inseparability of two coherent modes


class SingularAngleError(ValueError):
    """Polar inverse map evaluated too close to a removable singularity."""


@dataclass(frozen=True)
class SqueezedSpec:
    """Coherent amplitude alpha and squeezing xi*exp(i*phi), xi >= 0."""

    alpha: complex = 0.0
    xi: float = 0.0
    phi: float = 0.0

    def __post_init__(self) -> None:
        if self.xi < 0:
            object.__setattr__(self, "xi", -self.xi)
            object.__setattr__(self, "phi", self.phi + math.pi)

    @property
    def mean_amplitude(self) -> complex:
        """<a> = alpha cosh(xi) - conj(alpha) e^{i phi} sinh(xi)."""
        return self.alpha * math.cosh(self.xi) - np.conj(self.alpha) * cmath.exp(
            1j * self.phi
        ) * math.sinh(self.xi)


@dataclass(frozen=True)
class GaussianState:
    """Mean vector (X1, X2 per mode) and symmetrized covariance matrix."""

    modes: tuple[ModeLabel, ...]
    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self) -> None:
        n = 2 * len(self.modes)
        if self.mean.shape != (n,):
            raise ValueError(f"mean shape {self.mean.shape} != ({n},)")
        if self.cov.shape != (n, n):
            raise ValueError(f"cov shape {self.cov.shape} != ({n}, {n})")
        check_mode_consistency(self.modes)
        if not np.allclose(self.cov, self.cov.T, atol=1e-12):
            raise ValueError("covariance matrix not symmetric")
        for i in range(0, n, 2):
            block_det = float(np.linalg.det(self.cov[i:i + 2, i:i + 2]))
            if block_det < 1.0 - 1e-10:  # single-mode uncertainty bound
                raise ValueError(
                    f"mode {self.modes[i // 2]} violates the uncertainty relation "
                    f"(block determinant {block_det!r})"
                )
        self.mean.setflags(write=False)
        self.cov.setflags(write=False)

    def axis(self, mode: ModeLabel) -> int:
        try:
            return self.modes.index(mode)
        except ValueError:
            raise ModeError(f"mode {mode} not present in {self.modes}") from None

    def slot(self, mode: ModeLabel, quadrature: int) -> int:
        """Row index of X1 (quadrature=0) or X2 (quadrature=1) of a mode."""
        return 2 * self.axis(mode) + quadrature

    def mode_block(self, mode: ModeLabel) -> np.ndarray:
        i = 2 * self.axis(mode)
        return self.cov[i:i + 2, i:i + 2]

    def mode_mean(self, mode: ModeLabel) -> np.ndarray:
        i = 2 * self.axis(mode)
        return self.mean[i:i + 2]


def vacuum_state(modes: Sequence[ModeLabel]) -> GaussianState:
    modes = tuple(modes)
    n = 2 * len(modes)
    return GaussianState(modes, np.zeros(n), np.eye(n))


def squeezed_coherent_state(spec: SqueezedSpec, mode: ModeLabel = K) -> GaussianState:
    """Single squeezed coherent mode.

    Mean follows from <a> = alpha cosh(xi) - conj(alpha) e^{i phi} sinh(xi);
    the covariance is the rotated squeezer R(phi/2) diag(e^{-2xi}, e^{2xi})
    R(phi/2)^T, whose diagonal is cosh(2 xi) -/+ cos(phi) sinh(2 xi).
    """
    amp = spec.mean_amplitude
    mean = np.array([2.0 * amp.real, 2.0 * amp.imag])
    half = spec.phi / 2.0
    rot = np.array([[math.cos(half), -math.sin(half)], [math.sin(half), math.cos(half)]])
    cov = rot @ np.diag([math.exp(-2 * spec.xi), math.exp(2 * spec.xi)]) @ rot.T
    return GaussianState((mode,), mean, cov)


def tensor(*states: GaussianState) -> GaussianState:
    modes: tuple[ModeLabel, ...] = ()
    for s in states:
        modes = modes + s.modes
    n = 2 * len(modes)
    mean = np.concatenate([s.mean for s in states])
    cov = np.zeros((n, n))
    offset = 0
    for s in states:
        k = len(s.mean)
        cov[offset:offset + k, offset:offset + k] = s.cov
        offset += k
    return GaussianState(modes, mean, cov)


def relabel(state: GaussianState, mapping: Mapping[ModeLabel, ModeLabel]) -> GaussianState:
    modes = tuple(mapping.get(m, m) for m in state.modes)
    return GaussianState(modes, state.mean.copy(), state.cov.copy())


def _apply_linear(state: GaussianState, matrix: np.ndarray) -> GaussianState:
    mean = matrix @ state.mean
    cov = matrix @ state.cov @ matrix.T
    cov = (cov + cov.T) / 2.0
    return GaussianState(state.modes, mean, cov)


def bs_transform(state: GaussianState, a: ModeLabel, b: ModeLabel) -> GaussianState:
    """Balanced beamsplitter: X_a -> (X_a + X_b)/sqrt(2), X_b -> (X_a - X_b)/sqrt(2)."""
    if a == b:
        raise ModeError("beamsplitter needs two distinct modes")
    n = 2 * len(state.modes)
    matrix = np.eye(n)
    inv = 1.0 / math.sqrt(2.0)
    for q in (0, 1):
        ia, ib = state.slot(a, q), state.slot(b, q)
        matrix[ia, ia] = matrix[ia, ib] = inv
        matrix[ib, ia] = inv
        matrix[ib, ib] = -inv
    return _apply_linear(state, matrix)


def cpa_channel(
    state: GaussianState, absorber: AbsorberSpec, keep_env: bool = False
) -> GaussianState:
    """Absorber in the standing basis on the Gaussian engine.

    The absorbed standing mode's mean is scaled by tau_c and its covariance
    contracted towards vacuum; with ``keep_env`` an explicit environment mode
    is appended (at tau_c = 0 it carries the pre-channel marginal and all of
    its correlations).
    """
    rails = sorted({m.rail for m in state.modes if m.kind is ModeKind.C})
    rails_s = sorted({m.rail for m in state.modes if m.kind is ModeKind.S})
    if not rails or rails != rails_s:
        raise ModeError("channel requires the standing basis (C and S present)")
    tau = absorber.tau_c
    s = math.sqrt(max(0.0, 1.0 - tau * tau))
    result = state
    for rail in rails:
        absorbed = ModeLabel(absorber.absorbed_kind, rail)
        env = ENV_C.with_rail(rail)
        if env in result.modes:
            raise ModeError(f"environment mode {env} already attached")
        if keep_env:
            result = tensor(result, vacuum_state([env]))
            n = 2 * len(result.modes)
            matrix = np.eye(n)
            for q in (0, 1):
                im, ie = result.slot(absorbed, q), result.slot(env, q)
                matrix[im, im], matrix[im, ie] = tau, s
                matrix[ie, im], matrix[ie, ie] = s, -tau
            result = _apply_linear(result, matrix)
        else:
            i = 2 * result.axis(absorbed)
            mean = result.mean.copy()
            cov = result.cov.copy()
            mean[i:i + 2] *= tau
            cov[i:i + 2, :] *= tau
            cov[:, i:i + 2] *= tau
            cov[i:i + 2, i:i + 2] += (1.0 - tau * tau) * np.eye(2)
            result = GaussianState(result.modes, mean, cov)
    return result


def full_pipeline(
    state: GaussianState, absorber: AbsorberSpec, keep_env: bool = False
) -> GaussianState:
    """Travelling -> standing -> absorber -> travelling, Gaussian version."""
    rails = sorted({m.rail for m in state.modes if m.kind is ModeKind.K})
    rails_mk = sorted({m.rail for m in state.modes if m.kind is ModeKind.MINUS_K})
    if not rails or rails != rails_mk:
        raise ModeError("pipeline input must be in the travelling basis (K, MINUS_K)")
    result = state
    for rail in rails:
        result = bs_transform(result, K.with_rail(rail), MINUS_K.with_rail(rail))
    result = relabel(
        result,
        {m: ModeLabel(STANDING_OF[m.kind], m.rail) for m in result.modes if m.kind in STANDING_OF},
    )
    result = cpa_channel(result, absorber, keep_env=keep_env)
    for rail in rails:
        result = bs_transform(result, C.with_rail(rail), S.with_rail(rail))
    return relabel(
        result,
        {m: ModeLabel(TRAVELLING_OF[m.kind], m.rail) for m in result.modes if m.kind in TRAVELLING_OF},
    )


# ---------------------------------------------------------------------------
# observables


def mean_amplitude(state: GaussianState, mode: ModeLabel) -> complex:
    """<a> = (<X1> + i <X2>) / 2."""
    m1, m2 = state.mode_mean(mode)
    return complex(m1, m2) / 2.0


def mode_intensity(state: GaussianState, mode: ModeLabel) -> float:
    """<a^dag a> = |<a>|^2 + (trace of mode covariance - 2) / 4."""
    block = state.mode_block(mode)
    return abs(mean_amplitude(state, mode)) ** 2 + (block[0, 0] + block[1, 1] - 2.0) / 4.0


def cross_correlation(state: GaussianState, a: ModeLabel, b: ModeLabel) -> complex:
    """<a_a^dag a_b> from means and covariance cross-blocks."""
    ia, ib = 2 * state.axis(a), 2 * state.axis(b)
    cross = state.cov[ia:ia + 2, ib:ib + 2]
    noise = complex(cross[0, 0] + cross[1, 1], cross[0, 1] - cross[1, 0]) / 4.0
    return noise + np.conj(mean_amplitude(state, a)) * mean_amplitude(state, b)


def duan_inseparability(state: GaussianState, a: ModeLabel, b: ModeLabel) -> float:
    """Variance sum of relative position and total momentum of two modes.

    Equals 2 for a pair of coherent modes; values below 2 witness
    entanglement.
    """
    if a == b:
        raise ModeError("inseparability needs two distinct modes")
    a1, a2 = state.slot(a, 0), state.slot(a, 1)
    b1, b2 = state.slot(b, 0), state.slot(b, 1)
    cov = state.cov
    var_q = (cov[a1, a1] + cov[b1, b1] - 2.0 * cov[a1, b1]) / 2.0
    var_p = (cov[a2, a2] + cov[b2, b2] + 2.0 * cov[a2, b2]) / 2.0
    return float(var_q + var_p)


def absorption_coefficients(
    state: GaussianState, a: ModeLabel = K, b: ModeLabel = MINUS_K
) -> tuple[float | None, float | None]:
    """Intensity and coherence absorption coefficients of a travelling pair.

    A coefficient whose denominator (total intensity / total coherence)
    vanishes is returned as None (undefined).
    """
    intensity = mode_intensity(state, a) + mode_intensity(state, b)
    amp_a, amp_b = mean_amplitude(state, a), mean_amplitude(state, b)
    coherence = abs(amp_a) ** 2 + abs(amp_b) ** 2
    coeff_int: float | None = None
    coeff_coh: float | None = None
    if intensity > 1e-12:
        coeff_int = float(0.5 + cross_correlation(state, a, b).real / intensity)
    if coherence > 1e-12:
        coeff_coh = float(0.5 + (np.conj(amp_a) * amp_b).real / coherence)
    return coeff_int, coeff_coh


# ---------------------------------------------------------------------------
# closed forms and the entangled-pair family


def squeezed_pair_inseparability(
    xi_k: float, xi_mk: float, phi_k: float, phi_mk: float
) -> float:
    """Standing-pair inseparability for two squeezed travelling inputs.

    cosh(2 xi_k) + cosh(2 xi_mk) + cos(phi_k) sinh(2 xi_k)
    - cos(phi_mk) sinh(2 xi_mk); independent of the coherent amplitudes.
    """
    return (
        math.cosh(2 * xi_k)
        + math.cosh(2 * xi_mk)
        + math.cos(phi_k) * math.sinh(2 * xi_k)
        - math.cos(phi_mk) * math.sinh(2 * xi_mk)
    )


def epr_state(alpha_g: complex, alpha_h: complex, xi: float) -> GaussianState:
    """Two-mode entangled state from orthogonally squeezed preceding modes.

    Mode g has a well-defined momentum (squeezing angle pi, so <g> =
    e^xi Re(alpha_g) + i e^-xi Im(alpha_g)), mode h a well-defined position;
    mixing them on the balanced beamsplitter yields travelling modes with all
    quadrature variances (e^{2 xi} + e^{-2 xi})/2 and inseparability
    2 e^{-2 xi}.
    """
    if xi < 0:
        raise ValueError("squeezing parameter must be >= 0")
    mode_g = squeezed_coherent_state(SqueezedSpec(alpha_g, xi, math.pi), K)
    mode_h = squeezed_coherent_state(SqueezedSpec(alpha_h, xi, 0.0), MINUS_K)
    state = tensor(mode_g, mode_h)
    return bs_transform(state, K, MINUS_K)


def epr_params_from_means(
    alpha_k: complex, alpha_mk: complex, xi: float
) -> tuple[complex, complex]:
    """Preceding-mode amplitudes reproducing given travelling mean amplitudes.

    Cartesian inverse of the mean map; regular for every input.
    """
    prec_g = (alpha_k + alpha_mk) / math.sqrt(2.0)
    prec_h = (alpha_k - alpha_mk) / math.sqrt(2.0)
    alpha_g = complex(math.exp(-xi) * prec_g.real, math.exp(xi) * prec_g.imag)
    alpha_h = complex(math.exp(xi) * prec_h.real, math.exp(-xi) * prec_h.imag)
    return alpha_g, alpha_h


def epr_inverse_map(
    theta_k: float, theta_mk: float, alpha_mag: float, xi: float
) -> tuple[float, float, float, float]:
    """Polar preceding-mode parameters for equal travelling amplitudes.

    Returns (theta_g, theta_h, mag_g, mag_h); magnitudes are signed (a
    negative value means an extra pi on the phase).  Raises
    SingularAngleError when the half-sum of the phases sits within 1e-9 of a
    removable singularity of the polar form while the affected amplitude is
    nonzero; when that amplitude vanishes identically the branch-consistent
    limit (zero magnitude) is returned instead.  Callers wanting a grid-safe
    evaluation should use epr_params_from_means.
    """
    half_sum = (theta_k + theta_mk) / 2.0
    half_diff = (theta_k - theta_mk) / 2.0
    sum_cos, sum_sin = math.cos(half_sum), math.sin(half_sum)
    diff_cos, diff_sin = math.cos(half_diff), math.sin(half_diff)
    root2 = math.sqrt(2.0)
    if abs(sum_cos) < 1e-9:
        if abs(alpha_mag * diff_cos) > 1e-12:
            raise SingularAngleError("half-sum of phases too close to +-pi/2 for theta_g")
        theta_g, mag_g = math.copysign(math.pi / 2.0, sum_sin), 0.0
    else:
        theta_g = math.atan(math.exp(2 * xi) * math.tan(half_sum))
        mag_g = root2 * math.exp(-xi) * alpha_mag * diff_cos * sum_cos / math.cos(theta_g)
    if abs(sum_sin) < 1e-9:
        if abs(alpha_mag * diff_sin) > 1e-12:
            raise SingularAngleError("half-sum of phases too close to 0/pi for theta_h")
        theta_h, mag_h = -math.pi / 2.0, 0.0
    else:
        theta_h = math.atan(-math.exp(-2 * xi) / math.tan(half_sum))
        mag_h = -root2 * math.exp(xi) * alpha_mag * diff_sin * sum_sin / math.cos(theta_h)
    return theta_g, theta_h, mag_g, mag_h


def preceding_mode_intensity(alpha: complex, xi: float, stretched_x1: bool) -> float:
    """<a^dag a> of a preceding mode with its X1 (or X2) fluctuations stretched.

    stretched_x1=True is the squeezing-angle-pi mode (variance e^{2 xi} in
    X1), whose coherent part amplifies as e^{2 xi} cos^2(theta); the other
    orientation carries the opposite sign on the sinh term.
    """
    sign = 1.0 if stretched_x1 else -1.0
    mag2 = abs(alpha) ** 2
    cos_2theta = 1.0 if mag2 == 0 else (alpha.real ** 2 - alpha.imag ** 2) / mag2
    return (
        mag2 * math.cosh(2 * xi)
        + sign * mag2 * cos_2theta * math.sinh(2 * xi)
        + math.sinh(xi) ** 2
    )


def epr_intensity_absorption(alpha_g: complex, alpha_h: complex, xi: float) -> float:
    """Absorbed intensity fraction for the entangled-pair input.

    Intensity of the g mode (ending in the absorbed standing wave) over the
    total; vanishing total intensity raises ValueError.
    """
    intensity_g = preceding_mode_intensity(alpha_g, xi, stretched_x1=True)
    intensity_h = preceding_mode_intensity(alpha_h, xi, stretched_x1=False)
    total = intensity_g + intensity_h
    if total <= 1e-300:
        raise ValueError("total intensity is zero")
    return intensity_g / total


# ---------------------------------------------------------------------------
# scenario runners


def _gaussian_result(
    scenario: dict, absorber: AbsorberSpec, state: GaussianState, start: float
) -> "ScenarioResult":
    from .results import ScenarioResult  # local import avoids a cycle at module load

    coeff_int, coeff_coh = absorption_coefficients(state, K, MINUS_K)
    standing = bs_transform(state, K, MINUS_K)
    standing = relabel(standing, {K: C, MINUS_K: S})
    inseparability_in = duan_inseparability(state, K, MINUS_K)
    inseparability_standing = duan_inseparability(standing, C, S)
    output = full_pipeline(state, absorber)
    out_stats = {}
    for mode in (K, MINUS_K):
        block = output.mode_block(mode)
        mean = output.mode_mean(mode)
        out_stats[str(mode)] = {
            "mean_x1": float(mean[0]),
            "mean_x2": float(mean[1]),
            "var_x1": float(block[0, 0]),
            "var_x2": float(block[1, 1]),
        }
    return ScenarioResult(
        engine="GAUSSIAN",
        scenario=scenario,
        absorber={"r": absorber.reflection, "swap_roles": absorber.swap_roles},
        numerics={},
        mean_intensity_absorption=coeff_int,
        coherence_absorption=coeff_coh,
        separability={
            "duan_travelling": inseparability_in,
            "duan_standing": inseparability_standing,
            # the absorber takes over the absorbed standing mode, so the
            # output light-absorber inseparability equals the standing value
            "light_absorber_inseparability": inseparability_standing,
        },
        extras={"output_quadratures": out_stats},
        diagnostics={"wall_clock_s": time.perf_counter() - start},
    )


def run_squeezed_pair(
    spec_k: SqueezedSpec, spec_mk: SqueezedSpec, absorber: AbsorberSpec = CANONICAL
) -> "ScenarioResult":
    """Two squeezed-coherent travelling inputs through the absorber."""
    start = time.perf_counter()
    state = tensor(
        squeezed_coherent_state(spec_k, K), squeezed_coherent_state(spec_mk, MINUS_K)
    )
    scenario = {
        "kind": "SQUEEZED_PAIR",
        "k": {"alpha": spec_k.alpha, "xi": spec_k.xi, "phi": spec_k.phi},
        "minus_k": {"alpha": spec_mk.alpha, "xi": spec_mk.xi, "phi": spec_mk.phi},
    }
    result = _gaussian_result(scenario, absorber, state, start)
    result.extras["closed_form_standing_inseparability"] = squeezed_pair_inseparability(
        spec_k.xi, spec_mk.xi, spec_k.phi, spec_mk.phi
    )
    return result


def run_epr(
    alpha_g: complex, alpha_h: complex, xi: float, absorber: AbsorberSpec = CANONICAL
) -> "ScenarioResult":
    """Entangled-pair input built from orthogonally squeezed preceding modes."""
    start = time.perf_counter()
    state = epr_state(alpha_g, alpha_h, xi)
    scenario = {"kind": "EPR", "alpha_g": alpha_g, "alpha_h": alpha_h, "xi": xi}
    result = _gaussian_result(scenario, absorber, state, start)
    total_intensity = mode_intensity(state, K) + mode_intensity(state, MINUS_K)
    if total_intensity > 1e-12:
        result.extras["closed_form_intensity_absorption"] = epr_intensity_absorption(
            alpha_g, alpha_h, xi
        )
    return result
