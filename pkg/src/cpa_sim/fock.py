"""Truncated multi-mode Fock-space engine.

States are dense complex tensors indexed by per-mode occupation number with a
common cutoff.  The two fundamental maps are the balanced (Hadamard)
beamsplitter between two modes and the absorber channel, which couples the
absorbed standing mode to a fresh vacuum environment mode.  Everything is a
pure function over immutable states, so parameter sweeps can fan out freely.

Exact finite-photon identities hold to ~1e-15 because beamsplitter matrix
elements are built from exact integer combinatorics.  States bridged from
continuous families (coherent, squeezed, cat) are truncated; any map that
would push more than TRUNCATION_TOL of probability past the cutoff fails
loudly instead of silently corrupting moments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.linalg import expm

from .absorber import AbsorberSpec
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

TRUNCATION_TOL = 1e-10  # norm a constructor/map may lose to the cutoff
SECTOR_MASS_FLOOR = 1e-26  # total-photon sectors below this weight are dropped
DEFAULT_CUTOFF = 30


class FockError(ValueError):
    """Base class for engine failures."""


class CutoffError(FockError):
    """Cutoff too small to hold the state to within TRUNCATION_TOL."""


@dataclass(frozen=True)
class PureState:
    """Normalized pure state over labeled modes with a shared occupation cutoff."""

    modes: tuple[ModeLabel, ...]
    cutoff: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        dim = self.cutoff + 1
        expected = (dim,) * len(self.modes)
        if self.amplitudes.shape != expected:
            raise FockError(
                f"amplitude tensor shape {self.amplitudes.shape} != {expected}"
            )
        check_mode_consistency(self.modes)
        norm = float(np.linalg.norm(self.amplitudes.ravel()))
        if abs(norm - 1.0) > 1e-9:
            raise FockError(f"state not normalized: |psi| = {norm!r}")
        self.amplitudes.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.cutoff + 1

    def axis(self, mode: ModeLabel) -> int:
        try:
            return self.modes.index(mode)
        except ValueError:
            raise ModeError(f"mode {mode} not present in {self.modes}") from None

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def amplitude(self, occupations: Mapping[ModeLabel, int]) -> complex:
        index = [0] * len(self.modes)
        for mode, n in occupations.items():
            index[self.axis(mode)] = n
        return complex(self.amplitudes[tuple(index)])

    def aligned_amplitudes(self, mode_order: Sequence[ModeLabel]) -> np.ndarray:
        """Amplitude tensor with axes permuted to the given mode order."""
        if set(mode_order) != set(self.modes) or len(mode_order) != len(self.modes):
            raise ModeError(f"mode sets differ: {mode_order} vs {self.modes}")
        perm = [self.axis(m) for m in mode_order]
        return np.transpose(self.amplitudes, perm)

    def fidelity(self, other: "PureState") -> float:
        """|<self|other>|^2; mode sets must match, order may differ."""
        if self.cutoff != other.cutoff:
            raise FockError("states have different cutoffs")
        aligned = other.aligned_amplitudes(self.modes)
        return float(abs(np.vdot(self.amplitudes, aligned)) ** 2)


@dataclass(frozen=True)
class DensityOperator:
    """Reduced (generally mixed) state over labeled modes."""

    modes: tuple[ModeLabel, ...]
    cutoff: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        dim = (self.cutoff + 1) ** len(self.modes)
        if self.matrix.shape != (dim, dim):
            raise FockError(f"density matrix shape {self.matrix.shape} != {(dim, dim)}")
        check_mode_consistency(self.modes)
        if not np.allclose(self.matrix, self.matrix.conj().T, atol=1e-12):
            raise FockError("density matrix not Hermitian")
        if abs(np.trace(self.matrix).real - 1.0) > 1e-9:
            raise FockError(f"density matrix trace {np.trace(self.matrix)!r} != 1")
        self.matrix.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.cutoff + 1

    def axis(self, mode: ModeLabel) -> int:
        try:
            return self.modes.index(mode)
        except ValueError:
            raise ModeError(f"mode {mode} not present in {self.modes}") from None

    def as_tensor(self) -> np.ndarray:
        """Matrix reshaped to (dim,)*M ket axes followed by (dim,)*M bra axes."""
        m = len(self.modes)
        return self.matrix.reshape((self.dim,) * (2 * m))

    def purity(self) -> float:
        return float(np.vdot(self.matrix, self.matrix).real)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def entropy(self) -> float:
        """Von Neumann entropy in bits."""
        lam = np.clip(self.eigenvalues(), 0.0, None)
        lam = lam[lam > 1e-16]
        return max(0.0, float(-np.sum(lam * np.log2(lam))))

    def expectation_with_pure(self, state: PureState) -> float:
        """<psi|rho|psi> for a pure state over the same modes."""
        if state.cutoff != self.cutoff:
            raise FockError("cutoff mismatch")
        vec = state.aligned_amplitudes(self.modes).ravel()
        return float(np.real(np.vdot(vec, self.matrix @ vec)))

    def partial_trace(self, keep: Iterable[ModeLabel]) -> "DensityOperator":
        keep = tuple(m for m in self.modes if m in set(keep))
        if not keep:
            raise ModeError("keep set must be a nonempty subset of modes")
        m = len(self.modes)
        keep_axes = [self.modes.index(mode) for mode in keep]
        trace_axes = [i for i in range(m) if i not in keep_axes]
        tensor = self.as_tensor()
        for offset, axis in enumerate(trace_axes):
            tensor = np.trace(tensor, axis1=axis - offset, axis2=axis - offset + m - offset)
        d_keep = self.dim ** len(keep)
        matrix = tensor.reshape(d_keep, d_keep)
        return DensityOperator(keep, self.cutoff, matrix)

    def mode_occupation_distribution(self, mode: ModeLabel) -> np.ndarray:
        reduced = self.partial_trace([mode])
        return np.clip(np.diag(reduced.matrix).real, 0.0, None)


# ---------------------------------------------------------------------------
# constructors


def _normalized(amps: np.ndarray, lossy_ok: bool = False) -> np.ndarray:
    norm2 = float(np.vdot(amps, amps).real)
    if norm2 <= 0.0:
        raise FockError("zero-amplitude state")
    norm = math.sqrt(norm2)
    if not lossy_ok and abs(norm - 1.0) > TRUNCATION_TOL:
        raise CutoffError(f"norm lost to cutoff: 1 - |psi| = {1 - norm:.3e}")
    return amps / norm


def basis_state(occupations: Mapping[ModeLabel, int], cutoff: int) -> PureState:
    modes = tuple(occupations)
    dim = cutoff + 1
    for mode, n in occupations.items():
        if not 0 <= n <= cutoff:
            raise CutoffError(f"occupation {n} of {mode} exceeds cutoff {cutoff}")
    amps = np.zeros((dim,) * len(modes), dtype=complex)
    amps[tuple(occupations[m] for m in modes)] = 1.0
    return PureState(modes, cutoff, amps)


def superposition(
    terms: Iterable[tuple[complex, Mapping[ModeLabel, int]]],
    modes: Sequence[ModeLabel],
    cutoff: int,
) -> PureState:
    """Normalized superposition of occupation-number kets."""
    modes = tuple(modes)
    dim = cutoff + 1
    amps = np.zeros((dim,) * len(modes), dtype=complex)
    for coeff, occupations in terms:
        index = [0] * len(modes)
        for mode, n in occupations.items():
            if mode not in modes:
                raise ModeError(f"term mode {mode} not in state modes {modes}")
            if not 0 <= n <= cutoff:
                raise CutoffError(f"occupation {n} of {mode} exceeds cutoff {cutoff}")
            index[modes.index(mode)] = n
        amps[tuple(index)] += coeff
    return PureState(modes, cutoff, _normalized(amps, lossy_ok=True))


def tensor(*states: PureState) -> PureState:
    cutoffs = {s.cutoff for s in states}
    if len(cutoffs) != 1:
        raise FockError(f"tensor factors disagree on cutoff: {sorted(cutoffs)}")
    modes: tuple[ModeLabel, ...] = ()
    amps = np.array(1.0, dtype=complex)
    for s in states:
        modes = modes + s.modes
        amps = np.tensordot(amps, s.amplitudes, axes=0)
    return PureState(modes, states[0].cutoff, amps)


def vacuum_state(modes: Sequence[ModeLabel], cutoff: int) -> PureState:
    return basis_state({m: 0 for m in modes}, cutoff)


def coherent_state(alpha: complex, cutoff: int, mode: ModeLabel = K) -> PureState:
    """|alpha> truncated at the cutoff and renormalized."""
    dim = cutoff + 1
    amps = np.zeros(dim, dtype=complex)
    amps[0] = math.exp(-abs(alpha) ** 2 / 2.0)
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return PureState((mode,), cutoff, _normalized(amps))


def superposition_of_coherent_pair(alpha: complex, cutoff: int) -> PureState:
    """Normalized |alpha>|-alpha> + |-alpha>|alpha> over (K, MINUS_K)."""
    plus = coherent_state(alpha, cutoff, K).amplitudes
    minus = coherent_state(-alpha, cutoff, K).amplitudes
    amps = np.tensordot(plus, minus, axes=0) + np.tensordot(minus, plus, axes=0)
    return PureState((K, MINUS_K), cutoff, _normalized(amps, lossy_ok=True))


def _single_mode_ops(dim: int) -> tuple[np.ndarray, np.ndarray]:
    lower = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)
    return lower, lower.conj().T


def squeezed_coherent_state(
    alpha: complex, xi: float, phi: float = 0.0, cutoff: int = DEFAULT_CUTOFF,
    mode: ModeLabel = K,
) -> PureState:
    """Squeezed coherent state: squeeze applied after the displacement.

    The mean amplitude is alpha*cosh(xi) - conj(alpha)*exp(i*phi)*sinh(xi) and
    the quadrature variances are cosh(2 xi) -/+ cos(phi) sinh(2 xi), matching
    the Gaussian engine's conventions exactly.

    Built in a padded space (the truncated squeezer is unitary, so norm alone
    cannot flag an insufficient cutoff); the mass found in the pad estimates
    the true tail and fails the cutoff check if it exceeds the budget.
    """
    if xi < 0:
        xi, phi = -xi, phi + math.pi
    pad = max(10, cutoff // 2)
    work_dim = cutoff + 1 + pad
    lower, raise_ = _single_mode_ops(work_dim)
    vec = coherent_state(alpha, work_dim - 1).amplitudes
    if xi > 0:
        zeta = xi * np.exp(1j * phi)
        squeezer = expm(0.5 * (np.conj(zeta) * (lower @ lower) - zeta * (raise_ @ raise_)))
        vec = squeezer @ vec
    tail = float(np.vdot(vec[cutoff + 1:], vec[cutoff + 1:]).real)
    if tail / 2.0 > TRUNCATION_TOL:
        raise CutoffError(
            f"squeezed state (|alpha|={abs(alpha):.3f}, xi={xi:.3f}) keeps "
            f"{tail:.2e} of its weight beyond cutoff {cutoff}"
        )
    return PureState((mode,), cutoff, _normalized(vec[:cutoff + 1], lossy_ok=True))


def relabel(state: PureState, mapping: Mapping[ModeLabel, ModeLabel]) -> PureState:
    modes = tuple(mapping.get(m, m) for m in state.modes)
    return PureState(modes, state.cutoff, state.amplitudes.copy())


# ---------------------------------------------------------------------------
# beamsplitter


@lru_cache(maxsize=None)
def hadamard_block(total: int) -> np.ndarray:
    """Unitary on the total-photon sector of a balanced beamsplitter.

    Entry [p, m] is the amplitude of |p, total-p> in the image of
    |m, total-m> under a_1 -> (a_1 + a_2)/sqrt(2), a_2 -> (a_1 - a_2)/sqrt(2).
    Built from exact integer expansion of (x+1)^m (x-1)^(total-m), so every
    entry is correct to a few ulp regardless of the sector size.
    """
    fact = [math.factorial(i) for i in range(total + 1)]
    scale = 2.0 ** (-total / 2.0)
    block = np.zeros((total + 1, total + 1))
    for m in range(total + 1):
        n = total - m
        coeffs = [math.comb(m, j) for j in range(m + 1)] + [0] * n
        for _ in range(n):  # multiply by (x - 1), exact integers
            for p in range(total, -1, -1):
                coeffs[p] = (coeffs[p - 1] if p > 0 else 0) - coeffs[p]
        for p, s in enumerate(coeffs):
            if s:
                ratio = (fact[p] * fact[total - p]) / (fact[m] * fact[n])
                block[p, m] = s * math.sqrt(ratio) * scale
    block.setflags(write=False)
    return block


def bs_transform(state: PureState, a: ModeLabel, b: ModeLabel) -> PureState:
    """Balanced beamsplitter between modes a and b (an involution).

    Sectors whose total photon number exceeds the cutoff are transformed on
    the representable sub-block; if that loses more than TRUNCATION_TOL of
    probability the cutoff is declared too small.
    """
    if a == b:
        raise ModeError("beamsplitter needs two distinct modes")
    ia, ib = state.axis(a), state.axis(b)
    cutoff = state.cutoff
    arr = np.moveaxis(state.amplitudes, (ia, ib), (0, 1)).copy()
    out = np.zeros_like(arr)
    for total in range(2 * cutoff + 1):
        lo, hi = max(0, total - cutoff), min(total, cutoff)
        ms = np.arange(lo, hi + 1)
        sector = arr[ms, total - ms]
        if float(np.vdot(sector, sector).real) < SECTOR_MASS_FLOOR:
            continue
        block = hadamard_block(total)[lo:hi + 1, lo:hi + 1]
        out[ms, total - ms] = np.tensordot(block, sector, axes=(1, 0))
    out = np.moveaxis(out, (0, 1), (ia, ib))
    return PureState(state.modes, cutoff, _normalized(out))


# ---------------------------------------------------------------------------
# absorber channel and pipeline


def _rails_with_kind(state: PureState, kind: ModeKind) -> list[str]:
    return sorted({m.rail for m in state.modes if m.kind is kind})


def _couple_to_environment(
    state: PureState, mode: ModeLabel, env: ModeLabel, tau: float
) -> PureState:
    """Append a vacuum mode and split the target mode's photons onto it.

    Output annihilation operators: a_mode -> tau*a_mode + s*a_env with
    s = sqrt(1 - tau^2); since the environment starts in vacuum the n-photon
    kernel is the positive binomial sqrt(C(n, p)) tau^p s^(n-p).
    """
    s = math.sqrt(max(0.0, 1.0 - tau * tau))
    dim = state.dim
    arr = np.moveaxis(state.amplitudes, state.axis(mode), -1)
    kept, env_n = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
    total = kept + env_n
    valid = total <= state.cutoff
    kernel = np.zeros((dim, dim))
    binom = np.zeros((dim, dim))
    binom[valid] = [math.comb(int(t), int(p)) for t, p in zip(total[valid], kept[valid])]
    kernel[valid] = np.sqrt(binom[valid]) * tau ** kept[valid] * s ** env_n[valid]
    out = arr[..., np.minimum(total, state.cutoff)] * kernel
    out = np.moveaxis(out, -2, state.axis(mode))  # env axis stays last
    return PureState(state.modes + (env,), state.cutoff, _normalized(out))


def cpa_channel(state: PureState, absorber: AbsorberSpec) -> PureState:
    """Absorber acting in the standing basis.

    The absorbed standing mode (cosine, or sine when roles are swapped)
    couples to a fresh vacuum environment mode with amplitude transmissivity
    tau_c; at tau_c = 0 this is a full state swap into the environment.  The
    other standing mode is untouched.  The joint state stays pure.
    """
    rails = _rails_with_kind(state, ModeKind.C)
    if not rails or rails != _rails_with_kind(state, ModeKind.S):
        raise ModeError("channel requires the standing basis (C and S present)")
    result = state
    for rail in rails:
        env = ENV_C.with_rail(rail)
        if env in state.modes:
            raise ModeError(f"environment mode {env} already attached")
        absorbed = ModeLabel(absorber.absorbed_kind, rail)
        result = _couple_to_environment(result, absorbed, env, absorber.tau_c)
    return result


def full_pipeline(state: PureState, absorber: AbsorberSpec) -> PureState:
    """Travelling modes -> standing basis -> absorber -> travelling modes.

    Returns the joint pure state over the output travelling modes and the
    environment mode(s).
    """
    rails = _rails_with_kind(state, ModeKind.K)
    if not rails or rails != _rails_with_kind(state, ModeKind.MINUS_K):
        raise ModeError("pipeline input must be in the travelling basis (K, MINUS_K)")
    result = state
    for rail in rails:
        result = bs_transform(result, K.with_rail(rail), MINUS_K.with_rail(rail))
    to_standing = {
        m: ModeLabel(STANDING_OF[m.kind], m.rail)
        for m in result.modes
        if m.kind in STANDING_OF
    }
    result = relabel(result, to_standing)
    result = cpa_channel(result, absorber)
    for rail in rails:
        result = bs_transform(result, C.with_rail(rail), S.with_rail(rail))
    to_travelling = {
        m: ModeLabel(TRAVELLING_OF[m.kind], m.rail)
        for m in result.modes
        if m.kind in TRAVELLING_OF
    }
    return relabel(result, to_travelling)


# ---------------------------------------------------------------------------
# measurements and reductions


def _env_axes(state: PureState) -> list[int]:
    return [i for i, m in enumerate(state.modes) if m.is_env]


def total_occupation_distribution(
    state: PureState, modes: Sequence[ModeLabel]
) -> dict[int, float]:
    """Distribution of the summed occupation of the given modes."""
    axes = [state.axis(m) for m in modes]
    probs = state.probabilities()
    other = tuple(i for i in range(len(state.modes)) if i not in axes)
    marginal = probs.sum(axis=other) if other else probs
    grid = np.indices(marginal.shape).sum(axis=0)
    weights = np.bincount(grid.ravel(), weights=marginal.ravel())
    return {m: float(w) for m, w in enumerate(weights)}


def absorbed_photon_distribution(joint: PureState) -> dict[int, float]:
    """Probability of finding m photons (total) in the environment mode(s)."""
    env = [m for m in joint.modes if m.is_env]
    if not env:
        raise ModeError("state has no environment mode")
    return total_occupation_distribution(joint, env)


def joint_occupation_distribution(
    state: PureState, a: ModeLabel, b: ModeLabel
) -> dict[tuple[int, int], float]:
    """Joint photon-number distribution of two modes."""
    probs = state.probabilities()
    axes = (state.axis(a), state.axis(b))
    other = tuple(i for i in range(len(state.modes)) if i not in axes)
    marginal = probs.sum(axis=other) if other else probs
    if state.axis(a) > state.axis(b):
        marginal = marginal.T
    return {
        (na, nb): float(marginal[na, nb])
        for na in range(state.dim)
        for nb in range(state.dim)
    }


def partial_trace(joint: PureState, keep: Iterable[ModeLabel]) -> DensityOperator:
    """Reduced density operator over the kept modes."""
    keep = tuple(m for m in joint.modes if m in set(keep))
    if not keep:
        raise ModeError("keep set must be a nonempty subset of modes")
    keep_axes = [joint.axis(m) for m in keep]
    rest_axes = [i for i in range(len(joint.modes)) if i not in keep_axes]
    arr = np.transpose(joint.amplitudes, keep_axes + rest_axes)
    d_keep = joint.dim ** len(keep)
    mat = arr.reshape(d_keep, -1)
    rho = mat @ mat.conj().T
    rho = (rho + rho.conj().T) / 2.0
    rho /= np.trace(rho).real
    return DensityOperator(keep, joint.cutoff, rho)


def entanglement_entropy(joint: PureState, partition: Iterable[ModeLabel]) -> float:
    """Von Neumann entropy (bits) of the reduced state on the partition."""
    return partial_trace(joint, partition).entropy()


def conditional_output(joint: PureState, absorbed: int) -> DensityOperator:
    """Output-light state conditioned on the environment holding `absorbed` photons.

    Projects the environment mode(s) onto total occupation `absorbed`,
    renormalizes, and traces the environment out.
    """
    env_axes = _env_axes(joint)
    if not env_axes:
        raise ModeError("state has no environment mode")
    keep = tuple(m for i, m in enumerate(joint.modes) if i not in env_axes)
    rest = [i for i in range(len(joint.modes)) if i not in env_axes]
    arr = np.transpose(joint.amplitudes, rest + env_axes)
    d_keep = joint.dim ** len(keep)
    mat = arr.reshape(d_keep, -1)
    env_totals = np.indices((joint.dim,) * len(env_axes)).sum(axis=0).ravel()
    sel = mat[:, env_totals == absorbed]
    prob = float(np.vdot(sel, sel).real)
    if prob < 1e-12:
        raise FockError(f"conditioning on zero-probability absorbed count {absorbed}")
    rho = sel @ sel.conj().T / prob
    rho = (rho + rho.conj().T) / 2.0
    return DensityOperator(keep, joint.cutoff, rho)


# ---------------------------------------------------------------------------
# moments


def _apply_lowering(arr: np.ndarray, axis: int) -> np.ndarray:
    """Annihilation operator along one tensor axis."""
    moved = np.moveaxis(arr, axis, 0)
    out = np.zeros_like(moved)
    n = np.arange(1, moved.shape[0])
    out[:-1] = moved[1:] * np.sqrt(n).reshape((-1,) + (1,) * (moved.ndim - 1))
    return np.moveaxis(out, 0, axis)


def _pure_moments(state: PureState, mode: ModeLabel) -> tuple[complex, complex, float]:
    """(<a>, <a^2>, <a^dag a>) for one mode of a pure state."""
    axis = state.axis(mode)
    lowered = _apply_lowering(state.amplitudes, axis)
    mean = complex(np.vdot(state.amplitudes, lowered))
    mean_sq = complex(np.vdot(state.amplitudes, _apply_lowering(lowered, axis)))
    number = float(np.vdot(lowered, lowered).real)
    return mean, mean_sq, number


def _dm_moments(rho: DensityOperator, mode: ModeLabel) -> tuple[complex, complex, float]:
    reduced = rho.partial_trace([mode]).matrix
    n = np.arange(reduced.shape[0])
    mean = complex(np.sum(np.sqrt(n[1:]) * np.diagonal(reduced, offset=-1)))
    two = n[2:]
    mean_sq = complex(np.sum(np.sqrt(two * (two - 1)) * np.diagonal(reduced, offset=-2)))
    number = float(np.sum(n * np.diagonal(reduced).real))
    return mean, mean_sq, number


def mode_moments(
    state: PureState | DensityOperator, mode: ModeLabel
) -> tuple[complex, float]:
    """Mean amplitude <a> and mean photon number <a^dag a> of one mode."""
    if isinstance(state, PureState):
        mean, _, number = _pure_moments(state, mode)
    else:
        mean, _, number = _dm_moments(state, mode)
    return mean, number


def cross_moment(state: PureState, a: ModeLabel, b: ModeLabel) -> complex:
    """<a_a^dag a_b> between two modes of a pure state."""
    lowered_a = _apply_lowering(state.amplitudes, state.axis(a))
    lowered_b = _apply_lowering(state.amplitudes, state.axis(b))
    return complex(np.vdot(lowered_a, lowered_b))


@dataclass(frozen=True)
class QuadratureStats:
    mean_x1: float
    mean_x2: float
    var_x1: float
    var_x2: float
    cov_x1x2: float


def quadrature_stats(state: PureState | DensityOperator, mode: ModeLabel) -> QuadratureStats:
    """Quadrature means and (co)variances in the X1 = a + a^dag convention."""
    if isinstance(state, PureState):
        mean, mean_sq, number = _pure_moments(state, mode)
    else:
        mean, mean_sq, number = _dm_moments(state, mode)
    m1, m2 = 2.0 * mean.real, 2.0 * mean.imag
    var1 = 1.0 + 2.0 * number + 2.0 * mean_sq.real - m1 * m1
    var2 = 1.0 + 2.0 * number - 2.0 * mean_sq.real - m2 * m2
    cov = 2.0 * mean_sq.imag - m1 * m2
    return QuadratureStats(m1, m2, var1, var2, cov)


def absorption_coefficients(
    state: PureState, a: ModeLabel = K, b: ModeLabel = MINUS_K
) -> tuple[float | None, float | None]:
    """Intensity and coherence absorption coefficients of a travelling pair.

    Intensity: 1/2 + Re<a_a^dag a_b> / (I_a + I_b); coherence: same with the
    correlation replaced by the product of mean amplitudes and intensities by
    |<a>|^2.  A coefficient with a vanishing denominator is None (undefined).
    """
    mean_a, intensity_a = mode_moments(state, a)
    mean_b, intensity_b = mode_moments(state, b)
    total_intensity = intensity_a + intensity_b
    total_coherence = abs(mean_a) ** 2 + abs(mean_b) ** 2
    coeff_int: float | None = None
    coeff_coh: float | None = None
    if total_intensity > 1e-12:
        corr = cross_moment(state, a, b)
        coeff_int = float(0.5 + corr.real / total_intensity)
    if total_coherence > 1e-12:
        coeff_coh = float(0.5 + (np.conj(mean_a) * mean_b).real / total_coherence)
    return coeff_int, coeff_coh
