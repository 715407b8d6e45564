"""Gaussian packets in the box: eigenexpansion, exact evolution, observables.

The initial state is a Gaussian of mean position x_bar, width delta_x and mean
momentum p_bar (box units, hbar = m = L = 1):

    psi(x) = (sqrt(pi) dx)^(-1/2) exp[-(x - xb)^2 / (2 dx^2) + i pb (x - xb)]

Its overlap with eigenfunction n, evaluated with the Gaussian extended over the
whole line, has the closed form

    a_n = (1/2i) sqrt(4 dx pi / sqrt(pi))
          * [e^{+i n pi xb} e^{-dx^2 (pb + n pi)^2 / 2}
             - e^{-i n pi xb} e^{-dx^2 (pb - n pi)^2 / 2}]

Coefficients are kept raw (no renormalization); the captured norm of the
truncated range is carried explicitly so downstream checks can account for it.

Evolution is exact: in units of T_rev the phase of level n at time t is
2 pi t (n^2 - q2 n^4) and the cycle count t (n^2 - q2 n^4) is reduced modulo 1
with exact rational arithmetic before any trigonometric call, so times as
large as 1e5 T_rev lose no accuracy.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .spectrum import (
    TURNOVER_WARN_FRACTION,
    SystemConfig,
    spectrum_turnover,
)

DEFAULT_X_POINTS = 1024
DEFAULT_P_POINTS = 1024
TRANSFORM_X_POINTS = 2048
STABLE_TAIL_TERMS = 3


class TruncationError(RuntimeError):
    """The basis cap was hit before the expansion reached its target norm."""

    def __init__(self, message, achieved_norm):
        super().__init__(message)
        self.achieved_norm = achieved_norm


class CoverageError(ValueError):
    """A momentum grid does not cover the packet's momentum content."""


class WallClearanceWarning(UserWarning):
    """The Gaussian ansatz leaks significantly outside the box."""


class PerturbativeValidityWarning(UserWarning):
    """The truncated basis approaches the turnover of the quartic spectrum."""


@dataclass(frozen=True)
class PacketSpec:
    """Initial Gaussian packet: mean position, width and mean momentum (box units)."""

    x_bar: float
    delta_x: float
    p_bar: float

    def __post_init__(self):
        if not (0.0 < self.x_bar < 1.0):
            raise ValueError(f"0 < x_bar < 1 violated (got {self.x_bar})")
        if not (self.delta_x > 0.0):
            raise ValueError(f"delta_x > 0 violated (got {self.delta_x})")
        if not math.isfinite(self.p_bar):
            raise ValueError(f"p_bar must be finite (got {self.p_bar})")
        if self.x_bar - 3.0 * self.delta_x <= 0.0 or self.x_bar + 3.0 * self.delta_x >= 1.0:
            warnings.warn(
                "packet tails reach the walls (x_bar +/- 3 delta_x leaves [0, 1]); "
                "the Gaussian ansatz is a poor box state",
                WallClearanceWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class EigenExpansion:
    """Truncated eigenbasis coefficients a_n for n in [n_min, n_max] (inclusive)."""

    n_min: int
    n_max: int
    coefficients: np.ndarray
    captured_norm: float
    packet: PacketSpec

    def __post_init__(self):
        coeffs = np.asarray(self.coefficients, dtype=complex)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) != self.n_max - self.n_min + 1:
            raise ValueError("coefficient count does not match the n range")
        if self.n_min < 1:
            raise ValueError("n_min must be >= 1")

    @property
    def n_values(self) -> np.ndarray:
        return np.arange(self.n_min, self.n_max + 1)


@dataclass(frozen=True)
class EvolvedState:
    """An expansion whose coefficients already carry the phases of time `time`."""

    expansion: EigenExpansion
    time: float
    cfg: SystemConfig

    @property
    def packet(self) -> PacketSpec:
        return self.expansion.packet


def _raw_coefficient(n: int, packet: PacketSpec) -> complex:
    dx, xb, pb = packet.delta_x, packet.x_bar, packet.p_bar
    pref = math.sqrt(4.0 * dx * math.pi / math.sqrt(math.pi))
    plus = cmath.exp(1j * n * math.pi * xb) * math.exp(-(dx**2) * (pb + n * math.pi) ** 2 / 2.0)
    minus = cmath.exp(-1j * n * math.pi * xb) * math.exp(-(dx**2) * (pb - n * math.pi) ** 2 / 2.0)
    return pref / 2j * (plus - minus)


def expand(packet: PacketSpec, cfg: SystemConfig) -> EigenExpansion:
    """Truncated eigenexpansion of the packet.

    Coefficients are accumulated for increasing n until the cumulative norm
    exceeds 1 - epsilon with a stable tail (three consecutive |a_n|^2 each
    below epsilon/100). Leading terms below epsilon/100 are dropped from the
    stored range. Raises TruncationError (carrying the achieved norm) when the
    basis cap is reached first.
    """
    eps = cfg.truncation_epsilon
    floor = eps / 100.0
    coeffs = []
    weights = []
    cumulative = 0.0
    tail_run = 0
    n = 0
    while True:
        n += 1
        if n > cfg.n_max_cap:
            raise TruncationError(
                f"basis cap n_max_cap={cfg.n_max_cap} reached at captured norm "
                f"{cumulative:.12g} < 1 - epsilon = {1.0 - eps:.12g}",
                achieved_norm=cumulative,
            )
        a = _raw_coefficient(n, packet)
        w = abs(a) ** 2
        coeffs.append(a)
        weights.append(w)
        cumulative += w
        tail_run = tail_run + 1 if w < floor else 0
        if cumulative > 1.0 - eps and tail_run >= STABLE_TAIL_TERMS:
            break

    weights = np.asarray(weights)
    above = np.nonzero(weights > floor)[0]
    n_min = int(above[0]) + 1 if len(above) else 1
    kept = np.asarray(coeffs[n_min - 1 :], dtype=complex)
    captured = float(np.sum(weights[n_min - 1 :]))
    if captured <= 1.0 - eps:
        # Leading trim removed too much mass; keep everything instead.
        n_min = 1
        kept = np.asarray(coeffs, dtype=complex)
        captured = float(cumulative)

    expansion = EigenExpansion(
        n_min=n_min, n_max=n, coefficients=kept, captured_norm=captured, packet=packet
    )
    n_star = spectrum_turnover(cfg)
    if expansion.n_max > TURNOVER_WARN_FRACTION * n_star:
        warnings.warn(
            f"basis extends to n={expansion.n_max}, past {TURNOVER_WARN_FRACTION:.1f} "
            f"of the spectral turnover n*={n_star:.4g}; quartic correction is no "
            "longer a small perturbation there",
            PerturbativeValidityWarning,
            stacklevel=2,
        )
    return expansion


def phase_cycles(t: float, q2: float, n_values) -> np.ndarray:
    """Fractional part of t * (n^2 - q2 n^4) for each n, reduced exactly.

    Both t and q2 enter as the exact rationals represented by their floats, so
    the reduction modulo one cycle is free of cancellation no matter how large
    t * n^4 grows.
    """
    if not math.isfinite(t):
        raise ValueError(f"time must be finite (got {t})")
    tf = Fraction(t)
    qf = Fraction(q2) if q2 else None
    out = np.empty(len(n_values), dtype=float)
    for i, n in enumerate(n_values):
        n = int(n)
        c = tf * (n * n)
        if qf is not None:
            c -= tf * qf * n**4
        frac = float(c - math.floor(c))
        out[i] = 0.0 if frac >= 1.0 else frac  # exact frac may round up to 1
    return out


def evolve(expansion: EigenExpansion, t: float, cfg: SystemConfig) -> EvolvedState:
    """Multiply each coefficient by its exact eigenphase exp(-i E_n t)."""
    cycles = phase_cycles(t, cfg.q_squared, expansion.n_values)
    phases = np.exp(-2j * math.pi * cycles)
    evolved = replace(expansion, coefficients=expansion.coefficients * phases)
    return EvolvedState(expansion=evolved, time=t, cfg=cfg)


def _mode_matrix(n_values, x_grid) -> np.ndarray:
    """sqrt(2) sin(n pi x) sampled for every (n, x) pair; shape (len(n), len(x))."""
    return math.sqrt(2.0) * np.sin(np.outer(n_values, math.pi * np.asarray(x_grid, float)))


def reconstruct(state: EvolvedState, x_grid) -> np.ndarray:
    """Complex wave function on the given grid."""
    modes = _mode_matrix(state.expansion.n_values, x_grid)
    return state.expansion.coefficients @ modes


def position_density(state: EvolvedState, x_grid) -> np.ndarray:
    """|psi(x, t)|^2 at each grid point; nonnegative by construction."""
    xv = np.asarray(x_grid, dtype=float)
    if np.any(xv < 0.0) or np.any(xv > 1.0):
        raise ValueError("position grid leaves the box [0, 1]")
    psi = reconstruct(state, xv)
    return np.abs(psi) ** 2


def fourier_amplitude(psi: np.ndarray, x_grid: np.ndarray, p_values) -> np.ndarray:
    """phi(p) = (2 pi)^(-1/2) integral psi(x) e^{-ipx} dx by trapezoid quadrature."""
    x = np.asarray(x_grid, float)
    w = np.full(len(x), x[1] - x[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    kernel = np.exp(-1j * np.outer(np.asarray(p_values, float), x))
    return kernel @ (w * psi) / math.sqrt(2.0 * math.pi)


def default_momentum_grid(packet: PacketSpec, n_points: int = DEFAULT_P_POINTS) -> np.ndarray:
    """Symmetric momentum grid covering both packet lobes plus 8-sigma tails."""
    p_max = abs(packet.p_bar) + 8.0 / packet.delta_x
    return np.linspace(-p_max, p_max, n_points)


def momentum_amplitude(state: EvolvedState, p_grid, nx: int = TRANSFORM_X_POINTS) -> np.ndarray:
    """Momentum amplitude phi(p) of the zero-extended wave function.

    The p grid must be symmetric about 0 and reach at least
    |p_bar| + 6/delta_x on both sides, so that sum |phi|^2 dp recovers the
    captured norm to 1e-4.
    """
    p = np.asarray(p_grid, dtype=float)
    span = max(abs(p[0]), abs(p[-1]))
    if abs(p[0] + p[-1]) > 1e-9 * max(1.0, span):
        raise CoverageError("momentum grid must be symmetric about 0")
    packet = state.packet
    need = abs(packet.p_bar) + 6.0 / packet.delta_x
    if span < need - 1e-9:
        raise CoverageError(
            f"momentum grid reaches |p| = {span:.6g} but |p_bar| + 6/delta_x = {need:.6g} is required"
        )
    x = np.linspace(0.0, 1.0, nx)
    psi = reconstruct(state, x)
    return fourier_amplitude(psi, x, p)


def autocorrelation(expansion: EigenExpansion, t: float, cfg: SystemConfig) -> complex:
    """Overlap sum |a_n|^2 e^{-i E_n t} between the initial and evolved state."""
    cycles = phase_cycles(t, cfg.q_squared, expansion.n_values)
    weights = np.abs(expansion.coefficients) ** 2
    return complex(np.sum(weights * np.exp(-2j * math.pi * cycles)))


def trapezoid_mean_std(axis, density):
    """Mean and standard deviation of a sampled 1-d density (trapezoid weights)."""
    axis = np.asarray(axis, float)
    density = np.asarray(density, float)
    norm = np.trapezoid(density, axis)
    if norm <= 0.0:
        raise ValueError("density has zero norm")
    mean = np.trapezoid(axis * density, axis) / norm
    var = np.trapezoid((axis - mean) ** 2 * density, axis) / norm
    return mean, math.sqrt(max(var, 0.0))
