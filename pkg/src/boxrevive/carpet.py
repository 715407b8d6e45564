"""Space-time probability density carpets |psi(x, t)|^2 on rectangular grids."""

from __future__ import annotations

import numpy as np

from .fields import Field2D
from .spectrum import SystemConfig
from .wavepacket import PacketSpec, _mode_matrix, evolve, expand

DEFAULT_NT = 512
DEFAULT_NX = 512


def carpet(
    packet: PacketSpec,
    cfg: SystemConfig,
    t_range=(0.0, 0.5),
    nt: int = DEFAULT_NT,
    nx: int = DEFAULT_NX,
) -> Field2D:
    """Density sampled on nt uniform times (rows) by nx uniform positions.

    Rows are mutually independent time slices; each row integrates (trapezoid)
    to the captured norm of the underlying expansion. nt = 1 degenerates to a
    single row at t0.
    """
    t0, t1 = float(t_range[0]), float(t_range[1])
    if not (t0 >= 0.0 and t1 >= t0):
        raise ValueError(f"time window must satisfy t1 >= t0 >= 0 (got [{t0}, {t1}])")
    if nt < 1 or nx < 2:
        raise ValueError(f"grid must have nt >= 1, nx >= 2 (got nt={nt}, nx={nx})")
    if nt == 1:
        times = np.array([t0])
    else:
        if t1 <= t0:
            raise ValueError(f"time window must satisfy t1 > t0 (got [{t0}, {t1}])")
        times = np.linspace(t0, t1, nt)

    expansion = expand(packet, cfg)
    x_grid = np.linspace(0.0, 1.0, nx)
    modes = _mode_matrix(expansion.n_values, x_grid)

    values = np.empty((len(times), nx))
    for i, t in enumerate(times):
        state = evolve(expansion, float(t), cfg)
        psi = state.expansion.coefficients @ modes
        values[i] = np.abs(psi) ** 2

    meta = {
        "axis1": "time [T_rev]",
        "axis2": "position [L]",
        "values": "probability density [1/L]",
        "captured_norm": expansion.captured_norm,
        "n_min": expansion.n_min,
        "n_max": expansion.n_max,
    }
    return Field2D(times, x_grid, values, meta)


def centroid_trace(field: Field2D) -> np.ndarray:
    """Per-row centroid <x>(t) of a density carpet; values lie in [0, 1]."""
    x = field.axis2
    out = np.empty(len(field.axis1))
    for i, row in enumerate(field.values):
        norm = np.trapezoid(row, x)
        if norm <= 0.0:
            raise ValueError(f"zero-norm row at index {i}; centroid undefined")
        out[i] = np.trapezoid(x * row, x) / norm
    return out


def dominant_period(times: np.ndarray, trace: np.ndarray, pad_factor: int = 8) -> float:
    """Period of the strongest oscillation in a centroid trace.

    Zero-padded periodogram of the detrended trace with parabolic refinement
    of the peak bin.
    """
    sig = np.asarray(trace, float) - np.mean(trace)
    n = len(sig)
    dt = times[1] - times[0]
    spec = np.abs(np.fft.rfft(sig, n=pad_factor * n)) ** 2
    freqs = np.fft.rfftfreq(pad_factor * n, d=dt)
    k = int(np.argmax(spec[1:])) + 1
    if 1 <= k < len(spec) - 1:
        denom = spec[k - 1] - 2.0 * spec[k] + spec[k + 1]
        shift = 0.5 * (spec[k - 1] - spec[k + 1]) / denom if denom != 0.0 else 0.0
    else:
        shift = 0.0
    f_peak = freqs[k] + shift * (freqs[1] - freqs[0])
    return 1.0 / f_peak


def count_maxima(trace: np.ndarray, prominence: float = 0.01) -> int:
    """Number of strict local maxima rising at least `prominence` above the
    neighboring minima on both sides."""
    t = np.asarray(trace, float)
    count = 0
    for i in range(1, len(t) - 1):
        if not (t[i] > t[i - 1] and t[i] >= t[i + 1]):
            continue
        left = t[: i][::-1]
        right = t[i + 1 :]
        drop_left = t[i] - _running_min_until_rise(left, t[i])
        drop_right = t[i] - _running_min_until_rise(right, t[i])
        if drop_left >= prominence and drop_right >= prominence:
            count += 1
    return count


def _running_min_until_rise(arm: np.ndarray, peak: float) -> float:
    low = peak
    for v in arm:
        if v > peak:
            break
        low = min(low, v)
    return low
