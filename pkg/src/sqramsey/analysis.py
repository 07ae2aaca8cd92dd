"""Fringe-signal analysis: harmonic content, peak finding, visibility."""

from __future__ import annotations

import numpy as np

from .errors import InvalidParam


def cosine_coefficients(values, max_harmonic: int):
    """Harmonic decomposition of samples on a uniform ``[0, 2 pi)`` grid.

    Returns ``(mean, cos_coeffs, sin_coeffs)`` where ``cos_coeffs[k - 1]`` is
    the coefficient of ``cos(k * phase)``.  Exact (to rounding) for signals
    band limited below the Nyquist harmonic, which covers every fringe here.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2 * max_harmonic + 1:
        raise InvalidParam(
            f"need a 1-d grid with more than {2 * max_harmonic} samples, got shape {arr.shape}"
        )
    spectrum = np.fft.rfft(arr)
    mean = float(spectrum[0].real) / arr.size
    cos_coeffs = 2.0 * spectrum[1 : max_harmonic + 1].real / arr.size
    sin_coeffs = -2.0 * spectrum[1 : max_harmonic + 1].imag / arr.size
    return mean, cos_coeffs, sin_coeffs


def harmonic_residual(values, keep: tuple[int, ...]) -> float:
    """Max abs deviation from the best fit using only the kept harmonics.

    ``keep`` lists harmonic indices (0 = constant term) retained in the fit;
    the residual is everything else, evaluated on the same uniform
    ``[0, 2 pi)`` grid.
    """
    arr = np.asarray(values, dtype=np.float64)
    spectrum = np.fft.rfft(arr)
    for k in keep:
        if k < 0 or k >= spectrum.size:
            raise InvalidParam(f"harmonic {k} outside the resolvable range")
        spectrum[k] = 0.0
    residual = np.fft.irfft(spectrum, n=arr.size)
    return float(np.max(np.abs(residual)))


def interior_maxima(values) -> np.ndarray:
    """Indices of strict interior local maxima (ties count their left edge)."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size < 3:
        return np.array([], dtype=int)
    inner = arr[1:-1]
    mask = (inner > arr[:-2]) & (inner >= arr[2:])
    return np.flatnonzero(mask) + 1


def periodic_maxima(values) -> np.ndarray:
    """Indices of local maxima on one period sampled endpoint-exclusive."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size < 3:
        return np.array([], dtype=int)
    prev = np.roll(arr, 1)
    nxt = np.roll(arr, -1)
    return np.flatnonzero((arr > prev) & (arr >= nxt))


def refine_peak(x_left: float, x_mid: float, x_right: float, y_left: float, y_mid: float, y_right: float) -> float:
    """Parabolic vertex through three samples; falls back to the middle."""
    denom = y_left - 2.0 * y_mid + y_right
    if denom >= 0.0:
        return x_mid
    step = 0.5 * (x_right - x_left)
    return x_mid + 0.5 * step * (y_left - y_right) / denom


def periodic_peak_locations(x, values, period: float) -> np.ndarray:
    """Refined peak positions of a signal sampled uniformly over one period.

    ``x`` must be an endpoint-exclusive uniform grid spanning ``period``.
    Neighbours wrap around, so peaks sitting on the grid edge are found once.
    """
    arr_x = np.asarray(x, dtype=np.float64)
    arr_y = np.asarray(values, dtype=np.float64)
    if arr_x.shape != arr_y.shape or arr_x.ndim != 1:
        raise InvalidParam("x and values must be equal-length 1-d arrays")
    size = arr_x.size
    step = period / size
    locations = []
    for idx in periodic_maxima(arr_y):
        left = (idx - 1) % size
        right = (idx + 1) % size
        locations.append(
            refine_peak(
                arr_x[idx] - step,
                arr_x[idx],
                arr_x[idx] + step,
                arr_y[left],
                arr_y[idx],
                arr_y[right],
            )
        )
    return np.array(sorted(locations))


def periodic_spacings(locations, period: float) -> np.ndarray:
    """Consecutive peak separations including the wrap-around gap."""
    locs = np.asarray(locations, dtype=np.float64)
    if locs.size < 2:
        return np.array([])
    diffs = np.diff(locs)
    wrap = period - (locs[-1] - locs[0])
    return np.append(diffs, wrap)


def interior_peak_locations(x, values) -> np.ndarray:
    """Refined positions of strict interior maxima (non-periodic signals)."""
    arr_x = np.asarray(x, dtype=np.float64)
    arr_y = np.asarray(values, dtype=np.float64)
    locations = [
        refine_peak(
            arr_x[idx - 1], arr_x[idx], arr_x[idx + 1], arr_y[idx - 1], arr_y[idx], arr_y[idx + 1]
        )
        for idx in interior_maxima(arr_y)
    ]
    return np.array(locations)


def extract_visibility(values):
    """``(max - min) / (max + min)``; ``None`` for an all-zero fringe."""
    arr = np.asarray(values, dtype=np.float64)
    top = float(arr.max())
    bottom = float(arr.min())
    if top + bottom == 0.0:
        return None
    return (top - bottom) / (top + bottom)
