"""Roughness statistics for generated heightmaps.

The increment variance of a self-affine surface grows as lag^(2H), so the
log-log slope of the variogram over dyadic lags estimates 2H; the surface
fractal dimension is 3 - H.  For the expansion pipeline the per-level
noise attenuation 1/nsf puts H near log2(nsf).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import Image

HURST_LAGS = (1, 2, 4, 8, 16)


@dataclass(frozen=True)
class RoughnessReport:
    min: float
    max: float
    mean: float
    lags: tuple[int, ...]
    variogram: tuple[float, ...]
    hurst: float
    fractal_dim: float


def variogram(img: Image, lags: Sequence[int]) -> list[float]:
    """Mean squared increment per lag, pooled over rows and columns."""
    rows, cols = img.shape.rows, img.shape.cols
    a = np.asarray(img.cells, dtype=np.float64).reshape(rows, cols)
    out = []
    for h in lags:
        if h < 1 or h >= min(rows, cols):
            raise ValueError(f"variogram: lag {h} out of range for {rows}x{cols}")
        d0 = a[h:, :] - a[:-h, :]
        d1 = a[:, h:] - a[:, :-h]
        total = float(np.square(d0).sum() + np.square(d1).sum())
        out.append(total / (d0.size + d1.size))
    return out


def hurst_estimate(img: Image) -> RoughnessReport:
    """Least-squares variogram slope over lags 1..16.

    hurst = slope / 2 clamped to [0, 1.5]; fractal_dim = 3 - hurst.
    Raises on images too small for the lag span or with no variance.
    """
    rows, cols = img.shape.rows, img.shape.cols
    if rows < 64 or cols < 64:
        raise ValueError("hurst_estimate: image must be at least 64x64")
    v = variogram(img, HURST_LAGS)
    if min(v) <= 0.0:
        raise ValueError("zero variance")
    x = np.log(np.asarray(HURST_LAGS, dtype=np.float64))
    y = np.log(np.asarray(v))
    xc = x - x.mean()
    slope = float((xc * (y - y.mean())).sum() / (xc * xc).sum())
    hurst = min(max(slope / 2.0, 0.0), 1.5)
    cells = np.asarray(img.cells, dtype=np.float64)
    return RoughnessReport(
        min=float(cells.min()),
        max=float(cells.max()),
        mean=float(cells.mean()),
        lags=HURST_LAGS,
        variogram=tuple(v),
        hurst=hurst,
        fractal_dim=3.0 - hurst,
    )
