"""Fused pull-array pipelines for iterative plasma-fractal heightmaps."""

from .analysis import HURST_LAGS, RoughnessReport, hurst_estimate, variogram
from .core import (
    EvalTally,
    Image,
    Index2,
    PullArray2,
    Shape2,
    amap,
    compose,
    count_evaluations,
    materialize2,
    ntimes,
    of_list,
    pipe,
    rho2,
    zip_with,
)
from .noise import NoiseField, noise_at
from .plasma import (
    ALGORITHMS,
    PlasmaConfig,
    diamond_square_expand,
    diamond_square_pull,
    expander,
    fimul,
    generate,
    noise_layer,
)
from .resample import (
    Kernel1D,
    Upsampler,
    as_upsampler,
    interp_row,
    kernel_bicubic,
    kernel_bilinear,
    rdiv,
    upsample2,
)

__all__ = [
    "ALGORITHMS",
    "EvalTally",
    "HURST_LAGS",
    "Image",
    "Index2",
    "Kernel1D",
    "NoiseField",
    "PlasmaConfig",
    "PullArray2",
    "RoughnessReport",
    "Shape2",
    "Upsampler",
    "amap",
    "as_upsampler",
    "compose",
    "count_evaluations",
    "diamond_square_expand",
    "diamond_square_pull",
    "expander",
    "fimul",
    "generate",
    "hurst_estimate",
    "interp_row",
    "kernel_bicubic",
    "kernel_bilinear",
    "materialize2",
    "noise_at",
    "noise_layer",
    "ntimes",
    "of_list",
    "pipe",
    "rdiv",
    "rho2",
    "upsample2",
    "variogram",
    "zip_with",
]

__version__ = "0.1.0"
