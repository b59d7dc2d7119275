"""Iterative plasma-fractal generation.

Each step multiplies the image by a gain, enlarges it by a factor of two
(minus one sample), and adds position-hashed noise.  The per-step
composite stays lazy end to end and is stored exactly once, so a whole
generation allocates one grid per level and nothing else.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

from . import oracle
from .core import Image, PullArray2, Shape2, amap, materialize2, of_list, rho2, zip_with
from .noise import _COL_SALT, _LEVEL_SALT, _MASK64, _ROW_SALT, NoiseField, _mix64, noise_at
from .resample import Kernel1D, kernel_bicubic, kernel_bilinear, rdiv, upsample2

ALGORITHMS = ("bilinear", "bicubic", "diamond-square", "midpoint-recursive")

_KERNELS = {
    "bilinear": kernel_bilinear,
    "bicubic": kernel_bicubic,
}


@dataclass(frozen=True)
class PlasmaConfig:
    """Everything a generation run depends on.

    Equal configs produce bit-identical images: all randomness is derived
    from rng_seed through the position hash.  nsf is the per-level gain;
    the noise amplitude stays fixed, so relative roughness decays by
    1/nsf per level.  Useful nsf values sit roughly in 1.1..2.2.
    """

    seed_values: tuple[int, ...] = (4, 4, 4, 4)
    seed_shape: tuple[int, int] = (2, 2)
    levels: int = 8
    nsf: float = 1.2
    noise_amp: int = 64
    algorithm: str = "bicubic"
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if self.nsf <= 0:
            raise ValueError("PlasmaConfig: nsf must be > 0")
        if self.levels < 0:
            raise ValueError("PlasmaConfig: levels must be >= 0")
        if self.noise_amp < 0:
            raise ValueError("PlasmaConfig: noise_amp must be >= 0")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"PlasmaConfig: unknown algorithm {self.algorithm!r}")
        rows, cols = self.seed_shape
        if rows < 1 or cols < 1:
            raise ValueError("PlasmaConfig: seed_shape extents must be >= 1")
        if len(self.seed_values) != rows * cols:
            raise ValueError("PlasmaConfig: seed_values count must match seed_shape")
        if self.algorithm == "midpoint-recursive" and self.seed_shape != (2, 2):
            raise ValueError("PlasmaConfig: midpoint-recursive needs a 2x2 seed")


def fimul(nsf: float, x: int) -> int:
    """nsf * x in double precision, rounded half away from zero."""
    v = nsf * x
    return int(v + 0.5) if v >= 0.0 else int(v - 0.5)


def _round_half_away(v: float) -> int:
    return int(v + 0.5) if v >= 0.0 else int(v - 0.5)


def _fimul_fn(nsf: float):
    # bound closure: one call per element on the hot path
    def f(x, _n=nsf):
        v = _n * x
        return int(v + 0.5) if v >= 0.0 else int(v - 0.5)
    return f


def _scaled_source(img: Image | PullArray2, nsf: float) -> PullArray2:
    """Gain stage of a step: amap(fimul nsf) over the source.

    For a materialized source the two closures are fused by hand; the
    upsampler taps this stage several times per output cell, so one call
    per read instead of three is a measurable win.
    """
    if not isinstance(img, Image):
        return amap(_fimul_fn(nsf), img)
    rows, cols = img.shape.rows, img.shape.cols
    cells = img.cells
    default = img.default

    def at(i, j, _c=cells, _r=rows, _k=cols, _d=default, _n=nsf):
        v = _c[i * _k + j] if 0 <= i < _r and 0 <= j < _k else _d
        x = _n * v
        return int(x + 0.5) if x >= 0.0 else int(x - 0.5)

    return PullArray2(img.shape, at)


def noise_layer(nf: NoiseField, level: int, shape: Shape2) -> PullArray2:
    """Lazy grid of noise_at(nf, level, i, j) values over `shape`."""
    amp = nf.amplitude
    if amp == 0:
        return PullArray2(shape, lambda i, j: 0)
    span = 2 * amp + 1
    level_key = _mix64(nf.master_seed ^ ((level * _LEVEL_SALT) & _MASK64))
    last = (-1, 0)  # (row, row key); materialization is row-major

    def at(i, j, _lk=level_key, _span=span, _amp=amp, _m=_MASK64, _cs=_COL_SALT):
        nonlocal last
        if not (i & 1) and not (j & 1):
            return 0
        li, key = last
        if li != i:
            key = _mix64(_lk ^ ((i * _ROW_SALT) & _m))
            last = (i, key)
        # column mix, finalizer inlined: one call per cell saved
        z = ((key ^ ((j * _cs) & _m)) + 0x9E3779B97F4A7C15) & _m
        z ^= z >> 30
        z = (z * 0xBF58476D1CE4E5B9) & _m
        z ^= z >> 27
        z = (z * 0x94D049BB133111EB) & _m
        z ^= z >> 31
        return z % _span - _amp

    return PullArray2(shape, at)


def expander(k: Kernel1D, nsf: float, nf: NoiseField, level: int,
             img: Image | PullArray2) -> Image:
    """One noisy enlargement step: gain, upsample, add noise, store once."""
    scaled = _scaled_source(img, nsf)
    grown = upsample2(scaled, k)
    noisy = zip_with(operator.add, grown, noise_layer(nf, level, grown.shape))
    return materialize2(0, noisy)


def diamond_square_pull(src: PullArray2, nf: NoiseField, level: int) -> PullArray2:
    """Two-pass refinement of a pre-scaled source as one index function.

    Centers average their four diagonal neighbors; edge cells average
    their in-domain axial neighbors (3 at the border) plus noise.  The
    axial neighbors of an edge cell are base or center cells, never other
    edge cells, so computing centers on demand reproduces the sequential
    two-pass result exactly.
    """
    rows, cols = src.shape.rows, src.shape.cols
    if rows < 2 or cols < 2:
        raise ValueError("diamond_square: need at least a 2x2 source")
    out_rows, out_cols = 2 * rows - 1, 2 * cols - 1
    at = src.at
    noise = noise_layer(nf, level, Shape2(out_rows, out_cols)).at

    def base(p, q, _at=at):
        return _at(p >> 1, q >> 1)

    def center(p, q, _b=base, _n=noise):
        s = _b(p - 1, q - 1) + _b(p - 1, q + 1) + _b(p + 1, q - 1) + _b(p + 1, q + 1)
        return (s + 2) // 4 + _n(p, q)

    def at2(p, q, _b=base, _c=center, _n=noise, _pmax=out_rows - 1, _qmax=out_cols - 1):
        p_odd = p & 1
        q_odd = q & 1
        if not p_odd and not q_odd:
            return _b(p, q)
        if p_odd and q_odd:
            return _c(p, q)
        if p_odd:
            s = _b(p - 1, q) + _b(p + 1, q)
            n = 2
            if q > 0:
                s += _c(p, q - 1)
                n += 1
            if q < _qmax:
                s += _c(p, q + 1)
                n += 1
        else:
            s = _b(p, q - 1) + _b(p, q + 1)
            n = 2
            if p > 0:
                s += _c(p - 1, q)
                n += 1
            if p < _pmax:
                s += _c(p + 1, q)
                n += 1
        return rdiv(s, n) + _n(p, q)

    return PullArray2(Shape2(out_rows, out_cols), at2)


def diamond_square_expand(nsf: float, nf: NoiseField, level: int,
                          img: Image | PullArray2) -> Image:
    """Gain plus two-pass refinement, stored once."""
    return materialize2(0, diamond_square_pull(_scaled_source(img, nsf), nf, level))


def generate(cfg: PlasmaConfig) -> Image:
    """Run the configured expansion pipeline from the seed grid.

    Levels are numbered 0..levels-1 and feed the noise hash, so every
    level draws from an independent field.  levels = 0 returns the seed
    itself, materialized.
    """
    nf = NoiseField(cfg.rng_seed, cfg.noise_amp)
    if cfg.algorithm == "midpoint-recursive":
        return _generate_recursive(cfg, nf)
    current: Image | PullArray2 = rho2(Shape2(*cfg.seed_shape), of_list(cfg.seed_values))
    if cfg.algorithm == "diamond-square":
        for level in range(cfg.levels):
            current = diamond_square_expand(cfg.nsf, nf, level, current)
    else:
        kernel = _KERNELS[cfg.algorithm]()
        for level in range(cfg.levels):
            current = expander(kernel, cfg.nsf, nf, level, current)
    if isinstance(current, Image):
        return current
    return materialize2(0, current)


def _generate_recursive(cfg: PlasmaConfig, nf: NoiseField) -> Image:
    """Integer projection of the recursive reference generator.

    The float recursion runs with attenuation 1/nsf, the result is scaled
    back up by nsf^levels and rounded.  Anchor cells (both indices
    divisible by 2^levels) are pinned to the per-level rounded gain
    ladder so all algorithms agree on what anchors hold.
    """
    seed = oracle.FloatGrid(2, 2, [float(v) for v in cfg.seed_values])
    grid = oracle.midpoint_recursive(seed, cfg.levels, nf, 1.0 / cfg.nsf)
    gain = cfg.nsf ** cfg.levels
    cells = [_round_half_away(v * gain) for v in grid.cells]
    anchor_step = 1 << cfg.levels
    for r in range(2):
        for c in range(2):
            x = cfg.seed_values[r * 2 + c]
            for _ in range(cfg.levels):
                x = fimul(cfg.nsf, x)
            cells[(r * anchor_step) * grid.cols + c * anchor_step] = x
    return Image(Shape2(grid.rows, grid.cols), cells, 0)
