"""Factor-2 integer upsampling as separable interpolation.

An n x m grid grows to (2n-1) x (2m-1): even output positions copy the
source sample, odd positions are filled from odd-phase interpolation
taps.  Taps are integers over a power-of-two denominator, so every
result is an exact, platform-independent integer.

The application order is rows first, then columns of the rounded row
pass.  The order is observable through rounding and is part of the
contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

from .core import Image, PullArray2, Shape2


@dataclass(frozen=True)
class Kernel1D:
    """Odd-phase interpolation taps: integer weights over denominator `den`.

    The weights must sum to `den`, which makes constant inputs exact
    fixed points of the interpolation.
    """

    weights: tuple[int, ...]
    den: int

    def __post_init__(self) -> None:
        n = len(self.weights)
        if n < 2 or n % 2 != 0:
            raise ValueError("Kernel1D: need an even number of taps (>= 2)")
        if self.den <= 0 or self.den & (self.den - 1):
            raise ValueError("Kernel1D: denominator must be a positive power of two")
        if sum(self.weights) != self.den:
            raise ValueError("Kernel1D: weights must sum to the denominator")


def kernel_bilinear() -> Kernel1D:
    """Two-tap averaging kernel: new samples are midpoint averages."""
    return Kernel1D((1, 1), 2)


def kernel_bicubic() -> Kernel1D:
    """Catmull-Rom cubic (a = -1/2) sampled at half-sample offsets."""
    return Kernel1D((-1, 9, 9, -1), 16)


def rdiv(s: int, d: int) -> int:
    """Rounded division floor((s + d/2) / d), floor toward minus infinity.

    For odd d the integer d // 2 gives the same result as the exact d / 2:
    the half-unit shortfall can never carry an integer s across a multiple
    of d.
    """
    return (s + d // 2) // d


def interp_row(a: Sequence[int], k: Kernel1D) -> list[int]:
    """Upsample one row to length 2n-1.

    out[2i] = a[i]; odd outputs are the rounded tap sum over a window
    centered between the two surrounding samples, with out-of-range taps
    clamped to the edge sample.
    """
    n = len(a)
    if n < 2:
        raise ValueError("interp_row: need >=2 samples")
    w = k.weights
    den = k.den
    half = len(w) // 2
    hd = den // 2
    out = []
    for p in range(2 * n - 1):
        if p % 2 == 0:
            out.append(a[p // 2])
        else:
            base = (p - 1) // 2 - half + 1
            s = 0
            for t, wt in enumerate(w):
                c = base + t
                if c < 0:
                    c = 0
                elif c >= n:
                    c = n - 1
                s += wt * a[c]
            out.append((s + hd) // den)
    return out


PullSource = Union[Image, PullArray2]

# An upsampler is any enlargement function usable as the middle stage of
# an expansion step.
Upsampler = Callable[[PullSource], PullArray2]


def as_upsampler(k: Kernel1D) -> Upsampler:
    """Bind a kernel into a standalone enlargement function."""
    def scale_twice(src: PullSource) -> PullArray2:
        return upsample2(src, k)
    return scale_twice


def upsample2(src: PullSource, k: Kernel1D) -> PullArray2:
    """Separable upsample: interp_row over rows, then over the columns of
    the rounded intermediate.

    Accepts a materialized Image or a pull array; taps are clamped to the
    domain, so border reads replicate edge samples.  Output positions with
    both indices even reproduce the source exactly.
    """
    shape = src.shape
    rows, cols = shape.rows, shape.cols
    if rows < 2 or cols < 2:
        raise ValueError("upsample2: need at least a 2x2 source")
    at = src.as_pull().at if isinstance(src, Image) else src.at
    out_shape = Shape2(2 * rows - 1, 2 * cols - 1)
    w = k.weights
    den = k.den

    if w == (1, 1) and den == 2:
        # Averaging fast path; taps never leave the domain.
        def row2(si, q, _at=at):
            if not q & 1:
                return _at(si, q >> 1)
            h = q >> 1
            return (_at(si, h) + _at(si, h + 1) + 1) >> 1

        def at2(p, q, _at=at, _r=row2):
            if not p & 1:
                if not q & 1:
                    return _at(p >> 1, q >> 1)
                return _r(p >> 1, q)
            h = p >> 1
            return (_r(h, q) + _r(h + 1, q) + 1) >> 1

        return PullArray2(out_shape, at2)

    if len(w) == 2 and den == 2:
        # Generic two-tap path; taps never leave the domain.
        w0, w1 = w

        def row2w(si, q, _at=at, _w0=w0, _w1=w1):
            if not q & 1:
                return _at(si, q >> 1)
            h = q >> 1
            return (_w0 * _at(si, h) + _w1 * _at(si, h + 1) + 1) >> 1

        def at2w(p, q, _r=row2w, _w0=w0, _w1=w1):
            if not p & 1:
                return _r(p >> 1, q)
            h = p >> 1
            return (_w0 * _r(h, q) + _w1 * _r(h + 1, q) + 1) >> 1

        return PullArray2(out_shape, at2w)

    if len(w) == 4:
        # Four-tap fast path; only the outermost taps can clamp.
        w0, w1, w2, w3 = w
        hd = den // 2
        rmax, cmax = rows - 1, cols - 1

        def row4(si, q, _at=at, _cmax=cmax, _w0=w0, _w1=w1, _w2=w2, _w3=w3,
                 _hd=hd, _den=den):
            if not q & 1:
                return _at(si, q >> 1)
            b = (q >> 1) - 1
            c0 = b if b >= 0 else 0
            c3 = b + 3 if b + 3 <= _cmax else _cmax
            s = (_w0 * _at(si, c0) + _w1 * _at(si, b + 1)
                 + _w2 * _at(si, b + 2) + _w3 * _at(si, c3))
            return (s + _hd) // _den

        def at4(p, q, _at=at, _r=row4, _rmax=rmax, _w0=w0, _w1=w1, _w2=w2, _w3=w3,
                _hd=hd, _den=den):
            if not p & 1:
                if not q & 1:
                    return _at(p >> 1, q >> 1)
                return _r(p >> 1, q)
            b = (p >> 1) - 1
            r0 = b if b >= 0 else 0
            r3 = b + 3 if b + 3 <= _rmax else _rmax
            s = (_w0 * _r(r0, q) + _w1 * _r(b + 1, q)
                 + _w2 * _r(b + 2, q) + _w3 * _r(r3, q))
            return (s + _hd) // _den

        return PullArray2(out_shape, at4)

    half = len(w) // 2
    hd = den // 2
    rmax, cmax = rows - 1, cols - 1

    def row_sample(si, q, _at=at, _w=w, _den=den, _hd=hd, _half=half, _cmax=cmax):
        if not q & 1:
            return _at(si, q >> 1)
        base = (q >> 1) - _half + 1
        s = 0
        for t, wt in enumerate(_w):
            c = base + t
            if c < 0:
                c = 0
            elif c > _cmax:
                c = _cmax
            s += wt * _at(si, c)
        return (s + _hd) // _den

    def at_gen(p, q, _r=row_sample, _w=w, _den=den, _hd=hd, _half=half, _rmax=rmax):
        if not p & 1:
            return _r(p >> 1, q)
        base = (p >> 1) - _half + 1
        s = 0
        for t, wt in enumerate(_w):
            r = base + t
            if r < 0:
                r = 0
            elif r > _rmax:
                r = _rmax
            s += wt * _r(r, q)
        return (s + _hd) // _den

    return PullArray2(out_shape, at_gen)
