"""Straight-line reference implementations for cross-checking the fused pipeline.

Everything here works on plain nested lists or flat float buffers with
explicit loops.  Nothing imports the pull-array machinery, so agreement
with the main pipeline is evidence rather than tautology.  These run in
tests; nobody has tried to make them fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .noise import NoiseField, noise_at

_TAPS = {
    "bilinear": ((1, 1), 2),
    "bicubic": ((-1, 9, 9, -1), 16),
}


@dataclass(frozen=True)
class FloatGrid:
    """Row-major double-precision grid."""

    rows: int
    cols: int
    cells: list

    def __post_init__(self) -> None:
        if len(self.cells) != self.rows * self.cols:
            raise ValueError("FloatGrid: cell count must equal rows*cols")

    def at(self, i: int, j: int) -> float:
        return self.cells[i * self.cols + j]


def _scale_round(gain: float, x: int) -> int:
    # round half away from zero, phrased differently from the main pipeline
    v = gain * x
    return math.floor(v + 0.5) if v >= 0 else math.ceil(v - 0.5)


def _rdiv(s: int, d: int) -> int:
    # rounded division via explicit remainder comparison
    q, r = divmod(s, d)
    return q + 1 if 2 * r >= d else q


def loop_expand(algorithm: str, nsf: float, nf: NoiseField, level: int,
                grid: list) -> list:
    """One expansion step over nested lists with explicit loops.

    Same observable contract as the fused per-step pipeline: scale every
    cell, enlarge rows first then columns (or run the two-pass refinement
    for "diamond-square"), add positional noise, return the new grid.
    """
    rows = len(grid)
    cols = len(grid[0])
    if rows < 2 or cols < 2:
        raise ValueError("loop_expand: need at least a 2x2 grid")
    scaled = [[_scale_round(nsf, v) for v in row] for row in grid]
    if algorithm == "diamond-square":
        return _loop_diamond_square(scaled, nf, level)
    if algorithm not in _TAPS:
        raise ValueError(f"loop_expand: unknown algorithm {algorithm!r}")
    w, den = _TAPS[algorithm]
    taps = len(w)
    half = taps // 2
    out_cols = 2 * cols - 1
    out_rows = 2 * rows - 1

    mid = []
    for r in range(rows):
        src = scaled[r]
        row = []
        for p in range(out_cols):
            if p % 2 == 0:
                row.append(src[p // 2])
            else:
                s = 0
                for t in range(taps):
                    c = (p - 1) // 2 - half + 1 + t
                    if c < 0:
                        c = 0
                    elif c > cols - 1:
                        c = cols - 1
                    s += w[t] * src[c]
                row.append(_rdiv(s, den))
        mid.append(row)

    out = [[0] * out_cols for _ in range(out_rows)]
    for q in range(out_cols):
        for p in range(out_rows):
            if p % 2 == 0:
                v = mid[p // 2][q]
            else:
                s = 0
                for t in range(taps):
                    rr = (p - 1) // 2 - half + 1 + t
                    if rr < 0:
                        rr = 0
                    elif rr > rows - 1:
                        rr = rows - 1
                    s += w[t] * mid[rr][q]
                v = _rdiv(s, den)
            out[p][q] = v + noise_at(nf, level, p, q)
    return out


def _loop_diamond_square(scaled: list, nf: NoiseField, level: int) -> list:
    rows = len(scaled)
    cols = len(scaled[0])
    out_rows = 2 * rows - 1
    out_cols = 2 * cols - 1
    out = [[0] * out_cols for _ in range(out_rows)]
    for i in range(rows):
        for j in range(cols):
            out[2 * i][2 * j] = scaled[i][j]
    # centers from the four diagonal neighbors
    for p in range(1, out_rows, 2):
        for q in range(1, out_cols, 2):
            s = out[p - 1][q - 1] + out[p - 1][q + 1] + out[p + 1][q - 1] + out[p + 1][q + 1]
            out[p][q] = _rdiv(s, 4) + noise_at(nf, level, p, q)
    # edge cells from their in-domain axial neighbors (3 at the border),
    # reading the center values just written
    for p in range(out_rows):
        for q in range((p + 1) % 2, out_cols, 2):
            s = 0
            n = 0
            if p > 0:
                s += out[p - 1][q]
                n += 1
            if p < out_rows - 1:
                s += out[p + 1][q]
                n += 1
            if q > 0:
                s += out[p][q - 1]
                n += 1
            if q < out_cols - 1:
                s += out[p][q + 1]
                n += 1
            out[p][q] = _rdiv(s, n) + noise_at(nf, level, p, q)
    return out


def midpoint_recursive(seed: FloatGrid, levels: int, nf: NoiseField,
                       attenuation: float) -> FloatGrid:
    """Classic top-down corner refinement on the full (2^levels + 1)^2 grid.

    Each depth halves the square size: side midpoints take the average of
    their two endpoints, centers the average of their four corners, and
    both get a random displacement.  The displacement at depth d is
    noise_at(nf, d, i, j) * attenuation^(d+1), where (i, j) index the
    lattice being filled at that depth; with attenuation = 1/g this makes
    the result exactly g^-levels times the iterative two-tap pipeline when
    both run in floats over the same noise field.
    """
    if seed.rows != 2 or seed.cols != 2:
        raise ValueError("midpoint_recursive: seed must be 2x2")
    if levels < 0:
        raise ValueError("midpoint_recursive: levels must be >= 0")
    if levels == 0:
        return FloatGrid(2, 2, list(seed.cells))
    n = (1 << levels) + 1
    g = [[0.0] * n for _ in range(n)]
    g[0][0] = seed.at(0, 0)
    g[0][n - 1] = seed.at(0, 1)
    g[n - 1][0] = seed.at(1, 0)
    g[n - 1][n - 1] = seed.at(1, 1)
    scale = 1.0
    for d in range(levels):
        half = (n - 1) >> (d + 1)
        step = half * 2
        scale *= attenuation
        # centers: average of the four square corners
        for i in range(half, n, step):
            for j in range(half, n, step):
                avg = (g[i - half][j - half] + g[i - half][j + half]
                       + g[i + half][j - half] + g[i + half][j + half]) * 0.25
                g[i][j] = avg + scale * noise_at(nf, d, i // half, j // half)
        # side midpoints: average of the two side endpoints
        for i in range(0, n, half):
            li = i // half
            if li & 1:
                for j in range(0, n, step):
                    avg = (g[i - half][j] + g[i + half][j]) * 0.5
                    g[i][j] = avg + scale * noise_at(nf, d, li, j // half)
            else:
                for j in range(half, n, step):
                    avg = (g[i][j - half] + g[i][j + half]) * 0.5
                    g[i][j] = avg + scale * noise_at(nf, d, li, j // half)
    return FloatGrid(n, n, [v for row in g for v in row])


def float_expand_bilinear(seed: FloatGrid, levels: int, nf: NoiseField,
                          gain: float) -> FloatGrid:
    """Float mirror of the iterative two-tap pipeline.

    Per level: multiply by `gain`, enlarge rows then columns with exact
    midpoint averages, add positional noise.  No rounding anywhere.
    """
    rows, cols = seed.rows, seed.cols
    cells = list(seed.cells)
    for level in range(levels):
        out_rows = 2 * rows - 1
        out_cols = 2 * cols - 1
        mid = []
        for r in range(rows):
            row = [gain * v for v in cells[r * cols:(r + 1) * cols]]
            grown = []
            for p in range(out_cols):
                if p % 2 == 0:
                    grown.append(row[p // 2])
                else:
                    h = (p - 1) // 2
                    grown.append((row[h] + row[h + 1]) * 0.5)
            mid.append(grown)
        nxt = [0.0] * (out_rows * out_cols)
        for q in range(out_cols):
            for p in range(out_rows):
                if p % 2 == 0:
                    v = mid[p // 2][q]
                else:
                    h = (p - 1) // 2
                    v = (mid[h][q] + mid[h + 1][q]) * 0.5
                nxt[p * out_cols + q] = v + noise_at(nf, level, p, q)
        rows, cols, cells = out_rows, out_cols, nxt
    return FloatGrid(rows, cols, cells)


def _refinement_order(src_extent: int, dst_extent: int) -> int | None:
    """k such that dst = 2^k * (src - 1) + 1, or None."""
    if src_extent < 2:
        return None
    num, rem = divmod(dst_extent - 1, src_extent - 1)
    if rem != 0 or num <= 0 or num & (num - 1):
        return None
    return num.bit_length() - 1


def bilinear_closed_form(seed: FloatGrid, target_rows: int, target_cols: int) -> FloatGrid:
    """Evaluate the bilinear interpolant of the seed on a dyadic refinement.

    The target extents must both be 2^k * (extent - 1) + 1 for one shared k.
    """
    k = _refinement_order(seed.rows, target_rows)
    if k is None or _refinement_order(seed.cols, target_cols) != k:
        raise ValueError("bilinear_closed_form: target is not a 2^k refinement of the seed")
    denom = 1 << k
    sr, sc = seed.rows, seed.cols
    cells = []
    for big_i in range(target_rows):
        i0, ri = divmod(big_i, denom)
        i1 = i0 + 1 if i0 + 1 < sr else sr - 1
        fi = ri / denom
        for big_j in range(target_cols):
            j0, rj = divmod(big_j, denom)
            j1 = j0 + 1 if j0 + 1 < sc else sc - 1
            fj = rj / denom
            v00 = seed.at(i0, j0)
            v01 = seed.at(i0, j1)
            v10 = seed.at(i1, j0)
            v11 = seed.at(i1, j1)
            top = v00 + (v01 - v00) * fj
            bot = v10 + (v11 - v10) * fj
            cells.append(top + (bot - top) * fi)
    return FloatGrid(target_rows, target_cols, cells)
