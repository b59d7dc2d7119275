"""Lazy 2D pull arrays.

A pull array is a pair of extents plus a pure function from (row, col) to
an element.  Combinators (amap, zip_with, rho2) compose index functions
and never touch elements; evaluation happens once per cell at
materialize2, which is also the only place storage is allocated.  Chained
transformations therefore fuse for free: the composite index function is
what gets evaluated, with no intermediate grids.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass
from itertools import product, starmap
from typing import Any, Callable, Iterator, Sequence

Index2 = tuple[int, int]

_INT32_MIN = -(1 << 31)
_INT32_MAX = (1 << 31) - 1


@dataclass(frozen=True)
class Shape2:
    """Extents of a 2D array: valid indices are 0..rows-1 x 0..cols-1."""

    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError(f"Shape2: extents must be >= 1, got {self.rows}x{self.cols}")

    @property
    def count(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True)
class PullArray2:
    """Shape plus a pure (i, j) -> element function; nothing is evaluated
    until the array is materialized."""

    shape: Shape2
    at: Callable[[int, int], Any]


@dataclass(frozen=True)
class Image:
    """Materialized row-major grid of 32-bit signed integers.

    Reads inside the domain come from storage; any other index yields
    `default`, so a materialized image is total even though pull-stage
    arrays are not.
    """

    shape: Shape2
    cells: list
    default: int

    def __post_init__(self) -> None:
        if len(self.cells) != self.shape.count:
            raise ValueError("Image: cell count must equal rows*cols")
        if min(self.cells) < _INT32_MIN or max(self.cells) > _INT32_MAX:
            raise OverflowError("Image: cell outside 32-bit signed range")
        if not _INT32_MIN <= self.default <= _INT32_MAX:
            raise OverflowError("Image: default outside 32-bit signed range")

    def at(self, i: int, j: int) -> int:
        s = self.shape
        if 0 <= i < s.rows and 0 <= j < s.cols:
            return self.cells[i * s.cols + j]
        return self.default

    def as_pull(self) -> PullArray2:
        """View the stored grid as a (total) pull array."""
        rows, cols = self.shape.rows, self.shape.cols
        cells = self.cells
        default = self.default

        def at(i, j, _c=cells, _r=rows, _k=cols, _d=default):
            if 0 <= i < _r and 0 <= j < _k:
                return _c[i * _k + j]
            return _d

        return PullArray2(self.shape, at)

    def rows_list(self) -> list[list[int]]:
        """Cells as nested row-major lists."""
        k = self.shape.cols
        return [self.cells[r * k:(r + 1) * k] for r in range(self.shape.rows)]


def of_list(values: Sequence[int]) -> PullArray2:
    """A 1 x n pull array over the given elements."""
    vals = list(values)
    if not vals:
        raise ValueError("empty array")
    n = len(vals)

    def at(i, j, _v=vals, _n=n):
        assert i == 0 and 0 <= j < _n, "of_list: index out of domain"
        return _v[j]

    return PullArray2(Shape2(1, n), at)


def rho2(shape: Shape2 | tuple[int, int], a: PullArray2) -> PullArray2:
    """Row-major reflow of `a` into `shape`.

    Element counts must match exactly; there is no implicit recycling or
    padding.
    """
    if not isinstance(shape, Shape2):
        shape = Shape2(*shape)
    if shape.count != a.shape.count:
        raise ValueError("rho2: size mismatch")
    src = a.at
    old_cols = a.shape.cols
    new_rows, new_cols = shape.rows, shape.cols

    def at(i, j, _src=src, _oc=old_cols, _nr=new_rows, _nc=new_cols):
        assert 0 <= i < _nr and 0 <= j < _nc, "rho2: index out of domain"
        flat = i * _nc + j
        return _src(flat // _oc, flat % _oc)

    return PullArray2(shape, at)


def amap(f: Callable[[Any], Any], a: PullArray2) -> PullArray2:
    """Element-wise f, fused into the index function."""
    src = a.at
    return PullArray2(a.shape, lambda i, j, _f=f, _s=src: _f(_s(i, j)))


def zip_with(f: Callable[[Any, Any], Any], a: PullArray2, b: PullArray2) -> PullArray2:
    """Pointwise f over two arrays of identical shape."""
    if a.shape != b.shape:
        raise ValueError("zip_with: shape mismatch")
    fa, fb = a.at, b.at
    return PullArray2(a.shape, lambda i, j, _f=f, _a=fa, _b=fb: _f(_a(i, j), _b(i, j)))


def materialize2(default: int, a: PullArray2) -> Image:
    """Evaluate once per in-domain index, row-major, into backing storage.

    This is the single allocating operation: the composite index function
    is called exactly rows*cols times.
    """
    rows, cols = a.shape.rows, a.shape.cols
    at = a.at
    tally = _active_tally
    if tally is not None:
        at = tally._wrap(at)
    cells = list(starmap(at, product(range(rows), range(cols))))
    return Image(a.shape, cells, default)


def ntimes(k: int, f: Callable[[Any], Any], x: Any) -> Any:
    """Apply f k times to x; k = 0 returns x unchanged."""
    if k < 0:
        raise ValueError("ntimes: negative count")
    for _ in range(k):
        x = f(x)
    return x


def pipe(x: Any, *fs: Callable[[Any], Any]) -> Any:
    """Left-to-right application: pipe(x, f, g) is g(f(x))."""
    for f in fs:
        x = f(x)
    return x


def compose(*fs: Callable[[Any], Any]) -> Callable[[Any], Any]:
    """Left-to-right composition: compose(f, g)(x) is g(f(x))."""
    def composed(x):
        for f in fs:
            x = f(x)
        return x
    return composed


@dataclass
class EvalTally:
    """Counts index-function evaluations performed by materialize2."""

    total: int = 0

    def _wrap(self, at):
        def counted(i, j, _at=at):
            self.total += 1
            return _at(i, j)
        return counted


# Installed tally, if any.  Only materialize2 consults it; intended for
# tests and benchmarks, not concurrent production use.
_active_tally: EvalTally | None = None


@contextmanager
def count_evaluations() -> Iterator[EvalTally]:
    """Tally every element evaluation materialize2 performs in this block."""
    global _active_tally
    tally = EvalTally()
    prev = _active_tally
    _active_tally = tally
    try:
        yield tally
    finally:
        _active_tally = prev
