"""Command-line front end.

Writes heightmaps as binary PGM (P5), optionally prints roughness
statistics as key=value lines, and benchmarks the fused pipeline against
a naive eager variant that materializes after every combinator.
"""

from __future__ import annotations

import argparse
import operator
import sys
import time
from dataclasses import dataclass

from .analysis import hurst_estimate
from .core import Image, Shape2, amap, count_evaluations, materialize2, of_list, rho2, zip_with
from .noise import NoiseField
from .plasma import PlasmaConfig, _fimul_fn, diamond_square_pull, generate, noise_layer
from .resample import kernel_bicubic, kernel_bilinear, upsample2

_ALGO_FLAGS = ("bilinear", "bicubic", "diamond-square", "midpoint")
_BENCH_ALGOS = ("bilinear", "bicubic", "diamond-square")


@dataclass(frozen=True)
class PgmImage:
    """8-bit grayscale raster, row-major, ready to serialize."""

    width: int
    height: int
    pixels: bytes
    maxval: int = 255

    def __post_init__(self) -> None:
        if len(self.pixels) != self.width * self.height:
            raise ValueError("PgmImage: pixel count must equal width*height")
        if self.maxval != 255:
            raise ValueError("PgmImage: only maxval 255 is supported")


@dataclass(frozen=True)
class BenchReport:
    """Wall times and evaluation counts for the fused and eager variants."""

    algorithm: str
    levels: int
    fused_millis: tuple[float, ...]
    eager_millis: tuple[float, ...]
    fused_evals: int
    eager_evals: int

    def __post_init__(self) -> None:
        if self.eager_evals < self.fused_evals:
            raise ValueError("BenchReport: eager variant cannot evaluate less than fused")


def normalize_u8(img: Image) -> PgmImage:
    """Min-max map of cells onto 0..255, half rounding away from zero.

    A constant image maps to all zeros.
    """
    cells = img.cells
    lo = min(cells)
    hi = max(cells)
    if hi == lo:
        data = bytes(len(cells))
    else:
        span = hi - lo
        double_span = 2 * span
        # exact integer rounding: floor(((v - lo) * 255 + span/2) / span)
        data = bytes((2 * (v - lo) * 255 + span) // double_span for v in cells)
    return PgmImage(img.shape.cols, img.shape.rows, data)


def write_pgm(pgm: PgmImage, path: str) -> None:
    """Binary P5: magic, extents, maxval, then raw rows top-first."""
    header = f"P5\n{pgm.width} {pgm.height}\n{pgm.maxval}\n".encode("ascii")
    try:
        with open(path, "wb") as f:
            f.write(header)
            f.write(pgm.pixels)
    except OSError as e:
        raise OSError(f"write_pgm: cannot write {path!s}: {e}") from e


def _algorithm_name(flag: str) -> str:
    return "midpoint-recursive" if flag == "midpoint" else flag


def _stats_lines(img: Image) -> list[str]:
    cells = img.cells
    lines = [
        f"min={min(cells)}",
        f"max={max(cells)}",
        f"mean={sum(cells) / len(cells):.6f}",
    ]
    try:
        report = hurst_estimate(img)
    except ValueError:
        return lines
    lines.append(f"hurst={report.hurst:.6f}")
    lines.append(f"fractal_dim={report.fractal_dim:.6f}")
    return lines


def run_generate(args: argparse.Namespace) -> int:
    cfg = PlasmaConfig(
        levels=args.levels,
        nsf=args.nsf,
        noise_amp=args.noise_amp,
        algorithm=_algorithm_name(args.algo),
        rng_seed=args.seed,
    )
    img = generate(cfg)
    try:
        write_pgm(normalize_u8(img), args.out)
    except OSError as e:
        print(e, file=sys.stderr)
        return 1
    if args.stats:
        for line in _stats_lines(img):
            print(line)
    return 0


def _generate_eager(cfg: PlasmaConfig) -> Image:
    """Same pipeline, but materialized after every combinator."""
    nf = NoiseField(cfg.rng_seed, cfg.noise_amp)
    current = materialize2(0, rho2(Shape2(*cfg.seed_shape), of_list(cfg.seed_values)))
    kernel = None
    if cfg.algorithm == "bilinear":
        kernel = kernel_bilinear()
    elif cfg.algorithm == "bicubic":
        kernel = kernel_bicubic()
    for level in range(cfg.levels):
        scaled = materialize2(0, amap(_fimul_fn(cfg.nsf), current.as_pull()))
        if kernel is None:
            current = materialize2(0, diamond_square_pull(scaled.as_pull(), nf, level))
        else:
            grown = materialize2(0, upsample2(scaled, kernel))
            layer = noise_layer(nf, level, grown.shape)
            current = materialize2(0, zip_with(operator.add, grown.as_pull(), layer))
    return current


def run_bench(args: argparse.Namespace) -> int:
    cfg = PlasmaConfig(levels=args.levels, algorithm=_algorithm_name(args.algo), rng_seed=0)

    with count_evaluations() as tally:
        fused = generate(cfg)
    fused_evals = tally.total
    with count_evaluations() as tally:
        eager = _generate_eager(cfg)
    eager_evals = tally.total

    if fused.shape != eager.shape or fused.cells != eager.cells:
        print("bench: fused and eager variants disagree", file=sys.stderr)
        return 1
    expected = sum((2 ** level + 1) ** 2 for level in range(1, cfg.levels + 1))
    if fused_evals != expected:
        print(f"bench: fused evaluation count {fused_evals} != expected {expected}",
              file=sys.stderr)
        return 1

    fused_ms = []
    eager_ms = []
    for _ in range(args.repeat):
        t0 = time.perf_counter()
        generate(cfg)
        fused_ms.append((time.perf_counter() - t0) * 1e3)
        t0 = time.perf_counter()
        _generate_eager(cfg)
        eager_ms.append((time.perf_counter() - t0) * 1e3)

    report = BenchReport(
        algorithm=cfg.algorithm,
        levels=cfg.levels,
        fused_millis=tuple(fused_ms),
        eager_millis=tuple(eager_ms),
        fused_evals=fused_evals,
        eager_evals=eager_evals,
    )
    _print_bench(report)
    return 0


def _print_bench(report: BenchReport) -> None:
    rows = [("fused", i + 1, ms, report.fused_evals)
            for i, ms in enumerate(report.fused_millis)]
    rows += [("naive-eager", i + 1, ms, report.eager_evals)
             for i, ms in enumerate(report.eager_millis)]
    print(f"algo={report.algorithm} levels={report.levels}")
    print(f"{'variant':<12} {'repeat':>6} {'millis':>12} {'evals':>12}")
    for variant, idx, ms, evals in rows:
        print(f"{variant:<12} {idx:>6} {ms:>12.3f} {evals:>12}")
    for variant, idx, ms, evals in rows:
        print(f"{variant},{report.algorithm},{report.levels},{idx},{ms:.3f},{evals}")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < (1 << 64):
        raise argparse.ArgumentTypeError("must fit in 64 unsigned bits")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plasmagen",
        description="Generate plasma-fractal heightmaps with fused pull-array pipelines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a heightmap as binary PGM")
    gen.add_argument("--algo", choices=_ALGO_FLAGS, default="bicubic")
    gen.add_argument("--levels", type=_nonneg_int, default=8)
    gen.add_argument("--nsf", type=_positive_float, default=1.2)
    gen.add_argument("--seed", type=_u64, default=0)
    gen.add_argument("--noise-amp", type=_nonneg_int, default=64)
    gen.add_argument("--out", required=True)
    gen.add_argument("--stats", action="store_true",
                     help="print min/max/mean/hurst/fractal_dim as key=value lines")

    bench = sub.add_parser("bench", help="time fused vs naive-eager pipelines")
    bench.add_argument("--algo", choices=_BENCH_ALGOS, default="bicubic")
    bench.add_argument("--levels", type=_nonneg_int, default=8)
    bench.add_argument("--repeat", type=_positive_int, default=3)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "generate":
        return run_generate(args)
    return run_bench(args)


if __name__ == "__main__":
    sys.exit(main())
