"""Command-line reports and figure tables.

Exit codes: 0 success, 1 invalid arguments or I/O failure, 2 numerical
failure (a check failed or independent routes disagree).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import bell, checks
from .errors import DomainError, NumericalError

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2
DEFAULT_R = (1 / math.sqrt(2), 3.5, 5.5)
FIG1_HEADER = ("m", "R", "lambda", "bell_value", "abs_bell_value", "violated")
FIG2_HEADER = ("m", "integral")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    return format(float(value), ".17g")


def _jsonable(value):
    if isinstance(value, (bool, int)):
        return value
    return float(value)


def render_table(header, rows, fmt: str) -> str:
    if fmt == "json":
        records = [{k: _jsonable(v) for k, v in zip(header, row)} for row in rows]
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([_fmt(v) for v in row] for row in rows)
    return buf.getvalue()


def _write(out: Path, name: str, text: str) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(text)
    return path


def _fig1_rows(cfg):
    return [tuple(r) for r in bell.figure1_data(cfg.m_max, cfg.R)]


def _fig2_rows(cfg):
    return bell.figure2_data(cfg.m_max, tol=min(cfg.tol, 1e-11))


def cmd_bell_state(cfg) -> int:
    routes = checks.bell_state_routes(cfg.tol, grid=not cfg.no_grid, perturb=cfg.perturb,
                                      grid_n=cfg.grid_n)
    agree, worst = checks.routes_agree(routes)
    exact = 4.0 / math.sqrt(math.e) - 1.0
    for r in routes:
        print(f"route {r.name:<18} value {r.value:.17g}  |diff| {abs(r.value - exact):.2e}")
    result = bell.BellResult.from_value(routes[1].value)
    cmp_ = bell.cirelson_ratio(result)
    print(f"value {result.value:.17g}")
    print(f"lhv_bound {result.lhv_bound:g}")
    print(f"violated {_fmt(result.violated)}")
    print(f"ratio {cmp_.ratio:.17g}")
    print(f"cirelson sqrt2 {bell.CIRELSON:.17g}  ratio {cmp_.flag} cirelson")
    if not agree:
        print(f"error: routes disagree (max spread {worst:.3e})", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_eigenvalues(cfg) -> int:
    rows = _fig1_rows(cfg)
    path = _write(cfg.out, f"fig1.{cfg.format}", render_table(FIG1_HEADER, rows, cfg.format))
    print(f"wrote {path} ({len(rows)} rows)")
    if cfg.plot:
        from .plotting import plot_figure1
        print(f"wrote {plot_figure1(bell.figure1_data(cfg.m_max, cfg.R), cfg.out / 'fig1.svg')}")
    return EXIT_OK


def cmd_abs_wigner(cfg) -> int:
    if cfg.m_max > bell.LAMBDA_MAX_M:
        raise UsageError(f"--m-max must be <= {bell.LAMBDA_MAX_M} for abs-wigner")
    rows = _fig2_rows(cfg)
    path = _write(cfg.out, f"fig2.{cfg.format}", render_table(FIG2_HEADER, rows, cfg.format))
    print(f"wrote {path} ({len(rows)} rows)")
    if cfg.plot:
        from .plotting import plot_figure2
        print(f"wrote {plot_figure2(rows, cfg.out / 'fig2.svg')}")
    return EXIT_OK


def cmd_star_check(cfg) -> int:
    m_max = max(cfg.m_max, 64)
    results = checks.star_check_suite(m_max)
    for c in results:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
    return EXIT_OK if all(c.passed for c in results) else EXIT_NUMERIC


def cmd_chsh_check(cfg) -> int:
    residual = bell.chsh_random_suite(1000, cfg.seed)
    value, _ = bell.optimize_singlet_chsh(cfg.seed)
    target = 2.0 * math.sqrt(2.0)
    ok_res = residual < 1e-12
    ok_opt = value >= target - 1e-6
    print(f"{'PASS' if ok_res else 'FAIL'}  identity residual max over 1000 draws "
          f"(seed {cfg.seed}): {residual:.3e}")
    print(f"{'PASS' if ok_opt else 'FAIL'}  optimized singlet CHSH {value:.12f} "
          f"vs 2sqrt2 {target:.12f}")
    return EXIT_OK if ok_res and ok_opt else EXIT_NUMERIC


def _read_fig1(path: Path):
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != FIG1_HEADER:
            raise UsageError(f"{path}: unexpected header")
        return [bell.Figure1Row(int(r["m"]), float(r["R"]), float(r["lambda"]),
                                float(r["bell_value"]), float(r["abs_bell_value"]),
                                r["violated"] == "true") for r in reader]


def _read_fig2(path: Path):
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != FIG2_HEADER:
            raise UsageError(f"{path}: unexpected header")
        return [(int(r["m"]), float(r["integral"])) for r in reader]


def cmd_plot(cfg) -> int:
    from .plotting import plot_figure1, plot_figure2
    f1, f2 = cfg.out / "fig1.csv", cfg.out / "fig2.csv"
    rows1 = _read_fig1(f1) if f1.exists() else bell.figure1_data(cfg.m_max, cfg.R)
    rows2 = _read_fig2(f2) if f2.exists() else _fig2_rows(cfg)
    cfg.out.mkdir(parents=True, exist_ok=True)
    print(f"wrote {plot_figure1(rows1, cfg.out / 'fig1.svg')}")
    print(f"wrote {plot_figure2(rows2, cfg.out / 'fig2.svg')}")
    return EXIT_OK


COMMANDS = {
    "bell-state": cmd_bell_state,
    "eigenvalues": cmd_eigenvalues,
    "abs-wigner": cmd_abs_wigner,
    "star-check": cmd_star_check,
    "chsh-check": cmd_chsh_check,
    "plot": cmd_plot,
}


def _positive_float(text):
    value = float(text)
    if not math.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="phasebell",
                     description="Phase-space Bell inequality reports and figure tables.")
    parser.add_argument("command", choices=list(COMMANDS))
    parser.add_argument("--m-max", type=_nonneg_int, default=30)
    parser.add_argument("--R", type=_positive_float, action="append", default=None,
                        help="disk radius (repeatable)")
    parser.add_argument("--tol", type=_positive_float, default=1e-10)
    parser.add_argument("--grid-n", type=_nonneg_int, default=None,
                        help="nodes per axis for the 4D grid route of bell-state")
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", type=Path, default=Path("."))
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--plot", action="store_true", help="also write an SVG figure")
    parser.add_argument("--no-grid", action="store_true",
                        help="skip the 4D grid route in bell-state")
    parser.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    try:
        cfg = build_parser().parse_args(argv)
        cfg.R = sorted(set(cfg.R)) if cfg.R else list(DEFAULT_R)
        if cfg.seed < 0 or cfg.seed >= 2 ** 64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if cfg.grid_n is not None and cfg.grid_n < 8:
            raise UsageError("--grid-n must be at least 8")
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (OSError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
