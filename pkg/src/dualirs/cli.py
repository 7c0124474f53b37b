"""Amplification-power sweeps written as CSV.

Rate mode (default) emits one row per (P_F, scheme[, fixed x]) with columns
``p_f_dbm,scheme,x_ta_m,snr_db,rate_bpshz,method,status``. Placement mode
(``--placement-only``) emits grid and closed-form optimal placements.

Example::

    dualirs-sweep --sweep-pf 4 20 2 --scheme tapr-opt --scheme tpar-opt --out fig3.csv
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .config import ParamsError, SystemParams, default_params, read_params_file
from .geometry import PlacementError, Scheme
from .link import snr_closed, snr_matrix
from .placement import DEFAULT_STEP, optimize_grid, suboptimal_closed
from .reflection import InfeasibleError

SCHEMES = ("tapr-opt", "tapr-closed", "tapr-fixed",
           "tpar-opt", "tpar-closed", "tpar-fixed", "double-pirs")
RATE_COLUMNS = ("p_f_dbm", "scheme", "x_ta_m", "snr_db", "rate_bpshz", "method", "status")
PLACEMENT_COLUMNS = ("p_f_dbm", "scheme", "x_star_grid_m", "x_star_closed_m")

EXIT_OK, EXIT_CONFIG, EXIT_INFEASIBLE = 0, 2, 3


def fmt(value) -> str:
    # 15 significant digits keep emitted rates reproducible to 1e-12 relative
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.15g}"
    return str(value)


@dataclass(frozen=True)
class SweepSpec:
    pf_from: float
    pf_to: float
    pf_step: float
    schemes: tuple[str, ...] = SCHEMES
    fixed_x: tuple[float, ...] = ()
    grid_step: float = DEFAULT_STEP

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.pf_from, self.pf_to, self.pf_step)):
            raise ParamsError("sweep bounds must be finite")
        if self.pf_from > self.pf_to:
            raise ParamsError(f"sweep start {self.pf_from} exceeds end {self.pf_to}")
        if not self.pf_step > 0:
            raise ParamsError(f"sweep step must be positive, got {self.pf_step}")
        if not self.grid_step > 0:
            raise ParamsError(f"grid step must be positive, got {self.grid_step}")
        if not self.schemes:
            raise ParamsError("at least one scheme is required")
        for name in self.schemes:
            if name not in SCHEMES:
                raise ParamsError(f"unknown scheme {name!r}; choose from {', '.join(SCHEMES)}")

    def pf_points(self) -> list[float]:
        n = int(math.floor((self.pf_to - self.pf_from) / self.pf_step + 1e-9))
        return [round(self.pf_from + k * self.pf_step, 10) for k in range(n + 1)]

    def fixed_positions(self, params: SystemParams) -> tuple[float, ...]:
        """Fixed AIRS abscissas; D/2 and D unless given."""
        return self.fixed_x or (params.D / 2, params.D)


def _rate_row(pf_dbm, name, x=None, metrics=None, method="", status="OK") -> dict:
    row = {"p_f_dbm": fmt(float(pf_dbm)), "scheme": name, "x_ta_m": fmt(x),
           "snr_db": "", "rate_bpshz": "", "method": method, "status": status}
    if metrics is not None:
        row["snr_db"] = fmt(metrics.snr_db)
        row["rate_bpshz"] = fmt(metrics.rate)
    return row


def _rows_for_point(spec: SweepSpec, params: SystemParams, pf_dbm: float) -> list[dict]:
    p = params.with_pf_dbm(pf_dbm)
    rows = []
    for name in spec.schemes:
        if name == "double-pirs":
            rows.append(_rate_row(pf_dbm, name, None, snr_matrix(Scheme.DOUBLE_PIRS, p), "MATRIX"))
            continue
        scheme = Scheme.TAPR if name.startswith("tapr") else Scheme.TPAR
        kind = name.split("-", 1)[1]
        if kind == "fixed":
            for x in spec.fixed_positions(p):
                try:
                    rows.append(_rate_row(pf_dbm, name, x, snr_closed(scheme, p, x), "FIXED"))
                except (InfeasibleError, PlacementError):
                    rows.append(_rate_row(pf_dbm, name, x, method="FIXED", status="INFEASIBLE"))
            continue
        try:
            if kind == "opt":
                result = optimize_grid(scheme, p, spec.grid_step)
            else:
                result = suboptimal_closed(scheme, p)
        except InfeasibleError:
            rows.append(_rate_row(pf_dbm, name, method=_method_name(kind), status="INFEASIBLE"))
            continue
        rows.append(_rate_row(pf_dbm, name, result.x_star,
                              snr_closed(scheme, p, result.x_star), result.method.value))
    return rows


def _method_name(kind: str) -> str:
    return "GRID_SEARCH" if kind == "opt" else "CLOSED_FORM"


def _map_points(fn, points, jobs: int) -> list:
    if jobs <= 1:
        return [fn(v) for v in points]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        # map preserves input order, so the output is independent of scheduling
        return list(pool.map(fn, points))


def run_sweep(spec: SweepSpec, params: SystemParams, jobs: int = 1) -> list[dict]:
    """Rate rows in sweep order: P_F outer, schemes in the requested order inner."""
    chunks = _map_points(lambda v: _rows_for_point(spec, params, v), spec.pf_points(), jobs)
    return [row for chunk in chunks for row in chunk]


def placement_schemes(spec: SweepSpec) -> list[Scheme]:
    picked = []
    for name in spec.schemes:
        for prefix, scheme in (("tapr", Scheme.TAPR), ("tpar", Scheme.TPAR)):
            if name.startswith(prefix) and scheme not in picked:
                picked.append(scheme)
    return picked or [Scheme.TAPR, Scheme.TPAR]


def run_placement_sweep(spec: SweepSpec, params: SystemParams, jobs: int = 1) -> list[dict]:
    schemes = placement_schemes(spec)

    def point(pf_dbm):
        p = params.with_pf_dbm(pf_dbm)
        rows = []
        for scheme in schemes:
            row = {"p_f_dbm": fmt(float(pf_dbm)), "scheme": scheme.value.lower(),
                   "x_star_grid_m": "", "x_star_closed_m": ""}
            try:
                row["x_star_grid_m"] = fmt(optimize_grid(scheme, p, spec.grid_step).x_star)
                row["x_star_closed_m"] = fmt(suboptimal_closed(scheme, p).x_star)
            except InfeasibleError:
                pass
            rows.append(row)
        return rows

    chunks = _map_points(point, spec.pf_points(), jobs)
    return [row for chunk in chunks for row in chunk]


def to_csv(rows: list[dict], columns) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualirs-sweep",
        description="Sweep the AIRS amplification power and report placements or rates.")
    parser.add_argument("--params", metavar="FILE", help="key = value parameter file")
    parser.add_argument("--scheme", action="append", metavar="NAME", choices=SCHEMES,
                        help="scheme to evaluate (repeatable; default: all)")
    parser.add_argument("--sweep-pf", nargs=3, type=float, metavar=("FROM", "TO", "STEP"),
                        required=True, help="P_F sweep in dBm")
    parser.add_argument("--fixed-x", action="append", type=float, metavar="METERS",
                        help="fixed Tx-AIRS distance for *-fixed schemes (repeatable; default D/2 and D)")
    parser.add_argument("--grid-step", type=float, default=DEFAULT_STEP, metavar="METERS",
                        help="placement search resolution (default %(default)s m)")
    parser.add_argument("--out", default="stdout", metavar="FILE",
                        help="output CSV path, or 'stdout'")
    parser.add_argument("--placement-only", action="store_true",
                        help="emit optimal placements instead of rates")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        params = read_params_file(args.params) if args.params else default_params()
        spec = SweepSpec(*args.sweep_pf, schemes=tuple(args.scheme or SCHEMES),
                         fixed_x=tuple(args.fixed_x or ()), grid_step=args.grid_step)
        for x in spec.fixed_x:
            if not 0 <= x <= params.D:
                raise ParamsError(f"--fixed-x {x} outside [0, D = {params.D}]")
    except (ParamsError, OSError) as exc:
        print(f"dualirs-sweep: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_CONFIG

    if args.placement_only:
        rows = run_placement_sweep(spec, params, args.jobs)
        text = to_csv(rows, PLACEMENT_COLUMNS)
        all_infeasible = all(not r["x_star_grid_m"] for r in rows)
    else:
        rows = run_sweep(spec, params, args.jobs)
        text = to_csv(rows, RATE_COLUMNS)
        all_infeasible = all(r["status"] == "INFEASIBLE" for r in rows)

    if args.out in ("stdout", "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"dualirs-sweep: error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    return EXIT_INFEASIBLE if all_infeasible else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
