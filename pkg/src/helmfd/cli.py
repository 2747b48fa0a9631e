"""Command-line front end.

    helmfd profile --scheme df4 --k 10pi+1 --N 128 [--p 2]
    helmfd sweep --ladder --scheme cls --k0 5pi+1 --N0 84 --steps 4 --source mono
    helmfd sweep --href --scheme cls --k 5pi+1 --N 84,168,336
    helmfd sweep --khfixed --scheme df4 --kh 0.5 --k 5pi+1,10pi+1,20pi+1
    helmfd reproduce --figure 2 --out figs/
    helmfd verify
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
import tempfile

from . import acceptance
from .experiments import (
    h_slope,
    is_ladder,
    ladder_fits,
    sweep_h_refinement,
    sweep_kh_fixed,
    sweep_ladder,
)
from .figures import build_figure
from .schemes import Scheme, WaveNumber
from .spectral import GridSpec
from .symbol_analysis import default_p, profile

PROFILE_HEADER = ("n", "xi", "psi_p", "psi_pm1", "kp_psi_p", "kp_psi_pm1")
SWEEP_HEADER = (
    "scheme", "k", "N", "kh", "l2", "h1", "l2_scaled", "h1_scaled", "bound_l2", "bound_h1", "floor_flag",
)
KHFIXED_HEADER = (
    "scheme", "k", "N", "kh", "p", "max_psi_p", "argmax_n", "evanescent_max_psi_p", "evanescent_max_psi_pm1",
)


def parse_wavenumber(text: str) -> WaveNumber:
    try:
        return WaveNumber.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _k_list(text: str) -> list[WaveNumber]:
    return [parse_wavenumber(t) for t in text.split(",") if t.strip()]


def fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def render(header, rows, fmt_name: str = "csv", trailer: list[str] | None = None) -> str:
    buf = io.StringIO()
    if fmt_name == "csv":
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(fmt(v) for v in row) + "\n")
        for line in trailer or ():
            buf.write(f"# {line}\n")
    elif fmt_name == "jsonl":
        for row in rows:
            rec = {h: (float(v) if isinstance(v, float) else v) for h, v in zip(header, row)}
            buf.write(json.dumps(rec, sort_keys=False) + "\n")
        for line in trailer or ():
            buf.write(json.dumps({"summary": line}) + "\n")
    else:
        raise ValueError(f"unknown format {fmt_name!r}")
    return buf.getvalue()


def write_atomic(path: str, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        write_atomic(out, text)


def profile_table(scheme: Scheme, k: WaveNumber, grid: GridSpec, p: int):
    prof_p = profile(scheme, k, grid, p)
    prof_pm1 = profile(scheme, k, grid, p - 1)
    scale = k.value**p
    rows = [
        (int(n), float(xi), float(a), float(b), float(scale * a), float(scale * b))
        for n, xi, a, b in zip(grid.indices, grid.frequencies, prof_p.values, prof_pm1.values)
    ]
    summary = (
        f"scheme={scheme} k={k} N={grid.N} p={p} max_psi_p={fmt(prof_p.max_value)} "
        f"argmax_n_p={prof_p.argmax_n} max_psi_pm1={fmt(prof_pm1.max_value)} argmax_n_pm1={prof_pm1.argmax_n}"
    )
    return rows, summary


def _ext(fmt_name: str) -> str:
    return "csv" if fmt_name == "csv" else "jsonl"


def cmd_profile(args) -> int:
    scheme = Scheme.parse(args.scheme)
    p = default_p(scheme) if args.p is None else args.p
    grid = GridSpec(args.N)
    rows, summary = profile_table(scheme, args.k, grid, p)
    text = render(PROFILE_HEADER, rows, args.format)
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        name = f"profile_{scheme}_k{args.k}_N{grid.N}_p{p}.{_ext(args.format)}"
        write_atomic(os.path.join(args.out, name), text)
    print(summary, file=sys.stderr if args.out in (None, "-") else sys.stdout)
    return 0


def sweep_table(rows):
    return [
        (str(r.scheme), str(r.k), r.N, r.kh, r.l2_error, r.h1_semi_error, r.l2_scaled, r.h1_scaled,
         r.bound_l2, r.bound_h1, r.floor)
        for r in rows
    ]


def sweep_trailer(rows) -> list[str]:
    lines = []
    if is_ladder(rows) and sum(not r.floor for r in rows) >= 3:
        fits = ladder_fits(rows)
        for norm in ("l2", "h1"):
            steps = " ".join(format(a, ".6g") for a in fits[norm].step_alphas)
            lines.append(f"alpha_{norm}={fits[norm].alpha:.6g} steps=[{steps}]")
    return lines


def cmd_sweep(args) -> int:
    scheme = Scheme.parse(args.scheme)
    if args.ladder:
        if args.k0 is None or args.N0 is None:
            raise SystemExit("sweep --ladder needs --k0 and --N0")
        rows = sweep_ladder(scheme, args.k0, args.N0, args.steps, args.source, args.p)
        _emit(render(SWEEP_HEADER, sweep_table(rows), args.format, sweep_trailer(rows)), args.out)
    elif args.href:
        if not args.k or not args.N:
            raise SystemExit("sweep --href needs --k and a non-empty --N list")
        rows = sweep_h_refinement(scheme, args.k[0], args.N, args.source, args.p)
        trailer = []
        if sum(not r.floor for r in rows) >= 2:
            trailer.append(f"h_slope={h_slope(rows):.6g}")
        _emit(render(SWEEP_HEADER, sweep_table(rows), args.format, trailer), args.out)
    else:
        if args.kh is None or not args.k:
            raise SystemExit("sweep --khfixed needs --kh and a non-empty --k list")
        p = default_p(scheme) if args.p is None else args.p
        results = sweep_kh_fixed(scheme, args.kh, args.k, p)
        table = [
            (str(scheme), str(r.k), r.grid.N, r.kh, p, r.profile_p.max_value, r.profile_p.argmax_n,
             r.evanescent_max_p, r.evanescent_max_pm1)
            for r in results
        ]
        _emit(render(KHFIXED_HEADER, table, args.format), args.out)
    return 0


def cmd_reproduce(args) -> int:
    panels = build_figure(args.figure)
    os.makedirs(args.out, exist_ok=True)
    descriptions = []
    for panel in panels:
        filename = f"fig{args.figure}_{panel.name}.csv"
        write_atomic(os.path.join(args.out, filename), render(panel.columns, panel.rows))
        descriptions.append(panel.description(filename))
    plot = {"figure": args.figure, "panels": descriptions}
    write_atomic(
        os.path.join(args.out, f"fig{args.figure}_plot.json"),
        json.dumps(plot, indent=2, sort_keys=True) + "\n",
    )
    print(f"wrote {len(panels)} panels to {args.out}")
    return 0


def cmd_verify(args) -> int:
    results = acceptance.run_all()
    report = acceptance.format_report(results)
    sys.stdout.write(report)
    if args.out:
        write_atomic(args.out, report)
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="helmfd",
        description="Symbol-error analysis of finite-difference schemes for u'' + k^2 u = f on (0, 1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pr = sub.add_parser("profile", help="psi_p and psi_{p-1} over all grid frequencies")
    pr.add_argument("--scheme", required=True, choices=[s.value for s in Scheme])
    pr.add_argument("--k", required=True, type=parse_wavenumber, help='e.g. "5pi+1"')
    pr.add_argument("--N", required=True, type=int)
    pr.add_argument("--p", type=int, default=None, help="default: order - 2")
    pr.add_argument("--out", default=None, help="output directory (default: stdout)")
    pr.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    pr.set_defaults(func=cmd_profile)

    sw = sub.add_parser("sweep", help="error sweeps")
    mode = sw.add_mutually_exclusive_group(required=True)
    mode.add_argument("--ladder", action="store_true", help="k doubles while N quadruples")
    mode.add_argument("--href", action="store_true", help="fixed k, list of N")
    mode.add_argument("--khfixed", action="store_true", help="fixed kh, list of k")
    sw.add_argument("--scheme", default="cls", choices=[s.value for s in Scheme])
    sw.add_argument("--k0", type=parse_wavenumber)
    sw.add_argument("--N0", type=int)
    sw.add_argument("--steps", type=int, default=4)
    sw.add_argument("--k", type=_k_list, help="comma-separated wavenumbers")
    sw.add_argument("--N", type=_int_list, help="comma-separated grid sizes")
    sw.add_argument("--kh", type=float)
    sw.add_argument("--source", choices=("mono", "mixed"), default="mono")
    sw.add_argument("--p", type=int, default=None)
    sw.add_argument("--out", default=None, help="output file (default: stdout)")
    sw.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    sw.set_defaults(func=cmd_sweep)

    rp = sub.add_parser("reproduce", help="panel tables and plot description for a figure")
    rp.add_argument("--figure", type=int, choices=(1, 2, 3), required=True)
    rp.add_argument("--out", required=True)
    rp.set_defaults(func=cmd_reproduce)

    vf = sub.add_parser("verify", help="run the acceptance checks")
    vf.add_argument("--out", default=None, help="also write the report here")
    vf.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        parser.exit(2, f"helmfd: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
