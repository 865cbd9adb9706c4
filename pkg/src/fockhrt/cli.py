"""Batch command line front end.

    fockhrt phi --bound 10
    fockhrt lattice --d 6
    fockhrt hrt-check --d 6 --M 64
    fockhrt deep-zero --d 4 --beta-re 1 --M 32 64 96 --format csv
    fockhrt bargmann --input signal.json --M 32
    fockhrt roots-figure --d 6 --output roots6.svg

Exit status: 0 success, 1 input error, 2 engine error.  Errors are written to
stderr as a JSON object.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import bargmann, deepzero, hrt, lattice
from .cyclo import CycloElement, euler_phi, phi_equals_two_solutions, totient_table
from .errors import EngineError, InputError
from .fock import FockVector

FORMATS = {
    "phi": ("json", "csv"),
    "lattice": ("json",),
    "hrt-check": ("json",),
    "deep-zero": ("json", "csv", "svg"),
    "bargmann": ("json",),
    "roots-figure": ("svg",),
}

DEEP_ZERO_COLUMNS = ["d", "beta_re", "beta_im", "M", "guard", "interior", "sigma_min",
                     "weyl_column_defect", "reduction_residual_max", "status"]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load_input(args):
    if args.input is None:
        return None
    text = args.input
    if not text.lstrip().startswith(("{", "[")):
        try:
            text = Path(text).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read input: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"input is not valid JSON: {exc}") from None


def _beta(args) -> complex:
    return complex(args.beta_re, args.beta_im)


def run_phi(args, data):
    bound = args.bound if data is None else int(data.get("bound", args.bound))
    if bound < 1:
        raise InputError("bound must be >= 1")
    table = totient_table(bound)
    rows = [[n, int(table[n])] for n in range(1, bound + 1)]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "phi"])
        w.writerows(rows)
        return buf.getvalue()
    return _dump({"bound": bound, "table": rows,
                  "phi_equals_two": phi_equals_two_solutions(bound),
                  "phi_even_above_two": True})


def _exact_points(data) -> list[CycloElement]:
    if isinstance(data, dict) and "points" in data:
        n = data["conductor"]
        return [CycloElement.from_dict({"conductor": n, "coeffs": c}) for c in data["points"]]
    if isinstance(data, list):
        return [CycloElement.from_dict(p) for p in data]
    raise InputError("expected {conductor, points:[...]} or a list of {conductor, coeffs}")


def run_lattice(args, data):
    if data is not None:
        res = lattice.lattice_membership_decision(_exact_points(data))
    else:
        if args.d is None:
            raise InputError("lattice needs --d or --input")
        res = lattice.roots_in_lattice(args.d)
    out = res.to_dict()
    if args.d is not None and data is None:
        out["d"] = args.d
        out["phi_d"] = euler_phi(args.d)
    return _dump(out)


def run_hrt(args, data):
    window = None
    M = args.M[0] if args.M else 64
    if data is not None:
        config = hrt.PointConfig.from_dict(data)
        M = int(data.get("M", M))
        win = data.get("window", "gaussian")
        if win != "gaussian":
            window = FockVector.from_list(win)
    else:
        if args.d is None:
            raise InputError("hrt-check needs --d or --input")
        beta = _beta(args) if (args.beta_re, args.beta_im) != (1.0, 0.0) else 1
        config = hrt.roots_config(args.d, beta)
    cert = hrt.certify_independence(config, window, M)
    out = cert.to_dict()
    out["config"] = config.to_dict()
    out["M"] = M
    return _dump(out)


def _residual_samples(d, beta, M, count, seed):
    rng = np.random.default_rng(seed)
    top = min(M // 4, 24)
    worst = 0.0
    idx = np.arange(0, top + 1, d)
    for _ in range(count):
        c = np.zeros(M, dtype=complex)
        c[idx] = rng.normal(size=idx.size) + 1j * rng.normal(size=idx.size)
        h = FockVector.from_normalized(c / np.linalg.norm(c))
        worst = max(worst, deepzero.reduction_identity_residual(d, beta, h))
    return worst


def run_deep_zero(args, data):
    if data is not None:
        p = deepzero.DeepZeroProblem.from_dict(data)
        d, beta, Ms, guard = p.d, p.beta, [p.M], data.get("guard")
    else:
        if args.d is None:
            raise InputError("deep-zero needs --d or --input")
        d, beta, Ms, guard = args.d, _beta(args), (args.M or [32, 64, 96]), args.guard
    rows = deepzero.sigma_sweep(d, beta, Ms, guard=guard, interior=args.interior)
    for r in rows:
        r["beta"] = [r.pop("beta_re"), r.pop("beta_im")]
        r["reduction_residual_max"] = (
            _residual_samples(d, beta, r["M"], args.samples, args.seed) if args.samples else None)
    if args.format == "svg":
        from .svg import sigma_plot
        return sigma_plot(rows)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(DEEP_ZERO_COLUMNS)
        for r in rows:
            flat = dict(r, beta_re=r["beta"][0], beta_im=r["beta"][1])
            w.writerow([repr(flat[c]) if isinstance(flat[c], float) else flat[c]
                        for c in DEEP_ZERO_COLUMNS])
        return buf.getvalue()
    return _dump({"rows": rows, "seed": args.seed})


def run_bargmann(args, data):
    if data is None:
        raise InputError("bargmann needs --input with a sampled signal")
    signal = bargmann.SampledSignal.from_dict(data)
    M = args.M[0] if args.M else 32
    radius = None if args.radius == "auto" else float(args.radius)
    vec = bargmann.bargmann_coefficients(signal, M, radius)
    return _dump({"M": M, "radius": args.radius, "coeffs": vec.to_list()})


def run_roots_figure(args, data):
    if args.d is None:
        raise InputError("roots-figure needs --d")
    from .svg import roots_figure
    return roots_figure(args.d, lattice.roots_in_lattice(args.d))


RUNNERS = {
    "phi": run_phi,
    "lattice": run_lattice,
    "hrt-check": run_hrt,
    "deep-zero": run_deep_zero,
    "bargmann": run_bargmann,
    "roots-figure": run_roots_figure,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fockhrt", description=__doc__.split("\n\n")[0])
    ap.add_argument("subcommand", choices=sorted(RUNNERS))
    ap.add_argument("--input", help="JSON file path or inline JSON")
    ap.add_argument("--output", help="write here instead of stdout")
    ap.add_argument("--format", help="json, csv or svg (depends on subcommand)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--M", type=int, nargs="+", help="truncation dimension(s)")
    ap.add_argument("--guard", type=int)
    ap.add_argument("--interior", type=int,
                    help="deep-zero: fixed number of unknown coefficients (guard = M - interior)")
    ap.add_argument("--samples", type=int, default=0,
                    help="deep-zero: random E_0-supported inputs for the reduction residual")
    ap.add_argument("--d", type=int)
    ap.add_argument("--beta-re", type=float, default=1.0)
    ap.add_argument("--beta-im", type=float, default=0.0)
    ap.add_argument("--bound", type=int, default=10)
    ap.add_argument("--radius", default="1", help="contour radius, or 'auto'")
    return ap


def _fail(code: int, exc: Exception) -> int:
    payload = exc.to_dict() if isinstance(exc, EngineError) else {
        "error": type(exc).__name__, "message": str(exc)}
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    allowed = FORMATS[args.subcommand]
    args.format = args.format or allowed[0]
    try:
        if args.format not in allowed:
            raise InputError(f"{args.subcommand} supports formats {', '.join(allowed)}")
        text = RUNNERS[args.subcommand](args, _load_input(args))
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except EngineError as exc:
        return _fail(2, exc)
    except (InputError, ValueError, KeyError, TypeError) as exc:
        return _fail(1, exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
