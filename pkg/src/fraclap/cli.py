"""Command-line entry point wiring the numerical modules into reproducible
experiment runs.

Commands: kernel, verify, figure, plan.  Every run writes data files plus a
JSON metadata sidecar (stem.meta.json); identical configurations produce
byte-identical data files, and only the sidecar carries a timestamp.

Exit codes: 0 success, 2 validation error, 3 verification failure,
4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import _io
from .analysis import (
    padding_certificate,
    plan_padding,
    residual_report,
    schur_bound,
    spectral_norm_sym,
)
from .blockenc import (
    block_encoding_3d,
    compressed_block,
    diagonal_oracle,
    native_block_encoding,
    symbol_oracle,
)
from .diagnostics import (
    BENCHMARK_SUITE_NOTE,
    benchmark_functions,
    center_sweep,
    corner_report,
    default_sweep_centers,
    functional_comparison,
    gaussian_diagnostics,
    gaussian_state,
    heatmap_matrices,
)
from .errors import ResourceLimitError, ValidationError, VerificationError
from .kernel import KernelSpec, decay_bound, kernel_table, lambda_max, \
    lambda_max_3d
from .operators import (
    circulant_from_generator,
    circulant_surrogate,
    circulant_surrogate_3d,
    compressed_operator,
    exact_embedding_generator,
    frequency_grid,
    image_sum,
    kernel_table_3d,
    residual,
    residual_3d,
    tail_sum_3d,
    toeplitz_target,
)

__all__ = ["main", "RunConfig", "build_config"]

OUTPUT_DIR_ENV = "FRACLAP_OUTPUT_DIR"
FIGURE_KINDS = ("heatmap", "functional", "scaling", "gaussian", "sweep",
                "corner")

_EXIT_FOR = (
    (ValidationError, 2),
    (VerificationError, 3),
    (ResourceLimitError, 4),
)

_DEFAULTS = {
    "alpha": 1.5,
    "h": 1.0,
    "N": 64,
    "M": None,
    "quad_tol": 1e-12,
    "output_dir": ".",
    "format": "csv",
    "seed": None,
    "max_index": 64,
    "M_list": "128,256,512,1024",
    "sigma": 4.0,
    "center": None,
    "centers": None,
    "eps": None,
    "three_d": False,
    "perturb": None,
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run parameters (flags > config file > env > defaults).

    `explicit` records which keys were set by a flag or the config file, so
    commands can apply context-dependent fallbacks for the rest.
    """

    command: str
    kind: str | None
    alpha: float
    h: float
    N: int
    M: int | None
    quad_tol: float
    output_dir: str
    format: str
    seed: int | None
    max_index: int
    M_list: tuple[int, ...]
    sigma: float
    center: int | None
    centers: tuple[int, ...] | None
    eps: float | None
    three_d: bool
    perturb: str | None
    explicit: frozenset[str]


def _int_list(value) -> tuple[int, ...]:
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        return tuple(int(p) for p in parts)
    return tuple(int(v) for v in value)


def build_config(args: argparse.Namespace) -> RunConfig:
    file_cfg: dict = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config file is not valid JSON: {exc}")
        if not isinstance(raw, dict):
            raise ValidationError("config file must hold a JSON object")
        unknown = sorted(set(raw) - set(_DEFAULTS))
        if unknown:
            raise ValidationError(f"unknown config keys: {unknown}")
        file_cfg = raw

    explicit = set()

    def pick(key):
        flag = getattr(args, key, None)
        if flag is not None:
            explicit.add(key)
            return flag
        if key in file_cfg:
            explicit.add(key)
            return file_cfg[key]
        if key == "output_dir":
            env = os.environ.get(OUTPUT_DIR_ENV)
            if env:
                return env
        return _DEFAULTS[key]

    fmt = str(pick("format"))
    if fmt not in ("csv", "json"):
        raise ValidationError(f"format must be csv or json, got {fmt!r}")
    quad_tol = float(pick("quad_tol"))
    if not quad_tol > 0.0:
        raise ValidationError(f"quad_tol must be positive, got {quad_tol}")
    m_value = pick("M")
    seed = pick("seed")
    centers = pick("centers")
    eps = pick("eps")
    try:
        cfg = RunConfig(
            command=args.command,
            kind=getattr(args, "kind", None),
            alpha=float(pick("alpha")),
            h=float(pick("h")),
            N=int(pick("N")),
            M=None if m_value is None else int(m_value),
            quad_tol=quad_tol,
            output_dir=str(pick("output_dir")),
            format=fmt,
            seed=None if seed is None else int(seed),
            max_index=int(pick("max_index")),
            M_list=_int_list(pick("M_list")),
            sigma=float(pick("sigma")),
            center=None if pick("center") is None else int(pick("center")),
            centers=None if centers is None else _int_list(centers),
            eps=None if eps is None else float(eps),
            three_d=bool(pick("three_d")),
            perturb=pick("perturb"),
            explicit=frozenset(explicit),
        )
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad configuration value: {exc}")
    if cfg.perturb not in (None, "corner"):
        raise ValidationError(f"unknown perturbation {cfg.perturb!r}")
    return cfg


# ---------------------------------------------------------------------------
# output helpers


def _common_params(cfg: RunConfig, **extra) -> dict:
    params = {"alpha": cfg.alpha, "h": cfg.h, "seed": cfg.seed,
              "format": cfg.format}
    params.update(extra)
    return params


def _emit_columns(cfg: RunConfig, stem: str, experiment: str,
                  header_params: dict, columns) -> str:
    """Write a column dataset as CSV or JSON; returns the written path."""
    if cfg.format == "json":
        path = os.path.join(cfg.output_dir, stem + ".json")
        numeric = (int, float, np.integer, np.floating)
        payload = {"experiment": experiment, "parameters": header_params,
                   "columns": {name: [float(v) if isinstance(v, numeric)
                                      else v for v in values]
                               for name, values in columns}}
        _io.atomic_write_text(path, json.dumps(payload, sort_keys=True) + "\n")
    else:
        path = os.path.join(cfg.output_dir, stem + ".csv")
        _io.atomic_write_text(
            path, _io.dataset_csv_text(experiment, header_params, columns))
    print(f"wrote {path}")
    return path


def _emit_matrix(cfg: RunConfig, name: str, entries: np.ndarray,
                 geometry: str, N: int, M) -> str:
    path = os.path.join(cfg.output_dir, name + ".csv")
    _io.atomic_write_text(path, _io.matrix_csv_text(
        entries, geometry=geometry, alpha=cfg.alpha, h=cfg.h, N=N, M=M))
    print(f"wrote {path}")
    return path


def _emit_sidecar(cfg: RunConfig, stem: str, kind: str, params: dict,
                  note: str | None = None) -> str:
    path = os.path.join(cfg.output_dir, stem + ".meta.json")
    _io.write_sidecar(path, kind, params, note)
    print(f"wrote {path}")
    return path


# ---------------------------------------------------------------------------
# commands


def cmd_kernel(cfg: RunConfig) -> int:
    spec = KernelSpec(cfg.alpha, cfg.h)
    if cfg.max_index < 0:
        raise ValidationError(f"max-index must be >= 0, got {cfg.max_index}")
    os.makedirs(cfg.output_dir, exist_ok=True)
    table = kernel_table(spec, cfg.max_index, cfg.quad_tol)
    ms = list(range(cfg.max_index + 1))
    bounds = [""] + [decay_bound(spec, m) for m in ms[1:]]
    stem = f"kernel_alpha{cfg.alpha:g}_h{cfg.h:g}_max{cfg.max_index}"
    columns = [
        ("m", ms),
        ("coeff", [table.coeffs[m] for m in ms]),
        ("abs_coeff", [abs(table.coeffs[m]) for m in ms]),
        ("decay_bound", bounds),
    ]
    params = _common_params(cfg, max_index=cfg.max_index,
                            quad_tol=cfg.quad_tol)
    files = [_emit_columns(cfg, stem, "kernel", params, columns)]
    table_path = os.path.join(cfg.output_dir, stem + ".table.json")
    _io.atomic_write_text(table_path, table.to_json() + "\n")
    print(f"wrote {table_path}")
    files.append(table_path)
    _emit_sidecar(cfg, stem, "kernel",
                  dict(params, files=[os.path.basename(f) for f in files]))
    return 0


def _verify_checks_1d(cfg: RunConfig, N: int,
                      M: int) -> list[tuple[str, float, float]]:
    spec = KernelSpec(cfg.alpha, cfg.h)
    lam = lambda_max(spec)
    tol = 1e-10 * max(1.0, lam)
    table = kernel_table(spec, N - 1, cfg.quad_tol)
    target = toeplitz_target(spec, N, table)
    surrogate = circulant_surrogate(spec, N)
    checks: list[tuple[str, float, float]] = []

    entries = surrogate.entries.copy()
    if cfg.perturb == "corner":
        entries[0, N - 1] = -entries[0, N - 1]
        entries[N - 1, 0] = -entries[N - 1, 0]
    worst = 0.0
    for d in range(N):
        expected, unc = image_sum(spec, d, N, n_explicit=4)
        mismatch = abs(entries[d, 0] - target.entries[d, 0] - expected)
        worst = max(worst, mismatch - unc)
    checks.append(("aliasing-identity", worst, tol))

    err = residual(spec, N, M, table)
    worst = 0.0
    for d in range(N):
        expected, unc = image_sum(spec, d, M, n_explicit=4)
        worst = max(worst, abs(err.entries[d, 0] - expected) - unc,
                    abs(err.entries[0, d] - expected) - unc)
    checks.append(("compression-identity", worst, tol))

    g = exact_embedding_generator(spec, N, table)
    embedded = circulant_from_generator(g).entries[:N, :N]
    checks.append(("embedding-exactness",
                   float(np.max(np.abs(embedded - target.entries))), 0.0))

    checks.append(("schur-bound", spectral_norm_sym(err.entries),
                   schur_bound(spec, N, M)))

    sim = native_block_encoding(spec, N)
    checks.append(("block-identity",
                   float(np.max(np.abs(sim.block * lam - surrogate.entries))),
                   tol))

    blk = compressed_block(spec, N, M)
    comp = compressed_operator(spec, N, M)
    checks.append(("compressed-block-identity",
                   float(np.max(np.abs(blk * lam - comp.entries))), tol))

    ud = diagonal_oracle(symbol_oracle(spec, N))
    eye = np.eye(2 * N)
    residue = max(float(np.max(np.abs(ud.conj().T @ ud - eye))),
                  float(np.max(np.abs(sim.unitary.conj().T @ sim.unitary
                                      - eye))))
    checks.append(("oracle-unitarity", residue, 1e-12))
    return checks


def _verify_checks_3d(cfg: RunConfig, N: int,
                      M: int) -> list[tuple[str, float, float]]:
    spec = KernelSpec(cfg.alpha, cfg.h)
    lam3 = lambda_max_3d(spec)
    tol = 1e-10 * max(1.0, lam3)
    checks: list[tuple[str, float, float]] = []

    surrogate = circulant_surrogate_3d(spec, N)
    f2 = frequency_grid(N, spec.h).freqs ** 2
    samples = (f2[:, None, None] + f2[None, :, None]
               + f2[None, None, :]) ** (spec.alpha / 2.0)
    achieved = float(np.max(np.abs(
        np.sort(np.linalg.eigvalsh(surrogate.entries))
        - np.sort(samples.ravel()))))
    checks.append(("eigenvalue-match-3d", achieved, tol))

    # keep the residue-lattice ratio n_ref/M well above 1 even at the 3D cap
    table3 = kernel_table_3d(spec, N - 1, n_ref=max(64, 8 * M))
    err3 = residual_3d(spec, N, M, table3)
    # the M-periodic kernel equals the reference fold summed over the
    # (n_ref/M)^3 residue lattice, so the image sums come from the same
    # array as the target and the reference aliasing cancels
    from .operators import _block_toeplitz_entries
    ratio = table3.n_ref // M
    folded = table3.fold.reshape(ratio, M, ratio, M, ratio, M).sum(
        axis=(0, 2, 4))
    expected = _block_toeplitz_entries(folded, N, M) \
        - _block_toeplitz_entries(table3.fold, N, table3.n_ref)
    checks.append(("residual-images-3d",
                   float(np.max(np.abs(err3.entries - expected))), tol))

    value, estimate = tail_sum_3d(table3, M - N + 1)
    checks.append(("tail-bound-3d", spectral_norm_sym(err3.entries),
                   value + estimate))

    sim3 = block_encoding_3d(spec, N)
    checks.append(("block-identity-3d",
                   float(np.max(np.abs(sim3.block * lam3
                                       - surrogate.entries))), tol))
    return checks


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.three_d:
        N = cfg.N if "N" in cfg.explicit else 2
        M = cfg.M if cfg.M is not None else 2 * N
        checks = _verify_checks_3d(cfg, N, M)
    else:
        N = cfg.N
        M = cfg.M if cfg.M is not None else 2 * N
        checks = _verify_checks_1d(cfg, N, M)
    rows = [{"name": name, "achieved": achieved, "tolerance": tolerance,
             "passed": bool(achieved <= tolerance)}
            for name, achieved, tolerance in checks]
    for row in rows:
        status = "PASS" if row["passed"] else "FAIL"
        print(f"{status} {row['name']:26s} achieved={row['achieved']:.6e} "
              f"tolerance={row['tolerance']:.6e}")
    all_pass = all(row["passed"] for row in rows)

    os.makedirs(cfg.output_dir, exist_ok=True)
    suffix = "_3d" if cfg.three_d else ""
    stem = f"verify_alpha{cfg.alpha:g}_h{cfg.h:g}_N{N}_M{M}{suffix}"
    params = _common_params(cfg, N=N, M=M, three_d=cfg.three_d,
                            perturb=cfg.perturb)
    report = {"checks": rows, "passed": all_pass, "parameters": params}
    path = os.path.join(cfg.output_dir, stem + ".report.json")
    _io.atomic_write_text(path, json.dumps(report, indent=2, sort_keys=True)
                          + "\n")
    print(f"wrote {path}")
    _emit_sidecar(cfg, stem, "verify",
                  dict(params, files=[os.path.basename(path)]))
    if not all_pass:
        failed = ", ".join(r["name"] for r in rows if not r["passed"])
        print(f"error: verification failed: {failed}", file=sys.stderr)
        return 3
    return 0


def _figure_heatmap(cfg: RunConfig, spec: KernelSpec, N: int) -> int:
    target, surrogate, absdiff = heatmap_matrices(spec, N)
    stem = _io.dataset_basename("heatmap", cfg.alpha, cfg.h, N, N)
    files = {
        "target": _emit_matrix(cfg, stem + "_target", target,
                               "toeplitz-open", N, N),
        "surrogate": _emit_matrix(cfg, stem + "_surrogate", surrogate,
                                  "circulant-periodic", N, N),
        "absdiff": _emit_matrix(cfg, stem + "_absdiff", absdiff,
                                "residual", N, N),
    }
    params = _common_params(cfg, N=N, M=N)
    params["files"] = {k: os.path.basename(v) for k, v in files.items()}
    _emit_sidecar(cfg, stem, "heatmap", params)
    return 0


def _figure_functional(cfg: RunConfig, spec: KernelSpec, N: int) -> int:
    M = cfg.M if cfg.M is not None else max(256, 2 * N)
    table = kernel_table(spec, N - 1, cfg.quad_tol)
    columns: list = [("j", list(range(N))),
                     ("x", [j * cfg.h for j in range(N)])]
    for func in benchmark_functions(N, cfg.h):
        fc = functional_comparison(spec, N, M, func, table)
        base = func.name.replace("-", "_")
        columns += [
            (base, fc.function.samples),
            (base + "_target", fc.target_action),
            (base + "_native", fc.native_action),
            (base + "_padded", fc.padded_action),
            (base + "_native_error", fc.native_error),
            (base + "_padded_error", fc.padded_error),
        ]
    stem = _io.dataset_basename("functional", cfg.alpha, cfg.h, N, M)
    params = _common_params(cfg, N=N, M=M)
    path = _emit_columns(cfg, stem, "functional", params, columns)
    _emit_sidecar(cfg, stem, "functional",
                  dict(params, files=[os.path.basename(path)]),
                  note=BENCHMARK_SUITE_NOTE)
    return 0


def _figure_scaling(cfg: RunConfig, spec: KernelSpec, N: int) -> int:
    for M in cfg.M_list:
        if M < 2 * N:
            raise ValidationError(
                f"every M in M-list must be >= 2N = {2 * N}, got {M}")
    state = gaussian_state(N, 0, cfg.sigma).samples
    report = residual_report(spec, N, cfg.M_list, state=state)
    stem = _io.dataset_basename("scaling", cfg.alpha, cfg.h, N,
                                max(cfg.M_list))
    names = ["alpha", "h", "N", "M", "K", "spectral_norm", "tail_bound",
             "state_error"]
    rows = report.csv_rows()
    columns = [(name, [row[i] for row in rows])
               for i, name in enumerate(names)]
    params = _common_params(cfg, N=N, M_list=list(cfg.M_list),
                            sigma=cfg.sigma,
                            fitted_slope=report.fitted_slope,
                            predicted_slope=report.predicted_slope)
    files = [_emit_columns(cfg, stem, "scaling", params, columns)]
    report_path = os.path.join(cfg.output_dir, stem + ".report.json")
    _io.atomic_write_text(report_path, report.to_json() + "\n")
    print(f"wrote {report_path}")
    files.append(report_path)
    _emit_sidecar(cfg, stem, "scaling",
                  dict(params, files=[os.path.basename(f) for f in files]))
    return 0


def _figure_gaussian(cfg: RunConfig, spec: KernelSpec, N: int) -> int:
    center = cfg.center if cfg.center is not None else 0
    diag = gaussian_diagnostics(spec, N, center, cfg.sigma)
    columns = [
        ("j", list(range(N))),
        ("u", diag.state.samples),
        ("target", diag.target_action),
        ("native", diag.native_action),
        ("padded", diag.padded_action),
        ("native_error", np.abs(diag.native_action - diag.target_action)),
        ("padded_error", np.abs(diag.padded_action - diag.target_action)),
    ]
    stem = _io.dataset_basename("gaussian", cfg.alpha, cfg.h, N, 2 * N)
    params = _common_params(
        cfg, N=N, M=2 * N, center=center, sigma=cfg.sigma,
        native_relative_error=diag.native_relative_error,
        padded_relative_error=diag.padded_relative_error)
    path = _emit_columns(cfg, stem, "gaussian", params, columns)
    _emit_sidecar(cfg, stem, "gaussian",
                  dict(params, files=[os.path.basename(path)]))
    return 0


def _figure_sweep(cfg: RunConfig, spec: KernelSpec, N: int) -> int:
    centers = list(cfg.centers) if cfg.centers is not None \
        else default_sweep_centers(N)
    sweep = center_sweep(spec, N, cfg.sigma, centers)
    columns = [
        ("center", sweep.centers),
        ("native_relative_error", sweep.native_relative_errors),
        ("padded_relative_error", sweep.padded_relative_errors),
    ]
    stem = _io.dataset_basename("sweep", cfg.alpha, cfg.h, N, 2 * N)
    params = _common_params(cfg, N=N, M=2 * N, sigma=cfg.sigma,
                            centers=centers)
    path = _emit_columns(cfg, stem, "sweep", params, columns)
    _emit_sidecar(cfg, stem, "sweep",
                  dict(params, files=[os.path.basename(path)]))
    return 0


def _figure_corner(cfg: RunConfig, spec: KernelSpec, N: int) -> int:
    rep = corner_report(spec, N)
    columns = [
        ("target_corner", [rep.target_corner]),
        ("surrogate_corner", [rep.surrogate_corner]),
        ("difference", [rep.difference]),
        ("dominant_image", [rep.dominant_image]),
        ("difference_minus_dominant", [rep.difference_minus_dominant]),
        ("remainder_bound", [rep.remainder_bound]),
    ]
    stem = _io.dataset_basename("corner", cfg.alpha, cfg.h, N, N)
    params = _common_params(cfg, N=N)
    path = _emit_columns(cfg, stem, "corner", params, columns)
    _emit_sidecar(cfg, stem, "corner",
                  dict(params, files=[os.path.basename(path)]))
    return 0


def cmd_figure(cfg: RunConfig) -> int:
    spec = KernelSpec(cfg.alpha, cfg.h)
    N = cfg.N
    if cfg.kind == "corner" and "N" not in cfg.explicit:
        N = 8
    os.makedirs(cfg.output_dir, exist_ok=True)
    runner = {
        "heatmap": _figure_heatmap,
        "functional": _figure_functional,
        "scaling": _figure_scaling,
        "gaussian": _figure_gaussian,
        "sweep": _figure_sweep,
        "corner": _figure_corner,
    }[cfg.kind]
    return runner(cfg, spec, N)


def cmd_plan(cfg: RunConfig) -> int:
    spec = KernelSpec(cfg.alpha, cfg.h)
    if cfg.eps is None:
        raise ValidationError("plan requires --eps")
    M = plan_padding(spec, cfg.N, cfg.eps)
    cert = padding_certificate(spec, cfg.N, M, cfg.eps)
    print(f"planned M = {M} (K = {cert['K']}) with normalized bound "
          f"{cert['normalized_bound']:.6e} <= eps = {cfg.eps:g}")
    os.makedirs(cfg.output_dir, exist_ok=True)
    stem = _io.dataset_basename("plan", cfg.alpha, cfg.h, cfg.N, M)
    path = os.path.join(cfg.output_dir, stem + ".json")
    _io.atomic_write_text(path, json.dumps(cert, indent=2, sort_keys=True)
                          + "\n")
    print(f"wrote {path}")
    params = _common_params(cfg, N=cfg.N, M=M, eps=cfg.eps)
    _emit_sidecar(cfg, stem, "plan",
                  dict(params, files=[os.path.basename(path)]))
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--alpha", type=float, help="symbol exponent in (0, 2]")
    sp.add_argument("--h", type=float, help="mesh size")
    sp.add_argument("--N", type=int, help="register size")
    sp.add_argument("--M", type=int, help="padded register size")
    sp.add_argument("--quad-tol", dest="quad_tol", type=float,
                    help="kernel quadrature tolerance")
    sp.add_argument("--output-dir", dest="output_dir",
                    help=f"output directory (or ${OUTPUT_DIR_ENV})")
    sp.add_argument("--format", choices=["csv", "json"],
                    help="dataset format (default csv)")
    sp.add_argument("--seed", type=int,
                    help="recorded in metadata; reserved")
    sp.add_argument("--config", help="JSON file with default parameters")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraclap",
        description="Lattice fractional Laplacian surrogates: kernel tables, "
                    "verification suites, figure datasets, padding plans.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_kernel = sub.add_parser(
        "kernel", help="emit a kernel table and decay-bound comparison")
    _add_common(p_kernel)
    p_kernel.add_argument("--max-index", dest="max_index", type=int,
                          help="largest coefficient index (default 64)")

    p_verify = sub.add_parser(
        "verify", help="run the operator/block-encoding identity checks")
    _add_common(p_verify)
    p_verify.add_argument("--three-d", dest="three_d", action="store_true",
                          default=None, help="run the 3D identity suite")
    p_verify.add_argument("--perturb", choices=["corner"],
                          help="inject a deliberate fault (must fail)")

    p_figure = sub.add_parser("figure", help="emit a figure dataset")
    p_figure.add_argument("kind", choices=list(FIGURE_KINDS))
    _add_common(p_figure)
    p_figure.add_argument("--M-list", dest="M_list",
                          help="comma-separated padded sizes (scaling)")
    p_figure.add_argument("--sigma", type=float,
                          help="Gaussian width in grid indices (default 4)")
    p_figure.add_argument("--center", type=int,
                          help="Gaussian center index (gaussian figure)")
    p_figure.add_argument("--centers",
                          help="comma-separated center list (sweep figure)")

    p_plan = sub.add_parser(
        "plan", help="choose the smallest certified padded size")
    _add_common(p_plan)
    p_plan.add_argument("--eps", type=float,
                        help="normalized residual budget")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = build_config(args)
        handler = {
            "kernel": cmd_kernel,
            "verify": cmd_verify,
            "figure": cmd_figure,
            "plan": cmd_plan,
        }[cfg.command]
        return handler(cfg)
    except (ValidationError, VerificationError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        for etype, code in _EXIT_FOR:
            if isinstance(exc, etype):
                return code
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
