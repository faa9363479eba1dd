"""Residual norms, certified tail bounds, padding-size planning, and
empirical decay-slope fitting.

All normalized quantities divide by lambda_max = (pi/h)^alpha so tolerances
are dimensionless and mesh-independent.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError, ValidationError
from .kernel import (
    KernelSpec,
    decay_constant,
    decay_exponent,
    expansion_constants,
    kernel_table,
    lambda_max,
    tail_sum,
)
from .operators import (
    COMPRESS_PERIOD_CAP,
    _require_power_of_two,
    residual as residual_operator,
)

__all__ = [
    "ResidualPoint",
    "ResidualReport",
    "schur_bound",
    "plan_padding",
    "padding_certificate",
    "fit_decay_slope",
    "state_residual",
    "residual_matrix",
    "residual_report",
    "spectral_norm_sym",
]

PLAN_CAP = 2 ** 26          # largest padded size the planner will certify
_EIG_DENSE_LIMIT = 1024     # above this, spectral norms use power iteration


@dataclass(frozen=True)
class ResidualPoint:
    M: int
    spectral_norm: float
    tail_bound: float
    state_error: float | None = None


@dataclass(frozen=True)
class ResidualReport:
    """Per-(N, M) residual norms with certified bounds and fitted slope."""

    spec: KernelSpec
    N: int
    points: list[ResidualPoint]
    fitted_slope: float | None
    predicted_slope: float

    def to_json(self) -> str:
        return json.dumps({
            "alpha": self.spec.alpha,
            "h": self.spec.h,
            "N": self.N,
            "lambda_max": lambda_max(self.spec),
            "decay_constant": decay_constant(self.spec),
            "fitted_slope": self.fitted_slope,
            "predicted_slope": self.predicted_slope,
            "points": [{
                "M": p.M,
                "spectral_norm": p.spectral_norm,
                "tail_bound": p.tail_bound,
                "state_error": p.state_error,
            } for p in self.points],
        }, sort_keys=True)

    def csv_rows(self) -> list[list]:
        rows = []
        for p in self.points:
            rows.append([self.spec.alpha, self.spec.h, self.N, p.M,
                         p.M - self.N + 1, p.spectral_norm, p.tail_bound,
                         "" if p.state_error is None else p.state_error])
        return rows


def spectral_norm_sym(matrix: np.ndarray) -> float:
    """Spectral norm of a symmetric matrix.

    Dense eigensolve up to dimension 1024, then power iteration
    (tolerance 1e-8, at most 5000 iterations).
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    if n <= _EIG_DENSE_LIMIT:
        return float(np.max(np.abs(np.linalg.eigvalsh(a))))
    rng = np.random.default_rng(0)
    v = rng.standard_normal(n)
    v /= np.linalg.norm(v)
    prev = 0.0
    for _ in range(5000):
        w = a @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            return 0.0
        v = w / norm
        if abs(norm - prev) <= 1e-8 * max(1.0, norm):
            break
        prev = norm
    return float(norm)


def schur_bound(spec: KernelSpec, N: int, M: int,
                truncation: int | None = None) -> float:
    """Certified upper bound on the compression-residual spectral norm.

    Every residual entry is a sum of kernel images at distance >= M - N + 1,
    so row and column absolute sums are bounded by the kernel tail at
    K = M - N + 1 and the Schur test gives ||E||_2 <= that tail.
    """
    N = int(N)
    M = int(M)
    if M < 2 * N:
        raise ValidationError(f"bound requires M >= 2N, got N={N}, M={M}")
    K = M - N + 1
    if truncation is None:
        truncation = max(2 ** 21, 4096 * K)
    value, remainder = tail_sum(spec, K, truncation)
    return value + remainder


def _residual_entries_closed(spec: KernelSpec, N: int,
                             M: int) -> tuple[np.ndarray, float]:
    """Residual matrix from closed-form image sums, for very large M.

    Entry (i, j) sums the kernel over arguments i - j + l*M, l != 0, through
    the three-term expansion; the certified expansion remainder bounds the
    per-entry error.  Accurate to ~B_alpha M^-4, negligible at the sizes
    where this route is selected.
    """
    alpha, h = spec.alpha, spec.h
    scale = h ** (-alpha) / math.pi
    a, b, big_b = expansion_constants(alpha)
    ds = np.arange(N, dtype=float)
    signs = np.where(ds % 2 == 0, 1.0, -1.0)
    col = np.zeros(N)
    unc = 0.0
    from scipy.special import zeta as hz
    q_plus = 1.0 + ds / M
    q_minus = 1.0 - ds / M
    col += scale * a * signs * M ** -2.0 * (hz(2.0, q_plus) + hz(2.0, q_minus))
    col -= scale * b * M ** (-1.0 - alpha) * (
        hz(1.0 + alpha, q_plus) + hz(1.0 + alpha, q_minus))
    unc = scale * big_b * M ** -4.0 * 2.0 * float(hz(4.0, 1.0 - (N - 1) / M))
    idx = np.arange(N)
    return col[np.abs(idx[:, None] - idx[None, :])], unc


def residual_matrix(spec: KernelSpec, N: int,
                    M: int) -> tuple[np.ndarray, float]:
    """Dense N x N compression residual plus a per-entry error bound.

    Spectral assembly up to the circulant period cap; beyond it the
    closed-form image-sum route takes over (the two agree to double
    precision where both apply).
    """
    N = _require_power_of_two(N, "register size N")
    M = _require_power_of_two(M, "padded size M")
    if M < 2 * N:
        raise ValidationError(f"residual requires M >= 2N, got N={N}, M={M}")
    if M > PLAN_CAP:
        raise ResourceLimitError(
            f"residual cap is M <= {PLAN_CAP}, got {M}")
    if M <= COMPRESS_PERIOD_CAP:
        table = kernel_table(spec, N - 1)
        return residual_operator(spec, N, M, table).entries, 0.0
    return _residual_entries_closed(spec, N, M)


def residual_norm(spec: KernelSpec, N: int, M: int) -> float:
    """Dense residual spectral norm, including the assembly error bound."""
    entries, unc = residual_matrix(spec, N, M)
    return spectral_norm_sym(entries) + N * unc


def plan_padding(spec: KernelSpec, N: int, epsilon: float,
                 cap: int = PLAN_CAP) -> int:
    """Smallest power-of-two M >= 2N with schur_bound/lambda_max <= epsilon.

    The returned M is certified by the analytic bound alone; no dense
    computation is involved.  Exceeding the cap raises a resource error
    naming the M that would be required.
    """
    epsilon = float(epsilon)
    if not epsilon > 0.0:
        raise ValidationError(f"epsilon must be positive, got {epsilon}")
    N = _require_power_of_two(N, "register size N")
    lam = lambda_max(spec)
    M = 2 * N
    while True:
        if schur_bound(spec, N, M) / lam <= epsilon:
            break
        M *= 2
        if M > 2 ** 80:
            raise ResourceLimitError(
                f"no padded size up to 2^80 certifies epsilon = {epsilon}")
    if M > cap:
        raise ResourceLimitError(
            f"epsilon = {epsilon} requires M = {M}, beyond the cap {cap}")
    return M


def padding_certificate(spec: KernelSpec, N: int, M: int,
                        epsilon: float | None = None) -> dict:
    """Bound data justifying a planned padded size, for reports."""
    lam = lambda_max(spec)
    bound = schur_bound(spec, N, M)
    return {
        "alpha": spec.alpha,
        "h": spec.h,
        "N": int(N),
        "M": int(M),
        "K": int(M) - int(N) + 1,
        "epsilon": epsilon,
        "schur_bound": bound,
        "lambda_max": lam,
        "normalized_bound": bound / lam,
        "decay_constant": decay_constant(spec),
        "decay_exponent": decay_exponent(spec.alpha),
    }


def fit_decay_slope(k_values, norms) -> float:
    """Least-squares slope of log(norm) against log(k).

    Requires at least 4 points spanning at least one decade in k.
    """
    ks = np.asarray(k_values, dtype=float)
    ys = np.asarray(norms, dtype=float)
    if ks.shape != ys.shape or ks.ndim != 1:
        raise ValidationError("k values and norms must be 1D and equal length")
    if len(ks) < 4:
        raise ValidationError(f"need at least 4 points, got {len(ks)}")
    if np.min(ks) <= 0.0 or np.max(ks) / np.min(ks) < 10.0:
        raise ValidationError("points must span at least one decade")
    if np.any(ys <= 0.0):
        raise ValidationError("norms must be positive for a log-log fit")
    slope, _ = np.polyfit(np.log(ks), np.log(ys), 1)
    return float(slope)


def state_residual(spec: KernelSpec, N: int, M: int,
                   state: np.ndarray) -> float:
    """||E^(M) u||_2 / lambda_max for a unit-norm length-N state."""
    u = np.asarray(state, dtype=float)
    if u.shape != (int(N),):
        raise ValidationError(
            f"state must have length N = {N}, got {u.shape}")
    norm = float(np.linalg.norm(u))
    if abs(norm - 1.0) > 1e-12:
        raise ValidationError(f"state must be unit norm, got {norm!r}")
    entries, unc = residual_matrix(spec, N, M)
    return float(np.linalg.norm(entries @ u) + int(N) * unc) \
        / lambda_max(spec)


def residual_report(spec: KernelSpec, N: int, M_list,
                    state: np.ndarray | None = None) -> ResidualReport:
    """Assemble norms, bounds, and the fitted slope over a list of M."""
    N = int(N)
    points = []
    for M in sorted(int(m) for m in M_list):
        entries, unc = residual_matrix(spec, N, M)
        point = ResidualPoint(
            M=M,
            spectral_norm=spectral_norm_sym(entries) + N * unc,
            tail_bound=schur_bound(spec, N, M),
            state_error=None if state is None
            else state_residual(spec, N, M, state),
        )
        points.append(point)
    ks = [p.M - N + 1 for p in points]
    norms = [p.spectral_norm for p in points]
    fitted = None
    if len(points) >= 4 and min(ks) > 0 and max(ks) / min(ks) >= 10.0 \
            and all(v > 0.0 for v in norms):
        fitted = fit_decay_slope(ks, norms)
    return ResidualReport(
        spec=spec, N=N, points=points, fitted_slope=fitted,
        predicted_slope=-(decay_exponent(spec.alpha) - 1.0))
