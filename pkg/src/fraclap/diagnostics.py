"""State-level and functional experiments comparing the open-boundary target
with its periodic and zero-padded surrogates.

The built-in benchmark suite (Gaussian bump, compact polynomial bump, sine
bump) is a stand-in chosen for boundary-vanishing smoothness; output
metadata labels it as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta as _hurwitz_zeta

from .errors import ValidationError, VerificationError
from .kernel import KernelSpec, KernelTable, decay_constant, decay_exponent, \
    kernel_coeff, kernel_table
from .operators import (
    circulant_surrogate,
    compressed_operator,
    toeplitz_target,
)

__all__ = [
    "TestFunction",
    "GaussianState",
    "benchmark_functions",
    "gaussian_state",
    "functional_comparison",
    "FunctionalComparison",
    "gaussian_diagnostics",
    "GaussianDiagnostics",
    "center_sweep",
    "CenterSweep",
    "corner_report",
    "CornerReport",
    "heatmap_matrices",
    "default_sweep_centers",
]

BENCHMARK_SUITE_NOTE = (
    "built-in stand-in suite: gaussian bump (sigma = N/8 indices, endpoint "
    "baseline removed), compact polynomial bump (1-y^2)^2, half-period sine")


@dataclass(frozen=True)
class TestFunction:
    """Named samples on the physical grid x_j = j h."""

    name: str
    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise ValidationError(f"non-finite samples in {self.name!r}")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)


@dataclass(frozen=True)
class GaussianState:
    """Unit-norm Gaussian samples exp(-(j-j0)^2/(2 sigma^2)), normalized."""

    N: int
    center: int
    sigma: float
    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.samples, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)
        norm = float(np.linalg.norm(arr))
        if abs(norm - 1.0) > 1e-12:
            raise ValidationError(f"state norm {norm!r} is not 1")


def gaussian_state(N: int, j0: int, sigma: float) -> GaussianState:
    N = int(N)
    j0 = int(j0)
    if not 0 <= j0 < N:
        raise ValidationError(f"center must lie in [0, N), got {j0}")
    if not sigma > 0.0:
        raise ValidationError(f"sigma must be positive, got {sigma}")
    j = np.arange(N, dtype=float)
    raw = np.exp(-((j - j0) ** 2) / (2.0 * sigma ** 2))
    return GaussianState(N=N, center=j0, sigma=float(sigma),
                         samples=raw / np.linalg.norm(raw))


def benchmark_functions(N: int, h: float) -> tuple[TestFunction, ...]:
    """Three smooth boundary-vanishing reference functions on N sites.

    The Gaussian bump has its endpoint baseline subtracted so all three
    vanish at the interval ends (below 1e-8 of their maximum).
    """
    N = int(N)
    if N < 8:
        raise ValidationError(f"benchmark suite needs N >= 8, got {N}")
    j = np.arange(N, dtype=float)

    gauss = np.exp(-((j - (N - 1) / 2.0) ** 2) / (2.0 * (N / 8.0) ** 2))
    gauss = gauss - gauss[0]

    y = 2.0 * j / (N - 1) - 1.0
    poly = np.maximum(0.0, 1.0 - y ** 2) ** 2

    sine = np.sin(math.pi * j / (N - 1))

    funcs = (TestFunction("gauss-bump", gauss),
             TestFunction("poly-bump", poly),
             TestFunction("sine-bump", sine))
    for f in funcs:
        peak = float(np.max(np.abs(f.samples)))
        ends = max(abs(float(f.samples[0])), abs(float(f.samples[-1])))
        if not peak > 0.0 or ends > 1e-8 * peak:
            raise VerificationError(
                f"benchmark {f.name!r} does not vanish at the endpoints")
    return funcs


@dataclass(frozen=True)
class FunctionalComparison:
    function: TestFunction
    target_action: np.ndarray
    native_action: np.ndarray
    padded_action: np.ndarray
    native_error: np.ndarray
    padded_error: np.ndarray


def functional_comparison(spec: KernelSpec, N: int, M: int,
                          u: TestFunction,
                          table: KernelTable | None = None,
                          ) -> FunctionalComparison:
    """Apply target, periodic surrogate, and padded compression to u."""
    N = int(N)
    if u.samples.shape != (N,):
        raise ValidationError(
            f"function has {u.samples.shape} samples, expected ({N},)")
    if table is None:
        table = kernel_table(spec, N - 1)
    target = toeplitz_target(spec, N, table).entries @ u.samples
    native = circulant_surrogate(spec, N).entries @ u.samples
    padded = compressed_operator(spec, N, M).entries @ u.samples
    return FunctionalComparison(
        function=u,
        target_action=target,
        native_action=native,
        padded_action=padded,
        native_error=np.abs(native - target),
        padded_error=np.abs(padded - target),
    )


@dataclass(frozen=True)
class GaussianDiagnostics:
    state: GaussianState
    target_action: np.ndarray
    native_action: np.ndarray
    padded_action: np.ndarray
    native_relative_error: float
    padded_relative_error: float


def gaussian_diagnostics(spec: KernelSpec, N: int, j0: int,
                         sigma: float = 4.0,
                         table: KernelTable | None = None,
                         ) -> GaussianDiagnostics:
    """Target, periodic, and doubled-register padded actions on a Gaussian."""
    state = gaussian_state(N, j0, sigma)
    if table is None:
        table = kernel_table(spec, int(N) - 1)
    target = toeplitz_target(spec, N, table).entries @ state.samples
    native = circulant_surrogate(spec, N).entries @ state.samples
    padded = compressed_operator(spec, N, 2 * int(N)).entries @ state.samples
    ref = float(np.linalg.norm(target))
    return GaussianDiagnostics(
        state=state,
        target_action=target,
        native_action=native,
        padded_action=padded,
        native_relative_error=float(np.linalg.norm(native - target)) / ref,
        padded_relative_error=float(np.linalg.norm(padded - target)) / ref,
    )


@dataclass(frozen=True)
class CenterSweep:
    centers: list[int]
    native_relative_errors: list[float]
    padded_relative_errors: list[float]


def default_sweep_centers(N: int) -> list[int]:
    """Centers 0..N/2 spaced N/8 apart (the monotone-resolving spacing)."""
    N = int(N)
    step = max(1, N // 8)
    return list(range(0, N // 2 + 1, step))


def center_sweep(spec: KernelSpec, N: int, sigma: float,
                 centers) -> CenterSweep:
    """Relative errors of both surrogates as the Gaussian center moves."""
    N = int(N)
    centers = [int(c) for c in centers]
    for c in centers:
        if not 0 <= c < N:
            raise ValidationError(f"center {c} outside [0, N)")
    table = kernel_table(spec, N - 1)
    target_op = toeplitz_target(spec, N, table).entries
    native_op = circulant_surrogate(spec, N).entries
    padded_op = compressed_operator(spec, N, 2 * N).entries
    native_errs = []
    padded_errs = []
    for c in centers:
        u = gaussian_state(N, c, sigma).samples
        ref = float(np.linalg.norm(target_op @ u))
        native_errs.append(
            float(np.linalg.norm((native_op - target_op) @ u)) / ref)
        padded_errs.append(
            float(np.linalg.norm((padded_op - target_op) @ u)) / ref)
    return CenterSweep(centers=centers,
                       native_relative_errors=native_errs,
                       padded_relative_errors=padded_errs)


@dataclass(frozen=True)
class CornerReport:
    target_corner: float
    surrogate_corner: float
    difference: float
    dominant_image: float
    difference_minus_dominant: float
    remainder_bound: float


def corner_report(spec: KernelSpec, N: int) -> CornerReport:
    """Wrap-around analysis of the (0, N-1) corner entry.

    The surrogate corner equals the target corner plus the periodic images,
    dominated by the single coefficient c_1; the remainder bound covers all
    other images (explicitly to 64 periods, analytically beyond).
    """
    N = int(N)
    if N < 2:
        raise ValidationError(f"corner report needs N >= 2, got {N}")
    table = kernel_table(spec, N - 1)
    target = toeplitz_target(spec, N, table).entries[0, N - 1]
    surrogate = circulant_surrogate(spec, N).entries[0, N - 1]
    dominant = kernel_coeff(spec, 1)
    diff = float(surrogate - target)

    # remaining images: arguments l*N - (N-1) for l in {-64..-1, 2..64},
    # then a two-sided decay-bound tail
    n_explicit = 64
    ls = [l for l in range(-n_explicit, n_explicit + 1) if l not in (0, 1)]
    args = [abs(l * N - (N - 1)) for l in ls]
    bound = sum(abs(kernel_coeff(spec, n)) for n in args)
    r = decay_exponent(spec.alpha)
    bound += 2.0 * decay_constant(spec) * spec.h ** (-spec.alpha) \
        * float(_hurwitz_zeta(r, (n_explicit - 1) * N))
    return CornerReport(
        target_corner=float(target),
        surrogate_corner=float(surrogate),
        difference=diff,
        dominant_image=float(dominant),
        difference_minus_dominant=float(diff - dominant),
        remainder_bound=float(bound),
    )


def heatmap_matrices(spec: KernelSpec, N: int
                     ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(target, surrogate, |surrogate - target|) dense matrices."""
    table = kernel_table(spec, int(N) - 1)
    target = toeplitz_target(spec, N, table).entries
    surrogate = circulant_surrogate(spec, N).entries
    return target, surrogate, np.abs(surrogate - target)
