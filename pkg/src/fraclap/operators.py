"""Dense lattice operators: open-boundary Toeplitz target, periodic circulant
surrogate, zero-padded compressions, residuals, the exact doubled-register
embedding, and the capped 3D tensor-product variants.

Circulants are built spectrally (inverse DFT of the sampled symbol), which is
exact to FFT roundoff; the kernel-folding identity is verified by tests, not
used as a constructor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError, ValidationError, VerificationError
from .kernel import (
    KernelSpec,
    KernelTable,
    expansion_constants,
    lambda_max,
    lambda_max_3d,
    symbol,
    _zeta_range,
)

__all__ = [
    "FrequencyGrid",
    "DenseOperator",
    "frequency_grid",
    "toeplitz_target",
    "circulant_surrogate",
    "aliasing_difference",
    "pad",
    "compress",
    "compressed_operator",
    "residual",
    "exact_embedding_generator",
    "circulant_from_generator",
    "image_sum",
    "KernelTable3D",
    "kernel_table_3d",
    "toeplitz_target_3d",
    "circulant_surrogate_3d",
    "compressed_operator_3d",
    "residual_3d",
    "tail_sum_3d",
]

GEOMETRIES = ("toeplitz-open", "circulant-periodic", "compressed", "residual")

DENSE_CAP_1D = 4096          # largest dense 1D operator dimension
COMPRESS_PERIOD_CAP = 2 ** 22  # largest circulant period used column-wise
DENSE_CAP_3D_N = 8           # largest 3D target register per axis
DENSE_CAP_3D_M = 16          # largest 3D circulant register per axis


def _require_power_of_two(n: int, what: str) -> int:
    n = int(n)
    if n < 2 or (n & (n - 1)) != 0:
        raise ValidationError(f"{what} must be a power of two >= 2, got {n}")
    return n


@dataclass(frozen=True)
class FrequencyGrid:
    """FFT-ordered frequencies for an N-point register on mesh h.

    freqs[k] = 2 pi k/(N h) for k < N/2 and 2 pi k/(N h) - 2 pi/h above,
    so the extreme value -pi/h sits at k = N/2.
    """

    N: int
    h: float
    freqs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.freqs, dtype=float)
        arr.setflags(write=False)
        object.__setattr__(self, "freqs", arr)


def frequency_grid(N: int, h: float) -> FrequencyGrid:
    """Build the FFT-ordered grid; N must be a power of two."""
    N = _require_power_of_two(N, "register size N")
    h = float(h)
    if not h > 0.0:
        raise ValidationError(f"mesh size h must be positive, got {h}")
    # fftfreq returns exact dyadic fractions k/N (shifted), so at h = 1 the
    # entries equal the textbook values bit for bit.
    freqs = 2.0 * math.pi * np.fft.fftfreq(N) / h
    return FrequencyGrid(N=N, h=h, freqs=freqs)


@dataclass(frozen=True)
class DenseOperator:
    """Real dense square matrix with a geometry tag.

    Circulants retain the FFT-ordered eigenvalue sequence so apply() can run
    matrix-free in O(dim log dim); other geometries multiply densely.
    meta carries the (N, M) pair for compressed/residual geometries.
    """

    dim: int
    entries: np.ndarray
    geometry: str
    spec: KernelSpec | None = None
    meta: tuple[int, int] | None = None
    eigenvalues: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.geometry not in GEOMETRIES:
            raise ValidationError(f"unknown geometry tag {self.geometry!r}")
        arr = np.asarray(self.entries)
        if arr.shape != (self.dim, self.dim):
            raise ValidationError(
                f"expected a {self.dim}x{self.dim} matrix, got {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)
        if self.eigenvalues is not None:
            ev = np.asarray(self.eigenvalues)
            ev.setflags(write=False)
            object.__setattr__(self, "eigenvalues", ev)

    def apply(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.dim,):
            raise ValidationError(
                f"operand length {v.shape} does not match dim {self.dim}")
        if self.geometry == "circulant-periodic" and self.eigenvalues is not None:
            out = np.fft.ifft(self.eigenvalues * np.fft.fft(v))
            return out.real if np.isrealobj(v) else out
        return self.entries @ v

    def csv_text(self) -> str:
        from ._io import matrix_csv_text
        n, m = self.meta if self.meta else (self.dim, "")
        return matrix_csv_text(self.entries, geometry=self.geometry,
                               alpha=self.spec.alpha if self.spec else "",
                               h=self.spec.h if self.spec else "",
                               N=n, M=m)

    def json_metadata(self) -> dict:
        rec = {
            "geometry": self.geometry,
            "dim": self.dim,
            "alpha": self.spec.alpha if self.spec else None,
            "h": self.spec.h if self.spec else None,
            "meta": list(self.meta) if self.meta else None,
        }
        if self.geometry == "circulant-periodic":
            rec["generator"] = [float(x) for x in self.entries[:, 0]]
            if self.eigenvalues is not None:
                rec["eigenvalues"] = [float(np.real(x))
                                      for x in self.eigenvalues]
        return rec


def toeplitz_target(spec: KernelSpec, N: int,
                    table: KernelTable) -> DenseOperator:
    """Open-boundary N x N Toeplitz matrix with entries c_{i-j}."""
    N = int(N)
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    if N > DENSE_CAP_1D:
        raise ResourceLimitError(f"dense cap is N <= {DENSE_CAP_1D}, got {N}")
    if table.max_index < N - 1:
        raise ValidationError(
            f"kernel table covers |m| <= {table.max_index}; "
            f"N = {N} requires max index {N - 1}")
    idx = np.arange(N)
    entries = table.coeffs[np.abs(idx[:, None] - idx[None, :])]
    return DenseOperator(dim=N, entries=entries, geometry="toeplitz-open",
                         spec=spec)


def circulant_surrogate(spec: KernelSpec, N: int) -> DenseOperator:
    """Periodic surrogate: inverse DFT of the symbol sampled on the grid."""
    N = _require_power_of_two(N, "register size N")
    if N > DENSE_CAP_1D:
        raise ResourceLimitError(f"dense cap is N <= {DENSE_CAP_1D}, got {N}")
    grid = frequency_grid(N, spec.h)
    samples = symbol(spec, grid.freqs)
    col = np.fft.ifft(samples)
    residue = float(np.max(np.abs(col.imag)))
    if residue > 1e-12 * max(1.0, lambda_max(spec)):
        raise VerificationError(
            f"imaginary residue {residue:.3e} in circulant column; "
            "the sampled symbol is not even on the grid")
    idx = np.arange(N)
    entries = col.real[(idx[:, None] - idx[None, :]) % N]
    return DenseOperator(dim=N, entries=entries, geometry="circulant-periodic",
                         spec=spec, eigenvalues=samples)


def aliasing_difference(spec: KernelSpec, N: int,
                        table: KernelTable) -> DenseOperator:
    """Surrogate minus target; every entry is a sum of periodic images."""
    diff = circulant_surrogate(spec, N).entries \
        - toeplitz_target(spec, N, table).entries
    return DenseOperator(dim=int(N), entries=diff, geometry="residual",
                         spec=spec, meta=(int(N), int(N)))


def pad(vector: np.ndarray, M: int) -> np.ndarray:
    """Append zeros up to length M; preserves the Euclidean norm."""
    v = np.asarray(vector)
    M = int(M)
    if v.ndim != 1:
        raise ValidationError("pad expects a 1D vector")
    if M < len(v):
        raise ValidationError(f"cannot pad length {len(v)} down to {M}")
    out = np.zeros(M, dtype=v.dtype)
    out[:len(v)] = v
    return out


def compress(vector: np.ndarray, N: int) -> np.ndarray:
    """Keep the first N entries; left inverse of pad."""
    v = np.asarray(vector)
    N = int(N)
    if v.ndim != 1:
        raise ValidationError("compress expects a 1D vector")
    if N > len(v):
        raise ValidationError(f"cannot compress length {len(v)} up to {N}")
    return v[:N].copy()


def _circulant_column(spec: KernelSpec, M: int) -> np.ndarray:
    """First column of the M-point surrogate without dense assembly."""
    grid = 2.0 * math.pi * np.fft.rfftfreq(M) / spec.h
    samples = np.abs(grid) ** spec.alpha
    return np.fft.irfft(samples, M)


def compressed_operator(spec: KernelSpec, N: int, M: int,
                        table: KernelTable | None = None) -> DenseOperator:
    """Leading N x N principal submatrix of the M-point surrogate.

    Requires M >= 2N (the regime in which the compression reproduces the
    open-boundary target up to a pure image-sum residual).  The optional
    table is only validated for coverage; construction is spectral.
    """
    N = _require_power_of_two(N, "register size N")
    M = _require_power_of_two(M, "padded size M")
    if M < 2 * N:
        raise ValidationError(f"padded size must satisfy M >= 2N, "
                              f"got N = {N}, M = {M}")
    if table is not None and table.max_index < N - 1:
        raise ValidationError(
            f"kernel table covers |m| <= {table.max_index}, need {N - 1}")
    if M > COMPRESS_PERIOD_CAP:
        raise ResourceLimitError(
            f"circulant period cap is M <= {COMPRESS_PERIOD_CAP}, got {M}")
    if M <= DENSE_CAP_1D:
        entries = circulant_surrogate(spec, M).entries[:N, :N].copy()
    else:
        col = _circulant_column(spec, M)
        idx = np.arange(N)
        entries = col[(idx[:, None] - idx[None, :]) % M]
    return DenseOperator(dim=N, entries=entries, geometry="compressed",
                         spec=spec, meta=(N, M))


def residual(spec: KernelSpec, N: int, M: int,
             table: KernelTable) -> DenseOperator:
    """compressed_operator minus toeplitz_target for the same (N, M)."""
    diff = compressed_operator(spec, N, M).entries \
        - toeplitz_target(spec, N, table).entries
    return DenseOperator(dim=int(N), entries=diff, geometry="residual",
                         spec=spec, meta=(int(N), int(M)))


def exact_embedding_generator(spec: KernelSpec, N: int,
                              table: KernelTable) -> np.ndarray:
    """Length-2N circulant generator (c_0..c_{N-1}, 0, c_{N-1}..c_1).

    The leading N x N block of the generated circulant reproduces the
    open-boundary target with identical floating-point entries.
    """
    N = int(N)
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    if table.max_index < N - 1:
        raise ValidationError(
            f"kernel table covers |m| <= {table.max_index}, need {N - 1}")
    head = table.coeffs[:N]
    tail = table.coeffs[N - 1:0:-1]
    return np.concatenate([head, [0.0], tail])


def circulant_from_generator(g: np.ndarray) -> DenseOperator:
    """L x L circulant with entries g_{(i-j) mod L}."""
    g = np.asarray(g, dtype=float)
    if g.ndim != 1 or len(g) < 1:
        raise ValidationError("generator must be a nonempty 1D sequence")
    L = len(g)
    idx = np.arange(L)
    entries = g[(idx[:, None] - idx[None, :]) % L]
    return DenseOperator(dim=L, entries=entries, geometry="circulant-periodic",
                         eigenvalues=np.fft.fft(g))


def image_sum(spec: KernelSpec, d: int, period: int,
              n_explicit: int = 64) -> tuple[float, float]:
    """sum over l != 0 of c_{d + l*period}, with a certified uncertainty.

    Explicit coefficients cover |l| <= n_explicit; the two one-sided tails
    are summed in closed form through the three-term expansion, whose
    certified remainder (plus quadrature roundoff for fractional alpha)
    forms the returned uncertainty.  Requires an even period and |d| < period.
    """
    from .kernel import _closed_form, _cos_moment_panels

    period = int(period)
    d = int(d)
    if period < 2 or period % 2 != 0:
        raise ValidationError(f"period must be even and >= 2, got {period}")
    if abs(d) >= period:
        raise ValidationError(f"offset |d| must be < period, got {d}")

    alpha, h = spec.alpha, spec.h
    scale = h ** (-alpha) / math.pi
    a, b, big_b = expansion_constants(alpha)

    ls = np.arange(1, n_explicit + 1)
    args = np.concatenate([ls * period + d, ls * period - d])
    value = 0.0
    unc = 0.0
    if alpha in (1.0, 2.0):
        value += float(np.sum(_closed_form(alpha, h, args)))
    else:
        for n in args:
            value += scale * _cos_moment_panels(alpha, int(n))[0]
            unc += scale * 1e-13

    # closed-form tails over l > n_explicit; period is even so every image
    # d + l*period shares the parity of d
    sign = 1.0 if d % 2 == 0 else -1.0
    q_plus = n_explicit + 1 + d / period
    q_minus = n_explicit + 1 - d / period
    for s, coef in ((2.0, sign * a), (1.0 + alpha, -b)):
        value += scale * coef * period ** (-s) * (
            float(_zeta_range(s, q_plus, None))
            + float(_zeta_range(s, q_minus, None)))
    unc += scale * big_b * period ** -4.0 * (
        float(_zeta_range(4.0, q_plus, None))
        + float(_zeta_range(4.0, q_minus, None)))
    return value, unc


# ---------------------------------------------------------------------------
# 3D tensor-product variants


@dataclass(frozen=True)
class KernelTable3D:
    """3D kernel values from an inverse triple DFT on a reference grid.

    fold[v mod n_ref] equals the true 3D coefficient c_v plus its reference
    aliasing error; fold_error estimates that error entrywise (by doubling
    the reference grid), since no closed 3D kernel formula exists for
    fractional alpha.  remainder_estimate is its maximum over the covered
    central cube.
    """

    spec: KernelSpec
    n_ref: int
    max_offset: int
    fold: np.ndarray
    fold_error: np.ndarray
    remainder_estimate: float

    def __post_init__(self) -> None:
        for name in ("fold", "fold_error"):
            arr = np.asarray(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def coeff(self, rx: int, ry: int, rz: int) -> float:
        r = max(abs(rx), abs(ry), abs(rz))
        if r > self.max_offset:
            raise ValidationError(
                f"table covers offsets up to {self.max_offset}, requested {r}")
        return float(self.fold[rx % self.n_ref, ry % self.n_ref,
                               rz % self.n_ref])


def _symbol_cube(spec: KernelSpec, N: int) -> np.ndarray:
    """Isotropic symbol (xi_x^2 + xi_y^2 + xi_z^2)^(alpha/2) on the N grid."""
    f2 = frequency_grid(N, spec.h).freqs ** 2
    radial = f2[:, None, None] + f2[None, :, None] + f2[None, None, :]
    return radial ** (spec.alpha / 2.0)


def _fold_cube(spec: KernelSpec, n: int) -> np.ndarray:
    cube = np.fft.ifftn(_symbol_cube(spec, n))
    residue = float(np.max(np.abs(cube.imag)))
    if residue > 1e-12 * max(1.0, lambda_max_3d(spec)):
        raise VerificationError(
            f"imaginary residue {residue:.3e} in 3D kernel fold")
    return cube.real


def kernel_table_3d(spec: KernelSpec, max_offset: int,
                    n_ref: int = 64) -> KernelTable3D:
    """Reference-grid 3D kernel table covering ||r||_inf <= max_offset."""
    n_ref = _require_power_of_two(n_ref, "reference grid size")
    max_offset = int(max_offset)
    if max_offset < 0 or max_offset > n_ref // 4:
        raise ValidationError(
            f"max_offset must lie in [0, n_ref/4] = [0, {n_ref // 4}]")
    fold = _fold_cube(spec, n_ref)
    double = _fold_cube(spec, 2 * n_ref)
    # physical offset behind fold index i is i itself for i < n/2, i - n above
    offsets = np.where(np.arange(n_ref) < n_ref // 2,
                       np.arange(n_ref), np.arange(n_ref) - n_ref)
    di = offsets % (2 * n_ref)
    fold_error = np.abs(fold - double[np.ix_(di, di, di)])
    span = np.arange(-max_offset, max_offset + 1)
    est = float(np.max(fold_error[np.ix_(span % n_ref, span % n_ref,
                                         span % n_ref)]))
    return KernelTable3D(spec=spec, n_ref=n_ref, max_offset=max_offset,
                         fold=fold, fold_error=fold_error,
                         remainder_estimate=est)


def _block_toeplitz_entries(values: np.ndarray, N: int,
                            period: int) -> np.ndarray:
    """(N^3)^2 matrix with entries values[(i-j) mod period] per axis."""
    idx = np.arange(N)
    ij = (idx[:, None] - idx[None, :]) % period
    six = values[ij[:, :, None, None, None, None],
                 ij[None, None, :, :, None, None],
                 ij[None, None, None, None, :, :]]
    # gathered order is (ix, jx, iy, jy, iz, jz); flat index is x-major
    return np.transpose(six, (0, 2, 4, 1, 3, 5)).reshape(N ** 3, N ** 3)


def toeplitz_target_3d(spec: KernelSpec, N: int,
                       table3d: KernelTable3D) -> DenseOperator:
    """Open-boundary block-Toeplitz operator on an N^3 lattice."""
    N = int(N)
    if N < 1:
        raise ValidationError(f"N must be >= 1, got {N}")
    if N > DENSE_CAP_3D_N:
        raise ResourceLimitError(
            f"3D target cap is N <= {DENSE_CAP_3D_N}, got {N}")
    if table3d.max_offset < N - 1:
        raise ValidationError(
            f"3D table covers offsets up to {table3d.max_offset}, "
            f"need {N - 1}")
    entries = _block_toeplitz_entries(table3d.fold, N, table3d.n_ref)
    return DenseOperator(dim=N ** 3, entries=entries, geometry="toeplitz-open",
                         spec=spec)


def circulant_surrogate_3d(spec: KernelSpec, N: int) -> DenseOperator:
    """Periodic 3D surrogate: inverse triple DFT of the isotropic symbol."""
    N = _require_power_of_two(N, "register size N")
    if N > DENSE_CAP_3D_M:
        raise ResourceLimitError(
            f"3D circulant cap is N <= {DENSE_CAP_3D_M}, got {N}")
    samples = _symbol_cube(spec, N)
    col = np.fft.ifftn(samples)
    residue = float(np.max(np.abs(col.imag)))
    if residue > 1e-12 * max(1.0, lambda_max_3d(spec)):
        raise VerificationError(
            f"imaginary residue {residue:.3e} in 3D circulant")
    entries = _block_toeplitz_entries(col.real, N, N)
    return DenseOperator(dim=N ** 3, entries=entries,
                         geometry="circulant-periodic", spec=spec,
                         eigenvalues=samples.ravel())


def compressed_operator_3d(spec: KernelSpec, N: int, M: int) -> DenseOperator:
    """Per-axis leading N^3 compression of the M^3 surrogate.

    Each spatial axis index is restricted to 0..N-1 (tensor-product padding),
    never the flat leading indices.
    """
    N = _require_power_of_two(N, "register size N")
    M = _require_power_of_two(M, "padded size M")
    if M < 2 * N:
        raise ValidationError(f"padded size must satisfy M >= 2N, "
                              f"got N = {N}, M = {M}")
    if M > DENSE_CAP_3D_M:
        raise ResourceLimitError(
            f"3D circulant cap is M <= {DENSE_CAP_3D_M}, got {M}")
    big = circulant_surrogate_3d(spec, M)
    six = big.entries.reshape(M, M, M, M, M, M)
    entries = six[:N, :N, :N, :N, :N, :N].reshape(N ** 3, N ** 3).copy()
    return DenseOperator(dim=N ** 3, entries=entries, geometry="compressed",
                         spec=spec, meta=(N, M))


def residual_3d(spec: KernelSpec, N: int, M: int,
                table3d: KernelTable3D) -> DenseOperator:
    """compressed_operator_3d minus toeplitz_target_3d."""
    diff = compressed_operator_3d(spec, N, M).entries \
        - toeplitz_target_3d(spec, N, table3d).entries
    return DenseOperator(dim=int(N) ** 3, entries=diff, geometry="residual",
                         spec=spec, meta=(int(N), int(M)))


def tail_sum_3d(table3d: KernelTable3D, K: int) -> tuple[float, float]:
    """Enclosure of sum_{||r||_inf >= K} |c_r| for the 3D kernel.

    At alpha = 2 the symbol is additive across axes, the kernel is supported
    on the coordinate axes, and the tail reduces exactly to three 1D tails.
    Otherwise shells K..n_ref/2 of the reference fold are summed and the
    remaining shells are estimated by a power-law fit, with the reference
    fold error included; this estimate is labelled as such in reports.
    """
    from .kernel import tail_sum as tail_sum_1d

    K = int(K)
    if K < 1:
        raise ValidationError(f"K must be >= 1, got {K}")
    spec = table3d.spec
    if spec.alpha == 2.0:
        value, rem = tail_sum_1d(spec, K, max(10 ** 6, 64 * K))
        return 3.0 * value, 3.0 * rem

    half = table3d.n_ref // 2
    if K >= half:
        raise ValidationError(
            f"tail start K = {K} must lie below n_ref/2 = {half}")
    span = np.arange(-half, half)
    gather = np.ix_(span % table3d.n_ref, span % table3d.n_ref,
                    span % table3d.n_ref)
    cube = np.abs(table3d.fold[gather])
    errs = table3d.fold_error[gather]
    radius = np.maximum.reduce(np.meshgrid(
        np.abs(span), np.abs(span), np.abs(span), indexing="ij"))
    region = (radius >= K) & (radius < half)
    value = float(np.sum(cube[region]))
    last_shell = float(np.sum(cube[radius == half - 1]))
    # shell sums decay like R^-min(2, 1+alpha): the cell-face kinks give the
    # R^-2 part, the central cusp the R^-(1+alpha) part (same dominance rule
    # as the 1D coefficients); extrapolate the uncounted shells from the
    # outermost counted one and add the entrywise fold-error estimate
    s = min(2.0, 1.0 + spec.alpha)
    beyond = last_shell * (half - 1) ** s * float(_zeta_range(s, half, None))
    estimate = beyond + float(np.sum(errs[region]))
    return value, estimate
