"""Dense statevector simulation of the QFT block-encoding circuit.

The circuit is QFT^-1 (x) I  .  U_D  .  QFT (x) I with one ancilla qubit as
the last tensor factor (basis index 2k + a).  U_D rotates the ancilla by
R_y(2 arccos phi_k) conditioned on the register value k, so the ancilla-<0|
block of the assembled unitary is the normalized circulant surrogate.

No gate decomposition is modelled; every unitary is a dense complex matrix
and block extraction is index slicing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError, ValidationError
from .kernel import KernelSpec, lambda_max, lambda_max_3d, symbol
from .operators import _require_power_of_two, _symbol_cube, frequency_grid

__all__ = [
    "SymbolOracle",
    "BlockEncodingSim",
    "qft_matrix",
    "symbol_oracle",
    "symbol_oracle_3d",
    "diagonal_oracle",
    "native_block_encoding",
    "compressed_block",
    "block_encoding_3d",
]

UNITARY_CAP = 2 ** 13      # largest dense unitary dimension (1D)
UNITARY_CAP_3D = 2 ** 8    # largest dense unitary dimension (3D)


@dataclass(frozen=True)
class SymbolOracle:
    """Normalized symbol samples phi_k = symbol(xi_k)/lambda_max in [0, 1]."""

    N: int
    phis: np.ndarray
    lambda_max: float

    def __post_init__(self) -> None:
        arr = np.asarray(self.phis, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0 + 1e-12) \
                or np.any(np.isnan(arr)):
            raise ValidationError("oracle values must lie in [0, 1]")
        # dividing by the analytic lambda_max can overshoot 1 by an ulp
        # (e.g. (3 pi^2)^(alpha/2) vs (sqrt(3) pi)^alpha); clip, don't reject
        arr = np.minimum(arr, 1.0)
        arr.setflags(write=False)
        object.__setattr__(self, "phis", arr)


@dataclass(frozen=True)
class BlockEncodingSim:
    """Assembled circuit unitary together with its ancilla-<0| block."""

    register_dim: int
    unitary: np.ndarray
    block: np.ndarray

    def __post_init__(self) -> None:
        for name in ("unitary", "block"):
            arr = np.asarray(getattr(self, name))
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def qft_matrix(N: int) -> np.ndarray:
    """QFT unitary Q[j, k] = exp(+2 pi i jk/N)/sqrt(N).

    The positive phase matches the spectral circulant constructor: for the
    real even symbols used here, Q^-1 diag(s) Q equals the inverse-DFT
    circulant (pinned by a cross-module test).
    """
    N = _require_power_of_two(N, "register size N")
    j = np.arange(N)
    return np.exp(2j * math.pi * np.outer(j, j) / N) / math.sqrt(N)


def symbol_oracle(spec: KernelSpec, N: int) -> SymbolOracle:
    """1D oracle: phi_k = |xi_k|^alpha / (pi/h)^alpha on the FFT grid."""
    grid = frequency_grid(N, spec.h)
    lam = lambda_max(spec)
    return SymbolOracle(N=int(N), phis=symbol(spec, grid.freqs) / lam,
                        lambda_max=lam)


def symbol_oracle_3d(spec: KernelSpec, N: int) -> SymbolOracle:
    """3D oracle over the x-major flattened grid, normalized by
    (sqrt(3) pi/h)^alpha."""
    N = _require_power_of_two(N, "register size N")
    lam = lambda_max_3d(spec)
    return SymbolOracle(N=N ** 3, phis=_symbol_cube(spec, N).ravel() / lam,
                        lambda_max=lam)


def diagonal_oracle(oracle: SymbolOracle) -> np.ndarray:
    """Block-diagonal unitary of per-k ancilla rotations R_y(2 arccos phi_k).

    The ancilla-<0| block is diag(phi_k); the <1| block is
    diag(sqrt(1 - phi_k^2)).
    """
    phis = oracle.phis
    sines = np.sqrt(np.maximum(0.0, 1.0 - phis ** 2))
    dim = 2 * oracle.N
    ud = np.zeros((dim, dim), dtype=complex)
    ud[0::2, 0::2] = np.diag(phis)
    ud[0::2, 1::2] = np.diag(-sines)
    ud[1::2, 0::2] = np.diag(sines)
    ud[1::2, 1::2] = np.diag(phis)
    return ud


def _assemble(qft: np.ndarray, ud: np.ndarray) -> BlockEncodingSim:
    n = qft.shape[0]
    layer = np.kron(qft, np.eye(2))
    unitary = layer.conj().T @ ud @ layer
    return BlockEncodingSim(register_dim=n, unitary=unitary,
                            block=unitary[0::2, 0::2])


def native_block_encoding(spec: KernelSpec, N: int) -> BlockEncodingSim:
    """Full-size circuit whose block is circulant_surrogate/lambda_max."""
    N = _require_power_of_two(N, "register size N")
    if 2 * N > UNITARY_CAP:
        raise ResourceLimitError(
            f"unitary cap is 2N <= {UNITARY_CAP}, got N = {N}")
    return _assemble(qft_matrix(N), diagonal_oracle(symbol_oracle(spec, N)))


def compressed_block(spec: KernelSpec, N: int, M: int) -> np.ndarray:
    """Physical N x N block of the size-M circuit.

    Simulates the M-point block encoding, then restricts rows and columns to
    the first N register coordinates; equals
    (toeplitz_target + residual)/lambda_max up to assembly roundoff.
    """
    N = _require_power_of_two(N, "register size N")
    M = _require_power_of_two(M, "padded size M")
    if M < 2 * N:
        raise ValidationError(f"padded size must satisfy M >= 2N, "
                              f"got N = {N}, M = {M}")
    sim = native_block_encoding(spec, M)
    return sim.block[:N, :N].copy()


def block_encoding_3d(spec: KernelSpec, N: int) -> BlockEncodingSim:
    """Triple-tensor QFT layer with the isotropic oracle; N in {2, 4}."""
    N = _require_power_of_two(N, "register size N")
    if 2 * N ** 3 > UNITARY_CAP_3D:
        raise ResourceLimitError(
            f"3D unitary cap is 2N^3 <= {UNITARY_CAP_3D}, got N = {N}")
    q = qft_matrix(N)
    q3 = np.kron(np.kron(q, q), q)
    return _assemble(q3, diagonal_oracle(symbol_oracle_3d(spec, N)))
