"""Lattice fractional Laplacians with controlled boundary error: kernel
tables, Toeplitz/circulant operators, QFT block-encoding simulations, and
certified zero-padding analysis."""

from .analysis import (
    ResidualPoint,
    ResidualReport,
    fit_decay_slope,
    padding_certificate,
    plan_padding,
    residual_matrix,
    residual_norm,
    residual_report,
    schur_bound,
    spectral_norm_sym,
    state_residual,
)
from .blockenc import (
    BlockEncodingSim,
    SymbolOracle,
    block_encoding_3d,
    compressed_block,
    diagonal_oracle,
    native_block_encoding,
    qft_matrix,
    symbol_oracle,
    symbol_oracle_3d,
)
from .diagnostics import (
    CenterSweep,
    CornerReport,
    FunctionalComparison,
    GaussianDiagnostics,
    GaussianState,
    TestFunction,
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
from .kernel import (
    KernelSpec,
    KernelTable,
    decay_bound,
    decay_constant,
    decay_exponent,
    expansion_constants,
    kernel_coeff,
    kernel_table,
    lambda_max,
    lambda_max_3d,
    symbol,
    tail_sum,
)
from .operators import (
    DenseOperator,
    FrequencyGrid,
    KernelTable3D,
    aliasing_difference,
    circulant_from_generator,
    circulant_surrogate,
    circulant_surrogate_3d,
    compress,
    compressed_operator,
    compressed_operator_3d,
    exact_embedding_generator,
    frequency_grid,
    image_sum,
    kernel_table_3d,
    pad,
    residual,
    residual_3d,
    tail_sum_3d,
    toeplitz_target,
    toeplitz_target_3d,
)

__version__ = "0.1.0"

__all__ = [
    "BlockEncodingSim",
    "CenterSweep",
    "CornerReport",
    "DenseOperator",
    "FrequencyGrid",
    "FunctionalComparison",
    "GaussianDiagnostics",
    "GaussianState",
    "KernelSpec",
    "KernelTable",
    "KernelTable3D",
    "ResidualPoint",
    "ResidualReport",
    "ResourceLimitError",
    "SymbolOracle",
    "TestFunction",
    "ValidationError",
    "VerificationError",
    "aliasing_difference",
    "benchmark_functions",
    "block_encoding_3d",
    "center_sweep",
    "circulant_from_generator",
    "circulant_surrogate",
    "circulant_surrogate_3d",
    "compress",
    "compressed_block",
    "compressed_operator",
    "compressed_operator_3d",
    "corner_report",
    "decay_bound",
    "decay_constant",
    "decay_exponent",
    "default_sweep_centers",
    "diagonal_oracle",
    "exact_embedding_generator",
    "expansion_constants",
    "fit_decay_slope",
    "frequency_grid",
    "functional_comparison",
    "gaussian_diagnostics",
    "gaussian_state",
    "heatmap_matrices",
    "image_sum",
    "kernel_coeff",
    "kernel_table",
    "kernel_table_3d",
    "lambda_max",
    "lambda_max_3d",
    "native_block_encoding",
    "pad",
    "padding_certificate",
    "plan_padding",
    "qft_matrix",
    "residual",
    "residual_3d",
    "residual_matrix",
    "residual_norm",
    "residual_report",
    "schur_bound",
    "spectral_norm_sym",
    "state_residual",
    "symbol",
    "symbol_oracle",
    "symbol_oracle_3d",
    "tail_sum",
    "tail_sum_3d",
    "toeplitz_target",
    "toeplitz_target_3d",
]
