"""GHZ-diagonal qubit states, multi-setting Bell operators, and
bipartite-split distillability analysis.

The package has two layers: closed-form arithmetic on the sparse weight
parameterization (`states`, `bell`, `splits`) and a dense-matrix oracle
(`oracle`) that rebuilds everything by brute force for verification.  The
two numerical hot loops live in `_kernels`, with a compiled implementation
preferred at import time and a NumPy fallback always available.
"""

from ._kernels import BACKEND
from .bell import (
    BellScenario,
    bell_value,
    coefficient,
    coefficient_scale,
    large_m_limit,
    min_violating_m,
    operator_scale,
    ppt_value,
    violates,
    witness_bell_value,
)
from .errors import NumericalError, ParseError
from .splits import (
    BipartiteSplit,
    BoundEntanglementCertificate,
    SplitCensus,
    SplitRecord,
    all_splits,
    census,
    certify_bound_entangled,
    distillable_floor,
    is_distillable_split,
    pair_coverage,
    split_from_index,
)
from .states import (
    GhzDiagonalState,
    basis_pair,
    bell_witness_state,
    bell_witness_support,
    format_lambda_file,
    ghz_pure,
    maximally_mixed,
    parse_lambda_file,
    ppt_witness_state,
    read_lambda_file,
    write_lambda_file,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BellScenario",
    "BipartiteSplit",
    "BoundEntanglementCertificate",
    "GhzDiagonalState",
    "NumericalError",
    "ParseError",
    "SplitCensus",
    "SplitRecord",
    "all_splits",
    "basis_pair",
    "bell_value",
    "bell_witness_state",
    "bell_witness_support",
    "census",
    "certify_bound_entangled",
    "coefficient",
    "coefficient_scale",
    "distillable_floor",
    "format_lambda_file",
    "ghz_pure",
    "is_distillable_split",
    "large_m_limit",
    "maximally_mixed",
    "min_violating_m",
    "operator_scale",
    "pair_coverage",
    "parse_lambda_file",
    "ppt_value",
    "ppt_witness_state",
    "read_lambda_file",
    "split_from_index",
    "violates",
    "witness_bell_value",
    "write_lambda_file",
]
