"""Mod-2 Borsuk-Ulam obstruction calculator for (Z/2)^k-equivariant maps."""

from ._obstructor import (
    DimensionMismatch,
    ParseError,
    SearchLimitExceeded,
    __version__,
    binom_parity,
    compute_r,
    count_gram_zeros,
    crosscheck_peel_orders,
    diagonal_r_k2,
    fadell_husseini_target,
    gram_representation,
    r,
    run_cli,
    search,
    theorem_main2_check,
    theorem_main_target,
    variety_check,
)

__all__ = [
    "DimensionMismatch",
    "ParseError",
    "SearchLimitExceeded",
    "__version__",
    "binom_parity",
    "compute_r",
    "count_gram_zeros",
    "crosscheck_peel_orders",
    "diagonal_r_k2",
    "fadell_husseini_target",
    "gram_representation",
    "r",
    "run_cli",
    "search",
    "theorem_main2_check",
    "theorem_main_target",
    "variety_check",
]
