"""Orthogonal self-duality kernels for multi-species exclusion and random walks."""

from ._orthodual import (
    Kappa,
    OrthodualError,
    charlier,
    charlier_norm,
    irw_generator,
    kappa_from_p,
    kappa_from_p_text,
    krawtchouk_table,
    krawtchouk_table_bilinear,
    multinomial_weights,
    orthogonality,
    philox_block,
    run_suite,
    sep_generator,
    suite_count,
    suite_name,
    verify_irw,
    verify_sep,
)

__all__ = [
    "Kappa",
    "OrthodualError",
    "charlier",
    "charlier_norm",
    "irw_generator",
    "kappa_from_p",
    "kappa_from_p_text",
    "krawtchouk_table",
    "krawtchouk_table_bilinear",
    "multinomial_weights",
    "orthogonality",
    "philox_block",
    "run_suite",
    "sep_generator",
    "suite_count",
    "suite_name",
    "verify_irw",
    "verify_sep",
]
