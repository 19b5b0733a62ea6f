"""Anytime-valid confidence bands for monotone means and CDFs."""

from ._core import (
    SampleStore,
    anytime_baseline_radius,
    band,
    dkw_radius,
    kl,
    kl_inverse_lower,
    kl_inverse_upper,
    kt_bet,
    pinsker_radius,
    psi,
    psi_inverse_lower,
    psi_inverse_upper,
    run_coverage,
    sample,
    variance_radius,
)

__all__ = [
    "SampleStore",
    "anytime_baseline_radius",
    "band",
    "dkw_radius",
    "kl",
    "kl_inverse_lower",
    "kl_inverse_upper",
    "kt_bet",
    "pinsker_radius",
    "psi",
    "psi_inverse_lower",
    "psi_inverse_upper",
    "run_coverage",
    "sample",
    "variance_radius",
]
