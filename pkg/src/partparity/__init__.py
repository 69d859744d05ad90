"""Exact q-series and class-group checks for the parity of p((Dm^2+1)/24)."""

from .borcherds import PsiExpansion, kronecker, lambert_rhs, oracle_PD, psi, psi_mod2, qdlog_psi_mod2
from .harness import ParityReport, VerifyConfig, first_even, first_odd, is_admissible, scan, verify_discriminant
from .heegner import Form, class_group, compose, epsilon, frobenius_form, heegner_set, orbit_report, reduce_form
from .maass import borcherds_exponent, build_components, packet_functional, sparse_components
from .partitions import ParityBitmap, durfee_series, mock_f, mock_omega, parity_bitmap, partition_table
from .qseries import BitSeries, CycloElem, QuadElem, Series

__version__ = "0.1.0"

__all__ = [
    "BitSeries", "CycloElem", "Form", "ParityBitmap", "ParityReport", "PsiExpansion", "QuadElem",
    "Series", "VerifyConfig", "borcherds_exponent", "build_components", "class_group", "compose",
    "durfee_series", "epsilon", "first_even", "first_odd", "frobenius_form", "heegner_set",
    "is_admissible", "kronecker", "lambert_rhs", "mock_f", "mock_omega", "oracle_PD",
    "orbit_report", "packet_functional", "parity_bitmap", "partition_table", "psi", "psi_mod2",
    "qdlog_psi_mod2", "reduce_form", "scan", "sparse_components", "verify_discriminant",
]
