"""Exact contractions of algebraic structures along lam I + N families."""

from .algebra import Algebra, StructureTensor, builtin, check_axioms, product_from_matrix_algebra
from .engine import (
    Classification,
    ContractionReport,
    classify_and_contract,
    derived_product,
    family_contract,
    gilmore_check,
    iw_contract,
    levy_nahas_contract,
    nijenhuis_torsion,
    nk_contract,
)
from .oracle import LimitProbeConfig, limit_probe
from .riesz import RieszDecomposition, riesz_decompose, u_lambda

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Classification",
    "ContractionReport",
    "LimitProbeConfig",
    "RieszDecomposition",
    "StructureTensor",
    "builtin",
    "check_axioms",
    "classify_and_contract",
    "derived_product",
    "family_contract",
    "gilmore_check",
    "iw_contract",
    "levy_nahas_contract",
    "limit_probe",
    "nijenhuis_torsion",
    "nk_contract",
    "product_from_matrix_algebra",
    "riesz_decompose",
    "u_lambda",
]
