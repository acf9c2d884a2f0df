"""Exact weighted lattice-path matrices and their positivity properties."""

from .catalog import CATALOG, catalog_scheme
from .errors import LatposError
from .matcore import det, is_tp_order, toeplitz
from .matrix import PolyMatrix
from .pathmodel import (
    WeightScheme,
    build_matrix_rec1,
    build_matrix_rec2,
    build_transpose_rec,
    build_truncation,
    matrix_entry_oracle,
    scheme_from_json,
)
from .polyalg import MultiPoly, PowerSeries, parse, render
from .riordan import ConstantScheme, RiordanSpec

__all__ = [
    "CATALOG",
    "ConstantScheme",
    "LatposError",
    "MultiPoly",
    "PolyMatrix",
    "PowerSeries",
    "RiordanSpec",
    "WeightScheme",
    "build_matrix_rec1",
    "build_matrix_rec2",
    "build_transpose_rec",
    "build_truncation",
    "catalog_scheme",
    "det",
    "is_tp_order",
    "matrix_entry_oracle",
    "parse",
    "render",
    "scheme_from_json",
    "toeplitz",
]
