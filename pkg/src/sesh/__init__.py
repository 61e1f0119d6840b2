"""Exact Seshadri constants at closed points of P^2 over QQ, plus lattice models."""

__version__ = "0.1.0"

from .exactalg import QQ, Matrix, kernel_basis, rank
from .linsys import conditions_matrix, h0, max_mult, mult_table
from .numfield import NumberField
from .p2geom import Form, LineBundleDeg, make_point, mult_point, vanishing_order
from .seshadri import BracketParams, base_change_compare, global_trend, seshadri_p2

__all__ = [
    "QQ", "Matrix", "kernel_basis", "rank", "conditions_matrix", "h0", "max_mult", "mult_table",
    "NumberField", "Form", "LineBundleDeg", "make_point", "mult_point", "vanishing_order",
    "BracketParams", "base_change_compare", "global_trend", "seshadri_p2",
]
