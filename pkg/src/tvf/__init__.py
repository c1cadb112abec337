"""Euler sums, multiple T-values and their double shuffle relations."""
from .algebra import RegPoly, dsh_identity, reg, rho, shuffle, stuffle
from .identity import Identity
from .index import LinComb, MtvIndex, SignedComposition, mtv_decompose, parse_index
from .numeric import PrecisionCtx, eval_euler, eval_lincomb, eval_mtv, eval_regpoly

__version__ = "0.1.0"
