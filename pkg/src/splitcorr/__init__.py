"""Exact computations for distance-transform correspondences on lifting curves."""

from .exactalg import AffineExpr, IntPoly, RatMatrix, solve_linear
from .hamming import BitVector, krawtchouk
from .correspondence import B_equation, P_equation, odd_equation, verify_split
from .dimensions import dim_table, genus, rederive_odd, trace_ledger
from .tridiag import cnplus
from .covering import SignedPerm, MonodromyData, random_simple_monodromy

__version__ = "0.1.0"
