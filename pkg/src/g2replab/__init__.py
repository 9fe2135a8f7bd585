"""Exact computations for a family of modular-group representations into G2.

Octonion arithmetic and G2 certification, the moduli chart and its
invariants, the four-parameter family phi, and surjectivity tests onto
G2(F_p) through maximal-subgroup conditions and an independent witness.
"""

__version__ = "0.1.0"

from .scalar import GF, QQ  # noqa: E402,F401
