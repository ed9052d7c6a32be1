"""
Quandle cohomology of Alexander quandles F_q[T]/(T-w).

gf and polyring hold the arithmetic, complex the polynomial cochain
complex, cocycles the explicit cocycle families and basis enumeration,
oracle the brute-force function-cochain cohomology used as a cross-check.
"""

__version__ = "1.0.0"
