"""Unimodular column operations that make an exponent matrix upper triangular.

For a nonsingular integer matrix M we find H with |det H| = 1 such that
M @ H is upper triangular with a positive diagonal, entries to the right of
each pivot reduced into [0, pivot).
"""

from toricenter import IntMatrix, column_hnf_triangularize, det, select_pivot_columns

M = IntMatrix.from_rows([[4, 7, 2], [3, 5, 1], [6, 1, 8]])
H, U = column_hnf_triangularize(M)
print("M =", M.tolist())
print("H =", H.tolist(), " det H =", det(H))
print("U = M @ H =", U.tolist())
assert M @ H == U

# For a wide matrix the first independent columns are moved to the front.
wide = IntMatrix.from_rows([[1, 2, 0], [2, 4, 1]])
print("pivot columns (1-based):", select_pivot_columns(wide))
