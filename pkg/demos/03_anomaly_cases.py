"""Power counting and the tensor analysis of possible anomalies.

Only tuples with a positive degree omega, zero total charge and an even number
of charge-conjugation-odd arguments can carry an anomaly; the survivors fall
into three tensor cases.
"""

from wardwick import case1_reduce, invariant_tensor_basis, table1

print("n = 6 rows:")
for row in table1(6):
    print(f"  {row['row']}: {', '.join(row['args']):<36} omega={row['omega']}  {row['classification']}")

# Invariant tensors available for the anomaly's delta-derivative coefficients.
for rank, sym, eps in [(2, None, True), (4, None, False), (4, "total", True)]:
    b = invariant_tensor_basis(rank, sym, allow_epsilon=eps)
    print(f"rank {rank}, symmetry={sym}, epsilon={eps}: dimension {b.dimension} -> {b.describe()}")

# Case I: two bases of second-order derivative structures span the same
# 9-dimensional space; the constraint on the coefficients follows from the
# symmetry under exchanging the current's partner with an interaction point.
rep = case1_reduce(2)
print("Case I certified:", rep.certified, "| constraint:", rep.constraint)
