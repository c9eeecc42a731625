# %% [markdown]
# # Reachable subspaces and the rank test
#
# A = [[1 0 1 1], [0 1 0 1]] acting on V_3.  The state enters V_6 after one
# step; R_t is spanned by A^t ⋉→ δ_3^i.

# %%
from stpreach import (RMatrix, RVector, delta, is_member, reach_basis,
                      scan_reachability, subspace_relate, vprod)

A = RMatrix([[1, 0, 1, 1], [0, 1, 0, 1]])
for i in (1, 2, 3):
    print(f"A ⋉→ δ_3^{i} =", vprod(A, delta(3, i)))

# %%
R = {t: reach_basis(A, 3, t) for t in range(4)}
for t, S in R.items():
    print(f"R_{t}: dim {S.dim} in V_{S.ambient}")
    for b in S.basis:
        print("   ", b)

# %% [markdown]
# Membership is a rank comparison; the verdict keeps both ranks.

# %%
y1 = RVector([2, 2, 3, 2, 1, 1])
y2 = RVector([3, 3, 3, 2, 3, 3])
y3 = RVector([0, 0, 1, 1, -1, -1])
for name, y in [("y1", y1), ("y2", y2), ("y3", y3)]:
    print(name, is_member(R[1], y), "reachable at", sorted(scan_reachability(A, 3, y, 3)))

# %% [markdown]
# R_1 and R_2 are not nested but do intersect.

# %%
print(subspace_relate(R[1], R[2]))
