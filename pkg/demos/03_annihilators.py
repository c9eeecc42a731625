# %% [markdown]
# # Minimal annihilators
#
# q(A) ⋉→ x mixes vectors of different dimensions through V-addition.  The
# minimal annihilator comes from the first dependence in the Krylov chain.

# %%
from stpreach import (Poly, RMatrix, delta, eval_on_vector, min_annihilator_space,
                      min_annihilator_union, min_annihilator_vector,
                      necessary_reach_filter, union_proper_test, vprod)

A = RMatrix([[1, 0, 1, 1], [0, 1, 0, 1]])
for i in (1, 2, 3):
    x = vprod(A, delta(3, i))
    q = min_annihilator_vector(A, x)
    print(f"q_{i} = {q}    q_{i}(A) ⋉→ x = {eval_on_vector(q, A, x)}")

# %% [markdown]
# The union of R_t for t >= t* has annihilator q = lcm(q_i); V_6 has f.
# f = z^2 q, so the union cannot be all of V_6.

# %%
q = min_annihilator_union(A, 3)
f = min_annihilator_space(A, 6)
print("q =", q)
print("f =", f)
print("f / q =", f // q, " remainder", f % q)
print(union_proper_test(A, 3))

# %% [markdown]
# A vector whose own annihilator does not divide q is certified unreachable
# after t*.

# %%
x = delta(6, 5)
print(min_annihilator_vector(A, x), necessary_reach_filter(A, 3, x))
