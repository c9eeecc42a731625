# %% [markdown]
# # State dimensions of a dimension-bounded system
#
# For A of shape m x km the state dimension evolves as
# r(t+1) = lcm(km, r(t)) / k.  Three systems are traced here, each step both
# by recursion and by the closed form built from the prime profile of (m, k, p).

# %%
from stpreach import build_profile, closed_form_dim, dim_trajectory, factorize
from stpreach import is_reachable_dim, minimal_invariant_time

systems = [(10, 6, 68040), (6, 20, 30), (48, 1715, 18900)]

for m, k, p in systems:
    pr = build_profile(m, k, p)
    traj = dim_trajectory(m, k, p, 7)
    print(f"m={m} k={k} p={p}")
    for t, r in enumerate(traj.dims):
        cf = closed_form_dim(pr, t) if t else "-"
        print(f"  r({t}) = {r:>6}  closed form {cf!s:>6}  = {factorize(r)}")
    print(f"  r* = {pr.r_star}, bound on t* = {pr.t_star_bound}, "
          f"first invariant time = {minimal_invariant_time(m, k, p)}")

# %% [markdown]
# The profile itself: alpha is the largest power of k dividing p, each prime
# of k carries (mu, beta, tau, eta), and primes of m coprime to k carry (nu, theta).

# %%
pr = build_profile(48, 1715, 18900)
for kp in pr.k_primes:
    print(kp)
for mp in pr.m_primes:
    print(mp)
print("p1 =", pr.p1, " recomposes to", pr.recompose())

# %% [markdown]
# The bound alpha + max tau + 1 is not always tight.  With A in M_{2x6} and
# p = 18 the dimension settles at t = 2 while the bound says 3.

# %%
print(dim_trajectory(2, 3, 18, 4).dims,
      build_profile(2, 3, 18).t_star_bound,
      minimal_invariant_time(2, 3, 18))

# %% [markdown]
# Reachable dimensions: 630 shows up once, 70 is the invariant dimension, 100 never.

# %%
for r in (630, 70, 100):
    print(r, is_reachable_dim(10, 6, 68040, r))
