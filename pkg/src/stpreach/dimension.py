"""State-dimension law of x(t+1) = A ⋉→ x(t) for A of shape m x km.

The recursion is r(t+1) = lcm(km, r(t)) / k.  :func:`build_profile` splits
``p`` prime by prime against ``k`` and ``m`` so that r(t) can be read off in
closed form for every t >= 1 without iterating.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt, lcm, prod

FACTOR_LIMIT = 10**12


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: dict[int, int]

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{q}^{e}" if e > 1 else str(q) for q, e in sorted(self.factors.items()))


def factorize(n: int) -> Factorization:
    """Trial division with a 6k±1 wheel."""
    if n < 1:
        raise ValueError(f"can only factor positive integers, got {n}")
    if n > FACTOR_LIMIT:
        raise ValueError(f"{n} exceeds the factorization limit {FACTOR_LIMIT}")
    value, factors = n, {}
    for q in (2, 3):
        while n % q == 0:
            factors[q] = factors.get(q, 0) + 1
            n //= q
    q = 5
    while q <= isqrt(n):
        for c in (q, q + 2):
            while n % c == 0:
                factors[c] = factors.get(c, 0) + 1
                n //= c
        q += 6
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return Factorization(value, factors)


def _valuation(n: int, q: int) -> int:
    e = 0
    while n % q == 0:
        n //= q
        e += 1
    return e


@dataclass(frozen=True)
class KPrime:
    prime: int
    mu: int       # exponent in k
    beta: int     # exponent in p / k^alpha
    tau: int      # beta // mu
    eta: int      # beta % mu
    shared: int   # exponent of this prime in m (0 unless m and k share it)


@dataclass(frozen=True)
class MPrime:
    prime: int
    nu: int       # exponent in m
    theta: int    # exponent in p


@dataclass(frozen=True)
class DimensionProfile:
    m: int
    k: int
    p: int
    alpha: int
    k_primes: tuple[KPrime, ...]
    m_primes: tuple[MPrime, ...]
    p1: int
    r_star: int
    t_star_bound: int

    @property
    def d(self) -> int:
        return sum(1 for kp in self.k_primes if kp.tau == 0)

    @property
    def m_primes_excess(self) -> tuple[MPrime, ...]:
        """m-primes with nu > theta (their p-part is absorbed by m)."""
        return tuple(mp for mp in self.m_primes if mp.nu > mp.theta)

    @property
    def m_primes_surplus(self) -> tuple[MPrime, ...]:
        return tuple(mp for mp in self.m_primes if mp.nu <= mp.theta)

    @property
    def max_tau(self) -> int:
        return max((kp.tau for kp in self.k_primes), default=0)

    def recompose(self) -> int:
        """Multiply the decomposition of p back together."""
        return (
            self.k ** self.alpha
            * prod(kp.prime ** kp.beta for kp in self.k_primes)
            * prod(mp.prime ** mp.theta for mp in self.m_primes)
            * self.p1
        )


@dataclass(frozen=True)
class DimTrajectory:
    m: int
    k: int
    p: int
    dims: tuple[int, ...] = field(default_factory=tuple)


def _check_positive(**kw):
    for name, v in kw.items():
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def step_dim(m: int, k: int, r: int) -> int:
    return lcm(k * m, r) // k


def dim_trajectory(m: int, k: int, p: int, T: int) -> DimTrajectory:
    _check_positive(m=m, k=k, p=p)
    if T < 0:
        raise ValueError("T must be nonnegative")
    dims = [p]
    for _ in range(T):
        dims.append(step_dim(m, k, dims[-1]))
    return DimTrajectory(m, k, p, tuple(dims))


def build_profile(m: int, k: int, p: int) -> DimensionProfile:
    _check_positive(m=m, k=k, p=p)
    kf = factorize(k).factors
    mf = factorize(m).factors

    alpha, rest = 0, p
    if k > 1:
        while rest % k == 0:
            rest //= k
            alpha += 1

    k_primes = []
    for q, mu in kf.items():
        beta = _valuation(rest, q)
        rest //= q ** beta
        k_primes.append(KPrime(q, mu, beta, beta // mu, beta % mu, mf.get(q, 0)))
    k_primes.sort(key=lambda kp: (kp.tau, kp.prime))

    m_primes = []
    for q, nu in sorted(mf.items()):
        if q in kf:
            continue
        theta = _valuation(rest, q)
        rest //= q ** theta
        m_primes.append(MPrime(q, nu, theta))
    # excess primes first, matching the ordering nu > theta then nu <= theta
    m_primes.sort(key=lambda mp: (mp.nu <= mp.theta, mp.prime))

    p1 = rest
    r_star = m * prod(mp.prime ** (mp.theta - mp.nu) for mp in m_primes if mp.theta >= mp.nu) * p1
    t_bound = alpha + max((kp.tau for kp in k_primes), default=0) + 1
    return DimensionProfile(m, k, p, alpha, tuple(k_primes), tuple(m_primes), p1, r_star, t_bound)


def closed_form_dim(profile: DimensionProfile, t: int) -> int:
    """r(t) for t >= 1 straight from the profile.

    Three regimes: t <= alpha (every k-prime still carries k^(alpha-t)),
    alpha < t < alpha + max_tau + 1 (only k-primes with tau >= t - alpha
    survive, with exponent (tau + alpha - t)*mu + eta), and the invariant
    regime where r(t) = r_star.  A prime shared by m and k contributes
    max(its exponent in m, surviving exponent) rather than their sum.
    """
    if t < 1:
        raise ValueError("closed form holds for t >= 1; r(0) is p itself")
    pr = profile
    if t >= pr.t_star_bound:
        return pr.r_star
    s = t - pr.alpha
    k_part = 1
    for kp in pr.k_primes:
        if t <= pr.alpha:
            e = (pr.alpha - t) * kp.mu + kp.beta
        elif kp.tau >= s:
            e = (kp.tau - s) * kp.mu + kp.eta
        else:
            e = 0
        k_part *= kp.prime ** max(e - kp.shared, 0)
    return pr.r_star * k_part


def invariant_dim(profile: DimensionProfile) -> int:
    return profile.r_star


def invariant_time_bound(profile: DimensionProfile) -> int:
    return profile.t_star_bound


def minimal_invariant_time(m: int, k: int, p: int) -> int:
    """First t at which r(t) reaches r*; never exceeds the profile bound."""
    pr = build_profile(m, k, p)
    r, t = p, 0
    while r != pr.r_star:
        r = step_dim(m, k, r)
        t += 1
    return t


@dataclass(frozen=True)
class ReachableDim:
    r: int
    witnesses: tuple[int, ...]
    is_invariant: bool
    invariant_from: int | None

    @property
    def reachable(self) -> bool:
        return bool(self.witnesses) or self.is_invariant

    @property
    def at_initial_time(self) -> bool:
        return 0 in self.witnesses


def is_reachable_dim(m: int, k: int, p: int, r: int) -> ReachableDim:
    """Times in [0, t* bound] with r(t) = r.

    When r is the invariant dimension every t >= ``invariant_from`` is also a
    witness; those are not enumerated.
    """
    _check_positive(r=r)
    pr = build_profile(m, k, p)
    traj = dim_trajectory(m, k, p, pr.t_star_bound)
    hits = tuple(t for t, rt in enumerate(traj.dims) if rt == r)
    if r == pr.r_star:
        return ReachableDim(r, hits, True, minimal_invariant_time(m, k, p))
    return ReachableDim(r, hits, False, None)
