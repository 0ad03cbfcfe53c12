"""Exclusion of identical resonances among unstable eigenvalues.

An identical resonance at branch n would be a relation

    mu_j(h) = sum_k m_k mu_k(h)   for all small h,

with a nonnegative integer multi-index m over the unstable modes k < d and
|m| = sum m_k >= 2.  Because each mu_k(h) is analytic in h, the relation
splits into one exact condition per order of h.  We test orders h^0, h^1 and
h^2 using the exact rational expansion coefficients from the spectrum module:

    order 0:  n^2 - j^2 = sum m_k (n^2 - k^2)      (integers)
    order 1:  m_{n/2} = [j = n/2]                  (even n; vacuous for odd n)
    order 2:  exact Fraction identity on the mu2 coefficients

A multi-index surviving all tested orders is a *witness*; if none survives
the certificate verdict is NO_IDENTICAL_RESONANCE, which is what the
connecting-orbit constructions downstream require.

At order 0 every unstable weight satisfies n^2 - k^2 >= 2n - 1, so
|m| <= ceil(n^2 / (2n - 1)) bounds the search exhaustively; the certificate
records the bound used.

When d - 1 < n / sqrt(2) (exact integer form: 2 (d-1)^2 < n^2) even the
crudest gap argument rules out order-0 solutions without any search; the
worst cases of that bound come from near-isoceles Pythagorean triples
generated by the Pell recurrence, see `pythagorean_worst_cases`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import DomainError
from .spectrum import perturbation_mu_coefficients

VERDICT_NO = "NO_IDENTICAL_RESONANCE"
VERDICT_WITNESS = "WITNESS_FOUND"


@dataclass
class ResonanceCertificate:
    """Outcome of the order-by-order resonance search at one branch.

    survivors maps each tested order to the multi-indices (j, m) still alive
    after that order's filter (cumulatively).  The verdict refers to the
    highest tested order.
    """

    n: int
    d: int
    search_bound: int
    orders: tuple[int, ...]
    survivors: dict[int, list[tuple[int, tuple[int, ...]]]]
    verdict: str
    order1_vacuous: bool
    asserted: bool = True

    @property
    def witnesses(self) -> list[tuple[int, tuple[int, ...]]]:
        return self.survivors[self.orders[-1]]


def _order0_solutions(weights: list[int], target: int, bound: int):
    """All m with sum m_k weights[k] = target, 2 <= |m| <= bound.

    Depth-first with the weights in decreasing order; prunes on the largest
    remaining weight.  Weights are positive and strictly decreasing.
    """
    d = len(weights)
    out: list[tuple[int, ...]] = []
    m = [0] * d

    def descend(i: int, remaining: int, used: int):
        if remaining == 0:
            if used >= 2:
                out.append(tuple(m))
            return
        if i == d:
            return
        if remaining > (bound - used) * weights[i]:
            return  # even maxing out the largest remaining weight falls short
        top = min(remaining // weights[i], bound - used)
        for c in range(top, -1, -1):
            m[i] = c
            descend(i + 1, remaining - c * weights[i], used + c)
        m[i] = 0

    descend(0, target, 0)
    return out


def identical_resonance_check(
    n: int, d: int | None = None, orders: tuple[int, ...] = (0, 1, 2), extra_bound: int = 0
) -> ResonanceCertificate:
    """Search for identical resonances among modes k < d at branch n.

    d defaults to n (the full unstable block near onset).  extra_bound
    enlarges the certified |m| bound, useful for soundness checks that the
    bound itself cuts nothing.
    """
    if n != int(n) or n < 1:
        raise DomainError(f"branch index must be a positive integer, got {n!r}")
    n = int(n)
    d = n if d is None else int(d)
    if not 1 <= d <= n:
        raise DomainError(f"need 1 <= d <= n, got d = {d}")
    if tuple(orders) not in {(0,), (0, 1), (0, 1, 2)}:
        raise DomainError(f"orders must be a prefix of (0, 1, 2), got {orders!r}")

    bound = math.ceil(n * n / (2 * n - 1)) + extra_bound
    weights = [n * n - k * k for k in range(d)]

    surv0: list[tuple[int, tuple[int, ...]]] = []
    for j in range(d):
        for m in _order0_solutions(weights, n * n - j * j, bound):
            surv0.append((j, m))
    survivors = {0: surv0}
    alive = surv0

    vacuous = n % 2 == 1
    if 1 in orders:
        if vacuous:
            survivors[1] = list(alive)
        else:
            half = n // 2
            survivors[1] = [
                (j, m)
                for (j, m) in alive
                if (m[half] if half < d else 0) == (1 if j == half else 0)
            ]
        alive = survivors[1]

    if 2 in orders:
        mu2 = [perturbation_mu_coefficients(n, k)[2] for k in range(d)]
        survivors[2] = [
            (j, m)
            for (j, m) in alive
            if sum((Fraction(c) * mu2[k] for k, c in enumerate(m)), Fraction(0)) == mu2[j]
        ]
        alive = survivors[2]

    return ResonanceCertificate(
        n=n,
        d=d,
        search_bound=bound,
        orders=tuple(orders),
        survivors=survivors,
        verdict=VERDICT_NO if not alive else VERDICT_WITNESS,
        order1_vacuous=vacuous,
    )


def fast_bound_check(n: int, d: int) -> bool:
    """True when the gap argument alone excludes order-0 resonances.

    Any sum of >= 2 unstable weights is at least 2 (n^2 - (d-1)^2), which
    exceeds the largest achievable target n^2 exactly when 2 (d-1)^2 < n^2.
    Pure integer arithmetic, no search.
    """
    if n < 1 or d < 1 or d > n:
        raise DomainError(f"need 1 <= d <= n, got n = {n}, d = {d}")
    return 2 * (d - 1) * (d - 1) < n * n


def pythagorean_worst_cases(count: int = 3) -> list[tuple[int, int, int, int]]:
    """Extremal (a, b, n, d) where the fast bound fails as tightly as possible.

    Consecutive Pell pairs (a, b) (5,2), (12,5), (29,12), ... give
    near-isoceles Pythagorean triples n^2 = (a^2-b^2)^2 + (2ab)^2 with legs
    differing by 1; taking d - 1 to be the larger leg lands just outside the
    gap bound: 2 (d-1)^2 = n^2 + (2t+1) for legs t, t+1.
    """
    if count < 1:
        raise DomainError("count must be positive")
    out = []
    a, b = 5, 2
    for _ in range(count):
        legs = (a * a - b * b, 2 * a * b)
        n = a * a + b * b
        d = max(legs) + 1
        assert abs(legs[0] - legs[1]) == 1 and legs[0] ** 2 + legs[1] ** 2 == n * n
        assert not fast_bound_check(n, d)
        out.append((a, b, n, d))
        a, b = 2 * a + b, a
    return out


def homogeneous_resonant_lambdas(n: int, m_max: int) -> list[tuple[int, float]]:
    """Parameter values with an exact mu_0 = m mu_n resonance at +sqrt(lam/6).

    Solving 2 sqrt(6 lam) = m (2 sqrt(6 lam) - (2 pi n)^2) gives

        lambda'_m = (2/3) pi^4 n^4 m^2 / (m - 1)^2,   m = 2, 3, ...

    strictly decreasing to the bifurcation value (2/3) (n pi)^4 as m grows.
    """
    if n != int(n) or n < 1:
        raise DomainError(f"need a positive integer n, got {n!r}")
    if m_max < 2:
        raise DomainError("m_max must be at least 2")
    n = int(n)
    return [
        (m, (2.0 / 3.0) * math.pi ** 4 * n ** 4 * m * m / (m - 1) ** 2)
        for m in range(2, m_max + 1)
    ]


def numeric_resonance_scan(
    mu, m_max: int = 6, tol: float | None = None
) -> list[tuple[int, tuple[int, ...]]]:
    """Near-resonances mu_j ~ m . mu in a finite positive spectrum.

    mu must be strictly decreasing and positive (an unstable block).  The
    search covers 2 <= |m| <= min(m_max, ceil(mu_0 / mu_last) + 1); a hit is
    |mu_j - m . mu| < tol with tol defaulting to 1e-8 * mu_0.
    """
    mu = np.asarray(mu, dtype=float)
    if mu.ndim != 1 or len(mu) == 0:
        raise DomainError("mu must be a nonempty 1-d array")
    if np.any(mu <= 0.0) or np.any(np.diff(mu) >= 0.0):
        raise DomainError("mu must be strictly decreasing and positive")
    if tol is None:
        tol = 1e-8 * mu[0]
    bound = min(int(m_max), math.ceil(mu[0] / mu[-1]) + 1)

    hits: list[tuple[int, tuple[int, ...]]] = []
    d = len(mu)
    m = [0] * d

    def descend(i: int, used: int, total: float):
        if i == d:
            if used >= 2:
                for j in range(d):
                    if abs(mu[j] - total) < tol:
                        hits.append((j, tuple(m)))
            return
        # remaining slots can only increase the sum; prune once past range
        if total - tol > mu[0]:
            return
        for c in range(0, bound - used + 1):
            m[i] = c
            descend(i + 1, used + c, total + c * mu[i])
        m[i] = 0

    descend(0, 0, 0.0)
    return sorted(hits)
