"""Kummer-extension degrees and the residual-index densities built on them.

The degree of Q(zeta_t, g^(1/t)) over Q is phi(t) * t_h / nu with
nu in {1/2, 1, 2} determined by the parity of t_h and whether disc divides
t (or 2t).  The density of primes with residual index exactly t is the
alternating sum over squarefree k of mu(k)/degree(kt); its truncation is
controlled by two rigorous tail bounds, so every returned value carries a
certified absolute error below the requested tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, fsum, gcd, isqrt

import numpy as np

from . import arith
from .decompose import GDecomposition
from .errors import CapabilityError, DomainError

# sum_{k>K} 1/(k phi(k)) < 2 * zeta(2)zeta(3)/zeta(6) / K; the constant
# zeta(2)zeta(3)/zeta(6) = prod_q (1 + 1/(q(q-1))) is < 1.94360.
_TAIL_C = 2 * 1.94360

_K_CAP = 1 << 25
_CHUNK = 1 << 20


@dataclass(frozen=True)
class DegreeResult:
    """Degree of Q(zeta_t, g^(1/t)) over Q, with the correction factor nu."""

    t: int
    degree: int
    nu: Fraction


def _nu(dec: GDecomposition, t: int, t_h: int) -> Fraction:
    disc = dec.disc
    if dec.sign > 0:
        if t_h % 2 == 0 and t % disc == 0:
            return Fraction(2)
        return Fraction(1)
    if t % 2 == 1:
        return Fraction(1)
    if t_h % 2 == 1:
        return Fraction(1, 2)
    if t_h % 4 == 2:
        if t % disc != 0 and (2 * t) % disc == 0:
            return Fraction(2)
        return Fraction(1)
    if t % disc == 0:
        return Fraction(2)
    return Fraction(1)


def kummer_degree(dec: GDecomposition, t: int) -> DegreeResult:
    """[Q(zeta_t, g^(1/t)) : Q] = phi(t) * t_h / nu, exactly."""
    if t < 1:
        raise DomainError("t must be >= 1")
    t_h = t // gcd(t, dec.h)
    nu = _nu(dec, t, t_h)
    phi_t = arith.euler_phi(arith.factor_int(t))
    degree = Fraction(phi_t * t_h) / nu
    assert degree.denominator == 1
    return DegreeResult(t=t, degree=int(degree), nu=nu)


def _degrees_vec(dec: GDecomposition, t: int, k: np.ndarray, phi_k: np.ndarray) -> np.ndarray:
    """degree(k*t) for an int64 vector of squarefree k (same case table)."""
    h, disc = dec.h, dec.disc
    T = k * t
    Th = T // np.gcd(T, h)
    d = np.gcd(k, t)
    phi_small = arith.totient_sieve(t)
    phi_t = int(phi_small[t])
    phiT = phi_k * ((phi_t * d) // phi_small[d])
    base = phiT * Th
    if dec.sign > 0:
        nu2 = (Th % 2 == 0) & (T % disc == 0)
        return np.where(nu2, base // 2, base)
    even = T % 2 == 0
    th_odd = Th % 2 == 1
    th_two = Th % 4 == 2
    nu_half = even & th_odd
    nu2 = even & (
        (th_two & (T % disc != 0) & ((2 * T) % disc == 0)) | (~th_odd & ~th_two & (T % disc == 0))
    )
    return np.where(nu_half, 2 * base, np.where(nu2, base // 2, base))


def _choose_k(h: int, t: int, tol: float, scale: float) -> int:
    """Smallest truncation point whose certified tail bound is <= tol.

    Two rigorous bounds on the tail of sum_k mu(k)/degree(kt) (terms are
    at most scale*h/(kt*phi(kt))): scale*2h/(t*sqrt(K)) from phi(k) >= sqrt(k),
    and scale*_TAIL_C*h/(t*phi(t)*K) from k/phi(k) = sum_{d|k} mu(d)^2/phi(d).
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    phi_t = arith.euler_phi(arith.factor_int(t))
    k1 = ceil((scale * 2 * h / (t * tol)) ** 2)
    k2 = ceil(scale * _TAIL_C * h / (t * phi_t * tol))
    k = max(16, min(k1, k2))
    if k > _K_CAP:
        raise CapabilityError(f"tolerance {tol} needs K={k} > cap {_K_CAP}")
    return k


def tail_bound(h: int, t: int, k: int, scale: float = 2.0) -> float:
    """Certified bound on the dropped tail of the degree sum beyond k."""
    phi_t = arith.euler_phi(arith.factor_int(t))
    b2 = scale * _TAIL_C * h / (t * phi_t * k)
    if k >= 6:
        return min(scale * 2 * h / (t * k**0.5), b2)
    return b2


def artin_density_A(dec: GDecomposition, t: int, tol: float) -> float:
    """Density sum_k mu(k)/[Q(zeta_kt, g^(1/kt)):Q], absolute error <= tol."""
    if t < 1:
        raise DomainError("t must be >= 1")
    if tol <= 0:
        raise DomainError("tol must be positive")
    K = _choose_k(dec.h, t, tol, 2.0)
    mu = arith.moebius_sieve(K)
    phi = arith.totient_sieve(K)
    parts = []
    for lo in range(1, K + 1, _CHUNK):
        hi = min(lo + _CHUNK, K + 1)
        k = np.arange(lo, hi, dtype=np.int64)
        mk = mu[lo:hi].astype(np.int64)
        sel = mk != 0
        k = k[sel]
        deg = _degrees_vec(dec, t, k, phi[lo:hi][sel])
        parts.append(float((mk[sel] / deg).sum()))
    return fsum(parts)


def wagstaff_sum_S(h: int, t: int, m: int, tol: float) -> float:
    """Truncated sum_{k: m | kt} mu(k) (kt,h) / (kt phi(kt)), error <= tol.

    Kept as a decomposition cross-check for the density sum; the density
    itself is computed directly from degrees.
    """
    if min(h, t, m) < 1:
        raise DomainError("h, t, m must be >= 1")
    if tol <= 0:
        raise DomainError("tol must be positive")
    K = _choose_k(h, t, tol, 1.0)
    mu = arith.moebius_sieve(K)
    phi = arith.totient_sieve(K)
    phi_small = arith.totient_sieve(t)
    phi_t = int(phi_small[t])
    parts = []
    for lo in range(1, K + 1, _CHUNK):
        hi = min(lo + _CHUNK, K + 1)
        k = np.arange(lo, hi, dtype=np.int64)
        mk = mu[lo:hi].astype(np.int64)
        sel = mk != 0
        T = k[sel] * t
        sel2 = T % m == 0
        T = T[sel2]
        if T.size == 0:
            parts.append(0.0)
            continue
        ks = k[sel][sel2]
        d = np.gcd(ks, t)
        phiT = phi[lo:hi][sel][sel2] * ((phi_t * d) // phi_small[d])
        terms = mk[sel][sel2] * np.gcd(T, h) / (T * phiT)
        parts.append(float(terms.sum()))
    return fsum(parts)


def artin_euler_product(prime_bound: int) -> float:
    """prod_{q <= prime_bound} (1 - 1/(q(q-1))) over primes q."""
    if prime_bound < 2:
        raise DomainError("prime_bound must be >= 2")
    flags = np.ones(prime_bound + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, isqrt(prime_bound) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    q = np.flatnonzero(flags).astype(np.float64)
    return float(np.prod(1.0 - 1.0 / (q * (q - 1.0))))


def artin_constant(tol: float) -> float:
    """The Artin constant prod_q (1 - 1/(q(q-1))), absolute error <= tol.

    Truncating at B drops a factor within (1 - 1/B, 1), so the truncated
    product overshoots by less than 1/B.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    bound = max(3, ceil(1.0 / tol))
    if bound > 10**8:
        raise CapabilityError(f"tolerance {tol} too small for the product oracle")
    return artin_euler_product(bound)
