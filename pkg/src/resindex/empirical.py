"""Exact counting of residual indices over primes.

For a base g and every counted prime p <= x (odd, ord_p(g) = 0) the engine
computes the residual index r_g(p) = (p-1) / ord(g mod p) once and folds it
into all requested per-t tallies in a single streamed pass:

    N_{g,t}(x)   primes with r_g(p) = t
    R_{g,t}(x)   primes with t | r_g(p)
    pi(x;t,1)    counted primes p = 1 mod t
    P_t(x)       counted primes p = 1 mod t with (disc/p) = 1
    L, Q         first/second-order character sums via Ramanujan sums
    sum r(g,t;p), naive and weighted phi-sums (floats, plus exact rationals
    on request)

Primes are processed in fixed-size shards whose results are merged in shard
order, so output is identical for any worker-thread count; no per-prime
records are retained beyond the shard being processed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import fsum, gcd, isqrt

import numpy as np

from . import arith, heuristic
from .decompose import GDecomposition, HeuristicParams, Rational, decompose_g, derive_params, excluded_primes
from .errors import CapabilityError, DomainError, LemmaViolation

SHARD_PRIMES = 8192


@dataclass(frozen=True)
class ResidualIndexOutcome:
    """Result of reducing g mod one odd prime."""

    p: int
    status: str  # "counted" or "excluded"
    index: int | None = None


def _g_mod_p(g: Rational, p: int) -> int:
    a = g.numerator % p
    if g.denominator != 1:
        a = a * pow(g.denominator, -1, p) % p
    return a


def residual_index(g: Rational, p: int, table: arith.PrimeTable) -> ResidualIndexOutcome:
    """Index of the subgroup generated by g mod p inside (Z/pZ)*.

    Excluded (p = 2 or p divides numerator or denominator of g) primes get
    status 'excluded'; otherwise index * ord(g mod p) = p - 1.
    """
    if p > table.limit:
        raise CapabilityError(f"p={p} exceeds table limit {table.limit}")
    if not arith.is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p == 2 or (abs(g.numerator) * g.denominator) % p == 0:
        return ResidualIndexOutcome(p=p, status="excluded")
    fac = arith.factorize(p - 1, table)
    order = arith.multiplicative_order(_g_mod_p(g, p), p, fac)
    return ResidualIndexOutcome(p=p, status="counted", index=(p - 1) // order)


# ---------------------------------------------------------------------------
# the sweep engine


@dataclass
class Sweep:
    """All per-t tallies of one pass over the counted primes p <= x."""

    g: Rational
    x: int
    ts: tuple[int, ...]
    dec: GDecomposition
    params: dict[int, HeuristicParams]
    counted: int = 0
    N: dict[int, int] = field(default_factory=dict)
    R: dict[int, int] = field(default_factory=dict)
    pi: dict[int, int] = field(default_factory=dict)
    pi2: dict[int, int] = field(default_factory=dict)
    split: dict[int, int] = field(default_factory=dict)
    split2: dict[int, int] = field(default_factory=dict)
    sum_r: dict[int, int] = field(default_factory=dict)
    L_num: dict[int, int] = field(default_factory=dict)
    Q_num: dict[int, int] = field(default_factory=dict)
    naive: dict[int, float] = field(default_factory=dict)
    quad: dict[int, float] = field(default_factory=dict)
    naive_exact: dict[int, Fraction] | None = None
    quad_exact: dict[int, Fraction] | None = None
    pi_all: dict[int, int] | None = None
    split_all: dict[int, int] | None = None
    R_all: dict[int, int] | None = None

    def L(self, t: int) -> Fraction:
        return Fraction(self.L_num[t], t)

    def Q(self, t: int) -> Fraction:
        return Fraction(self.Q_num[t], t)

    def M(self, t: int) -> Fraction:
        return heuristic.m_from_counts(
            self.dec, self.params[t], self.pi[t], self.pi2[t], self.split[t], self.split2[t]
        )

    def H(self, t: int) -> Fraction:
        return Fraction(self.sum_r[t], self.params[t].t_h)


@dataclass(frozen=True)
class _SweepPlan:
    num: int
    den: int
    dec: GDecomposition
    ts: tuple[int, ...]
    params: dict[int, HeuristicParams]
    l_divs: dict[int, list[int]]
    q_divs: dict[int, list[int]]
    cd_tables: dict[int, np.ndarray]
    phi: np.ndarray
    spf: np.ndarray | None
    trial_primes: list[int] | None  # primes <= sqrt(x), used when spf is absent
    exact: bool
    divisor_tallies: bool


@dataclass
class _ShardTally:
    counted: int
    per_t: dict[int, tuple]
    naive_parts: dict[int, float]
    quad_parts: dict[int, float]
    exact_parts: dict[int, tuple] | None
    pi_all: dict[int, int] | None
    split_all: dict[int, int] | None
    R_all: dict[int, int] | None


def _factor_by_spf(spf: np.ndarray, n: int) -> list[tuple[int, int]]:
    fac = []
    m = n
    while m > 1:
        q = int(spf[m])
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        fac.append((q, e))
    return fac


def _factor_by_trial(primes: list[int], n: int) -> list[tuple[int, int]]:
    fac = []
    m = n
    for q in primes:
        if q * q > m:
            break
        if m % q == 0:
            e = 0
            while m % q == 0:
                m //= q
                e += 1
            fac.append((q, e))
    if m > 1:
        fac.append((m, 1))
    return fac


def _indexes_for_shard(plan: _SweepPlan, ps: list[int]):
    """Residual index, (disc/p) and optionally the factorization of p-1."""
    spf = plan.spf
    num, den, disc = plan.num, plan.den, plan.dec.disc
    rs = []
    legs = []
    facs = [] if plan.divisor_tallies else None
    for p in ps:
        n = p - 1
        if spf is not None:
            fac = _factor_by_spf(spf, n)
        else:
            fac = _factor_by_trial(plan.trial_primes, n)
        a = num % p
        if den != 1:
            a = a * pow(den, -1, p) % p
        order = n
        for q, _ in fac:
            while order % q == 0 and pow(a, order // q, p) == 1:
                order //= q
        rs.append(n // order)
        legs.append(arith.jacobi(disc, p))
        if facs is not None:
            facs.append(fac)
    return rs, legs, facs


def _divisors_of(fac: list[tuple[int, int]]) -> list[int]:
    out = [1]
    for q, e in fac:
        out = [d * q**k for d in out for k in range(e + 1)]
    return out


def _tally_shard(plan: _SweepPlan, ps_arr: np.ndarray) -> _ShardTally:
    ps = ps_arr.tolist()
    rs, legs, facs = _indexes_for_shard(plan, ps)
    pm1 = ps_arr - 1
    r = np.asarray(rs, dtype=np.int64)
    leg = np.asarray(legs, dtype=np.int64)
    phi = plan.phi

    per_t: dict[int, tuple] = {}
    naive_parts: dict[int, float] = {}
    quad_parts: dict[int, float] = {}
    exact_parts: dict[int, tuple] | None = {} if plan.exact else None

    for t in plan.ts:
        pa = plan.params[t]
        mask = pm1 % t == 0
        pm1_t = pm1[mask]
        r_t = r[mask]
        leg_t = leg[mask]
        pi_t = int(mask.sum())
        m2 = pm1_t % (2 * t) == 0
        pi2_t = int(m2.sum())
        split_t = int((leg_t == 1).sum())
        split2_t = int((leg_t[m2] == 1).sum())
        n_t = int((r_t == t).sum())
        big_r = int((r_t % t == 0).sum())
        w = heuristic.weights_w_vec(plan.dec, pa, pm1_t, leg_t)
        rr = heuristic.weights_r_vec(plan.dec, pa, pm1_t, leg_t)
        sum_r = int(rr.sum())
        phi_q = phi[pm1_t // t]
        inv = 1.0 / pm1_t.astype(np.float64)
        naive_parts[t] = float((phi_q * inv).sum())
        quad_parts[t] = pa.gcd_ht * float((w * phi_q * inv).sum())
        l_num = 0
        for d in plan.l_divs[t]:
            l_num += int(plan.cd_tables[d][np.gcd(r_t, d)].sum())
        q_num = 0
        for d in plan.q_divs[t]:
            q_num += int(plan.cd_tables[d][np.gcd(r_t, d)].sum())
        per_t[t] = (pi_t, pi2_t, split_t, split2_t, n_t, big_r, sum_r, l_num, q_num)
        if exact_parts is not None:
            nacc = arith.ExactSum()
            qacc = arith.ExactSum()
            pm1_l = pm1_t.tolist()
            phi_l = phi_q.tolist()
            for i, wv in enumerate(w.tolist()):
                nacc.add(phi_l[i], pm1_l[i])
                if wv:
                    qacc.add(wv * phi_l[i], pm1_l[i])
            exact_parts[t] = (nacc.num, nacc.den, pa.gcd_ht * qacc.num, qacc.den)

    pi_all = split_all = r_all = None
    if plan.divisor_tallies:
        pi_all = {}
        split_all = {}
        r_all = {}
        for i, fac in enumerate(facs):
            pos = legs[i] == 1
            for d in _divisors_of(fac):
                pi_all[d] = pi_all.get(d, 0) + 1
                if pos:
                    split_all[d] = split_all.get(d, 0) + 1
            for d in _divisors_of(list(arith.factor_int(rs[i]).factors)):
                r_all[d] = r_all.get(d, 0) + 1
    return _ShardTally(
        counted=len(ps),
        per_t=per_t,
        naive_parts=naive_parts,
        quad_parts=quad_parts,
        exact_parts=exact_parts,
        pi_all=pi_all,
        split_all=split_all,
        R_all=r_all,
    )


def sweep(
    g: Rational,
    table: arith.PrimeTable,
    x: int,
    ts: tuple[int, ...] | list[int],
    *,
    threads: int = 1,
    exact: bool = False,
    divisor_tallies: bool = False,
) -> Sweep:
    """One streamed pass over the counted primes p <= x for all t in ts.

    Results are independent of ``threads``: the prime range is cut into
    fixed shards and shard tallies are merged in range order.
    """
    if x < 2:
        raise DomainError(f"x must be >= 2, got {x}")
    if x > table.limit:
        raise CapabilityError(f"x={x} exceeds table limit {table.limit}")
    if threads < 1:
        raise DomainError(f"threads must be >= 1, got {threads}")
    ts = tuple(dict.fromkeys(int(t) for t in ts))
    if any(t < 1 for t in ts):
        raise DomainError("all t must be >= 1")
    dec = decompose_g(g)
    params = {t: derive_params(dec, t) for t in ts}

    l_divs: dict[int, list[int]] = {}
    q_divs: dict[int, list[int]] = {}
    cd_tables: dict[int, np.ndarray] = {}
    for t in ts:
        ght = params[t].gcd_ht
        g2t = gcd(2 * dec.h, t)
        l_divs[t] = [d for d in range(1, ght + 1) if ght % d == 0]
        q_divs[t] = [d for d in range(1, g2t + 1) if g2t % d == 0 and dec.h % d != 0]
        for d in l_divs[t] + q_divs[t]:
            if d not in cd_tables:
                cd_tables[d] = arith.ramanujan_table(d)

    trial_primes = None
    if table.spf is None:
        trial_primes = table.primes_upto(isqrt(x)).tolist()
    plan = _SweepPlan(
        num=g.numerator,
        den=g.denominator,
        dec=dec,
        ts=ts,
        params=params,
        l_divs=l_divs,
        q_divs=q_divs,
        cd_tables=cd_tables,
        phi=arith.totient_sieve(x),
        spf=table.spf,
        trial_primes=trial_primes,
        exact=exact,
        divisor_tallies=divisor_tallies,
    )

    ps = table.primes_upto(x)
    ps = ps[ps > 2]
    bad = [p for p in sorted(excluded_primes(g)) if p != 2 and p <= x]
    if bad:
        ps = ps[~np.isin(ps, np.asarray(bad, dtype=np.int64))]
    shards = [ps[i : i + SHARD_PRIMES] for i in range(0, len(ps), SHARD_PRIMES)]

    if threads > 1 and len(shards) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tallies = list(pool.map(lambda s: _tally_shard(plan, s), shards))
    else:
        tallies = [_tally_shard(plan, s) for s in shards]

    out = Sweep(g=g, x=x, ts=ts, dec=dec, params=params)
    for t in ts:
        out.N[t] = out.R[t] = out.pi[t] = out.pi2[t] = 0
        out.split[t] = out.split2[t] = out.sum_r[t] = 0
        out.L_num[t] = out.Q_num[t] = 0
    if exact:
        out.naive_exact = {}
        out.quad_exact = {}
    if divisor_tallies:
        out.pi_all = {}
        out.split_all = {}
        out.R_all = {}

    exact_accs = {t: (arith.ExactSum(), arith.ExactSum()) for t in ts} if exact else None
    for tally in tallies:
        out.counted += tally.counted
        for t in ts:
            pi_t, pi2_t, split_t, split2_t, n_t, big_r, sum_r, l_num, q_num = tally.per_t[t]
            out.pi[t] += pi_t
            out.pi2[t] += pi2_t
            out.split[t] += split_t
            out.split2[t] += split2_t
            out.N[t] += n_t
            out.R[t] += big_r
            out.sum_r[t] += sum_r
            out.L_num[t] += l_num
            out.Q_num[t] += q_num
            if exact_accs is not None:
                nn, nd, qn, qd = tally.exact_parts[t]
                exact_accs[t][0].add(nn, nd)
                exact_accs[t][1].add(qn, qd)
        if divisor_tallies:
            for src, dst in (
                (tally.pi_all, out.pi_all),
                (tally.split_all, out.split_all),
                (tally.R_all, out.R_all),
            ):
                for k, v in src.items():
                    dst[k] = dst.get(k, 0) + v
    for t in ts:
        out.naive[t] = fsum(tally.naive_parts[t] for tally in tallies)
        out.quad[t] = fsum(tally.quad_parts[t] for tally in tallies)
        if exact_accs is not None:
            out.naive_exact[t] = exact_accs[t][0].value()
            out.quad_exact[t] = exact_accs[t][1].value()
    return out


# ---------------------------------------------------------------------------
# the individual counters (thin views over the sweep)


def count_exact_index(g: Rational, t: int, x: int, table: arith.PrimeTable) -> int:
    """N_{g,t}(x): counted primes p <= x with residual index exactly t."""
    return sweep(g, table, x, (t,)).N[t]


def count_divisible_index(g: Rational, t: int, x: int, table: arith.PrimeTable) -> int:
    """R_{g,t}(x): counted primes p <= x with t | r_g(p).

    Also re-derives every membership from the algebraic splitting test
    (p = 1 mod t and g^((p-1)/t) = 1 mod p) and aborts on any disagreement.
    """
    result = sweep(g, table, x, (t,)).R[t]
    verify_split_criterion(g, (t,), x, table)
    return result


def count_progression(x: int, t: int, table: arith.PrimeTable, g: Rational | None = None) -> int:
    """pi(x;t,1): odd primes p <= x with p = 1 mod t (counted ones when g given)."""
    if t < 1:
        raise DomainError("t must be >= 1")
    ps = table.primes_upto(x)
    ps = ps[ps > 2]
    if g is not None:
        bad = [p for p in sorted(excluded_primes(g)) if p != 2 and p <= x]
        if bad:
            ps = ps[~np.isin(ps, np.asarray(bad, dtype=np.int64))]
    return int(((ps - 1) % t == 0).sum())


def count_split_quadratic(
    x: int, t: int, disc: int, table: arith.PrimeTable, g: Rational | None = None
) -> int:
    """Primes p <= x with p = 1 mod t and (disc/p) = 1 (counted ones when g given)."""
    if t < 1:
        raise DomainError("t must be >= 1")
    ps = table.primes_upto(x)
    ps = ps[ps > 2]
    if g is not None:
        bad = [p for p in sorted(excluded_primes(g)) if p != 2 and p <= x]
        if bad:
            ps = ps[~np.isin(ps, np.asarray(bad, dtype=np.int64))]
    ps = ps[(ps - 1) % t == 0]
    return sum(1 for p in ps.tolist() if arith.jacobi(disc, p) == 1)


def char_sums_LQ(g: Rational, t: int, x: int, table: arith.PrimeTable) -> tuple[Fraction, Fraction]:
    """(L_{g,t}(x), Q_{g,t}(x)): exact rationals with denominator t.

    L sums c_d(r_g(p)) over d | (h,t); Q over d | (2h,t) with d not
    dividing h; both over counted p <= x with p = 1 mod t, divided by t.
    """
    sw = sweep(g, table, x, (t,))
    return sw.L(t), sw.Q(t)


def verify_split_criterion(g: Rational, ts, x: int, table: arith.PrimeTable) -> int:
    """Assert t | r_g(p) <=> (p = 1 mod t and g^((p-1)/t) = 1 mod p).

    Checks every counted prime p <= x against every t in ts; returns the
    number of (p, t) pairs checked, raises LemmaViolation on any mismatch.
    """
    bad = excluded_primes(g)
    checks = 0
    for p in table.primes_upto(x).tolist():
        if p == 2 or p in bad:
            continue
        n = p - 1
        fac = arith.factorize(n, table)
        a = _g_mod_p(g, p)
        order = arith.multiplicative_order(a, p, fac)
        r = n // order
        for t in ts:
            divides = r % t == 0
            algebraic = n % t == 0 and pow(a, n // t, p) == 1
            if divides != algebraic:
                raise LemmaViolation(
                    f"splitting criterion failed: g={g} p={p} t={t}: "
                    f"t|r is {divides}, algebraic test is {algebraic}"
                )
            checks += 1
    return checks


@dataclass(frozen=True)
class CountReport:
    """One row of the empirical-versus-predicted comparison."""

    g: Rational
    t: int
    x: int
    N: int
    R: int
    pi_t: int
    split_t: int
    naive: float
    quadratic: float
    M: float
    A: float
    Li: float
