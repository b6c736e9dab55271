"""numba twins of the hot kernels; word-sized, moduli below 2^40.

All arithmetic is signed 64-bit.  Products are computed with a 20/44
bit split so every intermediate stays below 2^61; nothing here may be
called with a modulus at or above 2^40.  The pure-Python reference
implementations live in ``wallsun.kernels``.
"""

import numpy as np
from numba import njit

_NJIT = dict(cache=True, nogil=True)


@njit(**_NJIT)
def _mulmod(x, y, m):
    # x, y in [0, m), m < 2^40
    return ((((x >> 20) * y) % m << 20) + (x & 0xFFFFF) * y) % m


@njit(**_NJIT)
def lucas_pair_u64(a, b, n, m):
    """(U_n, U_{n+1}) mod m by binary doubling."""
    u = 0
    v = 1 % m
    if n == 0:
        return u, v
    h = 62
    while (n >> h) & 1 == 0:
        h -= 1
    for i in range(h, -1, -1):
        t = (2 * v + m - _mulmod(a, u, m)) % m
        du = _mulmod(u, t, m)
        dv = (_mulmod(v, v, m) + _mulmod(b, _mulmod(u, u, m), m)) % m
        if (n >> i) & 1:
            u = dv
            v = (_mulmod(a, dv, m) + _mulmod(b, du, m)) % m
        else:
            u = du
            v = dv
    return u, v


@njit(**_NJIT)
def brute_period_u64(a, b, m, limit):
    """Least n in [1, limit] with (U_n, U_{n+1}) = (0, 1) mod m, else -1."""
    one = 1 % m
    u = 0
    v = one
    for n in range(1, limit + 1):
        u, v = v, (_mulmod(a, v, m) + _mulmod(b, u, m)) % m
        if u == 0 and v == one:
            return n
    return -1


@njit(**_NJIT)
def companion_order_u64(a, b, m, multiple, qs):
    """Strip primes qs out of a known multiple of the matrix order mod m."""
    order = multiple
    one = 1 % m
    for j in range(qs.size):
        q = qs[j]
        while order % q == 0:
            u, v = lucas_pair_u64(a, b, order // q, m)
            if u == 0 and v == one:
                order //= q
            else:
                break
    return order


@njit(**_NJIT)
def _jacobi(x, n):
    # n odd >= 1, 0 <= x < n
    a = x
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            r = n & 7
            if r == 3 or r == 5:
                result = -result
        a, n = n, a
        if (a & 3) == 3 and (n & 3) == 3:
            result = -result
        a %= n
    if n == 1:
        return result
    return 0


@njit(**_NJIT)
def _push_prime_factors(n, trial, qs, nq):
    # append the distinct prime factors of n (n < 2^21) to qs[:nq]
    for j in range(trial.size):
        t = trial[j]
        if t * t > n:
            break
        if n % t == 0:
            dup = False
            for k in range(nq):
                if qs[k] == t:
                    dup = True
                    break
            if not dup:
                qs[nq] = t
                nq += 1
            while n % t == 0:
                n //= t
    if n > 1:
        dup = False
        for k in range(nq):
            if qs[k] == n:
                dup = True
                break
        if not dup:
            qs[nq] = n
            nq += 1
    return nq


@njit(**_NJIT)
def wss_scan(a0, b0, dtilde0, primes, trial, pi_p, pi_p2, wss, usub):
    """Period pair and Wall-Sun-Sun verdict for each odd prime in ``primes``.

    Inputs must satisfy: p odd prime, p not dividing b0, p < 2^20, and
    a0, b0, dtilde0 nonnegative and below 2^62.  Results land in the
    four output arrays, index-aligned with ``primes``.
    """
    qs = np.empty(32, np.int64)
    for i in range(primes.size):
        p = primes[i]
        p2 = p * p
        a = a0 % p2
        b = b0 % p2
        delta = _jacobi(dtilde0 % p, p)
        nq = 0
        if delta == 1:
            m0 = p - 1
            nq = _push_prime_factors(p - 1, trial, qs, nq)
        elif delta == -1:
            m0 = p2 - 1
            nq = _push_prime_factors(p - 1, trial, qs, nq)
            nq = _push_prime_factors(p + 1, trial, qs, nq)
        else:
            m0 = p * (p - 1)
            qs[0] = p
            nq = _push_prime_factors(p - 1, trial, qs, 1)
        order = m0
        ap = a % p
        bp = b % p
        for j in range(nq):
            q = qs[j]
            while order % q == 0:
                u, v = lucas_pair_u64(ap, bp, order // q, p)
                if u == 0 and v == 1:
                    order //= q
                else:
                    break
        pi_p[i] = order
        u, v = lucas_pair_u64(a, b, order, p2)
        usub[i] = u == 0
        if u == 0 and v == 1:
            pi_p2[i] = order
            wss[i] = True
        else:
            pi_p2[i] = p * order
            wss[i] = False
