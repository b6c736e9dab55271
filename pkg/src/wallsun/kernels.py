"""Hot modular-arithmetic kernels with a numba fast path.

The sequence-pair power, brute-force period and order-stripping loops
dominate the runtime of prime scans.  Each has two implementations:

* a pure-Python reference on unbounded integers (always correct, any
  modulus), and
* a numba ``@njit`` twin on 64-bit words, valid for moduli below 2^40
  (products are split 20/44 so intermediates never overflow).

``WALLSUN_KERNEL`` selects the backend: ``auto`` (default) uses numba
whenever it is importable and the operands fit, ``python`` forces the
reference path, ``numba`` requires the fast path and raises if numba is
unavailable.  Both paths are exercised against each other in the tests
and the benchmark script.
"""

from __future__ import annotations

import os

__all__ = [
    "backend",
    "lucas_pair",
    "brute_period",
    "companion_order",
    "NUMBA_MODULUS_LIMIT",
]

# Largest modulus the word-sized kernels accept (20-bit split mulmod).
NUMBA_MODULUS_LIMIT = 1 << 40

_MODE = os.environ.get("WALLSUN_KERNEL", "auto").strip().lower()
if _MODE not in ("auto", "numba", "python"):
    raise RuntimeError(
        f"WALLSUN_KERNEL must be auto, numba or python, got {_MODE!r}"
    )

_numba_kernels = None
if _MODE in ("auto", "numba"):
    try:
        from wallsun import _kernels_numba as _numba_kernels
    except ImportError:
        if _MODE == "numba":
            raise RuntimeError(
                "WALLSUN_KERNEL=numba but the numba kernels failed to import"
            )
        _numba_kernels = None


def backend() -> str:
    """Name of the active backend: 'numba' or 'python'."""
    return "python" if _numba_kernels is None else "numba"


def _use_numba(m: int, n: int = 0) -> bool:
    return (
        _numba_kernels is not None
        and m < NUMBA_MODULUS_LIMIT
        and n < (1 << 63)
    )


def lucas_pair_py(a: int, b: int, n: int, m: int) -> tuple[int, int]:
    """(U_n, U_{n+1}) mod m by binary doubling; reference path.

    Doubling identities for U_k with U_k = a*U_{k-1} + b*U_{k-2}:
    U_{2k} = U_k*(2*U_{k+1} - a*U_k) and U_{2k+1} = U_{k+1}^2 + b*U_k^2.
    """
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    a %= m
    b %= m
    u, v = 0, 1 % m
    for bit in bin(n)[2:] if n else "":
        du = u * (2 * v - a * u) % m
        dv = (v * v + b * u * u) % m
        if bit == "1":
            u, v = dv, (a * dv + b * du) % m
        else:
            u, v = du, dv
    return u, v


def lucas_pair(a: int, b: int, n: int, m: int) -> tuple[int, int]:
    """(U_n mod m, U_{n+1} mod m), fastest available path."""
    if _use_numba(m, n):
        return _numba_kernels.lucas_pair_u64(a % m, b % m, n, m)
    return lucas_pair_py(a, b, n, m)


def brute_period_py(a: int, b: int, m: int, limit: int | None = None) -> int:
    """Pair-iteration period: least n >= 1 with (U_n, U_{n+1}) = (0, 1) mod m."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    a %= m
    b %= m
    if limit is None:
        limit = m * m + 2
    u, v = 0, 1 % m
    for n in range(1, limit + 1):
        u, v = v, (a * v + b * u) % m
        if u == 0 and v == 1 % m:
            return n
    raise RuntimeError(f"no period found modulo {m} within {limit} steps")


def brute_period(a: int, b: int, m: int, limit: int | None = None) -> int:
    """Brute-force period, fastest available path."""
    if _use_numba(m) and (limit is None or limit < (1 << 62)):
        cap = m * m + 2 if limit is None else limit
        n = _numba_kernels.brute_period_u64(a % m, b % m, m, cap)
        if n < 0:
            raise RuntimeError(f"no period found modulo {m} within {cap} steps")
        return int(n)
    return brute_period_py(a, b, m, limit)


def companion_order(
    a: int, b: int, m: int, multiple: int, multiple_primes: tuple[int, ...]
) -> int:
    """Order of the companion matrix [[0,b],[1,a]] modulo m.

    ``multiple`` must be a multiple of the order; ``multiple_primes`` its
    distinct prime divisors.  The order is found by stripping primes out
    of the multiple, one matrix power per trial.
    """
    one = 1 % m
    if lucas_pair(a, b, multiple, m) != (0, one):
        raise ValueError(
            f"{multiple} is not a multiple of the matrix order modulo {m}"
        )
    if _use_numba(m, multiple):
        import numpy as np

        qs = np.array(multiple_primes, dtype=np.int64)
        return int(
            _numba_kernels.companion_order_u64(a % m, b % m, m, multiple, qs)
        )
    order = multiple
    for q in multiple_primes:
        while order % q == 0:
            cand = order // q
            if lucas_pair(a, b, cand, m) == (0, one):
                order = cand
            else:
                break
    return order
