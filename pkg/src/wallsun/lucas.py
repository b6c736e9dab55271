"""Lucas sequence values and period lengths.

The sequence is U_0 = 0, U_1 = 1, U_n = a*U_{n-1} + b*U_{n-2} for
positive integers a, b.  It is periodic modulo any m >= 2 with
gcd(b, m) = 1; pi(m) denotes the period length, equivalently the order
of the companion matrix [[0, b], [1, a]] modulo m.

Period computation modulo a prime never iterates the sequence: it
strips prime factors out of a factored multiple of the matrix order
(p-1, p^2-1 or p(p-1) depending on how the quadratic x^2 - ax - b
behaves at p).  Brute pair-iteration stays available as the reference
oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from wallsun import kernels
from wallsun.arith import Factorization, factorize, is_prime, is_squarefree, jacobi, mul_order

__all__ = [
    "LucasParams",
    "lucas_params",
    "PeriodMethod",
    "PeriodResult",
    "PrimeContext",
    "prime_context",
    "delta",
    "lucas_u_mod",
    "lucas_pair_mod",
    "period",
    "period_prime",
    "period_prime_squared",
]


@dataclass(frozen=True)
class LucasParams:
    """Sequence parameters (a, b) with their derived classification data.

    ``dtilde`` is the odd-part discriminant proxy: a^2 + 4b for odd a,
    (a/2)^2 + b for even a.  ``admissible`` records the restrictions
    under which the monogenicity machinery applies: a not divisible by
    4, and both b and dtilde squarefree.
    """

    a: int
    b: int
    dtilde: int
    admissible: bool

    @property
    def disc(self) -> int:
        """Discriminant a^2 + 4b of x^2 - ax - b."""
        return self.a * self.a + 4 * self.b


def lucas_params(a: int, b: int) -> LucasParams:
    """Build LucasParams from positive integers a, b."""
    if a < 1 or b < 1:
        raise ValueError(f"a and b must be positive, got a={a}, b={b}")
    if a % 2 == 1:
        dtilde = a * a + 4 * b
    else:
        dtilde = (a // 2) ** 2 + b
    admissible = a % 4 != 0 and is_squarefree(b) and is_squarefree(dtilde)
    return LucasParams(a=a, b=b, dtilde=dtilde, admissible=admissible)


class PeriodMethod(Enum):
    BRUTE_ITERATION = "brute_iteration"
    MATRIX_ORDER = "matrix_order"
    LIFT_CHECK = "lift_check"
    DIRECT_MOD2_TABLE = "direct_mod2_table"


@dataclass(frozen=True)
class PeriodResult:
    modulus: int
    pi: int
    method: PeriodMethod


@dataclass(frozen=True)
class PrimeContext:
    """Classification of an odd prime p: delta is the Legendre symbol of
    dtilde at p, lam the multiplicative order of b^2 modulo p."""

    p: int
    delta: int
    lam: int


def delta(params: LucasParams, p: int) -> int:
    """Legendre symbol of dtilde at an odd prime p."""
    if p < 3:
        raise ValueError(f"delta is defined for odd primes only, got p={p}")
    return jacobi(params.dtilde, p)


def prime_context(params: LucasParams, p: int) -> PrimeContext:
    if not is_prime(p) or p < 3:
        raise ValueError(f"prime_context needs an odd prime, got {p}")
    if params.b % p == 0:
        raise ValueError(f"p={p} divides b={params.b}")
    lam = mul_order(params.b * params.b % p, p, order_multiple=factorize(p - 1))
    return PrimeContext(p=p, delta=delta(params, p), lam=lam)


def lucas_pair_mod(params: LucasParams, n: int, m: int) -> tuple[int, int]:
    """(U_n mod m, U_{n+1} mod m) in O(log n) doubling steps."""
    return kernels.lucas_pair(params.a, params.b, n, m)


def lucas_u_mod(params: LucasParams, n: int, m: int) -> int:
    """U_n mod m in O(log n) doubling steps."""
    return kernels.lucas_pair(params.a, params.b, n, m)[0]


def _require_coprime(params: LucasParams, m: int):
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if math.gcd(params.b, m) != 1:
        raise ValueError(
            f"period is only defined for gcd(b, m) = 1, got b={params.b}, m={m}"
        )


def period(params: LucasParams, m: int) -> PeriodResult:
    """Exact pi(m) by brute pair-iteration (the reference oracle)."""
    _require_coprime(params, m)
    pi = kernels.brute_period(params.a, params.b, m)
    return PeriodResult(modulus=m, pi=pi, method=PeriodMethod.BRUTE_ITERATION)


# pi(2) and pi(4) for a not divisible by 4, keyed by (a mod 4, b mod 4).
_PI2_TABLE = {
    (2, 1): 2, (2, 3): 2,
    (1, 1): 3, (1, 3): 3, (3, 1): 3, (3, 3): 3,
}
_PI4_TABLE = {
    (3, 3): 3,
    (2, 1): 4, (2, 3): 4,
    (1, 1): 6, (1, 3): 6, (3, 1): 6,
}


def _order_multiple(params: LucasParams, p: int) -> tuple[int, tuple[int, ...]]:
    """A factored multiple of the companion-matrix order modulo odd p.

    p - 1 when the quadratic splits at p, p^2 - 1 when it is inert,
    p(p - 1) when it ramifies (double eigenvalue times unipotent part).
    """
    d = delta(params, p)
    if d == 1:
        f = factorize(p - 1)
        return p - 1, f.primes
    if d == -1:
        qs = set(factorize(p - 1).primes) | set(factorize(p + 1).primes)
        return p * p - 1, tuple(sorted(qs))
    qs = set(factorize(p - 1).primes) | {p}
    return p * (p - 1), tuple(sorted(qs))


def period_prime(params: LucasParams, p: int) -> PeriodResult:
    """pi(p) as the order of the companion matrix in GL2(F_p)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if params.b % p == 0:
        raise ValueError(f"p={p} divides b={params.b}")
    if p == 2:
        pi = 2 if params.a % 2 == 0 else 3
        return PeriodResult(modulus=2, pi=pi, method=PeriodMethod.DIRECT_MOD2_TABLE)
    multiple, qs = _order_multiple(params, p)
    pi = kernels.companion_order(params.a, params.b, p, multiple, qs)
    return PeriodResult(modulus=p, pi=pi, method=PeriodMethod.MATRIX_ORDER)


def period_prime_squared(params: LucasParams, p: int) -> PeriodResult:
    """pi(p^2), via the lift check pi(p^2) in {pi(p), p*pi(p)} for odd p."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if params.b % p == 0:
        raise ValueError(f"p={p} divides b={params.b}")
    if p == 2:
        key = (params.a % 4, params.b % 4)
        if key in _PI4_TABLE:
            return PeriodResult(4, _PI4_TABLE[key], PeriodMethod.DIRECT_MOD2_TABLE)
        pi = kernels.brute_period(params.a, params.b, 4)
        return PeriodResult(4, pi, PeriodMethod.BRUTE_ITERATION)
    pi_p = period_prime(params, p).pi
    u, v = kernels.lucas_pair(params.a, params.b, pi_p, p * p)
    pi = pi_p if (u, v) == (0, 1) else p * pi_p
    return PeriodResult(modulus=p * p, pi=pi, method=PeriodMethod.LIFT_CHECK)
