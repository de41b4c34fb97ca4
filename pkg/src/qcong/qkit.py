"""Constructors for the q-analogues that the sums are assembled from.

Everything returned here is a :class:`~qcong.laurent.LaurentPoly`. Results
for integer arguments are memoised per process; the caches are append-only
and a racing duplicate insert stores an identical value.
"""

from __future__ import annotations

from functools import lru_cache

from qcong.errors import NegativeArgument, OutOfRange
from qcong.laurent import ONE, ZERO, LaurentPoly, exact_div

__all__ = [
    "q_integer",
    "q_factorial",
    "q_binomial",
    "q_binomial_product",
    "q_binomial_pascal",
    "q_pochhammer",
    "qq_factorial",
    "ballot",
    "super_catalan",
    "super_catalan_quotient",
    "product_C",
    "cache_info",
    "clear_caches",
]


@lru_cache(maxsize=None)
def q_integer(n: int) -> LaurentPoly:
    """``[n] = 1 + q + ... + q**(n-1)``; ``[0] = 0``."""
    if n < 0:
        raise NegativeArgument(f"q-integer of negative argument {n}")
    return LaurentPoly._make([1] * n, 0)


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise NegativeArgument(f"q-factorial of negative argument {n}")
    if n == 0:
        return ONE
    return q_factorial(n - 1) * q_integer(n)


def _one_minus_q_power(e: int) -> LaurentPoly:
    # 1 - q**e as a Laurent polynomial (e may be negative).
    if e == 0:
        return ZERO
    return LaurentPoly.from_dict({0: 1, e: -1})


@lru_cache(maxsize=None)
def q_binomial_product(m: int, k: int) -> LaurentPoly:
    """Gaussian binomial through ``prod (1 - q**(m-i+1)) / (1 - q**i)``.

    Numerator and denominator are accumulated separately and divided once.
    Any integer ``m`` is accepted; ``k < 0`` gives 0.
    """
    if k < 0:
        return ZERO
    num = ONE
    den = ONE
    for i in range(1, k + 1):
        num = num * _one_minus_q_power(m - i + 1)
        den = den * _one_minus_q_power(i)
        if not num:
            return ZERO
    return exact_div(num, den)


@lru_cache(maxsize=None)
def q_binomial_pascal(m: int, k: int) -> LaurentPoly:
    """Gaussian binomial from ``[m, k] = [m-1, k-1] + q**k [m-1, k]``.

    Only defined through the recurrence for ``m >= 0``.
    """
    if k < 0 or m < 0 or k > m:
        return ZERO
    if k == 0 or k == m:
        return ONE
    return q_binomial_pascal(m - 1, k - 1) + q_binomial_pascal(m - 1, k).shift(k)


@lru_cache(maxsize=None)
def q_binomial(m: int, k: int) -> LaurentPoly:
    """Gaussian binomial coefficient, zero when ``k < 0`` or ``k > m >= 0``.

    For ``0 <= k <= m`` the coefficients are read off the q-factorial ratio;
    negative ``m`` falls through to the product formula.
    """
    if k < 0:
        return ZERO
    if m >= 0:
        if k > m:
            return ZERO
        if k == 0 or k == m:
            return ONE
        if 2 * k > m:
            return q_binomial(m, m - k)
        return exact_div(_falling(m, k), q_factorial(k))
    return q_binomial_product(m, k)


@lru_cache(maxsize=None)
def _falling(m: int, k: int) -> LaurentPoly:
    # [m][m-1]...[m-k+1]
    if k == 0:
        return ONE
    return _falling(m, k - 1) * q_integer(m - k + 1)


@lru_cache(maxsize=None)
def q_pochhammer(a: int, s: int) -> LaurentPoly:
    """``(q**a; q)_s = (1 - q**a)(1 - q**(a+1))...(1 - q**(a+s-1))``."""
    if s < 0:
        raise NegativeArgument(f"Pochhammer length {s} is negative")
    if s == 0:
        return ONE
    if -a in range(s):
        return ZERO
    return q_pochhammer(a, s - 1) * _one_minus_q_power(a + s - 1)


def qq_factorial(n: int) -> LaurentPoly:
    """``(q; q)_n``."""
    return q_pochhammer(1, n)


@lru_cache(maxsize=None)
def _ballot_difference(n: int, k: int) -> LaurentPoly:
    return q_binomial(2 * n, n - k) - q_binomial(2 * n, n - k - 1)


@lru_cache(maxsize=None)
def _ballot_quotient(n: int, k: int) -> LaurentPoly:
    num = (q_integer(2 * k + 1) * q_binomial(2 * n + 1, n - k)).shift(n - k)
    return exact_div(num, q_integer(2 * n + 1))


def ballot(n: int, k: int, form: str = "difference") -> LaurentPoly:
    """q-ballot number ``A_{n,k}(q)`` for ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        raise OutOfRange(f"ballot number needs 0 <= k <= n, got n={n}, k={k}")
    if form == "difference":
        return _ballot_difference(n, k)
    if form == "quotient":
        return _ballot_quotient(n, k)
    raise ValueError(f"unknown ballot form {form!r}")


@lru_cache(maxsize=None)
def super_catalan_quotient(m: int, n: int) -> LaurentPoly:
    """``[2m]! [2n]! / ([m+n]! [m]! [n]!)`` by direct exact division."""
    if m < 0 or n < 0:
        raise NegativeArgument("super-Catalan arguments must be non-negative")
    num = q_factorial(2 * m) * q_factorial(2 * n)
    den = q_factorial(m + n) * q_factorial(m) * q_factorial(n)
    return exact_div(num, den)


@lru_cache(maxsize=None)
def super_catalan(m: int, n: int) -> LaurentPoly:
    """q-super-Catalan number, expanded from its cyclotomic factorisation."""
    if m < 0 or n < 0:
        raise NegativeArgument("super-Catalan arguments must be non-negative")
    from qcong.cyclotomic import expand_signature, super_catalan_signature

    return expand_signature(super_catalan_signature(m, n))


def product_C(a_list, k: int) -> LaurentPoly:
    """``prod_i [a_i + a_{i+1} + 1, a_i - k]`` with cyclic ``a_{l+1} = a_1``."""
    a = tuple(a_list)
    if not a:
        raise ValueError("product_C needs at least one argument")
    return _product_C(a, k)


@lru_cache(maxsize=None)
def _product_C(a: tuple, k: int) -> LaurentPoly:
    out = ONE
    for i, ai in enumerate(a):
        nxt = a[(i + 1) % len(a)]
        factor = q_binomial(ai + nxt + 1, ai - k)
        if not factor:
            return ZERO
        out = out * factor
    return out


_CACHED = (
    q_integer,
    q_factorial,
    q_binomial,
    q_binomial_product,
    q_binomial_pascal,
    _falling,
    q_pochhammer,
    _ballot_difference,
    _ballot_quotient,
    super_catalan,
    super_catalan_quotient,
    _product_C,
)


def cache_info() -> dict:
    return {f.__name__: f.cache_info() for f in _CACHED}


def clear_caches() -> None:
    for f in _CACHED:
        f.cache_clear()
