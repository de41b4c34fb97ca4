"""Sums and moduli of the four main divisibility theorems.

All builders return exact Laurent polynomials. Parameter checks raise
:class:`ConstraintViolation` (or :class:`ParityViolation`) when a tuple lies
outside the proven range; ``conjectural=True`` lifts the bound on ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from qcong.congruence import Modulus
from qcong.cyclotomic import (
    CycFraction,
    factorial_ratio_signature,
    qbinomial_signature,
    qint_signature,
    super_catalan_signature,
)
from qcong.errors import ConstraintViolation, ParityViolation
from qcong.families.weights import MINUS, PLUS, VARIANTS, weight
from qcong.laurent import ZERO, LaurentPoly
from qcong.qkit import ballot, product_C, q_binomial, q_integer

__all__ = [
    "SumSpec",
    "require",
    "theorem1_sum",
    "theorem1_modulus",
    "theorem2_sum",
    "theorem2_modulus",
    "theorem3_sum",
    "theorem3_modulus",
    "theorem4_sum",
    "theorem4_modulus",
    "theorem62_expression",
    "theorem62_fraction",
    "eq52_bridge_check",
    "binomial_modulus",
]


def require(cond: bool, message: str, exc=ConstraintViolation) -> None:
    if not cond:
        raise exc(message)


def _check_variant(variant: str) -> None:
    require(variant in VARIANTS, f"variant must be one of {VARIANTS}, got {variant!r}", ValueError)


@dataclass(frozen=True)
class SumSpec:
    """Parameters of one thm1 / thm2 style sum.

    ``n`` is the tuple ``(n_1, ..., n_m)``. ``conjectural`` lifts ``j <= m``.
    """

    n: tuple
    j: int = 0
    r: int = 0
    variant: str = PLUS
    conjectural: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))

    @property
    def m(self) -> int:
        return len(self.n)

    def validate(self) -> None:
        _check_variant(self.variant)
        require(self.m >= 1, "need at least one n_i")
        require(all(x >= 1 for x in self.n), f"all n_i must be positive, got {self.n}")
        require(self.r >= 0, f"r must be non-negative, got {self.r}")
        require(self.j >= 0, f"j must be non-negative, got {self.j}")
        if not self.conjectural:
            require(self.j <= self.m, f"j={self.j} exceeds m={self.m}")


@lru_cache(maxsize=None)
def _odd_power(k: int, e: int) -> LaurentPoly:
    return q_integer(2 * k + 1) ** e


@lru_cache(maxsize=None)
def _kk1_power(k: int, r: int) -> LaurentPoly:
    # [2k+1] [k]^r [k+1]^r
    return q_integer(2 * k + 1) * (q_integer(k) * q_integer(k + 1)) ** r


def _weighted_sum(terms, w) -> LaurentPoly:
    total = ZERO
    for k, body in terms:
        if body:
            total = total + body * w(k)
    return total


def theorem1_sum(spec: SumSpec) -> LaurentPoly:
    """``sum_k w(k) [2k+1]^{2r+1} C(n_1..n_m; k)`` for ``0 <= k <= n_1``."""
    spec.validate()
    w = weight("eps", spec.variant, spec.j, spec.r)
    terms = ((k, product_C(spec.n, k)) for k in range(spec.n[0] + 1))
    return _weighted_sum(((k, c * _odd_power(k, 2 * spec.r + 1)) for k, c in terms if c), w)


def binomial_modulus(n: tuple) -> tuple:
    """Signature and text of ``[n_1 + n_m + 1] [n_1 + n_m, n_1]``."""
    n1, nm = n[0], n[-1]
    sig = qint_signature(n1 + nm + 1) * qbinomial_signature(n1 + nm, n1)
    return sig, f"[{n1 + nm + 1}]·[{n1 + nm}⊂{n1}]"


def theorem1_modulus(spec: SumSpec) -> Modulus:
    sig, text = binomial_modulus(spec.n)
    return Modulus.factored(sig, text)


def theorem2_sum(spec: SumSpec) -> LaurentPoly:
    """``sum_k w(k) [2k+1] [k]^r [k+1]^r C(n_1..n_m; k)``."""
    spec.validate()
    w = weight("thm2", spec.variant, spec.j, spec.r)
    terms = ((k, product_C(spec.n, k)) for k in range(spec.n[0] + 1))
    return _weighted_sum(((k, c * _kk1_power(k, spec.r)) for k, c in terms if c), w)


def theorem2_modulus(spec: SumSpec) -> Modulus:
    """The thm1 modulus times ``[n_1]^{min(1,r)}`` and a power of ``[n_m]``.

    The ``[n_m]`` exponent is ``min(1, binom(r, 2))`` for the plus sum and
    ``min(1, r)`` for the alternating one.
    """
    sig, text = binomial_modulus(spec.n)
    n1, nm, r = spec.n[0], spec.n[-1], spec.r
    e1 = min(1, r)
    em = min(1, r * (r - 1) // 2) if spec.variant == PLUS else min(1, r)
    if e1 and n1 > 1:
        sig = sig * qint_signature(n1)
    if em and nm > 1:
        sig = sig * qint_signature(nm)
    text += f"·[{n1}]^{e1}·[{nm}]^{em}"
    return Modulus.factored(sig, text)


def _ballot_or_zero(n: int, k: int) -> LaurentPoly:
    return ballot(n, k) if k <= n else ZERO


def theorem3_sum(n: int, s: int, r: int, variant: str = PLUS, j: int = 0,
                 conjectural: bool = False) -> LaurentPoly:
    """``sum_k w(k) [2k+1]^r A_{n,k}(q)^s``; requires ``r + s`` odd."""
    _check_variant(variant)
    require(n >= 1 and s >= 1, f"n and s must be positive, got n={n}, s={s}")
    require(r >= 0 and j >= 0, "r and j must be non-negative")
    require((r + s) % 2 == 1, f"r + s = {r + s} must be odd", ParityViolation)
    if not conjectural:
        require(j <= s, f"j={j} exceeds s={s}")
    w = weight("tau", variant, j, r)
    return _weighted_sum(
        ((k, _odd_power(k, r) * ballot(n, k) ** s) for k in range(n + 1)), w
    )


def theorem3_modulus(n: int) -> Modulus:
    return Modulus.factored(qbinomial_signature(2 * n, n), f"[{2 * n}⊂{n}]")


def theorem4_sum(m: int, n: int, s: int, t: int, r: int, variant: str = PLUS, j: int = 0,
                 conjectural: bool = False) -> LaurentPoly:
    """``[m+n+1] sum_k w(k) [2k+1]^r A_{m,k}^s A_{n,k}^t``; ``r+s+t`` odd."""
    _check_variant(variant)
    require(min(m, n, s, t) >= 1, "m, n, s, t must be positive")
    require(r >= 0 and j >= 0, "r and j must be non-negative")
    require((r + s + t) % 2 == 1, f"r + s + t = {r + s + t} must be odd", ParityViolation)
    if not conjectural:
        require(j <= s + t, f"j={j} exceeds s+t={s + t}")
    w = weight("tau", variant, j, r)
    body = _weighted_sum(
        (
            (k, _odd_power(k, r) * ballot(m, k) ** s * _ballot_or_zero(n, k) ** t)
            for k in range(m + 1)
        ),
        w,
    )
    return q_integer(m + n + 1) * body


def theorem4_modulus(m: int, n: int) -> Modulus:
    return Modulus.factored(
        super_catalan_signature(m, n), f"[{2 * m}]![{2 * n}]!/([{m + n}]![{m}]![{n}]!)"
    )


def theorem62_fraction(spec: SumSpec, powers: tuple | None = None) -> CycFraction:
    """Normal form with the cyclic convention replaced by ``n_{m+1} = -1``.

    Returns ``[n_1]! prod_i [n_i+n_{i+1}+1]!/[2n_i+1]!`` times the inner sum
    ``sum_k w(k) [2k+1]^{2r+1} prod_i [2n_i+1, n_i-k]^{a_i}`` as an exact
    fraction; ``powers`` gives the ``a_i`` (all 1 by default).
    """
    spec.validate()
    n = spec.n
    powers = powers or (1,) * spec.m
    require(len(powers) == spec.m and all(a >= 1 for a in powers), "bad exponent tuple")
    numer = [n[0]]
    for i, ni in enumerate(n):
        nxt = n[i + 1] if i + 1 < spec.m else -1
        numer.append(ni + nxt + 1)
    denom = [2 * ni + 1 for ni in n]
    w = weight("eps", spec.variant, spec.j, spec.r)
    inner = ZERO
    for k in range(n[0] + 1):
        body = _odd_power(k, 2 * spec.r + 1)
        for ni, a in zip(n, powers):
            body = body * q_binomial(2 * ni + 1, ni - k) ** a
        if body:
            inner = inner + body * w(k)
    return CycFraction.from_signature(inner, factorial_ratio_signature(numer, denom))


def theorem62_expression(spec: SumSpec) -> LaurentPoly:
    """The normal-form expression; raises NotDivisible if it is not Laurent."""
    return theorem62_fraction(spec).to_poly()


def eq52_bridge_check(n: int, k: int) -> bool:
    """``[2k+1] [2n+1, n-k] q^{n-k} == [2n+1] A_{n,k}(q)``."""
    lhs = (q_integer(2 * k + 1) * q_binomial(2 * n + 1, n - k)).shift(n - k)
    return lhs == q_integer(2 * n + 1) * ballot(n, k)
