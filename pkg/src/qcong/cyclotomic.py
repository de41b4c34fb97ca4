"""Cyclotomic polynomials and factored forms of q-factorial products.

A :class:`CycSignature` stands for ``sign * q**unit_exp * prod Phi_d**e_d``.
Products of q-integers, q-factorials and Gaussian binomials all have exact
signatures computed by floor sums, so moduli can be handled factor by factor
and ratios can be represented before they are known to be polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from qcong.errors import NegativeExponent, NotDivisible, OutOfRange
from qcong.laurent import ONE, LaurentPoly, exact_div, monomial

__all__ = [
    "CycSignature",
    "CycFraction",
    "cyclotomic",
    "divisors",
    "qint_signature",
    "qq_signature",
    "qbinomial_signature",
    "factorial_ratio_signature",
    "super_catalan_signature",
    "signature_gcd",
    "expand_signature",
    "lemma61_check",
    "cyclotomic_multiplicity",
]


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> LaurentPoly:
    """``Phi_d(q)`` as ``(q**d - 1) / prod_{e | d, e < d} Phi_e``."""
    if d < 1:
        raise OutOfRange(f"cyclotomic index must be positive, got {d}")
    acc = LaurentPoly.from_dict({0: -1, d: 1})
    for e in divisors(d)[:-1]:
        acc = exact_div(acc, cyclotomic(e))
    return acc


@dataclass(frozen=True)
class CycSignature:
    """``unit_sign * q**unit_exp * prod_d Phi_d**exponents[d]``."""

    items: tuple = ()
    unit_exp: int = 0
    unit_sign: int = 1
    _map: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        clean = tuple(sorted((int(d), int(e)) for d, e in self.items if e))
        if any(d < 1 for d, _ in clean):
            raise OutOfRange("cyclotomic indices must be positive")
        if len({d for d, _ in clean}) != len(clean):
            raise ValueError("duplicate cyclotomic index in signature")
        if self.unit_sign not in (1, -1):
            raise ValueError("unit sign must be +1 or -1")
        object.__setattr__(self, "items", clean)
        object.__setattr__(self, "_map", dict(clean))

    @classmethod
    def from_dict(cls, exponents: dict, unit_exp: int = 0, unit_sign: int = 1):
        return cls(tuple(exponents.items()), unit_exp, unit_sign)

    @property
    def exponents(self) -> dict:
        return dict(self._map)

    def exponent(self, d: int) -> int:
        return self._map.get(d, 0)

    def is_empty(self) -> bool:
        """True when no cyclotomic factor is present (the unit is ignored)."""
        return not self.items

    def is_polynomial(self) -> bool:
        return all(e > 0 for _, e in self.items)

    def degree(self) -> int:
        return sum(e * _phi_degree(d) for d, e in self.items)

    def __mul__(self, other: CycSignature) -> CycSignature:
        merged = dict(self._map)
        for d, e in other.items:
            merged[d] = merged.get(d, 0) + e
        return CycSignature.from_dict(
            merged, self.unit_exp + other.unit_exp, self.unit_sign * other.unit_sign
        )

    def inverse(self) -> CycSignature:
        return CycSignature(tuple((d, -e) for d, e in self.items), -self.unit_exp, self.unit_sign)

    def __truediv__(self, other: CycSignature) -> CycSignature:
        return self * other.inverse()

    def __pow__(self, k: int) -> CycSignature:
        return CycSignature(
            tuple((d, e * k) for d, e in self.items), self.unit_exp * k, self.unit_sign**k
        )

    def positive_part(self) -> CycSignature:
        return CycSignature(tuple((d, e) for d, e in self.items if e > 0))

    def negative_part(self) -> CycSignature:
        """The denominator, returned with positive exponents."""
        return CycSignature(tuple((d, -e) for d, e in self.items if e < 0))

    def without_unit(self) -> CycSignature:
        return CycSignature(self.items)

    def render(self) -> str:
        parts = []
        for d, e in self.items:
            parts.append(f"Φ{d}" if e == 1 else f"Φ{d}^{e}")
        if self.unit_exp:
            parts.insert(0, "q" if self.unit_exp == 1 else f"q^{self.unit_exp}")
        text = " · ".join(parts) if parts else "1"
        return f"-{text}" if self.unit_sign < 0 else text

    __str__ = render


EMPTY = CycSignature()


@lru_cache(maxsize=None)
def _phi_degree(d: int) -> int:
    # Euler's totient.
    result, n, p = d, d, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            result -= result // p
        p += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def qint_signature(n: int) -> CycSignature:
    """Signature of ``[n]`` for ``n >= 1``."""
    if n < 1:
        raise OutOfRange(f"[n] has no signature for n={n}")
    return CycSignature(tuple((d, 1) for d in divisors(n) if d > 1))


@lru_cache(maxsize=None)
def qq_signature(n: int) -> CycSignature:
    """Signature of ``(q; q)_n = prod (1 - q**i)``, including ``Phi_1``."""
    if n < 0:
        raise OutOfRange(f"(q;q)_n needs n >= 0, got {n}")
    return CycSignature(tuple((d, n // d) for d in range(1, n + 1)), 0, -1 if n % 2 else 1)


def _binomial_qualifies(m: int, k: int, d: int) -> bool:
    return k // d + (m - k) // d < m // d


@lru_cache(maxsize=None)
def qbinomial_signature(m: int, k: int) -> CycSignature:
    """Factorisation of ``[m, k]`` by the floor criterion."""
    if m < 0 or k < 0 or k > m:
        raise OutOfRange(f"binomial signature needs 0 <= k <= m, got m={m}, k={k}")
    # d = 1 can never qualify; a failure here means the criterion is misread.
    assert not _binomial_qualifies(m, k, 1)
    return CycSignature(tuple((d, 1) for d in range(2, m + 1) if _binomial_qualifies(m, k, d)))


def factorial_ratio_signature(numer, denom) -> CycSignature:
    """Signature of ``prod [n_i]! / prod [m_j]!``.

    Each ``[n]!`` is ``(q-1)**(-n) prod_d Phi_d**floor(n/d)``; the ``Phi_1``
    exponent therefore combines the floor sum at ``d = 1`` with the power of
    ``(q - 1)`` in front.
    """
    numer, denom = list(numer), list(denom)
    if any(x < 0 for x in numer + denom):
        raise OutOfRange("factorial arguments must be non-negative")
    top = max(numer + denom, default=0)
    out = {}
    for d in range(1, top + 1):
        e = sum(x // d for x in numer) - sum(x // d for x in denom)
        if d == 1:
            e -= sum(numer) - sum(denom)
        if e:
            out[d] = e
    return CycSignature.from_dict(out)


@lru_cache(maxsize=None)
def super_catalan_signature(m: int, n: int) -> CycSignature:
    return factorial_ratio_signature([2 * m, 2 * n], [m + n, m, n])


def _check_nonnegative(*sigs):
    for s in sigs:
        if any(e < 0 for _, e in s.items):
            raise NegativeExponent(f"signature {s} has a negative exponent")


def signature_gcd(a: CycSignature, b: CycSignature) -> CycSignature:
    """Pointwise minimum of exponents; units are ignored."""
    _check_nonnegative(a, b)
    common = {d: min(e, b.exponent(d)) for d, e in a.items}
    return CycSignature.from_dict(common)


@lru_cache(maxsize=None)
def _phi_power(d: int, e: int) -> LaurentPoly:
    if e == 1:
        return cyclotomic(d)
    half = _phi_power(d, e // 2)
    sq = half * half
    return sq * cyclotomic(d) if e % 2 else sq


def expand_signature(s: CycSignature) -> LaurentPoly:
    """Multiply out a signature with non-negative exponents."""
    _check_nonnegative(s)
    factors = [_phi_power(d, e) for d, e in s.items]
    # Pairwise products keep operand sizes balanced.
    while len(factors) > 1:
        factors.sort(key=lambda p: len(p.coeffs))
        a, b = factors.pop(0), factors.pop(0)
        factors.append(a * b)
    out = factors[0] if factors else ONE
    if s.unit_exp or s.unit_sign != 1:
        out = out * monomial(s.unit_exp, s.unit_sign)
    return out


def lemma61_check(m: int, n: int) -> bool:
    """Coprimality of the q-super-Catalan number and ``[2m+1]``."""
    if m < 1 or n < 1:
        raise OutOfRange("lemma61_check needs m, n >= 1")
    return signature_gcd(super_catalan_signature(m, n), qint_signature(2 * m + 1)).is_empty()


def cyclotomic_multiplicity(p: LaurentPoly, d: int) -> int:
    """Exponent of ``Phi_d`` in a nonzero Laurent polynomial, by trial division."""
    if not p:
        raise ValueError("the zero polynomial has unbounded multiplicity")
    phi = cyclotomic(d)
    count = 0
    while True:
        try:
            p = exact_div(p, phi)
        except NotDivisible:
            return count
        count += 1


class CycFraction:
    """Exact value ``numer / prod Phi_d**den_d``.

    Used for the rational-valued expressions (prefactors built from q-shifted
    factorials) whose identities are then checked by cross-multiplication.
    """

    __slots__ = ("numer", "den")

    def __init__(self, numer: LaurentPoly, den: CycSignature = EMPTY):
        _check_nonnegative(den)
        self.numer = numer
        self.den = den.without_unit()
        if den.unit_exp or den.unit_sign != 1:
            self.numer = numer * monomial(-den.unit_exp, den.unit_sign)

    @classmethod
    def from_signature(cls, poly: LaurentPoly, sig: CycSignature) -> CycFraction:
        """``poly * sig`` where ``sig`` may carry negative exponents."""
        pos = CycSignature(sig.positive_part().items, sig.unit_exp, sig.unit_sign)
        return cls(poly * expand_signature(pos), sig.negative_part())

    def _lift(self, den: CycSignature) -> LaurentPoly:
        # Numerator over the larger denominator ``den``.
        extra = den / self.den
        return self.numer * expand_signature(extra)

    @staticmethod
    def _common(a: CycSignature, b: CycSignature) -> CycSignature:
        merged = dict(a.items)
        for d, e in b.items:
            merged[d] = max(merged.get(d, 0), e)
        return CycSignature.from_dict(merged)

    def __add__(self, other: CycFraction) -> CycFraction:
        den = self._common(self.den, other.den)
        return CycFraction(self._lift(den) + other._lift(den), den)

    def __sub__(self, other: CycFraction) -> CycFraction:
        return self + CycFraction(-other.numer, other.den)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            return CycFraction(self.numer * other, self.den)
        return CycFraction(self.numer * other.numer, self.den * other.den)

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            other = CycFraction(other)
        if not isinstance(other, CycFraction):
            return NotImplemented
        den = self._common(self.den, other.den)
        return self._lift(den) == other._lift(den)

    __hash__ = None

    def subst_qinv(self) -> CycFraction:
        # Phi_d(1/q) = q**(-phi(d)) Phi_d(q) for d > 1, and -q**-1 Phi_1(q).
        shift = 0
        sign = 1
        for d, e in self.den.items:
            shift -= e * _phi_degree(d)
            if d == 1 and e % 2:
                sign = -sign
        return CycFraction(self.numer.subst_qinv() * monomial(-shift, sign), self.den)

    def to_poly(self) -> LaurentPoly:
        """The Laurent polynomial value; raises NotDivisible otherwise."""
        if self.den.is_empty():
            return self.numer
        return exact_div(self.numer, expand_signature(self.den))

    def is_laurent(self) -> bool:
        try:
            self.to_poly()
        except NotDivisible:
            return False
        return True

    def __repr__(self):
        return f"CycFraction({self.numer!s} / [{self.den}])"
