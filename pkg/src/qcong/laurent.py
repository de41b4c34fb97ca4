"""Exact Laurent polynomials in one variable ``q`` over the integers.

A :class:`LaurentPoly` stores a dense coefficient tuple starting at
``min_exp``. Values are immutable and always canonical: the first and last
stored coefficients are nonzero, and the zero polynomial is ``((), 0)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from qcong import _backend
from qcong.errors import NotDivisible, ZeroBase

__all__ = [
    "LaurentPoly",
    "ZERO",
    "ONE",
    "Q",
    "add",
    "mul",
    "exact_div",
    "eval_int",
    "subst_qinv",
    "render",
    "parse",
    "monomial",
]


def _canonical(coeffs, min_exp):
    lo, hi = 0, len(coeffs)
    while lo < hi and not coeffs[lo]:
        lo += 1
    while hi > lo and not coeffs[hi - 1]:
        hi -= 1
    if lo == hi:
        return (), 0
    return tuple(coeffs[lo:hi]), min_exp + lo


class LaurentPoly:
    __slots__ = ("coeffs", "min_exp", "_hash")

    def __init__(self, coeffs=(), min_exp: int = 0):
        self.coeffs, self.min_exp = _canonical(list(coeffs), int(min_exp))
        self._hash = None

    @classmethod
    def _make(cls, coeffs, min_exp):
        # Skips validation of integer types; still canonicalises.
        obj = object.__new__(cls)
        obj.coeffs, obj.min_exp = _canonical(coeffs, min_exp)
        obj._hash = None
        return obj

    @classmethod
    def from_dict(cls, terms: dict) -> LaurentPoly:
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls._make([terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    @classmethod
    def coerce(cls, value) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls._make([value], 0)
        raise TypeError(f"cannot convert {type(value).__name__} to LaurentPoly")

    # -- structure -------------------------------------------------------
    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def terms(self):
        """Yield ``(exponent, coefficient)`` pairs for nonzero coefficients."""
        for i, c in enumerate(self.coeffs, self.min_exp):
            if c:
                yield i, c

    def to_dict(self) -> dict:
        return dict(self.terms())

    def coeff(self, e: int) -> int:
        i = e - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def is_unit(self) -> bool:
        """Units of Z[q, 1/q] are exactly the monomials with coefficient +-1."""
        return len(self.coeffs) == 1 and self.coeffs[0] in (1, -1)

    # -- comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.min_exp, self.coeffs))
        return self._hash

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        a, b = (self, other) if self.min_exp <= other.min_exp else (other, self)
        out = _backend.add_shifted(a.coeffs, b.coeffs, b.min_exp - a.min_exp)
        return LaurentPoly._make(out, a.min_exp)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._make([-c for c in self.coeffs], self.min_exp)

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._make([c * other for c in self.coeffs], self.min_exp)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ZERO
        if len(other.coeffs) == 1:
            c = other.coeffs[0]
            out = self.coeffs if c == 1 else [x * c for x in self.coeffs]
            return LaurentPoly._make(out, self.min_exp + other.min_exp)
        if len(self.coeffs) == 1:
            return other * self
        out = _backend.mul(self.coeffs, other.coeffs)
        return LaurentPoly._make(out, self.min_exp + other.min_exp)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_unit():
                return LaurentPoly._make([self.coeffs[0] ** -n], -n * self.min_exp)
            raise ValueError("negative powers exist only for units")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, t: int) -> LaurentPoly:
        """Multiply by the unit ``q**t``."""
        if not self.coeffs or not t:
            return self
        return LaurentPoly._make(self.coeffs, self.min_exp + t)

    def exact_div(self, d) -> LaurentPoly:
        return exact_div(self, d)

    def __truediv__(self, d):
        return exact_div(self, LaurentPoly.coerce(d))

    def __call__(self, q0):
        return eval_int(self, q0)

    def subst_qinv(self) -> LaurentPoly:
        return subst_qinv(self)

    # -- text ------------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPoly({render(self)!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly([1])
Q = LaurentPoly([1], 1)


def monomial(e: int, c: int = 1) -> LaurentPoly:
    return LaurentPoly._make([c], e)


def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def _remainder_poly(rem, min_exp):
    return LaurentPoly._make(rem, min_exp)


def _rational_divmod(a, b):
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    rem = [Fraction(x) for x in a]
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = rem[i + len(b) - 1] / lead
        quot[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    return quot, rem[: len(b) - 1]


def exact_div(a: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return the Laurent polynomial ``x`` with ``x * d == a``.

    Monomial factors are units and are stripped from both operands before an
    integer long division. Raises :class:`NotDivisible` with the remainder
    when no exact quotient with integer coefficients exists.
    """
    if not d.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a.coeffs:
        return ZERO
    shift = a.min_exp - d.min_exp
    A, D = a.coeffs, d.coeffs
    if len(D) == 1:
        c = D[0]
        if all(x % c == 0 for x in A):
            return LaurentPoly._make([x // c for x in A], shift)
        raise NotDivisible(LaurentPoly._make([x % c for x in A], a.min_exp))
    if len(A) < len(D):
        raise NotDivisible(a)
    if D[-1] in (1, -1):
        quot, rem = _backend.divmod_monic(A, D)
        if any(rem):
            raise NotDivisible(_remainder_poly(rem, a.min_exp))
        return LaurentPoly._make(quot, shift)
    if D[0] in (1, -1):
        # Divide from the low end: reversal is multiplicative on exact products.
        quot, rem = _backend.divmod_monic(A[::-1], D[::-1])
        if any(rem):
            raise NotDivisible(_remainder_poly(rem[::-1], a.min_exp + len(A) - len(rem)))
        return LaurentPoly._make(quot[::-1], shift)
    quot, rem = _rational_divmod(A, D)
    if any(rem) or any(c.denominator != 1 for c in quot):
        raise NotDivisible(
            LaurentPoly._make([int(x) for x in rem], a.min_exp)
            if all(x.denominator == 1 for x in rem)
            else None,
            "no quotient with integer coefficients",
        )
    return LaurentPoly._make([int(c) for c in quot], shift)


def eval_int(a: LaurentPoly, q0):
    """Evaluate ``a`` at a rational point; integral results come back as int."""
    if not isinstance(q0, Rational):
        raise TypeError("evaluation point must be an int or Fraction")
    if q0 == 0:
        if a.coeffs and a.min_exp < 0:
            raise ZeroBase("negative powers of q at q = 0")
        return a.coeff(0)
    acc = 0
    for c in reversed(a.coeffs):
        acc = acc * q0 + c
    if a.min_exp >= 0:
        value = acc * q0**a.min_exp
    else:
        value = Fraction(acc) / Fraction(q0) ** (-a.min_exp)
    value = Fraction(value)
    return int(value) if value.denominator == 1 else value


def subst_qinv(a: LaurentPoly) -> LaurentPoly:
    """Return ``a(1/q)``."""
    if not a.coeffs:
        return a
    return LaurentPoly._make(a.coeffs[::-1], -a.max_exp)


def _render_term(e, c, first):
    mag = abs(c)
    if e == 0:
        body = str(mag)
    else:
        mono = "q" if e == 1 else f"q^{e}"
        body = mono if mag == 1 else f"{mag}*{mono}"
    if first:
        return f"-{body}" if c < 0 else body
    return f" - {body}" if c < 0 else f" + {body}"


def render(a: LaurentPoly) -> str:
    """Render as ``c*q^e + ...`` in ascending exponent order."""
    if not a.coeffs:
        return "0"
    return "".join(_render_term(e, c, i == 0) for i, (e, c) in enumerate(a.terms()))


_TERM = re.compile(r"([+-])?(\d+)?(?:(\*)?(q)(?:\^\(?([+-]?\d+)\)?)?)?")


def parse(text: str) -> LaurentPoly:
    """Inverse of :func:`render`; also accepts unsorted and repeated terms."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial text")
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, digits, star, var, exp = m.groups()
        if m.end() == pos or (digits is None and var is None):
            raise ValueError(f"cannot parse polynomial at {s[pos:]!r}")
        if pos > 0 and sign is None:
            raise ValueError(f"missing operator before {s[pos:]!r}")
        if star and digits is None:
            raise ValueError(f"dangling '*' in {text!r}")
        c = int(digits) if digits is not None else 1
        if sign == "-":
            c = -c
        e = 0 if var is None else (int(exp) if exp is not None else 1)
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
    return LaurentPoly.from_dict(terms)
