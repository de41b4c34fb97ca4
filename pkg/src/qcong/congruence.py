"""Deciding ``A == 0 (mod D)`` in the Laurent ring Z[q, 1/q].

Two independent routes are available. ``expanded`` performs one long
division by the multiplied-out modulus; ``factorwise`` divides by one
cyclotomic factor at a time, largest index first. ``both`` runs the two and
insists that they agree.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass, field

from qcong.cyclotomic import (
    CycSignature,
    _phi_degree,
    cyclotomic,
    expand_signature,
)
from qcong.errors import NegativeExponent, NotDivisible
from qcong.laurent import ONE, LaurentPoly, exact_div, monomial

__all__ = [
    "Modulus",
    "Verdict",
    "StrategyMismatch",
    "STRATEGIES",
    "divides",
    "quotient",
    "fingerprint",
    "factor_cyclotomic",
]

STRATEGIES = ("expanded", "factorwise", "both")


class StrategyMismatch(AssertionError):
    """The two division strategies disagreed; this is always a bug."""


def factor_cyclotomic(p: LaurentPoly):
    """Split ``p`` into ``unit * prod Phi_d**e * cofactor`` by trial division.

    Returns ``(signature, cofactor)`` where the cofactor has no cyclotomic
    factor and positive leading coefficient, or is ``1``.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    unit_exp = p.min_exp
    rest = p.shift(-unit_exp)
    exps = {}
    d = 1
    # Phi_d has degree phi(d) >= sqrt(d/2), so the search is finite.
    while 2 * (rest.max_exp) ** 2 >= d and rest.max_exp > 0:
        if _phi_degree(d) <= rest.max_exp:
            phi = cyclotomic(d)
            while True:
                try:
                    rest = exact_div(rest, phi)
                except NotDivisible:
                    break
                exps[d] = exps.get(d, 0) + 1
        d += 1
    sign = 1
    if rest.coeffs[-1] < 0:
        rest, sign = -rest, -1
    return CycSignature.from_dict(exps, unit_exp, sign), rest


@dataclass(frozen=True)
class Modulus:
    """A divisor given in expanded or factored form, plus a description."""

    signature: CycSignature | None = None
    poly: LaurentPoly | None = None
    description: str = ""
    _expanded: list = field(default_factory=list, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if (self.signature is None) == (self.poly is None):
            raise ValueError("give exactly one of signature= or poly=")
        if self.signature is not None and not all(e > 0 for _, e in self.signature.items):
            raise NegativeExponent(f"modulus {self.signature} is not a polynomial")
        if self.poly is not None and not self.poly:
            raise ZeroDivisionError("modulus must be nonzero")

    @classmethod
    def factored(cls, signature: CycSignature, description: str = "") -> Modulus:
        return cls(signature=signature, description=description or signature.render())

    @classmethod
    def expanded(cls, poly: LaurentPoly, description: str = "") -> Modulus:
        return cls(poly=poly, description=description or str(poly))

    @property
    def is_factored(self) -> bool:
        return self.signature is not None

    def expand(self) -> LaurentPoly:
        if self.poly is not None:
            return self.poly
        if not self._expanded:
            self._expanded.append(expand_signature(self.signature))
        return self._expanded[0]

    def factor_plan(self):
        """``(signature, cofactor)`` used by the factorwise strategy."""
        if self.signature is not None:
            return self.signature, ONE
        return factor_cyclotomic(self.poly)

    def as_expanded(self) -> Modulus:
        return Modulus.expanded(self.expand(), self.description)

    def __str__(self):
        return self.description


@dataclass
class Verdict:
    holds: bool
    strategy: str
    elapsed: float
    quotient_span: tuple | None = None
    quotient_head: tuple = ()
    quotient_tail: tuple = ()
    quotient_hash: str | None = None
    remainder_low_term: tuple | None = None
    failed_factor: str | None = None
    modulus: str = ""
    quotient: LaurentPoly | None = field(default=None, repr=False, compare=False)

    def fingerprint(self) -> dict:
        return {
            "span": list(self.quotient_span) if self.quotient_span else None,
            "head": [str(c) for c in self.quotient_head],
            "tail": [str(c) for c in self.quotient_tail],
            "hash": self.quotient_hash,
        }

    def same_outcome(self, other: Verdict) -> bool:
        return (
            self.holds == other.holds
            and self.quotient_span == other.quotient_span
            and self.quotient_hash == other.quotient_hash
        )


def fingerprint(p: LaurentPoly) -> dict:
    """Degree span, three coefficients at each end and a 64-bit content hash."""
    digest = hashlib.blake2b(
        repr((p.min_exp, p.coeffs)).encode(), digest_size=8
    ).hexdigest()
    span = (p.min_exp, p.max_exp) if p else None
    return {"span": span, "head": p.coeffs[:3], "tail": p.coeffs[-3:], "hash": digest}


def _low_term(p: LaurentPoly):
    for e, c in p.terms():
        return (e, c)
    return None


def _expanded_route(mod: Modulus, a: LaurentPoly):
    try:
        return exact_div(a, mod.expand()), None, None
    except NotDivisible as exc:
        return None, exc.remainder, "expanded modulus"


def _factorwise_route(mod: Modulus, a: LaurentPoly):
    sig, cofactor = mod.factor_plan()
    cur = a
    for d, e in sorted(sig.items, reverse=True):
        phi = cyclotomic(d)
        for i in range(e):
            try:
                cur = exact_div(cur, phi)
            except NotDivisible as exc:
                return None, exc.remainder, f"Φ{d} (copy {i + 1} of {e})"
    if cofactor != ONE:
        try:
            cur = exact_div(cur, cofactor)
        except NotDivisible as exc:
            return None, exc.remainder, f"cofactor {cofactor}"
    if sig.unit_exp or sig.unit_sign != 1:
        cur = cur * monomial(-sig.unit_exp, sig.unit_sign)
    return cur, None, None


_ROUTES = {"expanded": _expanded_route, "factorwise": _factorwise_route}


def _verdict(strategy, started, quot, remainder, failed, mod):
    elapsed = time.perf_counter() - started
    if quot is None:
        low = _low_term(remainder) if remainder is not None else None
        return Verdict(
            holds=False,
            strategy=strategy,
            elapsed=elapsed,
            remainder_low_term=low,
            failed_factor=failed,
            modulus=mod.description,
        )
    fp = fingerprint(quot)
    return Verdict(
        holds=True,
        strategy=strategy,
        elapsed=elapsed,
        quotient_span=fp["span"],
        quotient_head=fp["head"],
        quotient_tail=fp["tail"],
        quotient_hash=fp["hash"],
        modulus=mod.description,
        quotient=quot,
    )


def divides(
    d: Modulus, a: LaurentPoly, strategy: str = "both", verify: bool = False
) -> Verdict:
    """Decide whether ``a / d`` is a Laurent polynomial.

    A negative answer is a ``holds=False`` verdict, never an exception.
    With ``verify`` every positive verdict is re-multiplied and compared.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    started = time.perf_counter()
    if strategy == "both":
        v1 = _verdict("expanded", started, *_ROUTES["expanded"](d, a), d)
        v2 = _verdict("factorwise", started, *_ROUTES["factorwise"](d, a), d)
        if not v1.same_outcome(v2):
            raise StrategyMismatch(
                f"expanded and factorwise strategies disagree modulo {d.description}"
            )
        verdict = v2 if not v2.holds else v1
        verdict.strategy = "both"
        verdict.elapsed = time.perf_counter() - started
    else:
        verdict = _verdict(strategy, started, *_ROUTES[strategy](d, a), d)
    if verify and verdict.holds and verdict.quotient * d.expand() != a:
        raise AssertionError(f"quotient does not reproduce the dividend modulo {d}")
    return verdict


def quotient(d: Modulus, a: LaurentPoly) -> LaurentPoly:
    """The exact Laurent quotient ``a / d``; raises NotDivisible otherwise."""
    return exact_div(a, d.expand())
