"""Summand weights ``sign(k) * q**exponent(k)``.

Every family uses one of two shapes: ``q^{j(k^2+k) - c k}`` (plus) or
``(-1)^k q^{binom(k,2) + j(k^2+k) - c k}`` (minus), where the linear rate
``c`` depends on the family and on ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass

from qcong.laurent import monomial

PLUS, MINUS = "plus", "minus"
VARIANTS = (PLUS, MINUS)

# family shape -> (rate for plus, rate for minus) as functions of r
_RATES = {
    "eps": (lambda r: 2 * r + 1, lambda r: 2 * r),  # thm1, most corollaries
    "thm2": (lambda r: r + 1, lambda r: r),  # thm2, P_r / Q_r, S_r / T_r
    "tau": (lambda r: r, lambda r: r - 1),  # thm3, thm4, C63a/b
    "eta": (lambda r: 0, lambda r: -1),  # conjectures
}


@dataclass(frozen=True)
class WeightVariant:
    kind: str
    j: int
    rate: int

    def __post_init__(self):
        if self.kind not in VARIANTS:
            raise ValueError(f"weight kind must be 'plus' or 'minus', got {self.kind!r}")

    def exponent(self, k: int) -> int:
        e = self.j * (k * k + k) - self.rate * k
        if self.kind == MINUS:
            e += k * (k - 1) // 2
        return e

    def sign(self, k: int) -> int:
        return -1 if self.kind == MINUS and k % 2 else 1

    def __call__(self, k: int):
        return monomial(self.exponent(k), self.sign(k))


def weight(shape: str, variant: str, j: int, r: int) -> WeightVariant:
    plus, minus = _RATES[shape]
    rate = plus(r) if variant == PLUS else minus(r)
    return WeightVariant(variant, j, rate)
