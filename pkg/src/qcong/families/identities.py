"""Exact identities used along the way to the main theorems.

Each check computes both sides independently and compares them
structurally. Identities whose sides are rational in ``q`` are compared as
:class:`~qcong.cyclotomic.CycFraction` values, which amounts to
cross-multiplication.
"""

from __future__ import annotations

from functools import lru_cache

from qcong.congruence import Modulus
from qcong.cyclotomic import CycFraction, qbinomial_signature, qint_signature, qq_signature
from qcong.errors import ConstraintViolation
from qcong.families.theorems import require
from qcong.families.weights import MINUS, PLUS, weight
from qcong.laurent import ONE, ZERO, LaurentPoly, exact_div, monomial
from qcong.qkit import (
    q_binomial,
    q_binomial_product,
    q_integer,
    q_pochhammer,
    qq_factorial,
)

__all__ = [
    "lemma21_sides",
    "lemma21_check",
    "remark_x_sides",
    "remark_x_identity_check",
    "remark_x_is_degenerate",
    "theorem22_sum",
    "theorem22_modulus",
    "pq_value",
    "pq_closed_form",
    "st_value",
    "st_recurrence_check",
    "qinv_symmetry_check",
    "qinv_shift",
    "qinv_exact_exponent",
    "classical_identity_check",
    "CLASSICAL_KINDS",
]


def _binom2(k: int) -> int:
    return k * (k - 1) // 2


# ---------------------------------------------------------------------------
# The four closed evaluations and their r-generalisation
# ---------------------------------------------------------------------------


def _lemma_weight(variant: int, k: int, r: int = 0) -> LaurentPoly:
    # The four evaluation weights; r > 0 adds q^{-2rk}.
    if variant == 1:
        return monomial(-(2 * r + 1) * k)
    if variant == 2:
        return monomial(k * k - 2 * r * k)
    if variant == 3:
        return monomial(_binom2(k) - 2 * r * k, (-1) ** k)
    if variant == 4:
        e2 = 3 * k * k + k
        assert e2 % 2 == 0
        return monomial(e2 // 2 - 2 * r * k, (-1) ** k)
    raise ValueError(f"variant must be 1..4, got {variant}")


@lru_cache(maxsize=None)
def _lemma_body(n: int, k: int, s: int) -> LaurentPoly:
    # [2n+1, n-k] (q^{-k}; q)_s (q^{k+1}; q)_s
    return q_binomial(2 * n + 1, n - k) * q_pochhammer(-k, s) * q_pochhammer(k + 1, s)


def _lemma_lhs(n: int, s: int, variant: int, r: int) -> LaurentPoly:
    odd_power = 2 * r + 1
    total = ZERO
    for k in range(n + 1):
        body = _lemma_body(n, k, s)
        if body:
            total = total + _lemma_weight(variant, k, r) * q_integer(2 * k + 1) ** odd_power * body
    return total


def lemma21_sides(n: int, s: int, variant: int, corrected: bool = False):
    """LHS and printed RHS; ``corrected`` repairs the alternating case at ``s = n``."""
    require(n >= 1 and s >= 0, f"need n >= 1 and s >= 0, got n={n}, s={s}")
    lhs = _lemma_lhs(n, s, variant, 0)
    core = q_integer(2 * n + 1) * q_binomial(2 * n, n) * q_binomial(n, s)
    qs = qq_factorial(s)
    sign = (-1) ** s
    if variant == 1:
        rhs = core * qs * qs * monomial(_binom2(s) - s * n - n, sign)
    elif variant == 2:
        rhs = core * qs * qs * monomial(_binom2(s), sign)
    elif variant == 3:
        rhs = ZERO
        if corrected and s == n:
            rhs = core * qq_factorial(n) ** 2 * monomial(-n)
    elif variant == 4:
        rhs = core * qq_factorial(n) * qs * monomial(s * s)
    else:
        raise ValueError(f"variant must be 1..4, got {variant}")
    return lhs, rhs


def lemma21_check(n: int, s: int, variant: int, corrected: bool = False):
    """Return ``(lhs, rhs, equal)`` for one of the four evaluations.

    The printed alternating evaluation claims 0 for every ``s``; at ``s = n``
    the sum is really ``q^{-n} [2n+1] [2n, n] (q;q)_n^2``. Pass
    ``corrected=True`` to compare against that value instead.
    """
    lhs, rhs = lemma21_sides(n, s, variant, corrected)
    return lhs, rhs, lhs == rhs


def theorem22_sum(n: int, r: int, s: int, variant: int) -> LaurentPoly:
    require(n >= 1 and r >= 0 and s >= 0, "need n >= 1 and r, s >= 0")
    return _lemma_lhs(n, s, variant, r)


def theorem22_modulus(n: int) -> Modulus:
    sig = qint_signature(2 * n + 1) * qbinomial_signature(2 * n, n)
    return Modulus.factored(sig, f"[{2 * n + 1}]·[{2 * n}⊂{n}]")


# ---------------------------------------------------------------------------
# The x-deformation of the alternating evaluation, at x = q^a
# ---------------------------------------------------------------------------


def remark_x_is_degenerate(n: int, a: int) -> bool:
    """True when ``(x; q)_{n+1}`` vanishes at ``x = q^a``."""
    return not q_pochhammer(a, n + 1)


def remark_x_sides(n: int, s: int, a: int):
    """Both sides after multiplying through by ``(x; q)_{n+1}``."""
    require(n >= 1 and s >= n, f"need n >= 1 and s >= n, got n={n}, s={s}")
    lhs = ZERO
    for k in range(n + 1):
        body = q_binomial(2 * n + 1, n - k) * q_pochhammer(a - k, s) * q_pochhammer(a + k + 1, s)
        if body:
            lhs = lhs + monomial(_binom2(k), (-1) ** k) * q_integer(2 * k + 1) * body
    lhs = lhs * q_pochhammer(a, n + 1)
    rhs = (
        monomial(a * n - n)
        * q_integer(2 * n + 1)
        * q_binomial(2 * n, n)
        * q_binomial(s, n)
        * q_pochhammer(a, s - n)
        * q_pochhammer(a, s + 1)
        * qq_factorial(n) ** 2
    )
    return lhs, rhs


def remark_x_identity_check(n: int, s: int, a: int) -> bool:
    lhs, rhs = remark_x_sides(n, s, a)
    return lhs == rhs


# ---------------------------------------------------------------------------
# P_r(n, j) and Q_r(n, j)
# ---------------------------------------------------------------------------


def _pq_variant(which: str) -> str:
    if which == "P":
        return PLUS
    if which == "Q":
        return MINUS
    raise ValueError(f"which must be 'P' or 'Q', got {which!r}")


@lru_cache(maxsize=None)
def _pq_direct(which: str, n: int, j: int, r: int) -> LaurentPoly:
    w = weight("thm2", _pq_variant(which), j, r)
    total = ZERO
    for k in range(n + 1):
        if r and k == 0:
            continue
        body = q_integer(2 * k + 1) * (q_integer(k) * q_integer(k + 1)) ** r
        total = total + w(k) * body * q_binomial(2 * n + 1, n - k)
    return total


@lru_cache(maxsize=None)
def _pq_recurrence(which: str, n: int, j: int, r: int) -> LaurentPoly:
    if r == 0 or n == 0:
        return _pq_direct(which, n, j, r)
    a = q_integer(n) * q_integer(n + 1) * _pq_recurrence(which, n, j, r - 1)
    b = q_integer(2 * n) * q_integer(2 * n + 1) * _pq_recurrence(which, n - 1, j, r - 1)
    return (a - b).shift(-n)


def pq_value(which: str, n: int, j: int, r: int, method: str = "direct") -> LaurentPoly:
    require(n >= 0 and r >= 0, "need n, r >= 0")
    require(j in (0, 1), f"j must be 0 or 1, got {j}")
    if method == "direct":
        return _pq_direct(which, n, j, r)
    if method == "recurrence":
        return _pq_recurrence(which, n, j, r)
    raise ValueError(f"method must be 'direct' or 'recurrence', got {method!r}")


def pq_closed_form(which: str, r: int, j: int, n: int):
    """The tabulated closed form, or ``None`` when none is listed for ``n``."""
    require(n >= 1, "closed forms are stated for n >= 1")
    base = q_integer(2 * n + 1) * q_binomial(2 * n, n)
    qn = q_integer(n)
    two = q_integer(2)
    table = {
        ("P", 0, 0): lambda: base.shift(-n),
        ("P", 0, 1): lambda: base,
        ("Q", 0, 0): lambda: ZERO,
        ("Q", 0, 1): lambda: base * qq_factorial(n),
        ("P", 1, 0): lambda: (qn * base).shift(-2 * n),
        ("P", 2, 0): lambda: (two * qn * qn * base).shift(-3 * n),
        ("P", 1, 1): lambda: qn * base,
        ("P", 2, 1): lambda: (two * qn * qn * base).shift(-1),
        ("Q", 1, 0): lambda: -(two * q_integer(3)).shift(-1) if n == 1 else ZERO,
        ("Q", 1, 1): lambda: -(base * qn * qn * qq_factorial(n - 1)).shift(1),
    }
    form = table.get((which, r, j))
    return form() if form else None


# ---------------------------------------------------------------------------
# S_r / T_r: recurrences in m and the q -> 1/q symmetry
# ---------------------------------------------------------------------------


def _st_variant(which: str) -> str:
    if which == "S":
        return PLUS
    if which == "T":
        return MINUS
    raise ValueError(f"which must be 'S' or 'T', got {which!r}")


def _C(a: tuple, k: int) -> LaurentPoly:
    # Cyclic product; arguments may include zeros here.
    out = ONE
    for i, ai in enumerate(a):
        factor = q_binomial(ai + a[(i + 1) % len(a)] + 1, ai - k)
        if not factor:
            return ZERO
        out = out * factor
    return out


@lru_cache(maxsize=None)
def _st_inner(which: str, n: tuple, j: int, r: int) -> LaurentPoly:
    w = weight("thm2", _st_variant(which), j, r)
    total = ZERO
    for k in range(n[0] + 1):
        if r and k == 0:
            continue
        c = _C(n, k)
        if c:
            body = q_integer(2 * k + 1) * (q_integer(k) * q_integer(k + 1)) ** r
            total = total + w(k) * body * c
    return total


def st_value(which: str, n, j: int, r: int) -> CycFraction:
    """``S_r`` or ``T_r`` including the prefactor ``(q;q)_{n1}(q;q)_{nm}/(q;q)_{n1+nm+1}``."""
    n = tuple(n)
    pref = qq_signature(n[0]) * qq_signature(n[-1]) / qq_signature(n[0] + n[-1] + 1)
    return CycFraction.from_signature(_st_inner(which, n, j, r), pref)


def st_recurrence_check(which: str, n, j: int, r: int, form: str = "standard") -> bool:
    """Check the reduction from ``m`` to ``m - 1`` arguments.

    ``standard`` uses the kernel ``q^{l^2+l}`` and lowers ``j`` by one;
    ``remark`` uses ``q^{(n_1-l)(n_2-l)}`` and keeps ``j``.
    """
    n = tuple(n)
    require(len(n) >= 2, "the recurrence needs m >= 2")
    require(all(x >= 0 for x in n), "arguments must be non-negative")
    if form == "standard":
        kernel = lambda l: monomial(l * l + l)  # noqa: E731
        jj = j - 1
    elif form == "remark":
        kernel = lambda l: monomial((n[0] - l) * (n[1] - l))  # noqa: E731
        jj = j
    else:
        raise ValueError(f"form must be 'standard' or 'remark', got {form!r}")
    lhs = st_value(which, n, j, r)
    rhs = CycFraction(ZERO)
    for l in range(n[0] + 1):
        if len(n) == 2:
            coeff = q_binomial(n[0], l) * q_binomial(n[1], l)
            rest = (l,)
        else:
            coeff = q_binomial(n[0], l) * q_binomial(n[1] + n[2] + 1, n[1] - l)
            rest = (l,) + n[2:]
        if coeff:
            rhs = rhs + st_value(which, rest, jj, r) * (kernel(l) * coeff)
    return lhs == rhs


def qinv_shift(n, r: int) -> int:
    """``n_2 + ... + n_{m-1} + n_1 n_2 + ... + n_{m-1} n_m - r``."""
    n = tuple(n)
    return sum(n[1:-1]) + sum(a * b for a, b in zip(n, n[1:])) - r


def qinv_exact_exponent(n, r: int) -> int:
    """Exponent ``e`` with ``X(n; 0, q) == -q^e X(n; j*, 1/q)``.

    Equals ``qinv_shift(n, r) - 1`` whenever ``m >= 2``.
    """
    n = tuple(n)
    cyc = sum(a * b for a, b in zip(n, n[1:] + n[:1]))
    return cyc + sum(n) - r - (n[0] + 1) * (n[-1] + 1)


def qinv_symmetry_check(which: str, n, r: int, exact: bool = False) -> bool:
    """Compare ``X(n; 0, q)`` with ``X(n; j*, 1/q)`` times a unit.

    ``j* = m`` for S and ``m - 1`` for T. By default the unit is the printed
    ``q^{qinv_shift}``; ``exact=True`` uses ``-q^{qinv_exact_exponent}``.
    Prefactors are carried as cyclotomic fractions, so both sides are exact.
    """
    n = tuple(n)
    require(len(n) >= 1 and all(x >= 1 for x in n), "need positive n_i")
    top = len(n) if which == "S" else len(n) - 1
    lhs = st_value(which, n, 0, r)
    if exact:
        unit = monomial(qinv_exact_exponent(n, r), -1)
    else:
        unit = monomial(qinv_shift(n, r))
    return lhs == st_value(which, n, top, r).subst_qinv() * unit


# ---------------------------------------------------------------------------
# Classical identities
# ---------------------------------------------------------------------------

CLASSICAL_KINDS = ("qbt", "chu", "chu_remark", "dixon_limit", "dixon_full")


def _qbt(N: int, a: int):
    lhs = q_pochhammer(a, N)
    rhs = ZERO
    for k in range(N + 1):
        rhs = rhs + monomial(_binom2(k) + a * k, (-1) ** k) * q_binomial(N, k)
    return lhs, rhs


def _chu(n1: int, n2: int, k: int, remark: bool = False):
    # Summand rewritten as q^{...} [n1+k+1, s+2k+1] [n2-k, s]; the second
    # binomial uses the product formula so that n2 < k is covered.
    lhs = q_binomial(n1 + n2 + 1, n1 - k)
    rhs = ZERO
    for s in range(n1 - k + 1):
        e = (n1 - k - s) * (n2 - k - s) if remark else s * (s + 2 * k + 1)
        rhs = rhs + monomial(e) * q_binomial(n1 + k + 1, s + 2 * k + 1) * q_binomial_product(n2 - k, s)
    return lhs, rhs


def _dixon_limit(n: int):
    lhs = ZERO
    for k in range(-n, n + 1):
        e2 = 3 * k * k + k
        lhs = lhs + monomial(e2 // 2, (-1) ** k) * q_binomial(2 * n, n - k)
    return lhs, q_binomial(2 * n, n) * qq_factorial(n)


def _dixon_full(l: int, m: int, n: int):
    lhs = ZERO
    for k in range(-n, n + 1):
        e2 = 3 * k * k + k
        lhs = lhs + monomial(e2 // 2, (-1) ** k) * (
            q_binomial(l + m, l + k) * q_binomial(m + n, m + k) * q_binomial(n + l, n + k)
        )
    den = qq_factorial(l) * qq_factorial(m) * qq_factorial(n)
    return lhs, exact_div(qq_factorial(l + m + n), den)


def classical_identity_check(kind: str, **params) -> bool:
    """Compare both sides of a classical identity.

    ``qbt``: ``N, a`` with ``x = q^a``; ``chu`` / ``chu_remark``: ``n1, n2``
    (every ``k`` in ``0..n1``); ``dixon_limit``: ``n``; ``dixon_full``:
    ``l, m, n``.
    """
    if kind == "qbt":
        require(params["N"] >= 0, "N must be non-negative")
        lhs, rhs = _qbt(params["N"], params["a"])
        return lhs == rhs
    if kind in ("chu", "chu_remark"):
        n1, n2 = params["n1"], params["n2"]
        require(n1 >= 0 and n2 >= 0, "n1, n2 must be non-negative")
        return all(
            lhs == rhs
            for lhs, rhs in (_chu(n1, n2, k, kind == "chu_remark") for k in range(n1 + 1))
        )
    if kind == "dixon_limit":
        require(params["n"] >= 0, "n must be non-negative")
        lhs, rhs = _dixon_limit(params["n"])
        return lhs == rhs
    if kind == "dixon_full":
        l, m, n = params["l"], params["m"], params["n"]
        require(min(l, m, n) >= 0, "l, m, n must be non-negative")
        lhs, rhs = _dixon_full(l, m, n)
        return lhs == rhs
    raise ConstraintViolation(f"unknown classical identity {kind!r}; choose from {CLASSICAL_KINDS}")


def classical_identity_sides(kind: str, **params):
    if kind == "qbt":
        return _qbt(params["N"], params["a"])
    if kind in ("chu", "chu_remark"):
        return _chu(params["n1"], params["n2"], params.get("k", 0), kind == "chu_remark")
    if kind == "dixon_limit":
        return _dixon_limit(params["n"])
    if kind == "dixon_full":
        return _dixon_full(params["l"], params["m"], params["n"])
    raise ConstraintViolation(f"unknown classical identity {kind!r}")
