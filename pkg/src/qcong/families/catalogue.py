"""Corollaries and conjectures built on the main theorems.

Each entry turns a parameter dict into ``(sum, modulus)`` and is decided by
:func:`qcong.congruence.divides`. Corollary ids must always hold; conjecture
ids may legitimately fail, and a failure is reported as a counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from qcong.congruence import Modulus, Verdict, divides
from qcong.cyclotomic import CycSignature, qbinomial_signature, qint_signature
from qcong.errors import ParityViolation, UnknownFamily
from qcong.families.theorems import require
from qcong.families.weights import PLUS, VARIANTS, weight
from qcong.laurent import ONE, ZERO, LaurentPoly
from qcong.qkit import ballot, q_binomial, q_integer

__all__ = [
    "CatalogueEntry",
    "COROLLARIES",
    "CONJECTURES",
    "corollary_check",
    "conjecture_check",
    "catalogue_sides",
    "final_tuple",
]


@dataclass(frozen=True)
class CatalogueEntry:
    id: str
    kind: str  # "corollary" or "conjecture"
    shape: str  # weight shape
    params: tuple  # names of required integer parameters, besides j and variant
    build: Callable  # params -> (sum, Modulus)
    j_bound: Callable | None  # params -> largest proven j, None when unbounded
    summary: str


def _sig(*parts) -> CycSignature:
    out = CycSignature()
    for p in parts:
        out = out * p
    return out


def _qi(n: int) -> CycSignature:
    return qint_signature(n)


def _qb(m: int, k: int) -> CycSignature:
    return qbinomial_signature(m, k)


def _modulus(sig: CycSignature, text: str) -> Modulus:
    return Modulus.factored(sig, text)


def _positive(p: dict, *names) -> None:
    for name in names:
        require(p[name] >= 1, f"{name} must be positive, got {p[name]}")


def _nonnegative(p: dict, *names) -> None:
    for name in names:
        require(p[name] >= 0, f"{name} must be non-negative, got {p[name]}")


def _weighted(shape: str, p: dict, upper: int, body: Callable[[int], LaurentPoly]) -> LaurentPoly:
    w = weight(shape, p["variant"], p["j"], p.get("r", 0))
    total = ZERO
    for k in range(upper + 1):
        b = body(k)
        if b:
            total = total + b * w(k)
    return total


@lru_cache(maxsize=None)
def _binomial_power(m: int, k: int, a: int) -> LaurentPoly:
    return q_binomial(m, k) ** a


@lru_cache(maxsize=None)
def _ballot_power(n: int, k: int, a: int) -> LaurentPoly:
    return ballot(n, k) ** a if k <= n else ZERO


@lru_cache(maxsize=None)
def _eps_body(k: int, r: int, factors: tuple) -> LaurentPoly:
    # [2k+1]^{2r+1} prod [M, K]^a over factors (M, K, a)
    out = q_integer(2 * k + 1) ** (2 * r + 1)
    for m, kk, a in factors:
        f = _binomial_power(m, kk, a)
        if not f:
            return ZERO
        out = out * f
    return out


@lru_cache(maxsize=None)
def _ballot_body(k: int, r: int, factors: tuple) -> LaurentPoly:
    # [2k+1]^r prod A_{n,k}^s over factors (n, s)
    out = q_integer(2 * k + 1) ** r if r else ONE
    for n, s in factors:
        f = _ballot_power(n, k, s)
        if not f:
            return ZERO
        out = out * f
    return out


def _eps_sum(p: dict, upper: int, factors: Callable[[int], tuple]) -> LaurentPoly:
    return _weighted("eps", p, upper, lambda k: _eps_body(k, p["r"], factors(k)))


# ---------------------------------------------------------------------------
# Corollaries
# ---------------------------------------------------------------------------


def _c63(p: dict, big: Callable[[int], int], top: Callable[[int], int],
         extra: Callable[[int], int]):
    _positive(p, "n", "s", "t")
    _nonnegative(p, "r")
    n, s, t, r = p["n"], p["s"], p["t"], p["r"]
    require((r + s + t) % 2 == 1, f"r + s + t = {r + s + t} must be odd", ParityViolation)
    total = _weighted(
        "tau", p, n, lambda k: _ballot_body(k, r, ((big(n), s), (n, t)))
    )
    sig = _qb(top(n), n) / _qi(extra(n))
    text = f"(1/[{extra(n)}])·[{top(n)}⊂{n}]"
    return total, _modulus(sig, text)


def _c63a(p):
    return _c63(p, lambda n: n + 1, lambda n: 2 * n, lambda n: n + 1)


def _c63b(p):
    return _c63(p, lambda n: 2 * n, lambda n: 4 * n, lambda n: 3 * n + 1)


def _c71(p):
    _positive(p, "a", "m", "n")
    _nonnegative(p, "r")
    a, m, n = p["a"], p["m"], p["n"]
    total = _eps_sum(p, m, lambda k: ((m + n + 1, m - k, a), (m + n + 1, n - k, a)))
    return total, _modulus(_sig(_qi(m + n + 1), _qb(m + n, m)), f"[{m + n + 1}]·[{m + n}⊂{m}]")


def _c72(p):
    _positive(p, "a", "l", "m", "n")
    _nonnegative(p, "r")
    a, l, m, n = p["a"], p["l"], p["m"], p["n"]
    total = _eps_sum(
        p,
        m,
        lambda k: ((l + m + 1, l - k, a), (m + n + 1, m - k, a), (n + l + 1, n - k, a)),
    )
    return total, _modulus(_sig(_qi(m + n + 1), _qb(m + n, m)), f"[{m + n + 1}]·[{m + n}⊂{m}]")


def _c73(p):
    _positive(p, "a", "n")
    _nonnegative(p, "b", "r")
    a, b, n = p["a"], p["b"], p["n"]
    total = _eps_sum(
        p,
        n - 1,
        lambda k: ((2 * n, n - k, a), (2 * n, n - k - 1, a), (2 * n - 1, n - k - 1, b)),
    )
    return total, _modulus(_sig(_qi(n), _qb(2 * n, n)), f"[{n}]·[{2 * n}⊂{n}]")


def _abc(p):
    _positive(p, "a", "b", "c", "n")
    _nonnegative(p, "r")
    return p["a"], p["b"], p["c"], p["n"]


def _c7n123(p):
    a, b, c, n = _abc(p)
    total = _eps_sum(
        p, n, lambda k: ((2 * n + 1, n - k, a), (2 * n + 3, n - k + 1, b), (2 * n + 5, n - k + 2, c))
    )
    return total, _modulus(_sig(_qi(2 * n + 5), _qb(2 * n + 1, n)), f"[{2 * n + 5}]·[{2 * n + 1}⊂{n}]")


def _sum246(p):
    a, b, c, n = _abc(p)
    return n, _eps_sum(
        p, n, lambda k: ((6 * n + 1, 3 * n - k, a), (4 * n + 1, 2 * n - k, b), (2 * n + 1, n - k, c))
    )


def _c74a(p):
    n, total = _sum246(p)
    return total, _modulus(_sig(_qi(2 * n + 1), _qb(6 * n + 1, n)), f"[{2 * n + 1}]·[{6 * n + 1}⊂{n}]")


def _c74b(p):
    n, total = _sum246(p)
    return total, _modulus(
        _sig(_qi(2 * n + 1), _qb(6 * n + 1, 3 * n)), f"[{2 * n + 1}]·[{6 * n + 1}⊂{3 * n}]"
    )


def _c75a(p):
    a, b, c, n = _abc(p)
    total = q_integer(3 * n + 1) * _eps_sum(
        p, n, lambda k: ((8 * n + 1, 4 * n - k, a), (4 * n + 1, 2 * n - k, b), (2 * n + 1, n - k, c))
    )
    sig = _sig(_qi(2 * n + 1), _qi(4 * n + 1), _qb(8 * n + 1, 3 * n))
    return total, _modulus(sig, f"[{2 * n + 1}]·[{4 * n + 1}]·[{8 * n + 1}⊂{3 * n}]")


def _c75b(p):
    a, b, c, n = _abc(p)
    total = _eps_sum(
        p, n, lambda k: ((8 * n + 1, 4 * n - k, a), (6 * n + 1, 3 * n - k, b), (4 * n + 1, 2 * n - k, c))
    )
    sig = _sig(_qi(4 * n + 1), _qb(8 * n + 1, 3 * n))
    return total, _modulus(sig, f"[{4 * n + 1}]·[{8 * n + 1}⊂{3 * n}]")


def final_tuple(n: int, m: int) -> tuple:
    """The ``(n_1, ..., n_m)`` choice that specialises the normal form to C76."""
    if m % 2:
        up = [n + i for i in range(0, m, 2)]
        down = [n + i for i in range(m - 2, 0, -2)]
    else:
        up = [n + i for i in range(1, m, 2)]
        down = [n + i for i in range(m - 2, -1, -2)]
    return tuple(up + down)


def _c76(p):
    _positive(p, "n")
    _nonnegative(p, "r")
    n, a = p["n"], tuple(p["a"])
    m = len(a)
    require(m >= 2, f"need at least two exponents, got {a}")
    require(all(x >= 1 for x in a), f"exponents must be positive, got {a}")
    total = _eps_sum(
        p, n, lambda k: tuple((2 * n + 2 * i - 1, n + i - k - 1, a[i - 1]) for i in range(1, m + 1))
    )
    sig = _sig(_qi(2 * n + 2 * m - 1), _qb(2 * n + 1, n))
    return total, _modulus(sig, f"[{2 * n + 2 * m - 1}]·[{2 * n + 1}⊂{n}]")


# ---------------------------------------------------------------------------
# Conjectures
# ---------------------------------------------------------------------------


def _rst(p):
    _positive(p, "n", "r", "s", "t")
    r, s, t = p["r"], p["s"], p["t"]
    require((r + s + t) % 2 == 1, f"r + s + t = {r + s + t} must be odd", ParityViolation)
    return p["n"], r, s, t


def _eta_sum(p: dict, upper: int, factors: tuple) -> LaurentPoly:
    # the exponent r plays no part in eta weights or in the summand power of [2k+1]
    q = dict(p, r=0)
    return _weighted("eta", q, upper, lambda k: _ballot_body(k, 0, factors))


def _conj246(p, second: bool):
    n, r, s, t = _rst(p)
    total = q_integer(4 * n + 1) * _eta_sum(p, n, ((3 * n, r), (2 * n, s), (n, t)))
    kk = 3 * n if second else n
    sig = _qb(6 * n + 1, kk) / _qi(6 * n + 1)
    return total, _modulus(sig, f"(1/[{6 * n + 1}])·[{6 * n + 1}⊂{kk}]")


def _conj3(p):
    n, r, s, t = _rst(p)
    total = q_integer(8 * n + 1) * _eta_sum(p, n, ((4 * n, r), (2 * n, s), (n, t)))
    return total, _modulus(_qb(8 * n + 1, 3 * n), f"[{8 * n + 1}⊂{3 * n}]")


def _conj4(p):
    n, r, s, t = _rst(p)
    pref = q_integer(6 * n + 1) * q_integer(8 * n + 1)
    total = pref * _eta_sum(p, n, ((4 * n, r), (3 * n, s), (2 * n, t)))
    return total, _modulus(_qb(8 * n + 1, 3 * n), f"[{8 * n + 1}⊂{3 * n}]")


def _conj_final(p):
    _positive(p, "n")
    n, rs = p["n"], tuple(p["rs"])
    require(len(rs) >= 1 and all(x >= 1 for x in rs), f"exponents must be positive, got {rs}")
    require(sum(rs) % 2 == 1, f"exponent sum {sum(rs)} must be odd", ParityViolation)
    total = _eta_sum(p, n, tuple((n + i, e) for i, e in enumerate(rs)))
    sig = _qb(2 * n, n) / _qi(n + 1)
    return total, _modulus(sig, f"(1/[{n + 1}])·[{2 * n}⊂{n}]")


COROLLARIES = {
    e.id: e
    for e in (
        CatalogueEntry("C63a", "corollary", "tau", ("n", "s", "t", "r"), _c63a,
                       lambda p: p["s"] + p["t"], "ballot powers A_{n+1,k}^s A_{n,k}^t mod the q-Catalan number"),
        CatalogueEntry("C63b", "corollary", "tau", ("n", "s", "t", "r"), _c63b,
                       lambda p: p["s"] + p["t"], "ballot powers A_{2n,k}^s A_{n,k}^t mod (1/[3n+1])[4n, n]"),
        CatalogueEntry("C71", "corollary", "eps", ("a", "m", "n", "r"), _c71,
                       lambda p: 2 * p["a"], "alternating pair (m, n) repeated a times"),
        CatalogueEntry("C72", "corollary", "eps", ("a", "l", "m", "n", "r"), _c72,
                       lambda p: 3 * p["a"], "triple (l, m, n) repeated a times"),
        CatalogueEntry("C73", "corollary", "eps", ("a", "b", "n", "r"), _c73,
                       lambda p: 2 * p["a"] + p["b"], "n and n-1 interleaved, modulus [n][2n, n]"),
        CatalogueEntry("C7n123", "corollary", "eps", ("a", "b", "c", "n", "r"), _c7n123,
                       lambda p: p["a"] + p["b"] + p["c"], "triple (n, n+2, n+1), modulus [2n+5][2n+1, n]"),
        CatalogueEntry("C74a", "corollary", "eps", ("a", "b", "c", "n", "r"), _c74a,
                       lambda p: p["a"] + p["b"] + p["c"], "2n/4n/6n binomials mod [2n+1][6n+1, n]"),
        CatalogueEntry("C74b", "corollary", "eps", ("a", "b", "c", "n", "r"), _c74b,
                       lambda p: p["a"] + p["b"] + p["c"], "2n/4n/6n binomials mod [2n+1][6n+1, 3n]"),
        CatalogueEntry("C75a", "corollary", "eps", ("a", "b", "c", "n", "r"), _c75a,
                       lambda p: p["a"] + p["b"] + p["c"], "[3n+1] times 2n/4n/8n binomials mod [2n+1][4n+1][8n+1, 3n]"),
        CatalogueEntry("C75b", "corollary", "eps", ("a", "b", "c", "n", "r"), _c75b,
                       lambda p: p["a"] + p["b"] + p["c"], "4n/6n/8n binomials mod [4n+1][8n+1, 3n]"),
        CatalogueEntry("C76", "corollary", "eps", ("n", "a", "r"), _c76,
                       lambda p: sum(p["a"]), "m binomials [2n+2i-1, n+i-k-1]^{a_i} mod [2n+2m-1][2n+1, n]"),
    )
}

CONJECTURES = {
    e.id: e
    for e in (
        CatalogueEntry("Conj246n_1", "conjecture", "eta", ("n", "r", "s", "t"),
                       lambda p: _conj246(p, False), None, "[4n+1] A_{3n}^r A_{2n}^s A_n^t mod (1/[6n+1])[6n+1, n]"),
        CatalogueEntry("Conj246n_2", "conjecture", "eta", ("n", "r", "s", "t"),
                       lambda p: _conj246(p, True), None, "[4n+1] A_{3n}^r A_{2n}^s A_n^t mod (1/[6n+1])[6n+1, 3n]"),
        CatalogueEntry("Conj246n_3", "conjecture", "eta", ("n", "r", "s", "t"), _conj3, None,
                       "[8n+1] A_{4n}^r A_{2n}^s A_n^t mod [8n+1, 3n]"),
        CatalogueEntry("Conj246n_4", "conjecture", "eta", ("n", "r", "s", "t"), _conj4, None,
                       "[6n+1][8n+1] A_{4n}^r A_{3n}^s A_{2n}^t mod [8n+1, 3n]"),
        CatalogueEntry("ConjFinal", "conjecture", "eta", ("n", "rs"), _conj_final, None,
                       "prod A_{n+i-1,k}^{r_i} mod the q-Catalan number"),
    )
}


def _normalise(entry: CatalogueEntry, params: dict, conjectural: bool) -> dict:
    p = dict(params)
    p.setdefault("j", 0)
    p.setdefault("variant", PLUS)
    missing = [name for name in entry.params if name not in p]
    if missing:
        raise TypeError(f"{entry.id} needs parameters {missing}")
    require(p["variant"] in VARIANTS, f"variant must be one of {VARIANTS}", ValueError)
    require(p["j"] >= 0, f"j must be non-negative, got {p['j']}")
    if entry.j_bound is not None and not conjectural:
        bound = entry.j_bound(p)
        require(p["j"] <= bound, f"j={p['j']} exceeds the proven bound {bound}")
    return p


def _lookup(table: dict, id: str) -> CatalogueEntry:
    try:
        return table[id]
    except KeyError:
        raise UnknownFamily(f"unknown id {id!r}; choose from {sorted(table)}") from None


def catalogue_sides(id: str, params: dict, conjectural: bool = False):
    """``(sum, modulus)`` for a corollary or conjecture id."""
    entry = COROLLARIES.get(id) or _lookup(CONJECTURES, id)
    p = _normalise(entry, params, conjectural)
    return entry.build(p)


def corollary_check(id: str, params: dict, strategy: str = "both",
                    conjectural: bool = False) -> Verdict:
    entry = _lookup(COROLLARIES, id)
    total, mod = entry.build(_normalise(entry, params, conjectural))
    return divides(mod, total, strategy)


def conjecture_check(id: str, params: dict, strategy: str = "both") -> Verdict:
    entry = _lookup(CONJECTURES, id)
    total, mod = entry.build(_normalise(entry, params, True))
    return divides(mod, total, strategy)
