"""Closed registry of every checkable family.

A family maps a parameter dict to a :class:`Verdict`. Divisibility families
divide a sum by a modulus; identity families compare two exact sides and
report ``holds`` as their equality. ``kind`` decides how a failure counts:
``theorem`` and ``identity`` failures are bugs, ``conjecture`` failures are
counterexamples.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable

from qcong.congruence import Modulus, Verdict, divides, fingerprint
from qcong.errors import UnknownFamily
from qcong.families import catalogue, identities, theorems
from qcong.families.theorems import SumSpec, require
from qcong.families.weights import VARIANTS
from qcong.laurent import LaurentPoly

__all__ = ["Param", "Family", "FAMILIES", "get_family", "family_ids", "run_family"]

THEOREM, IDENTITY, CONJECTURE = "theorem", "identity", "conjecture"
KINDS = (THEOREM, IDENTITY, CONJECTURE)


@dataclass(frozen=True)
class Param:
    """One parameter. ``length`` names the parameter fixing a tuple's size."""

    name: str
    type: str = "int"  # "int", "tuple" or "str"
    default: object = None
    length: str | None = None
    choices: tuple = ()

    def coerce(self, value, params: dict):
        if self.type == "int":
            return int(value)
        if self.type == "str":
            value = str(value)
            if self.choices and value not in self.choices:
                raise ValueError(f"{self.name} must be one of {self.choices}, got {value!r}")
            return value
        if isinstance(value, (int, str)) and not str(value).strip().startswith(("[", "(")):
            value = (int(value),)
        elif isinstance(value, str):
            body = value.strip()[1:-1]
            value = tuple(int(x) for x in body.split(",") if x.strip())
        value = tuple(int(x) for x in value)
        if self.length is not None:
            size = params.get(self.length)
            if size is None:
                size = len(value)
                params[self.length] = size
            if len(value) == 1 and size > 1:
                value = value * size
            if len(value) != size:
                raise ValueError(
                    f"{self.name} has {len(value)} entries but {self.length}={size}"
                )
        return value


@dataclass(frozen=True)
class Family:
    id: str
    kind: str
    params: tuple
    run: Callable  # (params, variant, strategy, conjectural) -> Verdict
    variants: tuple = VARIANTS
    description: str = ""
    param_index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"bad family kind {self.kind!r}")
        self.param_index.update({p.name: p for p in self.params})

    @property
    def param_names(self) -> tuple:
        return tuple(p.name for p in self.params)

    def normalise(self, raw: dict) -> dict:
        """Coerce and complete a raw parameter map; unknown names are errors."""
        unknown = sorted(set(raw) - set(self.param_index))
        if unknown:
            raise ValueError(f"{self.id} does not take {unknown}; expected {list(self.param_names)}")
        # a size parameter may be omitted and inferred from its tuple
        sizes = {p.length for p in self.params if p.type == "tuple"}
        out: dict = {}
        for p in sorted(self.params, key=lambda p: p.type == "tuple"):
            value = raw.get(p.name, p.default)
            if value is None:
                if p.name in sizes:
                    continue
                raise ValueError(f"{self.id} needs parameter {p.name!r}")
            out[p.name] = p.coerce(value, out)
        return out

    def __call__(self, params: dict, variant: str | None = None, strategy: str = "both",
                 conjectural: bool = False) -> Verdict:
        variant = variant if variant is not None else self.variants[0]
        if variant not in self.variants:
            raise ValueError(f"{self.id} variant must be one of {self.variants}, got {variant!r}")
        return self.run(self.normalise(params), variant, strategy, conjectural)


def _identity_verdict(lhs: LaurentPoly, rhs: LaurentPoly, started: float, label: str) -> Verdict:
    return _bool_verdict(lhs == rhs, lhs, started, label)


def _bool_verdict(ok: bool, witness, started: float, label: str) -> Verdict:
    fp = fingerprint(witness) if isinstance(witness, LaurentPoly) else None
    v = Verdict(holds=bool(ok), strategy="identity", elapsed=time.perf_counter() - started,
                modulus=label)
    if ok and fp is not None:
        v.quotient_span, v.quotient_head = fp["span"], fp["head"]
        v.quotient_tail, v.quotient_hash, v.quotient = fp["tail"], fp["hash"], witness
    return v


# ---------------------------------------------------------------------------
# runners
# ---------------------------------------------------------------------------


def _run_thm12(which: int):
    build = theorems.theorem1_sum if which == 1 else theorems.theorem2_sum
    modulus = theorems.theorem1_modulus if which == 1 else theorems.theorem2_modulus

    def run(p, variant, strategy, conjectural):
        spec = SumSpec(p["n"], p["j"], p["r"], variant, conjectural)
        return divides(modulus(spec), build(spec), strategy)

    return run


def _run_thm3(p, variant, strategy, conjectural):
    total = theorems.theorem3_sum(p["n"], p["s"], p["r"], variant, p["j"], conjectural)
    return divides(theorems.theorem3_modulus(p["n"]), total, strategy)


def _run_thm4(p, variant, strategy, conjectural):
    total = theorems.theorem4_sum(p["m"], p["n"], p["s"], p["t"], p["r"], variant, p["j"], conjectural)
    return divides(theorems.theorem4_modulus(p["m"], p["n"]), total, strategy)


def _run_thm62(p, variant, strategy, conjectural):
    spec = SumSpec(p["n"], p["j"], p["r"], variant, conjectural)
    frac = theorems.theorem62_fraction(spec)
    return divides(Modulus.factored(frac.den, frac.den.render() or "1"), frac.numer, strategy)


def _run_thm22(p, variant, strategy, conjectural):
    total = identities.theorem22_sum(p["n"], p["r"], p["s"], int(variant))
    return divides(identities.theorem22_modulus(p["n"]), total, strategy)


def _run_lemma21(p, variant, strategy, conjectural):
    started = time.perf_counter()
    lhs, rhs = identities.lemma21_sides(p["n"], p["s"], int(variant), bool(p["corrected"]))
    return _identity_verdict(lhs, rhs, started, "lhs == rhs")


def _run_remark(p, variant, strategy, conjectural):
    started = time.perf_counter()
    lhs, rhs = identities.remark_x_sides(p["n"], p["s"], p["a"])
    return _identity_verdict(lhs, rhs, started, "lhs * (x;q)_{n+1} == rhs")


def _run_pq(p, variant, strategy, conjectural):
    started = time.perf_counter()
    n, j, r = p["n"], p["j"], p["r"]
    direct = identities.pq_value(variant, n, j, r, "direct")
    ok = direct == identities.pq_value(variant, n, j, r, "recurrence")
    if ok and n >= 1:
        closed = identities.pq_closed_form(variant, r, j, n)
        ok = closed is None or closed == direct
    return _bool_verdict(ok, direct, started, "direct == recurrence == closed form")


def _run_st(p, variant, strategy, conjectural):
    started = time.perf_counter()
    ok = identities.st_recurrence_check(variant, p["n"], p["j"], p["r"], p["form"])
    return _bool_verdict(ok, None, started, f"{p['form']} recurrence")


def _run_qinv(p, variant, strategy, conjectural):
    started = time.perf_counter()
    exact = bool(p["exact"])
    ok = identities.qinv_symmetry_check(variant, p["n"], p["r"], exact)
    return _bool_verdict(ok, None, started, "exact unit" if exact else "printed unit")


def _run_eq52(p, variant, strategy, conjectural):
    started = time.perf_counter()
    require(0 <= p["k"] <= p["n"], "need 0 <= k <= n")
    return _bool_verdict(theorems.eq52_bridge_check(p["n"], p["k"]), None, started, "bridge")


def _run_classical(kind: str, names: tuple):
    def run(p, variant, strategy, conjectural):
        started = time.perf_counter()
        ok = identities.classical_identity_check(kind, **{k: p[k] for k in names})
        return _bool_verdict(ok, None, started, kind)

    return run


def _run_catalogue(id: str):
    def run(p, variant, strategy, conjectural):
        params = dict(p, variant=variant)
        if id in catalogue.CONJECTURES:
            return catalogue.conjecture_check(id, params, strategy)
        return catalogue.corollary_check(id, params, strategy, conjectural)

    return run


def _run_all_j(p, variant, strategy, conjectural):
    require(p["theorem"] in (1, 2), f"theorem must be 1 or 2, got {p['theorem']}", ValueError)
    return _run_thm12(p["theorem"])(p, variant, strategy, True)


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------

I = Param  # noqa: E741


def _n_tuple(default_len="m"):
    return Param("n", "tuple", length=default_len)


_PARAMS_CATALOGUE = {
    "C63a": ("n", "s", "t", "r"),
    "C63b": ("n", "s", "t", "r"),
    "C71": ("a", "m", "n", "r"),
    "C72": ("a", "l", "m", "n", "r"),
    "C73": ("a", "b", "n", "r"),
    "C7n123": ("a", "b", "c", "n", "r"),
    "C74a": ("a", "b", "c", "n", "r"),
    "C74b": ("a", "b", "c", "n", "r"),
    "C75a": ("a", "b", "c", "n", "r"),
    "C75b": ("a", "b", "c", "n", "r"),
    "Conj246n_1": ("n", "r", "s", "t"),
    "Conj246n_2": ("n", "r", "s", "t"),
    "Conj246n_3": ("n", "r", "s", "t"),
    "Conj246n_4": ("n", "r", "s", "t"),
}


def _catalogue_family(id: str) -> Family:
    entry = catalogue.COROLLARIES.get(id) or catalogue.CONJECTURES[id]
    if id == "C76":
        params = (I("m"), I("n"), Param("a", "tuple", length="m"), I("r", default=0), I("j", default=0))
    elif id == "ConjFinal":
        params = (I("m"), I("n"), Param("rs", "tuple", length="m"), I("j", default=0))
    else:
        names = _PARAMS_CATALOGUE[id]
        params = tuple(I(x, default=0 if x == "r" and entry.kind == "corollary" else None)
                       for x in names) + (I("j", default=0),)
    kind = CONJECTURE if entry.kind == "conjecture" else THEOREM
    return Family(id, kind, params, _run_catalogue(id), description=entry.summary)


_STAT = (I("j", default=0), I("r", default=0))

_BASE = [
    Family("thm1", THEOREM, (I("m"), _n_tuple()) + _STAT, _run_thm12(1),
           description="odd-power sum over C(n_1..n_m; k) mod [n_1+n_m+1][n_1+n_m, n_1]"),
    Family("thm2", THEOREM, (I("m"), _n_tuple()) + _STAT, _run_thm12(2),
           description="[2k+1][k]^r[k+1]^r sum with strengthened modulus"),
    Family("thm3", THEOREM, (I("n"), I("s"), I("r", default=0), I("j", default=0)), _run_thm3,
           description="ballot powers mod [2n, n]"),
    Family("thm4", THEOREM, (I("m"), I("n"), I("s"), I("t"), I("r", default=0), I("j", default=0)),
           _run_thm4, description="two ballot powers mod the super-Catalan number"),
    Family("thm62", THEOREM, (I("m"), _n_tuple()) + _STAT, _run_thm62,
           description="normal form is a Laurent polynomial"),
    Family("thm22", THEOREM, (I("n"), I("r", default=0), I("s", default=0)), _run_thm22,
           variants=("1", "2", "3", "4"), description="four lemma sums mod [2n+1][2n, n]"),
    Family("lemma21", IDENTITY, (I("n"), I("s"), I("corrected", default=0)), _run_lemma21,
           variants=("1", "2", "3", "4"), description="four closed evaluations"),
    Family("remark", IDENTITY, (I("n"), I("s"), I("a")), _run_remark, variants=("-",),
           description="x-deformed alternating evaluation at x = q^a"),
    Family("pq", IDENTITY, (I("n"), I("j", default=0), I("r", default=0)), _run_pq,
           variants=("P", "Q"), description="P_r / Q_r direct, recurrence and closed forms"),
    Family("st", IDENTITY,
           (I("m"), _n_tuple(), I("j", default=0), I("r", default=0),
            Param("form", "str", default="standard", choices=("standard", "remark"))),
           _run_st, variants=("S", "T"), description="S_r / T_r recurrence in m"),
    Family("qinv", IDENTITY, (I("m"), _n_tuple(), I("r", default=0), I("exact", default=0)),
           _run_qinv, variants=("S", "T"), description="q -> 1/q symmetry of S_r / T_r"),
    Family("eq52", IDENTITY, (I("n"), I("k")), _run_eq52, variants=("-",),
           description="[2k+1][2n+1, n-k] q^{n-k} = [2n+1] A_{n,k}"),
    Family("qbt", IDENTITY, (I("N"), I("a")), _run_classical("qbt", ("N", "a")), variants=("-",),
           description="q-binomial theorem at x = q^a"),
    Family("chu", IDENTITY, (I("n1"), I("n2")), _run_classical("chu", ("n1", "n2")), variants=("-",),
           description="q-Chu-Vandermonde for every k"),
    Family("chu_remark", IDENTITY, (I("n1"), I("n2")), _run_classical("chu_remark", ("n1", "n2")),
           variants=("-",), description="q-Chu-Vandermonde, alternate kernel"),
    Family("dixon_limit", IDENTITY, (I("n"),), _run_classical("dixon_limit", ("n",)),
           variants=("-",), description="limiting q-Dixon sum"),
    Family("dixon_full", IDENTITY, (I("l"), I("m"), I("n")),
           _run_classical("dixon_full", ("l", "m", "n")), variants=("-",),
           description="q-Dixon identity"),
    Family("ConjAllJ", CONJECTURE,
           (I("theorem", default=1), I("m"), _n_tuple()) + _STAT,
           _run_all_j, description="thm1 / thm2 sums with j unrestricted"),
]

FAMILIES: dict = {f.id: f for f in _BASE}
for _id in list(catalogue.COROLLARIES) + list(catalogue.CONJECTURES):
    FAMILIES[_id] = _catalogue_family(_id)

CLASSICAL_FAMILIES = ("qbt", "chu", "chu_remark", "dixon_limit", "dixon_full")


def family_ids(kind: str | None = None) -> list:
    return [f for f, fam in FAMILIES.items() if kind is None or fam.kind == kind]


def get_family(id: str) -> Family:
    try:
        return FAMILIES[id]
    except KeyError:
        raise UnknownFamily(f"unknown family {id!r}; known: {', '.join(FAMILIES)}") from None


def run_family(id: str, params: dict, variant: str | None = None, strategy: str = "both",
               conjectural: bool = False) -> Verdict:
    return get_family(id)(params, variant, strategy, conjectural)
