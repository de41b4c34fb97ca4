"""The fifteen acceptance criteria, one test each.

Every test records a PASS or FAIL line that is printed in the terminal
summary. Two criteria compare against printed closed forms that are wrong
as stated; they are strict xfails, and a companion test checks the
corrected statement.
"""

from __future__ import annotations

import itertools
import random
import time

import pytest

from conftest import ACCEPTANCE
from qcong.congruence import divides
from qcong.cyclotomic import (
    cyclotomic_multiplicity,
    expand_signature,
    factorial_ratio_signature,
    lemma61_check,
    qbinomial_signature,
    qint_signature,
    signature_gcd,
)
from qcong.errors import ConstraintViolation
from qcong.families.catalogue import conjecture_check, corollary_check
from qcong.families.identities import (
    classical_identity_check,
    lemma21_check,
    pq_closed_form,
    pq_value,
    qinv_symmetry_check,
    st_recurrence_check,
    theorem22_modulus,
    theorem22_sum,
)
from qcong.families.theorems import (
    MINUS,
    PLUS,
    SumSpec,
    eq52_bridge_check,
    theorem1_modulus,
    theorem1_sum,
    theorem2_modulus,
    theorem2_sum,
    theorem3_modulus,
    theorem3_sum,
    theorem4_modulus,
    theorem4_sum,
)
from qcong.laurent import eval_int
from qcong.qkit import clear_caches, q_binomial, q_factorial, super_catalan

VARIANTS = (PLUS, MINUS)


class Tally:
    def __init__(self, num: str, title: str, budget: float):
        self.num, self.title, self.budget = num, title, budget
        self.checked = 0
        self.failures: list = []
        self.notes: list = []
        clear_caches()  # time each criterion from cold caches
        self.started = time.perf_counter()

    def check(self, ok: bool, label) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(label)

    def finish(self) -> bool:
        elapsed = time.perf_counter() - self.started
        ok = not self.failures and self.checked > 0 and elapsed <= self.budget
        detail = f"{self.title}: {self.checked} checks, {len(self.failures)} failing, {elapsed:.1f}s"
        detail += f" (budget {self.budget:.0f}s)"
        if self.failures:
            detail += f"; first failure {self.failures[0]}"
        for note in self.notes:
            detail += f"; {note}"
        status = "PASS" if ok else "FAIL"
        ACCEPTANCE.append((self.num, status, detail))
        print(f"criterion {self.num}: {status}  {detail}")
        return ok


def thm12_lattice(j_range=None):
    for m in (1, 2, 3):
        for n in itertools.product(range(1, 6), repeat=m):
            js = range(m + 1) if j_range is None else j_range(m)
            for j in js:
                for r in range(3):
                    for v in VARIANTS:
                        yield SumSpec(n, j, r, v, conjectural=j_range is not None)


def agree(mod, a):
    # "both" raises StrategyMismatch on disagreement
    return divides(mod, a, "both").holds


def test_criterion_01_first_theorem_sweep():
    t = Tally("1", "odd-power sums mod [n1+nm+1][n1+nm, n1]", 600)
    for spec in thm12_lattice():
        t.check(agree(theorem1_modulus(spec), theorem1_sum(spec)), spec)
    assert t.finish()


def test_criterion_02_strengthened_moduli_sweep():
    t = Tally("2", "[2k+1][k]^r[k+1]^r sums with [n1]/[nm] powers", 600)
    for spec in thm12_lattice():
        t.check(agree(theorem2_modulus(spec), theorem2_sum(spec)), spec)
    assert t.finish()


def test_criterion_03_ballot_power_sweep():
    t = Tally("3", "ballot powers mod [2n, n]", 300)
    for n in range(1, 9):
        mod = theorem3_modulus(n)
        for s in range(1, 6):
            for r in range(5):
                if (r + s) % 2 == 0:
                    continue
                for j in range(s + 1):
                    for v in VARIANTS:
                        t.check(agree(mod, theorem3_sum(n, s, r, v, j)), (n, s, r, j, v))
    assert t.finish()


def test_criterion_04_super_catalan_sweep():
    t = Tally("4", "two ballot powers mod the super-Catalan number", 600)
    for m in range(1, 6):
        for n in range(1, 6):
            mod = theorem4_modulus(m, n)
            for s, t_, r in itertools.product(range(1, 4), range(1, 4), range(3)):
                if (r + s + t_) % 2 == 0:
                    continue
                for j in range(s + t_ + 1):
                    for v in VARIANTS:
                        t.check(agree(mod, theorem4_sum(m, n, s, t_, r, v, j)), (m, n, s, t_, r, j, v))
    assert t.finish()


def _lemma_tally(num: str, corrected: bool) -> Tally:
    label = "alternating evaluation corrected at s = n" if corrected else "four closed evaluations as printed"
    t = Tally(num, label, 120)
    for variant in (1, 2, 3, 4):
        for n in range(1, 11):
            for s in range(11):
                t.check(lemma21_check(n, s, variant, corrected)[2], (variant, n, s))
    return t


@pytest.mark.xfail(strict=True, reason="printed alternating evaluation is 0 for all s; it is nonzero at s = n")
def test_criterion_05_closed_evaluations():
    t = _lemma_tally("5", corrected=False)
    if t.failures == [(3, n, n) for n in range(1, 11)]:
        t.notes.append("exactly the alternating case at s = n fails; see 5c")
    assert t.finish()


def test_criterion_05c_closed_evaluations_corrected():
    assert _lemma_tally("5c", corrected=True).finish()


def test_criterion_06_generalised_lemma_sums():
    t = Tally("6", "four generalised sums mod [2n+1][2n, n]", 300)
    for n in range(1, 7):
        mod = theorem22_modulus(n)
        for r in range(4):
            for s in range(5):
                for v in (1, 2, 3, 4):
                    t.check(agree(mod, theorem22_sum(n, r, s, v)), (n, r, s, v))
    assert t.finish()


def test_criterion_07_pq_closed_forms():
    t = Tally("7", "P/Q closed forms and recurrences", 120)
    for which, r in [("P", 0), ("P", 1), ("P", 2), ("Q", 0), ("Q", 1)]:
        for j in (0, 1):
            for n in range(1, 13):
                t.check(pq_value(which, n, j, r) == pq_closed_form(which, r, j, n), (which, r, j, n))
    for which in "PQ":
        for j in (0, 1):
            for n in range(1, 13):
                for r in range(7):
                    t.check(pq_value(which, n, j, r) == pq_value(which, n, j, r, "recurrence"),
                            (which, j, n, r, "recurrence"))
    assert t.finish()


def _st_lattice():
    for m in (2, 3):
        for n in itertools.product(range(1, 5), repeat=m):
            for r in range(3):
                yield m, n, r


def _structure_tally(num: str, exact: bool) -> Tally:
    label = "S/T recurrences and q -> 1/q symmetry" + (" with unit -q^(shift-1)" if exact else "")
    t = Tally(num, label, 300)
    qinv_fail = 0
    for m, n, r in _st_lattice():
        for which in "ST":
            for j in range(1, m + 1):
                t.check(st_recurrence_check(which, n, j, r, "standard"), (which, n, j, r, "standard"))
            for j in range(m + 1):
                t.check(st_recurrence_check(which, n, j, r, "remark"), (which, n, j, r, "remark"))
            ok = qinv_symmetry_check(which, n, r, exact=exact)
            qinv_fail += not ok
            t.check(ok, (which, n, r, "qinv"))
    if qinv_fail:
        t.notes.append(f"all {qinv_fail} failures are q -> 1/q checks; recurrences all hold; see 8c")
    return t


@pytest.mark.xfail(strict=True, reason="printed q -> 1/q relation is off by the unit -1/q")
def test_criterion_08_sum_structure():
    assert _structure_tally("8", exact=False).finish()


def test_criterion_08c_sum_structure_corrected_unit():
    assert _structure_tally("8c", exact=True).finish()


def test_criterion_09_classical_identities():
    t = Tally("9", "q-binomial theorem, q-Chu-Vandermonde, q-Dixon", 120)
    for N in range(11):
        for a in range(-5, 6):
            t.check(classical_identity_check("qbt", N=N, a=a), ("qbt", N, a))
    for n1 in range(9):
        for n2 in range(9):
            t.check(classical_identity_check("chu", n1=n1, n2=n2), ("chu", n1, n2))
    for l, m, n in itertools.product(range(5), repeat=3):
        t.check(classical_identity_check("dixon_full", l=l, m=m, n=n), ("dixon_full", l, m, n))
    for n in range(11):
        t.check(classical_identity_check("dixon_limit", n=n), ("dixon_limit", n))
    assert t.finish()


def test_criterion_10_cyclotomic_engine():
    t = Tally("10", "signatures, floor sums, coprimality", 180)
    for m in range(41):
        for k in range(m + 1):
            t.check(expand_signature(qbinomial_signature(m, k)) == q_binomial(m, k), ("binomial", m, k))
    for n in range(26):
        sig = factorial_ratio_signature([n], [])
        fact = q_factorial(n)
        for d in range(1, n + 1):
            t.check(sig.exponent(d) == cyclotomic_multiplicity(fact, d), ("factorial", n, d))
    for n in range(1, 61):
        t.check(signature_gcd(qbinomial_signature(2 * n, n), qint_signature(2 * n + 1)).is_empty(),
                ("central", n))
    for m in range(1, 61):
        for n in range(1, 61):
            t.check(lemma61_check(m, n), ("super-Catalan", m, n))
    assert t.finish()


def test_criterion_11_ballot_bridge():
    t = Tally("11", "[2k+1][2n+1, n-k] q^(n-k) = [2n+1] A_{n,k}", 60)
    for n in range(13):
        for k in range(n + 1):
            t.check(eq52_bridge_check(n, k), (n, k))
    assert t.finish()


def _corollary_lattice():
    two = (1, 2)
    for n in range(1, 5):
        for s, t_, r in itertools.product(two, two, range(3)):
            if (r + s + t_) % 2:
                for cid in ("C63a", "C63b"):
                    yield cid, {"n": n, "s": s, "t": t_, "r": r}, s + t_
        for a, r in itertools.product(two, range(3)):
            for m in range(1, 5):
                yield "C71", {"a": a, "m": m, "n": n, "r": r}, 2 * a
            for l, m in itertools.product(range(1, 5), repeat=2):
                yield "C72", {"a": a, "l": l, "m": m, "n": n, "r": r}, 3 * a
            for b in range(3):
                yield "C73", {"a": a, "b": b, "n": n, "r": r}, 2 * a + b
        for a, b, c, r in itertools.product(two, two, two, range(3)):
            for cid in ("C7n123", "C74a", "C74b", "C75a", "C75b"):
                yield cid, {"a": a, "b": b, "c": c, "n": n, "r": r}, a + b + c
        for size in (2, 3):
            for a in itertools.product(two, repeat=size):
                for r in range(3):
                    yield "C76", {"n": n, "a": a, "r": r}, sum(a)


def test_criterion_12_corollary_catalogue():
    t = Tally("12", "every corollary, n <= 4, exponents <= 2", 600)
    seen = set()
    for cid, params, bound in _corollary_lattice():
        seen.add(cid)
        for j in range(bound + 1):
            for v in VARIANTS:
                t.check(corollary_check(cid, dict(params, j=j, variant=v)).holds, (cid, params, j, v))
    t.notes.append(f"{len(seen)} corollary ids")
    assert len(seen) == 11
    assert t.finish()


def test_criterion_13_conjecture_sweeps():
    t = Tally("13", "conjecture sweeps, a failing check is a counterexample", 1200)
    for cid in ("Conj246n_1", "Conj246n_2", "Conj246n_3", "Conj246n_4"):
        for n in range(1, 4):
            for r, s, t_ in itertools.product((1, 2), repeat=3):
                if (r + s + t_) % 2 == 0:
                    continue
                for j in range(r + s + t_ + 1):
                    for v in VARIANTS:
                        p = {"n": n, "r": r, "s": s, "t": t_, "j": j, "variant": v}
                        t.check(conjecture_check(cid, p).holds, (cid, p))
    for m in range(1, 5):
        for rs in itertools.product((1, 2), repeat=m):
            if sum(rs) % 2 == 0:
                continue
            for n in range(1, 6):
                for j in range(sum(rs) + 1):
                    for v in VARIANTS:
                        p = {"n": n, "rs": rs, "j": j, "variant": v}
                        t.check(conjecture_check("ConjFinal", p).holds, ("ConjFinal", p))
    for spec in thm12_lattice(lambda m: range(m + 1, m + 4)):
        t.check(agree(theorem1_modulus(spec), theorem1_sum(spec)), ("ConjAllJ", 1, spec))
        t.check(agree(theorem2_modulus(spec), theorem2_sum(spec)), ("ConjAllJ", 2, spec))
    # A counterexample is a finding, reported in the line above; zero is the expected count.
    assert t.finish()


def _sample_tuples(rng: random.Random):
    while True:
        kind = rng.choice(["thm1", "thm2", "thm3", "thm4"])
        try:
            if kind in ("thm1", "thm2"):
                m = rng.randint(1, 3)
                spec = SumSpec(tuple(rng.randint(1, 5) for _ in range(m)), rng.randint(0, m),
                               rng.randint(0, 2), rng.choice(VARIANTS))
                if kind == "thm1":
                    yield kind, spec, theorem1_sum(spec), theorem1_modulus(spec)
                else:
                    yield kind, spec, theorem2_sum(spec), theorem2_modulus(spec)
            elif kind == "thm3":
                n, s, r = rng.randint(1, 8), rng.randint(1, 5), rng.randint(0, 4)
                args = (n, s, r, rng.choice(VARIANTS), rng.randint(0, s))
                yield kind, args, theorem3_sum(*args), theorem3_modulus(n)
            else:
                m, n, s, t_, r = (rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 3),
                                  rng.randint(1, 3), rng.randint(0, 2))
                args = (m, n, s, t_, r, rng.choice(VARIANTS), rng.randint(0, s + t_))
                yield kind, args, theorem4_sum(*args), theorem4_modulus(m, n)
        except ConstraintViolation:
            continue


def test_criterion_14_integer_specialisation():
    t = Tally("14", "q = 1 specialisation of 200 random verified tuples", 120)
    rng = random.Random(20261019)
    for kind, args, total, mod in itertools.islice(_sample_tuples(rng), 200):
        verified = divides(mod, total, "expanded").holds
        value, modulus = eval_int(total, 1), eval_int(mod.expand(), 1)
        t.check(verified and value % modulus == 0, (kind, args))
    assert t.checked == 200
    assert t.finish()


def test_criterion_15_super_catalan_positivity():
    t = Tally("15", "super-Catalan coefficients non-negative, m, n <= 30", 120)
    for m in range(31):
        for n in range(31):
            t.check(all(c >= 0 for c in super_catalan(m, n).coeffs), (m, n))
    assert t.finish()
