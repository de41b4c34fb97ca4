from __future__ import annotations

import itertools

import pytest

from qcong.congruence import Modulus, divides
from qcong.cyclotomic import cyclotomic
from qcong.errors import ConstraintViolation, ParityViolation, UnknownFamily
from qcong.families.catalogue import (
    COROLLARIES,
    CONJECTURES,
    catalogue_sides,
    conjecture_check,
    corollary_check,
    final_tuple,
)
from qcong.laurent import ONE, eval_int
from qcong.qkit import q_binomial, q_integer


class TestCorollaryExamples:
    def test_catalan_modulus(self):
        v = corollary_check("C63a", {"n": 2, "r": 1, "s": 1, "t": 1, "j": 0})
        assert v.holds
        _, mod = catalogue_sides("C63a", {"n": 2, "r": 1, "s": 1, "t": 1})
        assert mod.expand() == cyclotomic(4)

    def test_alternating_pair(self):
        v = corollary_check("C71", {"a": 1, "m": 1, "n": 1, "r": 0})
        assert v.holds
        _, mod = catalogue_sides("C71", {"a": 1, "m": 1, "n": 1, "r": 0})
        assert mod.expand() == q_integer(3) * q_binomial(2, 1)

    def test_final_corollary_modulus_is_five_not_seven(self):
        params = {"n": 1, "a": (1, 1), "r": 0}
        total, mod = catalogue_sides("C76", params)
        assert mod.expand() == q_integer(5) * q_binomial(3, 1)
        assert divides(mod, total).holds
        seven = Modulus.expanded(q_integer(7) * q_binomial(3, 1))
        assert not divides(seven, total).holds

    def test_final_tuple(self):
        for m in range(1, 7):
            assert sorted(final_tuple(3, m)) == list(range(3, 3 + m))
        assert final_tuple(1, 2) == (2, 1)

    def test_interleaved_modulus_identity(self):
        # [2n][2n-1, n] and [n][2n, n] coincide.
        for n in range(1, 8):
            assert q_integer(2 * n) * q_binomial(2 * n - 1, n) == q_integer(n) * q_binomial(2 * n, n)

    def test_j_bound_enforced(self):
        with pytest.raises(ConstraintViolation):
            corollary_check("C71", {"a": 1, "m": 1, "n": 1, "r": 0, "j": 3})
        assert corollary_check("C71", {"a": 1, "m": 1, "n": 1, "r": 0, "j": 3}, conjectural=True).holds

    def test_parity_enforced(self):
        with pytest.raises(ParityViolation):
            corollary_check("C63a", {"n": 2, "r": 0, "s": 1, "t": 1})

    def test_missing_parameter(self):
        with pytest.raises(TypeError):
            corollary_check("C72", {"a": 1, "l": 1, "m": 1, "r": 0})

    def test_unknown(self):
        with pytest.raises(UnknownFamily):
            corollary_check("C99", {})


SMALL = {
    "C63a": [{"n": n, "s": s, "t": t, "r": r} for n in (1, 2) for s in (1, 2) for t in (1, 2)
             for r in (0, 1, 2) if (r + s + t) % 2],
    "C71": [{"a": a, "m": m, "n": n, "r": 1} for a in (1, 2) for m in (1, 2) for n in (1, 3)],
    "C72": [{"a": 1, "l": l, "m": m, "n": n, "r": 0} for l, m, n in itertools.product((1, 2), repeat=3)],
    "C73": [{"a": a, "b": b, "n": n, "r": 1} for a in (1, 2) for b in (0, 2) for n in (1, 2)],
    "C7n123": [{"a": 1, "b": b, "c": 2, "n": n, "r": 0} for b in (1, 2) for n in (1, 2)],
    "C76": [{"n": n, "a": a, "r": 1} for n in (1, 2) for a in ((1, 2), (2, 1, 1))],
}
for cid in ("C63b",):
    SMALL[cid] = SMALL["C63a"]
for cid in ("C74a", "C74b", "C75a", "C75b"):
    SMALL[cid] = [{"a": a, "b": 1, "c": c, "n": n, "r": 0} for a in (1, 2) for c in (1, 2) for n in (1, 2)]


@pytest.mark.parametrize("cid", sorted(COROLLARIES))
def test_every_corollary_on_a_small_lattice(cid):
    checked = 0
    for params in SMALL[cid]:
        bound = COROLLARIES[cid].j_bound(params)
        for j in range(bound + 1):
            for variant in ("plus", "minus"):
                v = corollary_check(cid, dict(params, j=j, variant=variant))
                assert v.holds, (cid, params, j, variant)
                checked += 1
    assert checked > 0


class TestConjectures:
    def test_trivial_modulus(self):
        total, mod = catalogue_sides("ConjFinal", {"n": 1, "rs": (1,)})
        assert mod.expand() == ONE
        assert conjecture_check("ConjFinal", {"n": 1, "rs": (1,), "j": 0}).holds

    def test_two_exponents(self):
        _, mod = catalogue_sides("ConjFinal", {"n": 2, "rs": (1, 2)})
        assert mod.expand() == cyclotomic(4)
        assert conjecture_check("ConjFinal", {"n": 2, "rs": (1, 2), "j": 1}).holds

    def test_parity(self):
        with pytest.raises(ParityViolation):
            conjecture_check("ConjFinal", {"n": 2, "rs": (1, 1)})
        with pytest.raises(ParityViolation):
            conjecture_check("Conj246n_1", {"n": 1, "r": 1, "s": 1, "t": 2})

    @pytest.mark.parametrize("cid", sorted(c for c in CONJECTURES if c.startswith("Conj246n")))
    def test_first_conjecture_small(self, cid):
        for n in (1, 2):
            for r, s, t in [(1, 1, 1), (1, 2, 2), (2, 1, 2)]:
                for j in range(r + s + t + 1):
                    for variant in ("plus", "minus"):
                        p = {"n": n, "r": r, "s": s, "t": t, "j": j, "variant": variant}
                        assert conjecture_check(cid, p).holds, (cid, p)

    def test_q_equals_one(self):
        total, mod = catalogue_sides("ConjFinal", {"n": 2, "rs": (2, 1), "j": 1})
        assert eval_int(total, 1) % eval_int(mod.expand(), 1) == 0
