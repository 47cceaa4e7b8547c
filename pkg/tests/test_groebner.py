import random

import pytest

from holonomic import (GroebnerBasis, OrePolynomial, RationalFunction,
                       buchberger, eliminate, module_gb, rank, reduce)
from holonomic.groebner import DegLex, POT, _interreduce
from holonomic.ore import promote_to_elimination
from holonomic.expressions import parse_algebra, parse_operator
from holonomic.telescoping import DeltaSpec, split_delta

from conftest import random_operator


@pytest.fixture
def laguerre_gb(laguerre_algebra, laguerre_ops):
    ops = [parse_operator(t, laguerre_algebra) for t in laguerre_ops]
    return buchberger(ops)


class TestReduce:
    def test_self_reduction(self, laguerre_gb, laguerre_algebra):
        for text in ("S[a] + Der[x] - 1", "x*Der[x]^2 + (a-x+1)*Der[x] + n"):
            g = parse_operator(text, laguerre_algebra)
            assert laguerre_gb.reduce(g).is_zero()

    def test_one_not_in_annihilator(self, laguerre_gb, laguerre_algebra):
        nf = laguerre_gb.reduce(laguerre_algebra.one())
        assert nf == laguerre_algebra.one()

    def test_idempotent(self, laguerre_gb, laguerre_algebra):
        rng = random.Random(12)
        for _ in range(10):
            P = random_operator(laguerre_algebra, rng, nterms=3, maxexp=2)
            r1 = laguerre_gb.reduce(P)
            assert laguerre_gb.reduce(r1) == r1

    def test_confluence_two_strategies(self, laguerre_gb, laguerre_algebra):
        # reduction against a permuted basis reaches the same normal form
        rng = random.Random(13)
        shuffled = list(laguerre_gb.elements)
        rng.shuffle(shuffled)
        for _ in range(10):
            P = random_operator(laguerre_algebra, rng, nterms=3, maxexp=2)
            a = laguerre_gb.reduce(P)
            b = reduce(P, shuffled, laguerre_gb.order)
            assert a == b


class TestBuchberger:
    def test_laguerre_leading_monomials(self, laguerre_gb, laguerre_algebra):
        A = laguerre_algebra
        leads = set(laguerre_gb.leading_monomials())
        assert leads == {A.gen_monomial("a"), A.gen_monomial("n"), A.gen_monomial("x", 2)}

    def test_single_operator(self, laguerre_algebra):
        g = parse_operator("(n+1)*S[n] - x*Der[x]", laguerre_algebra)
        gb = buchberger([g])
        assert len(gb) == 1
        assert gb.elements[0] == g.monic(gb.order)

    def test_weyl_pair_elimination_mode(self):
        W = parse_algebra("Der[x]").with_elimination(["x"])
        xop = OrePolynomial(W, {(1, 0): RationalFunction.const(W.ctx, 1)})
        gb = buchberger([xop, W.gen("x")])
        assert gb.is_trivial()
        assert [str(g) for g in gb] == ["1"]

    def test_self_membership(self, laguerre_algebra):
        rng = random.Random(19)
        gens = [random_operator(laguerre_algebra, rng, nterms=2, maxexp=1) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        gb = buchberger(gens)
        for g in gens:
            assert gb.reduce(g).is_zero()

    def test_skew_coprime_leads_not_pruned(self):
        # S_n - x and D_x - n have coprime leading monomials but generate
        # the unit ideal; the (invalid here) product criterion would miss it
        A = parse_algebra("S[n], Der[x]")
        g1 = parse_operator("S[n] - x", A)
        g2 = parse_operator("Der[x] - n", A)
        gb = buchberger([g1, g2])
        assert gb.is_trivial()


class TestEliminate:
    def test_binomial_pascal(self):
        B = parse_algebra("S[k], S[n]")
        b1 = parse_operator("(k+1)*S[k] - (n-k)", B)
        b2 = parse_operator("(n+1-k)*S[n] - (n+1)", B)
        Be = B.with_elimination(["k"])
        free = eliminate([promote_to_elimination(b, Be) for b in (b1, b2)], ["k"])
        assert free
        # the k-free operator splits into telescoper S_n - 2
        spec = DeltaSpec.parse("S[k]-1", B)
        from holonomic.ore import demote_from_elimination
        found = []
        for op in free:
            T, _ = split_delta(demote_from_elimination(op, B), spec)
            if not T.is_zero():
                found.append(T)
        tb = buchberger(found)
        target = parse_operator("S[n] - 2", B)
        assert tb.reduce(target).is_zero()

    def test_already_free(self):
        B = parse_algebra("S[k], S[n]")
        Be = B.with_elimination(["k"])
        op = parse_operator("S[n] - 2", Be)
        free = eliminate([op], ["k"])
        assert len(free) == 1
        assert free[0] == op

    def test_empty_elimination_set(self):
        A = parse_algebra("Der[x]")
        g1 = parse_operator("x*Der[x] - 1", A)
        g2 = parse_operator("Der[x]^2", A)
        gb1 = buchberger([g1, g2])
        free = eliminate(gb1.elements, [])
        gb2 = buchberger(free)
        for g in gb1:
            assert gb2.reduce(g).is_zero()
        for g in gb2:
            assert gb1.reduce(g).is_zero()


class TestModuleGB:
    def test_single_row(self):
        A = parse_algebra("S[n], Der[x]")
        pot = POT([1, 0], DegLex(size=A.nmon))
        row = [parse_operator("(n+1)*S[n] - 1", A), A.zero()]
        out = module_gb([row], pot)
        assert len(out) == 1
        lead_coeff = out[0][0].leading_term(DegLex(size=A.nmon))[1]
        assert lead_coeff.is_one()

    def test_free_module_units(self):
        A = parse_algebra("S[n], Der[x]")
        pot = POT([1, 0], DegLex(size=A.nmon))
        rows = [[A.one(), A.zero()], [A.zero(), A.one()]]
        out = module_gb(rows, pot)
        assert len(out) == 2
        supports = sorted(tuple(not c.is_zero() for c in vec) for vec in out)
        assert supports == [(False, True), (True, False)]

    def test_subtraction_uncovers_component(self):
        A = parse_algebra("S[n], Der[x]")
        pot = POT([1, 0], DegLex(size=A.nmon))
        P = parse_operator("S[n] + x", A)
        Q = parse_operator("Der[x] - n", A)
        rows = [[P, Q], [A.zero(), Q]]
        out = module_gb(rows, pot)
        # (P, 0) is in the module; its reduction must vanish
        from holonomic.groebner import module_reduce
        nf = module_reduce([P, A.zero()], out, pot)
        assert all(c.is_zero() for c in nf)


class TestJson:
    def test_round_trip(self, laguerre_gb):
        data = laguerre_gb.dumps()
        back = GroebnerBasis.loads(data)
        assert back.algebra == laguerre_gb.algebra
        assert back.elements == laguerre_gb.elements
        assert back.dumps() == data

    def test_q_round_trip(self):
        Aq = parse_algebra("QS[qk,q^k], QS[qn,q^n]")
        gb = buchberger([parse_operator("QS[qk,q]^2 + q^3*qk*QS[qk,q] - q*qn", Aq)])
        back = GroebnerBasis.loads(gb.dumps())
        assert back.algebra == gb.algebra
        assert back.elements == gb.elements


class TestStaircase:
    def test_infinite_staircase_detected(self):
        A = parse_algebra("S[n], Der[x]")
        gb = buchberger([parse_operator("S[n] - x", A)])
        from holonomic import NotDFiniteError
        with pytest.raises(NotDFiniteError, match="not d-finite"):
            rank(gb)

    def test_finite(self, laguerre_gb):
        assert rank(laguerre_gb).rank == 2
