"""Left Groebner bases in Ore algebras.

Implements monomial orders (deglex, lex, elimination blocks, and
position-over-term for modules), left reduction to normal form, Buchberger
completion for left ideals, elimination of promoted variables via block
orders, and module Groebner bases used by the Takayama-style elimination.

The product criterion is deliberately NOT used: with skew commutation the
S-polynomial of operators with coprime leading monomials need not reduce to
zero (e.g. S_n - x and D_x - n generate the unit ideal although their
leading monomials are coprime).  Only the chain criterion prunes pairs.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .config import Caps, CapExceeded, DEFAULT_CAPS
from .ore import (Generator, OreAlgebra, OrePolynomial, ore_mul,
                  DERIVATIVE, QSHIFT, SHIFT)
from .ratfun import RationalFunction


# ------------------------------------------------------------ monomial orders


class MonomialOrder:
    """Total order on exponent tuples, exposed as a sort key."""

    def key(self, m: tuple):
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError


class DegLex(MonomialOrder):
    """Degree first, ties broken lexicographically by precedence."""

    def __init__(self, precedence: Sequence[int] | None = None, size: int | None = None):
        if precedence is None and size is None:
            raise ValueError("need precedence or size")
        self.precedence = tuple(precedence) if precedence is not None else tuple(range(size))

    def key(self, m: tuple):
        return (sum(m), tuple(m[i] for i in self.precedence))

    def describe(self) -> dict:
        return {"kind": "deglex", "precedence": list(self.precedence)}


class Lex(MonomialOrder):
    def __init__(self, precedence: Sequence[int] | None = None, size: int | None = None):
        if precedence is None and size is None:
            raise ValueError("need precedence or size")
        self.precedence = tuple(precedence) if precedence is not None else tuple(range(size))

    def key(self, m: tuple):
        return tuple(m[i] for i in self.precedence)

    def describe(self) -> dict:
        return {"kind": "lex", "precedence": list(self.precedence)}


class BlockOrder(MonomialOrder):
    """Eliminated positions dominate: any monomial touching them is larger."""

    def __init__(self, outer: Sequence[int], inner: MonomialOrder):
        self.outer = tuple(outer)
        self.inner = inner

    def key(self, m: tuple):
        outer_part = tuple(m[i] for i in self.outer)
        return (sum(outer_part), outer_part, self.inner.key(m))

    def describe(self) -> dict:
        return {"kind": "block", "outer": list(self.outer), "inner": self.inner.describe()}


def default_order(algebra: OreAlgebra) -> MonomialOrder:
    """Deglex in declaration order; elimination variables form a block."""
    if not algebra.elim:
        return DegLex(size=algebra.nmon)
    outer = tuple(range(len(algebra.elim)))
    return BlockOrder(outer, DegLex(size=algebra.nmon))


def order_from_descriptor(d: dict) -> MonomialOrder:
    kind = d["kind"]
    if kind == "deglex":
        return DegLex(precedence=d["precedence"])
    if kind == "lex":
        return Lex(precedence=d["precedence"])
    if kind == "block":
        return BlockOrder(d["outer"], order_from_descriptor(d["inner"]))
    raise ValueError(f"unknown order kind {kind!r}")


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mon_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mon_sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


# ----------------------------------------------------------------- reduction


def reduce(P: OrePolynomial, basis, order: MonomialOrder | None = None) -> OrePolynomial:
    """Left normal form of P modulo the basis.

    Zero iff P lies in the generated left ideal when the basis is a Groebner
    basis; idempotent.
    """
    if isinstance(basis, GroebnerBasis):
        order = order or basis.order
        elements = basis.elements
    else:
        elements = list(basis)
        if order is None:
            raise ValueError("order required when reducing against a raw list")
    A = P.algebra
    leads = [(g, g.leading_term(order)[0]) for g in elements if not g.is_zero()]
    result = A.zero()
    work = P
    while not work.is_zero():
        m, c = work.leading_term(order)
        hit = None
        for g, lm in leads:
            if _divides(lm, m):
                hit = (g, lm)
                break
        if hit is None:
            t = OrePolynomial(A, {m: c})
            result = result + t
            work = work - t
            continue
        g, lm = hit
        u = _mon_sub(m, lm)
        if any(u):
            h = ore_mul(OrePolynomial(A, {u: RationalFunction.const(A.ctx, 1)}), g)
        else:
            h = g
        _, hc = h.leading_term(order)
        work = work - h.scale(c * hc.inverse())
    return result


def _reduce_against(P: OrePolynomial, leads, order: MonomialOrder) -> OrePolynomial:
    """Normal form against a precomputed (element, leading monomial) list."""
    A = P.algebra
    work = P
    result = A.zero()
    while not work.is_zero():
        m, c = work.leading_term(order)
        hit = None
        for g, lm in leads:
            if _divides(lm, m):
                hit = (g, lm)
                break
        if hit is None:
            t = OrePolynomial(A, {m: c})
            result = result + t
            work = work - t
            continue
        g, lm = hit
        u = _mon_sub(m, lm)
        if any(u):
            h = ore_mul(OrePolynomial(A, {u: RationalFunction.const(A.ctx, 1)}), g)
        else:
            h = g
        _, hc = h.leading_term(order)
        work = work - h.scale(c * hc.inverse())
    return result


# ------------------------------------------------------------- Groebner basis


class GroebnerBasis:
    """A reduced left Groebner basis with its algebra and monomial order."""

    def __init__(self, algebra: OreAlgebra, order: MonomialOrder, elements: Sequence[OrePolynomial]):
        self.algebra = algebra
        self.order = order
        self.elements = list(elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        ops = "; ".join(str(g) for g in self.elements)
        return f"GroebnerBasis[{ops}]"

    def leading_monomials(self) -> list:
        return [g.leading_term(self.order)[0] for g in self.elements]

    def reduce(self, P: OrePolynomial) -> OrePolynomial:
        return reduce(P, self)

    def contains(self, P: OrePolynomial) -> bool:
        return self.reduce(P).is_zero()

    def is_trivial(self) -> bool:
        """True when the basis generates the whole algebra."""
        return any(not any(m) for g in self.elements for m in [g.leading_term(self.order)[0]])

    # ------------------------------------------------------------------ JSON

    def to_json(self) -> dict:
        A = self.algebra
        return {
            "algebra": {
                "field_vars": list(A.field_vars),
                "params": list(A.params),
                "generators": [{"kind": g.kind, "var": g.var,
                                **({"q": g.q, "disc": g.disc} if g.kind == QSHIFT else {})}
                               for g in A.gens],
                "elim": list(A.elim),
            },
            "order": self.order.describe(),
            "operators": [str(g) for g in self.elements],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @staticmethod
    def from_json(data: dict) -> "GroebnerBasis":
        from .expressions import parse_operator
        a = data["algebra"]
        gens = []
        for g in a["generators"]:
            if g["kind"] == QSHIFT:
                gens.append(Generator(QSHIFT, g["var"], q=g["q"], disc=g.get("disc")))
            else:
                gens.append(Generator(g["kind"], g["var"]))
        algebra = OreAlgebra(a["field_vars"], gens, a.get("params", ()), a.get("elim", ()))
        order = order_from_descriptor(data["order"])
        ops = [parse_operator(s, algebra) for s in data["operators"]]
        return GroebnerBasis(algebra, order, ops)

    @staticmethod
    def loads(text: str) -> "GroebnerBasis":
        return GroebnerBasis.from_json(json.loads(text))


def buchberger(generators: Iterable[OrePolynomial], order: MonomialOrder | None = None,
               caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Reduced left Groebner basis of the generated left ideal."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ValueError("no nonzero generators")
    A = gens[0].algebra
    order = order or default_order(A)
    G = [g.monic(order) for g in gens]
    leads = [g.leading_term(order)[0] for g in G]

    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))}
    done = set()
    budget = caps.buchberger_pairs
    while pairs:
        # normal strategy: smallest lcm first
        best = min(pairs, key=lambda p: (order.key(_mon_lcm(leads[p[0]], leads[p[1]])), p))
        pairs.discard(best)
        i, j = best
        done.add(best)
        lcm = _mon_lcm(leads[i], leads[j])
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j) or not _divides(leads[k], lcm):
                continue
            pik = (min(i, k), max(i, k))
            pjk = (min(j, k), max(j, k))
            if pik in done and pjk in done:
                skip = True
                break
        if skip:
            continue
        budget -= 1
        if budget < 0:
            raise CapExceeded("buchberger pair budget exhausted")
        s = _spoly(G[i], G[j], leads[i], leads[j], lcm, order)
        nf = _reduce_against(s, list(zip(G, leads)), order)
        if nf.is_zero():
            continue
        nf = nf.monic(order)
        G.append(nf)
        leads.append(nf.leading_term(order)[0])
        new = len(G) - 1
        for k in range(new):
            pairs.add((k, new))
    return GroebnerBasis(A, order, _interreduce(G, order))


def _spoly(f, g, lf, lg, lcm, order):
    A = f.algebra
    uf = _mon_sub(lcm, lf)
    ug = _mon_sub(lcm, lg)
    hf = ore_mul(OrePolynomial(A, {uf: RationalFunction.const(A.ctx, 1)}), f) if any(uf) else f
    hg = ore_mul(OrePolynomial(A, {ug: RationalFunction.const(A.ctx, 1)}), g) if any(ug) else g
    _, cf = hf.leading_term(order)
    _, cg = hg.leading_term(order)
    return hf.scale(cf.inverse()) - hg.scale(cg.inverse())


def _interreduce(G: list, order: MonomialOrder) -> list:
    """Minimal, tail-reduced, monic basis with deterministic element order."""
    # drop elements whose leading monomial is divisible by another's
    keep = []
    leads = [g.leading_term(order)[0] for g in G]
    for i, g in enumerate(G):
        lm = leads[i]
        dominated = False
        for k, h in enumerate(G):
            if k == i:
                continue
            lk = leads[k]
            if _divides(lk, lm) and (lk != lm or k < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    # full tail reduction against the others
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        if others:
            nf = reduce(g, others, order)
        else:
            nf = g
        if not nf.is_zero():
            out.append(nf.monic(order))
    out.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    return out


# ---------------------------------------------------------------- elimination


def eliminate(generators: Iterable[OrePolynomial], eliminate_vars: Sequence[str],
              caps: Caps = DEFAULT_CAPS) -> list:
    """Groebner-basis elements free of the given promoted variables.

    The generators must live in an elimination-mode algebra whose ``elim``
    list contains the variables; a block order puts them in front.  Raises
    CapExceeded ("no elimination found within bound") when the completion
    budget runs out before the basis is done.
    """
    gens = list(generators)
    if not gens:
        return []
    A = gens[0].algebra
    idx = []
    for v in eliminate_vars:
        if v not in A.elim:
            raise ValueError(f"{v} is not promoted to a monomial generator")
        idx.append(A.elim.index(v))
    order = BlockOrder(tuple(idx), DegLex(size=A.nmon))
    try:
        gb = buchberger(gens, order, caps)
    except CapExceeded as exc:
        raise CapExceeded("no elimination found within bound") from exc
    out = []
    for g in gb.elements:
        if all(all(m[i] == 0 for i in idx) for m in g.terms):
            out.append(g)
    return out


# ------------------------------------------------------------------- modules


class POT(MonomialOrder):
    """Position-over-term key for module terms (position, monomial)."""

    def __init__(self, weights: Sequence, inner: MonomialOrder):
        self.weights = list(weights)
        self.inner = inner

    def key(self, term: tuple):
        pos, m = term
        return (self.weights[pos], self.inner.key(m))

    def describe(self) -> dict:
        return {"kind": "pot", "weights": list(self.weights), "inner": self.inner.describe()}


def _module_lt(vec: list, pot: POT):
    best = None
    for pos, comp in enumerate(vec):
        if comp.is_zero():
            continue
        for m in comp.terms:
            k = pot.key((pos, m))
            if best is None or k > best[0]:
                best = (k, pos, m, comp.terms[m])
    return best  # (key, pos, monomial, coeff) or None


def _vec_is_zero(vec: list) -> bool:
    return all(c.is_zero() for c in vec)


def _vec_sub(a: list, b: list) -> list:
    return [x - y for x, y in zip(a, b)]


def _vec_scale(a: list, c) -> list:
    return [x.scale(c) for x in a]


def _vec_mul_monomial(vec: list, u: tuple, A: OreAlgebra) -> list:
    if not any(u):
        return vec
    mono = OrePolynomial(A, {u: RationalFunction.const(A.ctx, 1)})
    return [ore_mul(mono, x) if not x.is_zero() else x for x in vec]


def module_reduce(vec: list, basis: list, pot: POT, head_only: bool = False) -> list:
    """Left normal form of a module element against basis vectors."""
    if not basis:
        return vec
    A = None
    for comp in vec:
        A = comp.algebra
        break
    leads = [(_module_lt(b, pot), b) for b in basis]
    work = list(vec)
    result = [c.algebra.zero() for c in vec]
    while not _vec_is_zero(work):
        key, pos, m, c = _module_lt(work, pot)
        hit = None
        for lt, b in leads:
            if lt is None:
                continue
            _, bpos, bm, _ = lt
            if bpos == pos and _divides(bm, m):
                hit = (b, bm)
                break
        if hit is None:
            if head_only:
                return [r + w for r, w in zip(result, work)]
            t = OrePolynomial(work[pos].algebra, {m: c})
            result[pos] = result[pos] + t
            work[pos] = work[pos] - t
            continue
        b, bm = hit
        u = _mon_sub(m, bm)
        h = _vec_mul_monomial(b, u, work[pos].algebra)
        _, hpos, hm, hc = _module_lt(h, pot)
        work = _vec_sub(work, _vec_scale(h, c * hc.inverse()))
    return result


def module_gb(rows: Sequence[Sequence[OrePolynomial]], pot: POT,
              caps: Caps = DEFAULT_CAPS) -> list:
    """Reduced left module Groebner basis of the row span."""
    rows = [list(r) for r in rows if not _vec_is_zero(list(r))]
    if not rows:
        return []
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("module rows of unequal width")
    A = None
    for r in rows:
        for c in r:
            A = c.algebra
            break
        if A:
            break

    G = []
    for r in rows:
        lt = _module_lt(r, pot)
        G.append(_vec_scale(r, lt[3].inverse()))
    lts = [_module_lt(g, pot) for g in G]

    pairs = {(i, j) for i in range(len(G)) for j in range(i + 1, len(G))
             if lts[i][1] == lts[j][1]}
    done = set()
    budget = caps.buchberger_pairs
    while pairs:
        best = min(pairs, key=lambda p: (pot.inner.key(_mon_lcm(lts[p[0]][2], lts[p[1]][2])), p))
        pairs.discard(best)
        done.add(best)
        i, j = best
        pos = lts[i][1]
        lcm = _mon_lcm(lts[i][2], lts[j][2])
        skip = False
        for k in range(len(G)):
            if k in (i, j) or lts[k][1] != pos or not _divides(lts[k][2], lcm):
                continue
            if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
                skip = True
                break
        if skip:
            continue
        budget -= 1
        if budget < 0:
            raise CapExceeded("module completion budget exhausted")
        hi = _vec_mul_monomial(G[i], _mon_sub(lcm, lts[i][2]), A)
        hj = _vec_mul_monomial(G[j], _mon_sub(lcm, lts[j][2]), A)
        ci = _module_lt(hi, pot)[3]
        cj = _module_lt(hj, pot)[3]
        s = _vec_sub(_vec_scale(hi, ci.inverse()), _vec_scale(hj, cj.inverse()))
        nf = module_reduce(s, G, pot)
        if _vec_is_zero(nf):
            continue
        lt = _module_lt(nf, pot)
        G.append(_vec_scale(nf, lt[3].inverse()))
        lts.append(_module_lt(G[-1], pot))
        new = len(G) - 1
        for k in range(new):
            if lts[k][1] == lts[new][1]:
                pairs.add((k, new))
    # interreduce
    keep = []
    for i, g in enumerate(G):
        lt = lts[i]
        dominated = False
        for k in range(len(G)):
            if k == i:
                continue
            lk = lts[k]
            if lk[1] == lt[1] and _divides(lk[2], lt[2]) and (lk[2] != lt[2] or k < i):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        nf = module_reduce(g, others, pot) if others else g
        if not _vec_is_zero(nf):
            lt = _module_lt(nf, pot)
            out.append(_vec_scale(nf, lt[3].inverse()))
    out.sort(key=lambda g: _module_lt(g, pot)[0])
    return out
