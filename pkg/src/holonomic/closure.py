"""Closure properties of D-finite functions.

Everything here works in the finite-dimensional quotient of the algebra by
an annihilating ideal: a function is represented by the ideal, its
derivative/shift tower by coordinate vectors over the staircase basis.  The
closure operations (sum, product, operator application, substitution) build
a new coordinate model and enumerate monomials in degree-lexicographic
order until enough linear dependencies close a Groebner basis; dependencies
are found with exact echelon bookkeeping over the rational function field.

Output ideals are the ideals of all relations found up to the rank bound;
for special inputs they may be smaller than the full annihilator of the
actual sum or product, which is the documented contract.
"""

from __future__ import annotations

import heapq
from typing import Callable, Mapping, Sequence

from .config import Caps, DEFAULT_CAPS
from .groebner import DegLex, GroebnerBasis, MonomialOrder, default_order, reduce
from .ore import (DERIVATIVE, QSHIFT, SHIFT, Generator, OreAlgebra,
                  OrePolynomial, ore_mul)
from .ratfun import Context, RationalFunction


class NotDFiniteError(ValueError):
    pass


class QuotientBasis:
    """Staircase of monomials irreducible modulo a Groebner basis."""

    def __init__(self, staircase: Sequence[tuple]):
        self.staircase = list(staircase)
        self.rank = len(self.staircase)
        self.index = {m: i for i, m in enumerate(self.staircase)}

    def __repr__(self):
        return f"QuotientBasis(rank={self.rank})"


def rank(G: GroebnerBasis, caps: Caps = DEFAULT_CAPS) -> QuotientBasis:
    """Staircase and dimension of the quotient; raises when not finite."""
    leads = G.leading_monomials()
    n = G.algebra.nmon
    if not leads:
        raise NotDFiniteError("empty basis")
    # finiteness: every monomial position needs a pure power among the leads
    for i in range(n):
        ok = any((not any(m[j] for j in range(n) if j != i)) and m[i] > 0 for m in leads) \
            or any(not any(m) for m in leads)
        if not ok:
            raise NotDFiniteError("not d-finite w.r.t. this algebra "
                                  f"(no pure power of {G.algebra.mon_name(i)} among the leading monomials)")
    zero = (0,) * n
    if any(not any(m) for m in leads):
        return QuotientBasis([])  # ideal contains a unit: annihilator of 0
    seen = {zero}
    queue = [zero]
    out = []
    while queue:
        m = queue.pop()
        if any(all(x >= y for x, y in zip(m, lm)) for lm in leads):
            continue
        out.append(m)
        if len(out) > caps.staircase_limit:
            raise NotDFiniteError("staircase larger than the configured limit")
        for i in range(n):
            child = m[:i] + (m[i] + 1,) + m[i + 1:]
            if child not in seen:
                seen.add(child)
                queue.append(child)
    out.sort(key=lambda m: (sum(m), m))
    return QuotientBasis(out)


def nf_coords(G: GroebnerBasis, qb: QuotientBasis, P: OrePolynomial) -> list:
    """Coordinates of the normal form of P over the staircase basis."""
    nf = G.reduce(P)
    ctx = G.algebra.ctx
    coords = [RationalFunction.const(ctx, 0)] * qb.rank
    for m, c in nf.terms.items():
        if m not in qb.index:
            raise ValueError("normal form outside the staircase (basis not reduced?)")
        coords[qb.index[m]] = c
    return coords


def multiplication_matrices(G: GroebnerBasis, qb: QuotientBasis) -> list:
    """Per generator: matrix M with rows M[i] = coords of NF(gen * U_i)."""
    A = G.algebra
    mats = []
    for g in A.gens:
        gen_op = A.gen(g.var)
        rows = []
        for m in qb.staircase:
            u = OrePolynomial(A, {m: RationalFunction.const(A.ctx, 1)})
            rows.append(nf_coords(G, qb, ore_mul(gen_op, u)))
        mats.append(rows)
    return mats


# ------------------------------------------------------------- linear algebra


class _Echelon:
    """Incremental echelon form with dependency extraction."""

    def __init__(self, ctx: Context, dim: int):
        self.ctx = ctx
        self.dim = dim
        self.rows = []  # (pivot_index, vector, expr: dict basis_index -> coeff)
        self.nbasis = 0

    def insert(self, vec: list):
        """Returns None when vec is independent (and stores it), else the
        dependency coefficients over previously inserted vectors."""
        r = list(vec)
        rexpr: dict = {}
        for pivot, row, expr in self.rows:
            c = r[pivot]
            if c.is_zero():
                continue
            f = c * row[pivot].inverse()
            for j in range(self.dim):
                if not row[j].is_zero():
                    r[j] = r[j] - f * row[j]
            for b, e in expr.items():
                s = rexpr.get(b)
                s = f * e if s is None else s + f * e
                if s.is_zero():
                    rexpr.pop(b, None)
                else:
                    rexpr[b] = s
        pivot = next((j for j in range(self.dim) if not r[j].is_zero()), None)
        if pivot is None:
            return rexpr
        expr = {b: -e for b, e in rexpr.items()}
        expr[self.nbasis] = RationalFunction.const(self.ctx, 1)
        self.rows.append((pivot, r, expr))
        self.nbasis += 1
        return None


def invert_matrix(M: list, ctx: Context) -> list:
    """Inverse of a small square matrix over the fraction field."""
    n = len(M)
    aug = [[M[i][j] for j in range(n)] + [RationalFunction.const(ctx, 1 if k == i else 0)
                                          for k in range(n)] for i, _ in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not aug[r][col].is_zero()), None)
        if piv is None:
            raise ValueError("matrix not invertible")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and not aug[r][col].is_zero():
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ----------------------------------------------------------------- FGLM walk


def _fglm(algebra: OreAlgebra, start: list, actions: list, dim_bound: int,
          caps: Caps = DEFAULT_CAPS, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Enumerate monomials by deglex, collect relations, return a reduced GB.

    ``actions[d]`` maps the coordinate vector of a monomial m to that of
    generator_d * m in the underlying model.
    """
    order = order or DegLex(size=algebra.nmon)
    ctx = algebra.ctx
    dim = len(start)
    ech = _Echelon(ctx, dim)
    zero_mon = algebra.zero_mon()

    basis_mons: list = []
    basis_vecs: list = []
    leads: list = []
    relations: list = []

    heap = [(order.key(zero_mon), zero_mon, None, None)]
    seen = {zero_mon}
    processed = 0
    while heap:
        _, mon, parent_idx, gen_idx = heapq.heappop(heap)
        if any(all(x >= y for x, y in zip(mon, lm)) for lm in leads):
            continue
        processed += 1
        if processed > caps.staircase_limit:
            raise NotDFiniteError("quotient enumeration exceeded the configured limit")
        vec = start if parent_idx is None else actions[gen_idx](basis_vecs[parent_idx])
        dep = ech.insert(vec)
        if dep is None:
            idx = len(basis_mons)
            basis_mons.append(mon)
            basis_vecs.append(vec)
            if len(basis_mons) > dim_bound:
                raise NotDFiniteError("quotient dimension exceeds the theoretical bound")
            for d in range(len(algebra.gens)):
                child = list(mon)
                child[len(algebra.elim) + d] += 1
                child = tuple(child)
                if child not in seen:
                    seen.add(child)
                    heapq.heappush(heap, (order.key(child), child, idx, d))
        else:
            terms = {mon: RationalFunction.const(ctx, 1)}
            for b, c in dep.items():
                terms[basis_mons[b]] = -c
            relations.append(OrePolynomial(algebra, terms))
            leads.append(mon)
    if not relations:
        raise NotDFiniteError("no relations found (model not finite dimensional)")
    relations.sort(key=lambda g: order.key(g.leading_term(order)[0]))
    return GroebnerBasis(algebra, order, relations)


# ----------------------------------------------------------- coordinate models


def _sigma_coords(ctx: Context, gen: Generator, coords: list) -> list:
    from .ore import _sigma
    return [_sigma(c, gen, 1) for c in coords]


def _apply_matrix(coords: list, M: list, ctx: Context) -> list:
    out = [RationalFunction.const(ctx, 0)] * len(M[0]) if M else []
    for i, a in enumerate(coords):
        if a.is_zero():
            continue
        row = M[i]
        for j, m in enumerate(row):
            if not m.is_zero():
                out[j] = out[j] + a * m
    return out


def _gen_action(G: GroebnerBasis, qb: QuotientBasis, mats: list, gen_index: int) -> Callable:
    """Action of a generator on quotient coordinates (semilinear)."""
    A = G.algebra
    gen = A.gens[gen_index]
    M = mats[gen_index]
    ctx = A.ctx

    def act(coords: list) -> list:
        from .ore import _delta, _sigma
        out = [RationalFunction.const(ctx, 0)] * qb.rank
        for i, a in enumerate(coords):
            if a.is_zero():
                continue
            s = _sigma(a, gen, 1)
            row = M[i]
            for j, m in enumerate(row):
                if not m.is_zero():
                    out[j] = out[j] + s * m
            d = _delta(a, gen)
            if not d.is_zero():
                out[i] = out[i] + d
        return out

    return act


def _unit_start(ctx: Context, qb: QuotientBasis, algebra: OreAlgebra) -> list:
    start = [RationalFunction.const(ctx, 0)] * qb.rank
    start[qb.index[algebra.zero_mon()]] = RationalFunction.const(ctx, 1)
    return start


# ------------------------------------------------------------- closure: sum


def dfinite_plus(I: GroebnerBasis, J: GroebnerBasis, caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Annihilating ideal of f + g, rank at most rank(I) + rank(J)."""
    if I.algebra != J.algebra:
        raise ValueError("ideals over different algebras")
    A = I.algebra
    qi, qj = rank(I, caps), rank(J, caps)
    if qi.rank == 0:
        return J
    if qj.rank == 0:
        return I
    mi, mj = multiplication_matrices(I, qi), multiplication_matrices(J, qj)
    ctx = A.ctx

    def combine(ai, aj):
        return list(ai) + list(aj)

    start = combine(_unit_start(ctx, qi, A), _unit_start(ctx, qj, A))
    actions = []
    for d in range(len(A.gens)):
        fi = _gen_action(I, qi, mi, d)
        fj = _gen_action(J, qj, mj, d)

        def act(coords, fi=fi, fj=fj, ri=qi.rank):
            return combine(fi(coords[:ri]), fj(coords[ri:]))

        actions.append(act)
    return _fglm(A, start, actions, qi.rank + qj.rank, caps)


# ---------------------------------------------------------- closure: product


def dfinite_times(I: GroebnerBasis, J: GroebnerBasis, caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Annihilating ideal of f * g, rank at most rank(I) * rank(J).

    Shift and q-shift generators act multiplicatively on both tensor slots,
    derivative generators by the Leibniz rule.
    """
    if I.algebra != J.algebra:
        raise ValueError("ideals over different algebras")
    A = I.algebra
    qi, qj = rank(I, caps), rank(J, caps)
    if qi.rank == 0 or qj.rank == 0:
        return I if qi.rank == 0 else J
    mi, mj = multiplication_matrices(I, qi), multiplication_matrices(J, qj)
    ctx = A.ctx
    ri, rj = qi.rank, qj.rank

    def idx(i, j):
        return i * rj + j

    from .ore import _delta, _sigma

    actions = []
    for d, gen in enumerate(A.gens):
        MI, MJ = mi[d], mj[d]

        def act(coords, MI=MI, MJ=MJ, gen=gen):
            out = [RationalFunction.const(ctx, 0)] * (ri * rj)
            for i in range(ri):
                for j in range(rj):
                    a = coords[idx(i, j)]
                    if a.is_zero():
                        continue
                    if gen.kind == DERIVATIVE:
                        dd = _delta(a, gen)
                        if not dd.is_zero():
                            out[idx(i, j)] = out[idx(i, j)] + dd
                        for k in range(ri):
                            m = MI[i][k]
                            if not m.is_zero():
                                out[idx(k, j)] = out[idx(k, j)] + a * m
                        for l in range(rj):
                            m = MJ[j][l]
                            if not m.is_zero():
                                out[idx(i, l)] = out[idx(i, l)] + a * m
                    else:
                        s = _sigma(a, gen, 1)
                        for k in range(ri):
                            mik = MI[i][k]
                            if mik.is_zero():
                                continue
                            smik = s * mik
                            for l in range(rj):
                                m = MJ[j][l]
                                if not m.is_zero():
                                    out[idx(k, l)] = out[idx(k, l)] + smik * m
            return out

        actions.append(act)

    start = [RationalFunction.const(ctx, 0)] * (ri * rj)
    start[idx(qi.index[A.zero_mon()], qj.index[A.zero_mon()])] = RationalFunction.const(ctx, 1)
    return _fglm(A, start, actions, ri * rj, caps)


# --------------------------------------------------- closure: apply operator


def apply_operator(Q: OrePolynomial, I: GroebnerBasis, caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Annihilating ideal of Q f, rank at most rank(I)."""
    A = I.algebra
    if Q.is_zero():
        return GroebnerBasis(A, I.order, [A.one()])
    qb = rank(I, caps)
    if qb.rank == 0:
        return I
    mats = multiplication_matrices(I, qb)
    start = nf_coords(I, qb, Q)
    actions = [_gen_action(I, qb, mats, d) for d in range(len(A.gens))]
    return _fglm(A, start, actions, qb.rank, caps)


# ------------------------------------------------------ closure: substitution


def substitute_algebraic(I: GroebnerBasis, var: str, value: RationalFunction,
                         target: OreAlgebra, caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Annihilating ideal of f with a continuous variable replaced by a
    rational expression in the target algebra's continuous variables.

    The caller declares the target algebra explicitly.  Rank is preserved
    (at most rank(I)) for rational substitutions.
    """
    A = I.algebra
    src_gen = A.generator_for(var)
    if src_gen.kind != DERIVATIVE:
        raise ValueError(f"{var} is not a continuous variable of the source algebra")
    if value.is_constant():
        raise ValueError("degenerate substitution: replacement is constant")
    tctx = target.ctx
    mapping = {var: value}
    qb = rank(I, caps)
    if qb.rank == 0:
        return GroebnerBasis(target, default_order(target), [target.one()])
    mats = multiplication_matrices(I, qb)

    def phi(c: RationalFunction) -> RationalFunction:
        return c.compose(tctx, mapping)

    phimats = {}

    def phimat(d: int) -> list:
        if d not in phimats:
            phimats[d] = [[phi(x) for x in row] for row in mats[d]]
        return phimats[d]

    src_gen_index = {g.var: d for d, g in enumerate(A.gens)}
    dvar_idx = src_gen_index[var]

    from .ore import _delta, _sigma

    actions = []
    for tg in target.gens:
        if tg.kind == DERIVATIVE:
            dA = value.derivative(tg.var)
            inner = None
            if tg.var in src_gen_index and tg.var != var:
                inner = phimat(src_gen_index[tg.var])

            def act(coords, dA=dA, inner=inner, tg=tg):
                out = [c.derivative(tg.var) for c in coords]
                if not dA.is_zero():
                    chain = _apply_matrix(coords, phimat(dvar_idx), tctx)
                    out = [o + dA * c for o, c in zip(out, chain)]
                if inner is not None:
                    part = _apply_matrix(coords, inner, tctx)
                    out = [o + p for o, p in zip(out, part)]
                return out

            actions.append(act)
        else:
            if tg.var not in src_gen_index:
                def act(coords, tg=tg):
                    return [_sigma(c, tg, 1) for c in coords]
                actions.append(act)
                continue
            M = phimat(src_gen_index[tg.var])

            def act(coords, M=M, tg=tg):
                shifted = [_sigma(c, tg, 1) for c in coords]
                return _apply_matrix(shifted, M, tctx)

            actions.append(act)

    start = [RationalFunction.const(tctx, 0)] * qb.rank
    start[qb.index[A.zero_mon()]] = RationalFunction.const(tctx, 1)
    return _fglm(target, start, actions, qb.rank, caps)


def substitute_integer_linear(I: GroebnerBasis, var: str, coeffs: Mapping[str, int],
                              const: int, target: OreAlgebra,
                              caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Annihilating ideal of f with a discrete variable replaced by an
    integer-linear expression const + sum(c_m * m) in target discrete
    variables.  Rank at most rank(I)."""
    A = I.algebra
    src_gen = A.generator_for(var)
    if src_gen.kind != SHIFT:
        raise ValueError(f"{var} is not a discrete (shift) variable of the source algebra")
    for m, c in coeffs.items():
        if not isinstance(c, int):
            raise ValueError(f"non-integer coefficient for {m}")
    tctx = target.ctx
    # replacement value A(m, ...) as a rational function over the target
    value = RationalFunction.const(tctx, const)
    for m, c in coeffs.items():
        value = value + RationalFunction.var(tctx, m) * c
    mapping = {var: value}
    qb = rank(I, caps)
    if qb.rank == 0:
        return GroebnerBasis(target, default_order(target), [target.one()])
    mats = multiplication_matrices(I, qb)
    ctx = A.ctx

    def phi(c: RationalFunction) -> RationalFunction:
        return c.compose(tctx, mapping)

    src_gen_index = {g.var: d for d, g in enumerate(A.gens)}
    Mvar = mats[src_gen_index[var]]
    inv_cache: dict = {}

    def shift_mat(c: int) -> list:
        """Matrix of the c-fold shift of var, entries over the source field."""
        if c == 0:
            return [[RationalFunction.const(ctx, 1 if i == j else 0)
                     for j in range(qb.rank)] for i in range(qb.rank)]
        if c > 0:
            M = Mvar
            for k in range(1, c):
                Mk = [[x.shift_var(var, k) for x in row] for row in Mvar]
                M = _mat_mul(Mk, M, ctx)
            return M
        # negative: u(v-1) = B(v) u(v) with B(v) = inverse(M) shifted by -1
        if "B" not in inv_cache:
            inv = invert_matrix(Mvar, ctx)
            inv_cache["B"] = [[x.shift_var(var, -1) for x in row] for row in inv]
        B = inv_cache["B"]
        M = B
        for k in range(1, -c):
            Bk = [[x.shift_var(var, -k) for x in row] for row in B]
            M = _mat_mul(Bk, M, ctx)
        return M

    from .ore import _delta, _sigma

    actions = []
    for tg in target.gens:
        if tg.kind == SHIFT and tg.var in coeffs and coeffs[tg.var] != 0:
            N = shift_mat(coeffs[tg.var])
            phiN = [[phi(x) for x in row] for row in N]

            def act(coords, phiN=phiN, tg=tg):
                shifted = [_sigma(c, tg, 1) for c in coords]
                return _apply_matrix(shifted, phiN, tctx)

            actions.append(act)
        elif tg.var in src_gen_index and tg.var != var:
            M = [[phi(x) for x in row] for row in mats[src_gen_index[tg.var]]]

            def act(coords, M=M, tg=tg):
                if tg.kind == DERIVATIVE:
                    out = [c.derivative(tg.var) for c in coords]
                    part = _apply_matrix(coords, M, tctx)
                    return [o + p for o, p in zip(out, part)]
                shifted = [_sigma(c, tg, 1) for c in coords]
                return _apply_matrix(shifted, M, tctx)

            actions.append(act)
        else:
            def act(coords, tg=tg):
                if tg.kind == DERIVATIVE:
                    return [c.derivative(tg.var) for c in coords]
                return [_sigma(c, tg, 1) for c in coords]
            actions.append(act)

    start = [RationalFunction.const(tctx, 0)] * qb.rank
    start[qb.index[A.zero_mon()]] = RationalFunction.const(tctx, 1)
    return _fglm(target, start, actions, qb.rank, caps)


def _mat_mul(A_: list, B: list, ctx: Context) -> list:
    n = len(A_)
    m = len(B[0])
    k = len(B)
    out = [[RationalFunction.const(ctx, 0) for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for t in range(k):
            a = A_[i][t]
            if a.is_zero():
                continue
            for j in range(m):
                b = B[t][j]
                if not b.is_zero():
                    out[i][j] = out[i][j] + a * b
    return out
