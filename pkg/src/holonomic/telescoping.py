"""Creative telescoping: telescoper/certificate splitting and three engines.

Given an annihilating ideal of a summand or integrand, the goal is an
operator of the shape

    T(w, d_w) + Delta_{v_1} C_1 + ... + Delta_{v_j} C_j

inside the ideal, where Delta_v = S_v - 1 for a discrete summation variable
and Delta_v = D_v for a continuous integration variable.  T (the telescoper)
is free of the v's and their operators; the C_i are the certificates.

Three engines are provided:

* ``ct_slow``      -- total elimination of the v's via a block-order
                      Groebner basis, then division with remainder.
* ``ct_takayama``  -- reduction modulo the right ideals Delta_v * O first,
                      then module elimination (position over term); valid
                      under natural boundaries, certificates not computed.
* ``ct_heuristic`` -- ansatz with staircase-supported certificates whose
                      denominators are read off the leading coefficients of
                      the input basis; solved by nullspace computation.

Every result is checked against the central invariant: the reconstructed
operator reduces to zero modulo the input ideal (exact arithmetic, always).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .config import Caps, CapExceeded, DEFAULT_CAPS
from .groebner import (BlockOrder, DegLex, GroebnerBasis, MonomialOrder, POT,
                       buchberger, default_order, eliminate, module_gb, reduce)
from .closure import NotDFiniteError, multiplication_matrices, nf_coords, rank
from .ore import (DERIVATIVE, QSHIFT, SHIFT, Generator, OreAlgebra,
                  OrePolynomial, demote_from_elimination, embed_operator,
                  ore_mul, project_operator, promote_to_elimination,
                  restrict_algebra)
from .ratfun import (Context, Polynomial, RationalFunction, distinct_factors,
                     nullspace, poly_lcm)

DISCRETE = "discrete"
CONTINUOUS = "continuous"
QDISCRETE = "qdiscrete"


@dataclass(frozen=True)
class DeltaVar:
    var: str           # the acted-on variable (qv symbol in the q case)
    kind: str          # discrete | continuous | qdiscrete

    def delta(self, algebra: OreAlgebra) -> OrePolynomial:
        gen = algebra.gen(self.var)
        if self.kind == CONTINUOUS:
            return gen
        return gen - algebra.one()


class DeltaSpec:
    """Ordered list of summation/integration variables."""

    def __init__(self, items: Sequence[DeltaVar]):
        self.items = list(items)
        if len({d.var for d in self.items}) != len(self.items):
            raise ValueError("duplicate delta variable")

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)

    @property
    def variables(self):
        return [d.var for d in self.items]

    @staticmethod
    def for_algebra(algebra: OreAlgebra, variables: Sequence[str]) -> "DeltaSpec":
        items = []
        for v in variables:
            gen = algebra.generator_for(v)
            kind = {SHIFT: DISCRETE, DERIVATIVE: CONTINUOUS, QSHIFT: QDISCRETE}[gen.kind]
            items.append(DeltaVar(v, kind))
        return DeltaSpec(items)

    @staticmethod
    def parse(text: str, algebra: OreAlgebra) -> "DeltaSpec":
        """Parse ``S[i]-1, S[j]-1`` / ``Der[x]`` / ``QS[qk,q]-1`` syntax."""
        from .expressions import parse_operator
        items = []
        depth = 0
        buf = ""
        parts = []
        for ch in text:
            if ch == "," and depth == 0:
                parts.append(buf)
                buf = ""
                continue
            if ch in "[(":
                depth += 1
            elif ch in "])":
                depth -= 1
            buf += ch
        if buf.strip():
            parts.append(buf)
        for part in parts:
            op = parse_operator(part.strip(), algebra)
            matched = None
            for g in algebra.gens:
                cand = DeltaVar(g.var, {SHIFT: DISCRETE, DERIVATIVE: CONTINUOUS,
                                        QSHIFT: QDISCRETE}[g.kind])
                if op == cand.delta(algebra):
                    matched = cand
                    break
            if matched is None:
                raise ValueError(f"not a telescoping operator: {part.strip()!r} "
                                 "(expected S[v]-1, Der[v] or QS[qv,q]-1)")
            items.append(matched)
        return DeltaSpec(items)


# ---------------------------------------------------------------- splitting


def split_delta(P: OrePolynomial, spec: DeltaSpec) -> tuple:
    """Write a v-free-coefficient operator as T + sum(Delta_v * C_v).

    Exact identity after expansion; requires the coefficients of P to be
    free of the delta variables (q case: of the qv symbols).
    """
    A = P.algebra
    names = [d.var for d in spec]
    if not P.coeffs_free_of(names):
        raise ValueError("operator not v-free; cannot split")
    certificates = []
    work = P
    for d in spec:
        gi = A.gen_index(d.var)
        if d.kind == CONTINUOUS:
            t_terms = {}
            c_terms = {}
            for m, c in work.terms.items():
                a = m[gi]
                if a == 0:
                    t_terms[m] = c
                else:
                    cm = m[:gi] + (a - 1,) + m[gi + 1:]
                    prev = c_terms.get(cm)
                    c_terms[cm] = c if prev is None else prev + c
            C = OrePolynomial(A, c_terms)
            work = OrePolynomial(A, t_terms)
        else:
            # T = work with the shift set to 1; C via geometric-sum division
            t_terms = {}
            c_terms = {}
            for m, c in work.terms.items():
                a = m[gi]
                base = m[:gi] + (0,) + m[gi + 1:]
                prev = t_terms.get(base)
                t_terms[base] = c if prev is None else prev + c
                for i in range(a):
                    cm = m[:gi] + (i,) + m[gi + 1:]
                    prev = c_terms.get(cm)
                    c_terms[cm] = c if prev is None else prev + c
            C = OrePolynomial(A, c_terms)
            work = OrePolynomial(A, t_terms)
        certificates.append(C)
    T = work
    # safety: exact reconstruction
    recon = T
    for d, C in zip(spec, certificates):
        recon = recon + ore_mul(d.delta(A), C)
    if not (recon - P).is_zero():
        raise AssertionError("split_delta reconstruction failed")
    return T, certificates


# ------------------------------------------------------------------ results


@dataclass
class TelescopingResult:
    algebra: OreAlgebra                    # algebra of the input ideal
    spec: DeltaSpec
    telescopers: list                      # v-free OrePolynomials in `algebra`
    certificates: list                     # per telescoper: list per delta var ([] if unknown)
    assumptions: list = field(default_factory=list)
    verified: bool | None = None

    def verify(self, ideal: GroebnerBasis) -> bool:
        """Certificate identity: T + sum(Delta * C) reduces to 0 mod the ideal.

        Telescopers without certificates (Takayama) cannot be verified this
        way and are skipped.
        """
        ok = True
        checked = False
        for T, certs in zip(self.telescopers, self.certificates):
            if not certs:
                continue
            checked = True
            P = T
            for d, C in zip(self.spec, certs):
                P = P + ore_mul(d.delta(self.algebra), C)
            if not ideal.reduce(P).is_zero():
                ok = False
        self.verified = ok if checked else None
        return ok if checked else False

    def target_algebra(self) -> OreAlgebra:
        return restrict_algebra(self.algebra, self.spec.variables)

    def telescoper_basis(self, caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
        """The telescopers as a reduced basis of the parameter-only algebra."""
        target = self.target_algebra()
        ops = [project_operator(T, target) for T in self.telescopers]
        return buchberger(ops, caps=caps)

    def to_json(self) -> dict:
        return {
            "deltas": [{"var": d.var, "kind": d.kind} for d in self.spec],
            "telescopers": [str(t) for t in self.telescopers],
            "certificates": [[str(c) for c in certs] for certs in self.certificates],
            "assumptions": list(self.assumptions),
            "certificate_identity": ("verified" if self.verified
                                     else "not computed" if self.verified is None
                                     else "FAILED"),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


# ------------------------------------------------------------------ ct_slow


def ct_slow(I: GroebnerBasis, spec: DeltaSpec, caps: Caps = DEFAULT_CAPS) -> TelescopingResult:
    """Telescoping by total elimination of the summation/integration variables.

    Promotes each v to a monomial generator, eliminates it with a block
    order, and splits every v-free basis element; slow, and not guaranteed
    to find minimal telescopers, but certificates come for free.
    """
    A = I.algebra
    vs = spec.variables
    elim_algebra = A.with_elimination(vs)
    gens = [promote_to_elimination(g, elim_algebra) for g in I.elements]
    try:
        free = eliminate(gens, vs, caps)
    except CapExceeded as exc:
        raise CapExceeded("no telescoper found within bound") from exc
    if not free:
        raise CapExceeded("no telescoper found within bound (elimination empty)")
    telescopers = []
    certificates = []
    for op in free:
        P = demote_from_elimination(op, A)
        T, certs = split_delta(P, spec)
        if T.is_zero():
            continue
        telescopers.append(T)
        certificates.append(certs)
    if not telescopers:
        raise CapExceeded("no telescoper found within bound (all splits trivial)")
    result = TelescopingResult(A, spec, telescopers, certificates)
    result.verify(I)
    return result


# --------------------------------------------------------------- ct_takayama


def _right_reduce(P: OrePolynomial, spec: DeltaSpec) -> OrePolynomial:
    """P modulo the right ideals Delta_v * O, coefficients polynomial in v.

    Per term, each delta generator is moved to the far left and replaced by
    its image: S_v^a contributes the coefficient shift v -> v-a, D_v^a the
    sign (-1)^a and an a-fold derivative, q-shifts the substitution
    qv -> qv / q^a.
    """
    A = P.algebra
    out = {}
    for m, c in P.terms.items():
        coeff = c
        nm = list(m)
        for d in spec:
            gi = A.gen_index(d.var)
            a = m[gi]
            if a == 0:
                continue
            nm[gi] = 0
            if d.kind == DISCRETE:
                coeff = coeff.shift_var(d.var, -a)
            elif d.kind == QDISCRETE:
                gen = A.generator_for(d.var)
                coeff = coeff.qshift_var(d.var, gen.q, -a)
            else:
                for _ in range(a):
                    coeff = -coeff.derivative(d.var)
        if coeff.is_zero():
            continue
        key = tuple(nm)
        prev = out.get(key)
        s = coeff if prev is None else prev + coeff
        if s.is_zero():
            out.pop(key, None)
        else:
            out[key] = s
    return OrePolynomial(A, out)


def _vsplit_coefficient(c: RationalFunction, vnames: list, tctx: Context) -> dict:
    """Split a coefficient with v-free denominator by v-monomials."""
    den = c.den  # free of the v's by construction
    out = {}
    for e, coeff in c.num.terms.items():
        vexp = tuple(e[c.ctx.index[v]] for v in vnames)
        rest = list(e)
        for v in vnames:
            rest[c.ctx.index[v]] = 0
        mono = Polynomial.monomial(c.ctx, tuple(rest), coeff)
        prev = out.get(vexp)
        out[vexp] = mono if prev is None else prev + mono
    result = {}
    for vexp, num in out.items():
        val = RationalFunction(num, den).rename(tctx)
        if not val.is_zero():
            result[vexp] = val
    return result


def ct_takayama(I: GroebnerBasis, spec: DeltaSpec, caps: Caps = DEFAULT_CAPS,
                rho_start: int = 0) -> TelescopingResult:
    """Telescopers under the natural-boundary assumption; no certificates.

    Enlarges the generators by left multiples with v-power products up to a
    degree that grows until the telescoper ideal is d-finite or stabilizes,
    reduces modulo the right ideals Delta_v * O, and eliminates the v's by a
    module Groebner basis with position-over-term order (positions indexed
    by v-power products, larger products more significant).
    """
    A = I.algebra
    vs = spec.variables
    target = restrict_algebra(A, vs)
    cleared = []
    for g in I.elements:
        den = Polynomial.const(A.ctx, 1)
        for c in g.terms.values():
            if not c.den.is_constant():
                den = poly_lcm(den, c.den)
        cleared.append(g.scale(RationalFunction.from_poly(den)))

    telescopers: list = []
    basis: GroebnerBasis | None = None
    stable_rounds = 0
    for rho in range(rho_start, caps.takayama_degree_cap + 1):
        vmonos = [m for m in _monomials_up_to(len(vs), rho)]
        rows_ops = []
        for mu in vmonos:
            mono = _vmono_coeff(A, vs, mu)
            for g in cleared:
                rows_ops.append(_right_reduce(g.scale(mono), spec))
        # collect positions (v-monomials) and target monomial support
        entries = []
        positions = set()
        for op in rows_ops:
            split_terms = {}
            for m, c in op.terms.items():
                tm = _project_monomial(A, target, m)
                for vexp, val in _vsplit_coefficient(c, vs, target.ctx).items():
                    positions.add(vexp)
                    key = (vexp, tm)
                    prev = split_terms.get(key)
                    s = val if prev is None else prev + val
                    if s.is_zero():
                        split_terms.pop(key, None)
                    else:
                        split_terms[key] = s
            entries.append(split_terms)
        pos_sorted = sorted(positions, key=lambda e: (sum(e), e))
        pos_index = {p: i for i, p in enumerate(pos_sorted)}
        width = len(pos_sorted)
        rows = []
        for split_terms in entries:
            vec = [target.zero() for _ in range(width)]
            for (vexp, tm), val in split_terms.items():
                vec[pos_index[vexp]] = vec[pos_index[vexp]] + OrePolynomial(target, {tm: val})
            if not all(x.is_zero() for x in vec):
                rows.append(vec)
        if not rows:
            continue
        # POT: larger v-monomial positions are more significant
        weights = list(range(width))
        pot = POT(weights, DegLex(size=target.nmon))
        gbm = module_gb(rows, pot, caps)
        new = []
        zero_pos = pos_index.get((0,) * len(vs))
        if zero_pos is not None:
            for vec in gbm:
                support = [i for i, comp in enumerate(vec) if not comp.is_zero()]
                if support == [zero_pos]:
                    new.append(vec[zero_pos])
        # merge into the accumulated telescoper ideal
        added = False
        for t in new:
            if basis is None or not basis.reduce(t).is_zero():
                telescopers.append(t)
                added = True
        if added:
            basis = buchberger(telescopers, caps=caps)
            stable_rounds = 0
        elif basis is not None:
            stable_rounds += 1
        if basis is not None:
            finite = True
            try:
                rank(basis, caps)
            except NotDFiniteError:
                finite = False
            # stop once the ideal is d-finite and one extra round added nothing
            if finite and stable_rounds >= 1:
                break
    if basis is None:
        raise CapExceeded("no telescoper found within bound")
    embedded = [embed_operator(t, A) for t in basis.elements]
    result = TelescopingResult(A, spec, embedded, [[] for _ in embedded],
                               assumptions=["natural-boundaries"])
    # soundness spot check: each telescoper must be liftable, i.e. T is the
    # right-ideal reduction of an ideal element; verified structurally by
    # construction, so only record that certificates are not computed.
    result.verified = None
    return result


def _monomials_up_to(nvars: int, total: int):
    if nvars == 0:
        yield ()
        return
    for head in range(total + 1):
        for rest in _monomials_up_to(nvars - 1, total - head):
            yield (head,) + rest


def _vmono_coeff(A: OreAlgebra, vs: list, mu: tuple) -> RationalFunction:
    exp = [0] * len(A.ctx.names)
    for v, e in zip(vs, mu):
        exp[A.ctx.index[v]] = e
    return RationalFunction.from_poly(Polynomial.monomial(A.ctx, tuple(exp)))


def _project_monomial(A: OreAlgebra, target: OreAlgebra, m: tuple) -> tuple:
    nm = [0] * target.nmon
    for i, e in enumerate(m):
        if e:
            name = A.elim[i] if i < len(A.elim) else A.gens[i - len(A.elim)].var
            nm[target.gen_index(name)] = e
    return tuple(nm)


# -------------------------------------------------------------- ct_heuristic


def ct_heuristic(I: GroebnerBasis, spec: DeltaSpec, target_vars: Sequence[str] | None = None,
                 caps: Caps = DEFAULT_CAPS) -> TelescopingResult:
    """Ansatz-driven telescoping with heuristic certificate denominators.

    Certificates are supported on the staircase with coefficients
    numerator(v)/d(v, w); the denominators d are products of the leading
    coefficient factors of the input basis (discrete factors also at
    shifted arguments), escalated on failure.  Telescoper support grows by
    total degree until the found leading monomials close a finite
    staircase, so the output forms a Groebner basis of what was found.
    """
    A = I.algebra
    vs = spec.variables
    if target_vars is None:
        target_vars = [g.var for g in A.gens if g.var not in vs]
    else:
        target_vars = sorted(target_vars, key=A.gen_index)
    qb = rank(I, caps)
    if qb.rank == 0:
        raise ValueError("input annihilates only the zero function")
    ctx = A.ctx

    delta_factors = _denominator_factors(I, spec, delta_leads_only=True)
    all_factors = _denominator_factors(I, spec, delta_leads_only=False)
    mats = multiplication_matrices(I, qb)
    nf_cache: dict = {}

    def nf_of(op: OrePolynomial) -> list:
        return nf_coords(I, qb, op)

    found: list = []            # (T, certs, lead monomial in target positions)
    target = restrict_algebra(A, vs)
    torder = DegLex(size=target.nmon)

    gen_positions = [A.gen_index(v) for v in target_vars]

    def support_monomials(s: int) -> list:
        out = []
        for mu in _bounded_monomials(len(target_vars), s):
            m = [0] * A.nmon
            for g, e in zip(gen_positions, mu):
                m[g] = e
            m = tuple(m)
            tm = _project_monomial(A, target, m)
            if any(_div(lm, tm) for lm in (f[2] for f in found)):
                continue
            out.append((m, tm))
        return out

    schedule_state = []
    for s in range(caps.heuristic_support_cap + 1):
        supports = support_monomials(s)
        if not supports:
            continue
        # factor tiers: leading coefficients of the delta operators first,
        # then all of them; escalate numerator degree and multiplicity
        rounds = [(delta_factors, 1, 0), (delta_factors, 1, 2),
                  (all_factors, 1, 0), (all_factors, 1, 2),
                  (all_factors, 2, 0), (all_factors, 3, 0)]
        rounds = [(fs, m, x) for (fs, m, x) in rounds
                  if m <= caps.heuristic_multiplicity_cap and fs]
        if not rounds:
            rounds = [([], 1, 0)]
        seen_dens = set()
        for factors, mult, extra in rounds:
            den = _build_denominator(ctx, factors, spec, sigma=s, multiplicity=mult, algebra=A)
            e_bound = min(sum(den.degree(v) for v in vs) + s + 1 + extra,
                          caps.heuristic_degree_cap)
            dkey = (den.sort_key(), e_bound)
            if dkey in seen_dens:
                continue
            seen_dens.add(dkey)
            schedule_state.append({"stage": s, "multiplicity": mult, "numerator_degree": e_bound})
            sols = _solve_ansatz(I, qb, spec, supports, den, e_bound, nf_cache, nf_of, mats)
            if sols:
                for T, certs in sols:
                    tm = project_operator(T, target).leading_term(torder)[0]
                    if any(_div(f[2], tm) for f in found):
                        continue
                    found.append((T, certs, tm))
                break
        if found and _staircase_finite([f[2] for f in found], target.nmon):
            break
    if not found:
        raise CapExceeded("heuristic exhausted: " + json.dumps(schedule_state[-3:]))
    telescopers = [f[0] for f in found]
    certificates = [f[1] for f in found]
    result = TelescopingResult(A, spec, telescopers, certificates)
    if not result.verify(I):
        raise AssertionError("certificate identity failed after solving")
    return result


def _div(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _staircase_finite(leads: list, n: int) -> bool:
    for i in range(n):
        if not any((not any(m[j] for j in range(n) if j != i)) and m[i] > 0 for m in leads):
            if not any(not any(m) for m in leads):
                return False
    return True


def _bounded_monomials(nvars: int, total: int):
    """All monomials with total degree <= total, enumerated low degree first."""
    for t in range(total + 1):
        yield from _monomials_of_degree(nvars, t)


def _monomials_of_degree(nvars: int, total: int):
    if nvars == 0:
        if total == 0:
            yield ()
        return
    for head in range(total, -1, -1):
        for rest in _monomials_of_degree(nvars - 1, total - head):
            yield (head,) + rest


def _denominator_factors(I: GroebnerBasis, spec: DeltaSpec,
                         delta_leads_only: bool = False) -> list:
    """Factors of the cleared leading coefficients of the basis.

    A reduced basis is monic, so the interesting polynomial is the lcm of
    the coefficient denominators (the leading coefficient of the cleared
    element); the leading numerator is included for non-monic inputs.
    With ``delta_leads_only`` only elements whose leading monomial involves
    a telescoped generator contribute, which keeps the first schedule
    rounds small.
    """
    vs = set(spec.variables)
    delta_idx = [I.algebra.gen_index(v) for v in vs]
    polys = []
    for g in I.elements:
        lm, lc = g.leading_term(I.order)
        if delta_leads_only and not any(lm[i] for i in delta_idx):
            continue
        den = Polynomial.const(I.algebra.ctx, 1)
        for c in g.terms.values():
            if not c.den.is_constant():
                den = poly_lcm(den, c.den)
        if not den.is_constant():
            polys.append(den)
        if not lc.num.is_constant():
            polys.append(lc.num)
    factors = distinct_factors(polys)
    return [f for f in factors if f.variables_used() & vs]


def _build_denominator(ctx: Context, factors: list, spec: DeltaSpec, sigma: int,
                       multiplicity: int, algebra: OreAlgebra) -> Polynomial:
    den = Polynomial.const(ctx, 1)
    shifted = []
    for f in factors:
        shifted.append(f)
        used = f.variables_used()
        for d in spec:
            if d.var not in used:
                continue
            if d.kind == DISCRETE:
                for k in range(1, sigma + 1):
                    shifted.append(f.shift_var(d.var, k))
            elif d.kind == QDISCRETE:
                gen = algebra.generator_for(d.var)
                g = f
                for k in range(1, sigma + 1):
                    g = g.qshift_var(d.var, gen.q, 1)
                    shifted.append(g)
    # dedupe
    seen = set()
    uniq = []
    for f in shifted:
        key = f.monic().sort_key()
        if key not in seen:
            seen.add(key)
            uniq.append(f)
    for f in uniq:
        for _ in range(multiplicity):
            den = den * f
    return den


def _solve_ansatz(I: GroebnerBasis, qb, spec: DeltaSpec, supports: list,
                  den: Polynomial, e_bound: int, nf_cache: dict, nf_of,
                  mats: list) -> list:
    """Assemble and solve the linear system for one schedule round.

    Unknowns: one per telescoper support monomial and one per
    (delta variable, staircase monomial, numerator v-monomial).  Certificate
    columns come from the precomputed multiplication matrices: reduction is
    left-linear over coefficients, so NF(Delta (c U_i)) needs no fresh
    Groebner reduction, only the twisted coefficient and the matrix row.
    Rows compare v-monomial coefficients of the staircase coordinates.
    """
    from .ore import _sigma
    A = I.algebra
    ctx = A.ctx
    vs = spec.variables
    inv_den = RationalFunction(Polynomial.const(ctx, 1), den)
    zero = RationalFunction.const(ctx, 0)

    columns = []   # (kind, payload, coords)
    for m, _tm in supports:
        key = ("T", m)
        if key not in nf_cache:
            nf_cache[key] = nf_of(OrePolynomial(A, {m: RationalFunction.const(ctx, 1)}))
        columns.append(("T", m, nf_cache[key]))
    numer_monos = list(_bounded_monomials(len(vs), e_bound))
    for di, d in enumerate(spec):
        gen = A.generator_for(d.var)
        M = mats[A.gen_index(d.var) - len(A.elim)]
        for si, u in enumerate(qb.staircase):
            row = M[si]
            for mu in numer_monos:
                c = _vmono_coeff(A, vs, mu) * inv_den
                if d.kind == CONTINUOUS:
                    # NF(D_v c U_i) = c NF(D_v U_i) + c' U_i
                    coords = [c * x if not x.is_zero() else zero for x in row]
                    coords[si] = coords[si] + c.derivative(d.var)
                else:
                    # NF((S_v - 1) c U_i) = sigma(c) NF(S_v U_i) - c U_i
                    sc = _sigma(c, gen, 1)
                    coords = [sc * x if not x.is_zero() else zero for x in row]
                    coords[si] = coords[si] - c
                columns.append((("C", di, si), mu, coords))

    # rows: (staircase coordinate, v-monomial) pairs after clearing denominators
    matrix_rows = {}
    ncols = len(columns)
    for coord in range(qb.rank):
        entries = [col[2][coord] for col in columns]
        if all(e.is_zero() for e in entries):
            continue
        lcm = Polynomial.const(ctx, 1)
        for e in entries:
            if not e.is_zero() and not e.den.is_constant():
                lcm = poly_lcm(lcm, e.den)
        for j, e in enumerate(entries):
            if e.is_zero():
                continue
            p = e.num * lcm.exact_div(e.den)
            for vexp, val in _vsplit_poly(p, vs, ctx).items():
                row = matrix_rows.setdefault((coord, vexp), {})
                prev = row.get(j)
                s = val if prev is None else prev + val
                if s.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = s

    mat = []
    zero = RationalFunction.const(ctx, 0)
    for key in sorted(matrix_rows):
        row = matrix_rows[key]
        mat.append([RationalFunction.from_poly(row[j]) if j in row else zero
                    for j in range(ncols)])
    if not mat:
        return []
    basis = nullspace(mat)
    if not basis:
        return []

    # keep solutions with nonzero telescoper part, distinct leading supports
    sols = []
    tcount = len(supports)
    # order support indexes by the target order so leading-entry dedupe is stable
    for vec in basis:
        tpart = vec[:tcount]
        if all(x.is_zero() for x in tpart):
            continue
        sols.append(vec)
    if not sols:
        return []
    # Gaussian dedupe on the t-part: eliminate duplicate leading supports
    order = DegLex(size=A.nmon)
    sup_keys = [order.key(m) for m, _tm in supports]
    reduced = []
    used_leads = {}
    for vec in sols:
        v = list(vec)
        while True:
            lead = _t_lead(v, tcount, sup_keys)
            if lead is None or lead not in used_leads:
                break
            other = used_leads[lead]
            f = v[lead] * other[lead].inverse()
            v = [a - f * b for a, b in zip(v, other)]
        lead = _t_lead(v, tcount, sup_keys)
        if lead is None:
            continue
        used_leads[lead] = v
        reduced.append(v)

    out = []
    for vec in reduced:
        T = A.zero()
        for j, (m, _tm) in enumerate(supports):
            if not vec[j].is_zero():
                T = T + OrePolynomial(A, {m: vec[j]})
        # normalize: monic leading target coefficient
        certs = []
        idx = tcount
        for di, d in enumerate(spec):
            C = A.zero()
            for si, u in enumerate(qb.staircase):
                for mu in numer_monos:
                    c = vec[idx]
                    idx += 1
                    if c.is_zero():
                        continue
                    coeff = c * _vmono_coeff(A, vs, mu) * inv_den
                    C = C + OrePolynomial(A, {u: coeff})
            certs.append(C)
        lt = T.leading_term(DegLex(size=A.nmon))[1]
        T = T.scale(lt.inverse())
        certs = [c.scale(lt.inverse()) for c in certs]
        out.append((T, certs))
    return out


def _t_lead(vec: list, tcount: int, sup_keys: list):
    best = None
    for j in range(tcount):
        if not vec[j].is_zero():
            if best is None or sup_keys[j] > sup_keys[best]:
                best = j
    return best


def _vsplit_poly(p: Polynomial, vnames: list, ctx: Context) -> dict:
    out = {}
    for e, coeff in p.terms.items():
        vexp = tuple(e[ctx.index[v]] for v in vnames)
        rest = list(e)
        for v in vnames:
            rest[ctx.index[v]] = 0
        mono = Polynomial.monomial(ctx, tuple(rest), coeff)
        prev = out.get(vexp)
        out[vexp] = mono if prev is None else prev + mono
    return {k: v for k, v in out.items() if not v.is_zero()}


# -------------------------------------------------------------- find_relation


def find_relation(G: GroebnerBasis, eliminate_symbols: Sequence[str] = (),
                  caps: Caps = DEFAULT_CAPS) -> list:
    """Operators in the ideal whose coefficients avoid the given symbols.

    Ansatz over the generator monomials with unknown coefficients free of
    the eliminated symbols; minimal-support solutions (lowest total degree
    with any solution) are returned, monic.
    """
    A = G.algebra
    ctx = A.ctx
    qb = rank(G, caps)
    elim = list(eliminate_symbols)
    for s in elim:
        if s not in ctx.index:
            raise ValueError(f"unknown symbol {s!r}")
    nf_cache: dict = {}

    for s in range(caps.find_relation_support_cap + 1):
        monos = []
        for mu in _bounded_monomials(len(A.gens), s):
            m = (0,) * len(A.elim) + mu
            monos.append(m)
        columns = []
        for m in monos:
            if m not in nf_cache:
                nf_cache[m] = nf_coords(G, qb, OrePolynomial(A, {m: RationalFunction.const(ctx, 1)}))
            columns.append(nf_cache[m])
        matrix_rows = {}
        for coord in range(qb.rank):
            entries = [col[coord] for col in columns]
            if all(e.is_zero() for e in entries):
                continue
            lcm = Polynomial.const(ctx, 1)
            for e in entries:
                if not e.is_zero() and not e.den.is_constant():
                    lcm = poly_lcm(lcm, e.den)
            for j, e in enumerate(entries):
                if e.is_zero():
                    continue
                p = e.num * lcm.exact_div(e.den)
                if elim:
                    split = _vsplit_poly(p, elim, ctx)
                else:
                    split = {(): p}
                for vexp, val in split.items():
                    row = matrix_rows.setdefault((coord, vexp), {})
                    prev = row.get(j)
                    sval = val if prev is None else prev + val
                    if sval.is_zero():
                        row.pop(j, None)
                    else:
                        row[j] = sval
        if not matrix_rows:
            continue
        zero = RationalFunction.const(ctx, 0)
        mat = [[RationalFunction.from_poly(r[j]) if j in r else zero for j in range(len(columns))]
               for _, r in sorted(matrix_rows.items())]
        basis = nullspace(mat)
        sols = []
        order = DegLex(size=A.nmon)
        for vec in basis:
            op = A.zero()
            for j, m in enumerate(monos):
                if not vec[j].is_zero():
                    op = op + OrePolynomial(A, {m: vec[j]})
            if op.is_zero():
                continue
            sols.append(op.monic(order))
        if sols:
            # dedupe by leading monomial
            uniq = {}
            for op in sorted(sols, key=lambda o: order.key(o.leading_term(order)[0])):
                lm = op.leading_term(order)[0]
                if lm not in uniq:
                    uniq[lm] = op
            for op in uniq.values():
                if not G.reduce(op).is_zero():
                    raise AssertionError("find_relation produced a non-member")
            return list(uniq.values())
    raise CapExceeded("no relation within the support cap")


# ------------------------------------------------------------------ boundary


@dataclass
class BoundaryTerm:
    var: str
    kind: str
    lower: object            # Fraction | str ("inf", "-inf") | expression AST
    upper: object
    certificate: OrePolynomial | None
    status: str              # "assumed-zero" | "unevaluated" | "pending-evaluation"


@dataclass
class BoundaryExpression:
    terms: list
    assumptions: list

    def to_json(self) -> dict:
        def b(x):
            return str(x)
        return {"terms": [{"var": t.var, "kind": t.kind, "lower": b(t.lower),
                           "upper": b(t.upper), "status": t.status,
                           "certificate": str(t.certificate) if t.certificate is not None else None}
                          for t in self.terms],
                "assumptions": self.assumptions}


def assemble_boundary(result: TelescopingResult, bounds: Mapping[str, tuple],
                      natural: bool = False, telescoper_index: int = 0) -> BoundaryExpression:
    """Symbolic boundary bracket data for one telescoper.

    With ``natural=True`` the bracket is declared zero and recorded as an
    assumption.  Finite discrete brackets are left in "pending-evaluation"
    state for the oracle; infinite or continuous symbolic bounds are
    exported unevaluated (limit evaluation is out of scope).  Bounds that
    depend on surviving parameters are only allowed for discrete variables,
    where the oracle can evaluate them per grid point.
    """
    terms = []
    assumptions = list(result.assumptions)
    certs = result.certificates[telescoper_index] if result.certificates else []
    for i, d in enumerate(result.spec):
        lo, hi = bounds.get(d.var, ("-inf", "inf"))
        cert = certs[i] if i < len(certs) else None
        if natural or "natural-boundaries" in assumptions:
            status = "assumed-zero"
            if "natural-boundaries" not in assumptions:
                assumptions.append("natural-boundaries")
        elif _is_numeric(lo) and _is_numeric(hi):
            status = "pending-evaluation" if d.kind != CONTINUOUS else "unevaluated"
        elif d.kind == CONTINUOUS and not (_is_infinite(lo) or _is_numeric(lo)) :
            raise ValueError(f"parameter-dependent bound {lo!r} for continuous {d.var}")
        elif d.kind == CONTINUOUS and not (_is_infinite(hi) or _is_numeric(hi)):
            raise ValueError(f"parameter-dependent bound {hi!r} for continuous {d.var}")
        elif _is_infinite(lo) or _is_infinite(hi):
            status = "unevaluated"
        else:
            status = "pending-evaluation"  # discrete symbolic bounds: oracle per point
        terms.append(BoundaryTerm(d.var, d.kind, lo, hi, cert, status))
    return BoundaryExpression(terms, assumptions)


def _is_numeric(x) -> bool:
    return isinstance(x, (int, Fraction))


def _is_infinite(x) -> bool:
    return isinstance(x, str) and x in ("inf", "-inf")


# ------------------------------------------------------------- iterated runs


def ct_iterated(I: GroebnerBasis, specs: Sequence[DeltaVar], algo: str = "heuristic",
                caps: Caps = DEFAULT_CAPS) -> list:
    """Telescope one variable at a time; returns the per-stage results.

    After each stage the telescoper ideal becomes the input for the next
    variable (the default route for nested quantifiers).
    """
    results = []
    current = I
    for d in specs:
        spec = DeltaSpec([d])
        if algo == "slow":
            res = ct_slow(current, spec, caps)
        elif algo == "takayama":
            res = ct_takayama(current, spec, caps)
        elif algo == "heuristic":
            res = ct_heuristic(current, spec, caps=caps)
        else:
            raise ValueError(f"unknown algorithm {algo!r}")
        results.append(res)
        current = res.telescoper_basis(caps)
    return results
