"""Noncommutative operator algebras of shift, derivative and q-shift type.

An :class:`OreAlgebra` fixes a coefficient field (rational functions over
declared variables and parameters) and an ordered list of generators.  A
generator acts on its variable and satisfies a skew commutation rule when
multiplied past a coefficient:

    derivative:  D_x * a(x) = a(x) * D_x + a'(x)
    shift:       S_n * a(n) = a(n+1) * S_n
    q-shift:     Q * a(qv)  = a(q*qv) * Q      (qv is the symbol for q^v)

Operators are stored in normal form "coefficients left, monomials right".
In elimination mode, selected coefficient variables are promoted to extra
commutative monomial generators so that Groebner bases over field
coefficients apply; the commutation rules then also act on those monomials
(e.g. S_k * k = (k+1) * S_k with k a monomial generator).

All values are immutable; operations are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .ratfun import Context, Polynomial, RationalFunction

SHIFT = "shift"
DERIVATIVE = "derivative"
QSHIFT = "qshift"


@dataclass(frozen=True)
class Generator:
    """One operator generator bound to a single variable.

    For q-shift generators ``var`` is the power symbol (e.g. ``qk`` for
    q^k), ``q`` the base parameter and ``disc`` the name of the underlying
    discrete index (used by the expression front-end, defaults to ``var``
    with a leading 'q' stripped).
    """

    kind: str
    var: str
    q: str | None = None
    disc: str | None = None

    def __post_init__(self):
        if self.kind not in (SHIFT, DERIVATIVE, QSHIFT):
            raise ValueError(f"unknown generator kind {self.kind!r}")
        if self.kind == QSHIFT and self.q is None:
            raise ValueError("q-shift generator needs its q parameter")
        if self.kind == QSHIFT and self.disc is None:
            disc = self.var[1:] if self.var.startswith("q") and len(self.var) > 1 else self.var
            object.__setattr__(self, "disc", disc)

    @property
    def name(self) -> str:
        if self.kind == SHIFT:
            return f"S[{self.var}]"
        if self.kind == DERIVATIVE:
            return f"Der[{self.var}]"
        return f"QS[{self.var},{self.q}]"


class OreAlgebra:
    """Operator algebra over a rational function field."""

    def __init__(self, field_vars: Sequence[str], gens: Sequence[Generator],
                 params: Sequence[str] = (), elim: Sequence[str] = ()):
        params = tuple(params)
        elim = tuple(elim)
        field_vars = tuple(field_vars)
        all_names = field_vars + params
        if len(set(all_names)) != len(all_names):
            raise ValueError("field variables and parameters must be disjoint")
        seen_vars = set()
        for g in gens:
            if g.var in seen_vars:
                raise ValueError(f"two generators act on {g.var}")
            seen_vars.add(g.var)
            if g.var not in field_vars and g.var not in elim:
                raise ValueError(f"generator variable {g.var} not declared")
            if g.kind == QSHIFT and g.q not in params:
                raise ValueError(f"q-shift parameter {g.q} must be a declared parameter")
        for v in elim:
            if v in field_vars:
                raise ValueError(f"eliminated variable {v} still in the coefficient field")
            if v not in seen_vars:
                raise ValueError(f"eliminated variable {v} has no acting generator")
        self.field_vars = field_vars
        self.params = params
        self.gens = tuple(gens)
        self.elim = elim
        self.ctx = Context(field_vars + params)
        # monomial layout: eliminated variables first, then generators
        self.nmon = len(elim) + len(self.gens)

    # ------------------------------------------------------------ structure

    def __eq__(self, other) -> bool:
        return (isinstance(other, OreAlgebra) and self.field_vars == other.field_vars
                and self.params == other.params and self.gens == other.gens
                and self.elim == other.elim)

    def __hash__(self):
        return hash((self.field_vars, self.params, self.gens, self.elim))

    def __repr__(self):
        gens = ", ".join(g.name for g in self.gens)
        extra = f"; elim {', '.join(self.elim)}" if self.elim else ""
        return f"OreAlgebra(Q({', '.join(self.ctx.names)})<{gens}>{extra})"

    def gen_index(self, var: str) -> int:
        for i, g in enumerate(self.gens):
            if g.var == var:
                return len(self.elim) + i
        raise KeyError(f"no generator acting on {var}")

    def generator_for(self, var: str) -> Generator:
        for g in self.gens:
            if g.var == var:
                return g
        raise KeyError(f"no generator acting on {var}")

    def zero_mon(self) -> tuple:
        return (0,) * self.nmon

    def gen_monomial(self, var: str, power: int = 1) -> tuple:
        m = [0] * self.nmon
        m[self.gen_index(var)] = power
        return tuple(m)

    def mon_name(self, i: int) -> str:
        if i < len(self.elim):
            return self.elim[i]
        return self.gens[i - len(self.elim)].name

    # constructors -----------------------------------------------------------

    def zero(self) -> "OrePolynomial":
        return OrePolynomial(self, {})

    def one(self) -> "OrePolynomial":
        return OrePolynomial(self, {self.zero_mon(): RationalFunction.const(self.ctx, 1)})

    def const(self, value) -> "OrePolynomial":
        c = RationalFunction.const(self.ctx, value)
        if c.is_zero():
            return self.zero()
        return OrePolynomial(self, {self.zero_mon(): c})

    def from_coeff(self, c: RationalFunction) -> "OrePolynomial":
        if c.is_zero():
            return self.zero()
        return OrePolynomial(self, {self.zero_mon(): c})

    def gen(self, var: str, power: int = 1) -> "OrePolynomial":
        return OrePolynomial(self, {self.gen_monomial(var, power): RationalFunction.const(self.ctx, 1)})

    def coeff_var(self, name: str) -> RationalFunction:
        return RationalFunction.var(self.ctx, name)

    # ------------------------------------------------- elimination switching

    def with_elimination(self, variables: Sequence[str]) -> "OreAlgebra":
        """Promote coefficient variables to monomial generators."""
        variables = tuple(variables)
        for v in variables:
            if v not in self.field_vars:
                raise ValueError(f"{v} is not a coefficient variable")
        remaining = tuple(n for n in self.field_vars if n not in variables)
        return OreAlgebra(remaining, self.gens, self.params, self.elim + variables)

    def without_elimination(self) -> "OreAlgebra":
        return OreAlgebra(self.elim + self.field_vars, self.gens, self.params, ())


def _sigma(c: RationalFunction, gen: Generator, e: int = 1) -> RationalFunction:
    """Apply the generator's coefficient automorphism e times."""
    if gen.kind == SHIFT:
        return c.shift_var(gen.var, e)
    if gen.kind == QSHIFT:
        return c.qshift_var(gen.var, gen.q, e)
    return c


def _delta(c: RationalFunction, gen: Generator) -> RationalFunction:
    """The skew derivation (nonzero only for derivative generators)."""
    if gen.kind == DERIVATIVE:
        return c.derivative(gen.var)
    return RationalFunction.const(c.ctx, 0)


class OrePolynomial:
    """Element of an Ore algebra: finite map monomial -> coefficient."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: OreAlgebra, terms: Mapping[tuple, RationalFunction]):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}

    # ---------------------------------------------------------------- basics

    def is_zero(self) -> bool:
        return not self.terms

    def is_coefficient(self) -> bool:
        """True when the operator has no generator (or eliminated) part."""
        z = self.algebra.zero_mon()
        return not self.terms or set(self.terms) == {z}

    def coefficient(self) -> RationalFunction:
        if self.is_zero():
            return RationalFunction.const(self.algebra.ctx, 0)
        return self.terms[self.algebra.zero_mon()]

    def __eq__(self, other) -> bool:
        return (isinstance(other, OrePolynomial) and self.algebra == other.algebra
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.algebra, tuple(sorted((m, c.num.sort_key(), c.den.sort_key())
                                                for m, c in self.terms.items()))))

    def support(self) -> list:
        return sorted(self.terms, key=lambda m: (sum(m), m), reverse=True)

    def max_degree(self, var: str) -> int:
        """Largest exponent of the generator acting on var."""
        i = self.algebra.gen_index(var)
        return max((m[i] for m in self.terms), default=0)

    def free_of_gens(self, variables: Iterable[str]) -> bool:
        idx = [self.algebra.gen_index(v) for v in variables]
        return all(all(m[i] == 0 for i in idx) for m in self.terms)

    def coeffs_free_of(self, names: Iterable[str]) -> bool:
        names = list(names)
        return all(c.free_of(names) for c in self.terms.values())

    # ------------------------------------------------------------ arithmetic

    def __neg__(self) -> "OrePolynomial":
        return OrePolynomial(self.algebra, {m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "OrePolynomial":
        if isinstance(other, (int, Fraction)):
            other = self.algebra.const(other)
        if self.algebra != other.algebra:
            raise ValueError("operators over different algebras")
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return OrePolynomial(self.algebra, out)

    __radd__ = __add__

    def __sub__(self, other) -> "OrePolynomial":
        if isinstance(other, (int, Fraction)):
            other = self.algebra.const(other)
        return self + (-other)

    def __rsub__(self, other) -> "OrePolynomial":
        return (-self) + other

    def scale(self, c) -> "OrePolynomial":
        """Left multiplication by a coefficient."""
        if isinstance(c, (int, Fraction)):
            c = RationalFunction.const(self.algebra.ctx, c)
        if c.is_zero():
            return self.algebra.zero()
        return OrePolynomial(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other) -> "OrePolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, OrePolynomial):
            return NotImplemented
        return ore_mul(self, other)

    def __rmul__(self, other) -> "OrePolynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> "OrePolynomial":
        if n < 0:
            raise ValueError("negative operator power")
        result = self.algebra.one()
        for _ in range(n):
            result = ore_mul(result, self)
        return result

    # ----------------------------------------------------------------- misc

    def map_coeffs(self, fn) -> "OrePolynomial":
        return OrePolynomial(self.algebra, {m: fn(c) for m, c in self.terms.items()})

    def leading_term(self, order) -> tuple:
        """Maximal (monomial, coefficient) under the given monomial order."""
        if self.is_zero():
            raise ValueError("zero operator has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order) -> "OrePolynomial":
        if self.is_zero():
            return self
        _, c = self.leading_term(order)
        if c.is_one():
            return self
        return self.scale(c.inverse())

    # ---------------------------------------------------------------- action

    def __call__(self, f: RationalFunction) -> RationalFunction:
        """Apply the operator to a rational function.

        Derivatives differentiate, shifts substitute v -> v+1, q-shifts
        substitute qv -> q*qv.  Eliminated variables multiply back in.
        """
        if isinstance(f, (int, Fraction)):
            f = RationalFunction.const(self.algebra.ctx, f)
        A = self.algebra
        total = RationalFunction.const(f.ctx, 0)
        for m, c in self.terms.items():
            g = f
            for i in range(A.nmon - 1, len(A.elim) - 1, -1):
                e = m[i]
                if not e:
                    continue
                gen = A.gens[i - len(A.elim)]
                if gen.kind == DERIVATIVE:
                    for _ in range(e):
                        g = g.derivative(gen.var)
                else:
                    g = _sigma(g, gen, e)
            if any(m[: len(A.elim)]):
                mono = RationalFunction.from_poly(
                    Polynomial.monomial(f.ctx, _elim_exp_to_ctx(A, m, f.ctx)))
                g = g * mono
            cc = c if c.ctx == f.ctx else c.rename(f.ctx)
            total = total + cc * g
        return total

    # --------------------------------------------------------------- display

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        A = self.algebra
        parts = []
        for m in self.support():
            c = self.terms[m]
            factors = []
            for i, e in enumerate(m):
                if e == 0:
                    continue
                name = A.mon_name(i)
                factors.append(name if e == 1 else f"{name}^{e}")
            cs = str(c)
            negated = False
            if cs.startswith("-") and "+" not in cs and " - " not in cs:
                negated = True
                cs = cs[1:]
            if factors and cs == "1":
                body = "*".join(factors)
            else:
                if not (cs.isdigit() or cs.replace("/", "").isdigit() or cs.isidentifier()):
                    cs = f"({cs})"
                body = cs + ("*" + "*".join(factors) if factors else "")
            parts.append(("-" if negated else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"OrePolynomial({self})"


def _elim_exp_to_ctx(A: OreAlgebra, m: tuple, ctx: Context) -> tuple:
    exp = [0] * len(ctx.names)
    for i, v in enumerate(A.elim):
        if m[i]:
            exp[ctx.index[v]] = m[i]
    return tuple(exp)


# ------------------------------------------------------------ multiplication


def ore_mul(P: OrePolynomial, Q: OrePolynomial) -> OrePolynomial:
    """Normal-form product in the Ore algebra."""
    if P.algebra != Q.algebra:
        raise ValueError("operators over different algebras")
    A = P.algebra
    out = A.zero()
    for m, c in P.terms.items():
        part = Q
        # push the generators of m through Q, rightmost generator first
        for i in range(A.nmon - 1, len(A.elim) - 1, -1):
            gen = A.gens[i - len(A.elim)]
            for _ in range(m[i]):
                part = _gen_times(part, gen, i)
        if any(m[: len(A.elim)]):
            elim_part = m[: len(A.elim)] + (0,) * len(A.gens)
            part = OrePolynomial(A, {tuple(x + y for x, y in zip(elim_part, mm)): cc
                                     for mm, cc in part.terms.items()})
        out = out + part.scale(c)
    return out


def _gen_times(P: OrePolynomial, gen: Generator, gi: int) -> OrePolynomial:
    """Left multiplication of P by one generator, in normal form."""
    A = P.algebra
    out: dict = {}

    def add(m: tuple, c: RationalFunction):
        if c.is_zero():
            return
        s = out.get(m)
        s = c if s is None else s + c
        if s.is_zero():
            out.pop(m, None)
        else:
            out[m] = s

    elim_index = A.elim.index(gen.var) if gen.var in A.elim else None
    for m, c in P.terms.items():
        bumped = m[:gi] + (m[gi] + 1,) + m[gi + 1:]
        if elim_index is None:
            # generator acts on the coefficient field
            add(bumped, _sigma(c, gen, 1))
            d = _delta(c, gen)
            if not d.is_zero():
                add(m, d)
        else:
            j = elim_index
            e = m[j]
            if gen.kind == SHIFT:
                # S * v^e = (v+1)^e * S
                for k in range(e + 1):
                    coeff = c * math.comb(e, k)
                    add(bumped[:j] + (k,) + bumped[j + 1:], coeff)
            elif gen.kind == DERIVATIVE:
                # D * v^e = v^e * D + e * v^(e-1)
                add(bumped, c)
                if e:
                    add(m[:j] + (e - 1,) + m[j + 1:], c * e)
            else:
                # QS * qv^e = q^e * qv^e * QS
                qpow = RationalFunction.from_poly(
                    Polynomial.monomial(A.ctx, _param_exp(A.ctx, gen.q, e)))
                add(bumped, c * qpow)
    return OrePolynomial(A, out)


def _param_exp(ctx: Context, name: str, e: int) -> tuple:
    exp = [0] * len(ctx.names)
    exp[ctx.index[name]] = e
    return tuple(exp)


# ---------------------------------------------------- restriction/embedding


def restrict_algebra(A: OreAlgebra, drop_vars: Sequence[str]) -> OreAlgebra:
    """Remove the given variables and their generators from the algebra."""
    drop = set(drop_vars)
    gens = tuple(g for g in A.gens if g.var not in drop)
    field_vars = tuple(v for v in A.field_vars if v not in drop)
    return OreAlgebra(field_vars, gens, A.params, A.elim)


def project_operator(P: OrePolynomial, target: OreAlgebra) -> OrePolynomial:
    """Carry a v-free operator into the restricted algebra."""
    A = P.algebra
    keep = []
    for i in range(A.nmon):
        name = A.elim[i] if i < len(A.elim) else A.gens[i - len(A.elim)].var
        if i < len(A.elim):
            keep.append(target.elim.index(name) if name in target.elim else None)
        else:
            keep.append(target.gen_index(name) if any(g.var == name for g in target.gens) else None)
    out = {}
    for m, c in P.terms.items():
        nm = [0] * target.nmon
        for i, e in enumerate(m):
            if e:
                if keep[i] is None:
                    raise ValueError("operator not free of a dropped generator")
                nm[keep[i]] = e
        out[tuple(nm)] = c.rename(target.ctx)
    return OrePolynomial(target, out)


def embed_operator(P: OrePolynomial, target: OreAlgebra) -> OrePolynomial:
    """Carry an operator into a larger algebra containing its generators."""
    A = P.algebra
    out = {}
    for m, c in P.terms.items():
        nm = [0] * target.nmon
        for i, e in enumerate(m):
            if e:
                name = A.elim[i] if i < len(A.elim) else A.gens[i - len(A.elim)].var
                if i < len(A.elim):
                    nm[target.elim.index(name)] = e
                else:
                    nm[target.gen_index(name)] = e
        out[tuple(nm)] = c.rename(target.ctx)
    return OrePolynomial(target, out)


# ---------------------------------------------------------- algebra movement


def promote_to_elimination(P: OrePolynomial, target: OreAlgebra) -> OrePolynomial:
    """Rewrite an operator into the elimination-mode algebra.

    Coefficient denominators in the promoted variables are cleared by left
    multiplication (harmless for ideal membership), numerator powers of the
    promoted variables move into the monomials.
    """
    A = P.algebra
    promoted = [v for v in target.elim if v not in A.elim]
    if tuple(target.elim) != tuple(A.elim) + tuple(promoted) or target.gens != A.gens:
        raise ValueError("incompatible elimination target")
    from .ratfun import poly_lcm
    # clear all denominators by one left multiplication
    den = Polynomial.const(A.ctx, 1)
    for c in P.terms.values():
        if not c.den.is_constant():
            den = poly_lcm(den, c.den)
    out: dict = {}
    for m, c in P.terms.items():
        num = c.num * den.exact_div(c.den)
        # move powers of the promoted variables from the coefficient into
        # the monomial (layout: old elim ++ promoted ++ generators)
        for e, coeff in num.terms.items():
            rest = [0] * len(target.ctx.names)
            for i, n in enumerate(A.ctx.names):
                if e[i] and n not in promoted:
                    rest[target.ctx.index[n]] = e[i]
            newm = (m[: len(A.elim)]
                    + tuple(e[A.ctx.index[v]] for v in promoted)
                    + m[len(A.elim):])
            cc = RationalFunction.from_poly(Polynomial.monomial(target.ctx, tuple(rest), coeff))
            s = out.get(newm)
            s = cc if s is None else s + cc
            if s.is_zero():
                out.pop(newm, None)
            else:
                out[newm] = s
    return OrePolynomial(target, out)


def demote_from_elimination(P: OrePolynomial, target: OreAlgebra) -> OrePolynomial:
    """Map an elimination-mode operator back (elim variables into coefficients)."""
    A = P.algebra
    out: dict = {}
    ne = len(A.elim)
    for m, c in P.terms.items():
        exp = [0] * len(target.ctx.names)
        for i, v in enumerate(A.elim):
            if v in target.ctx.index:
                exp[target.ctx.index[v]] = m[i]
            elif m[i]:
                raise ValueError(f"variable {v} not in target context")
        mono = RationalFunction.from_poly(Polynomial.monomial(target.ctx, tuple(exp)))
        newm = target.zero_mon()[: len(target.elim)] + m[ne:]
        cc = c.rename(target.ctx) * mono
        s = out.get(newm)
        s = cc if s is None else s + cc
        if s.is_zero():
            out.pop(newm, None)
        else:
            out[newm] = s
    return OrePolynomial(target, out)
