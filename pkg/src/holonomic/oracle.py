"""Independent verification: exact evaluation of expressions and operators.

Expressions evaluate over a symbolic context of continuous variables and
parameters; discrete variables take exact integer values.  Values are sums
of terms ``coefficient * prod(base_i^e_i) * exp(arg)`` with rational-function
coefficients, fractional exponents in (0,1) and rational arguments: closed
under multiplication and differentiation, so operators act exactly and a
zero test is just "all coefficients vanish".  No floating point anywhere.

Special functions evaluate through their recurrences (Chebyshev, Legendre,
Laguerre) or product formulas (factorial, binomial, Pochhammer and its
q-analogue); fractional powers of constants require exact rational roots.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .expressions import BinOp, Call, Neg, Num, Sym, parse
from .ore import DERIVATIVE, QSHIFT, SHIFT, OreAlgebra, OrePolynomial
from .ratfun import Context, Polynomial, RationalFunction


class NotEvaluable(ValueError):
    """The requested point does not yield an exact rational value."""


# ---------------------------------------------------------------- sym values


class SymValue:
    """Sum of terms coeff * prod(pow factors) * exp(arg), exact arithmetic."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: Mapping | None = None):
        self.ctx = ctx
        self.terms = {}
        if terms:
            for key, c in terms.items():
                if not c.is_zero():
                    prev = self.terms.get(key)
                    s = c if prev is None else prev + c
                    if s.is_zero():
                        self.terms.pop(key, None)
                    else:
                        self.terms[key] = s

    @staticmethod
    def rational(ctx: Context, value: RationalFunction) -> "SymValue":
        if value.is_zero():
            return SymValue(ctx)
        key = (frozenset(), RationalFunction.const(ctx, 0))
        return SymValue(ctx, {key: value})

    @staticmethod
    def const(ctx: Context, value) -> "SymValue":
        return SymValue.rational(ctx, RationalFunction.const(ctx, value))

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        if not self.terms:
            return True
        if len(self.terms) > 1:
            return False
        (pows, exparg), = self.terms.keys()
        return not pows and exparg.is_zero()

    def as_rational(self) -> RationalFunction:
        if self.is_zero():
            return RationalFunction.const(self.ctx, 0)
        if not self.is_rational():
            raise NotEvaluable("value involves unresolved radicals or exponentials")
        return next(iter(self.terms.values()))

    def __add__(self, other: "SymValue") -> "SymValue":
        out = dict(self.terms)
        for key, c in other.terms.items():
            prev = out.get(key)
            s = c if prev is None else prev + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SymValue(self.ctx, out)

    def __neg__(self) -> "SymValue":
        return SymValue(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "SymValue") -> "SymValue":
        return self + (-other)

    def __mul__(self, other) -> "SymValue":
        if isinstance(other, RationalFunction):
            return SymValue(self.ctx, {k: c * other for k, c in self.terms.items()})
        out: dict = {}
        for (p1, e1), c1 in self.terms.items():
            for (p2, e2), c2 in other.terms.items():
                coeff = c1 * c2
                pows = dict(p1)
                for base, ex in p2:
                    prev = pows.get(base, Fraction(0)) + ex
                    ipart = int(prev)  # floor toward zero is fine: prev >= 0 kept in (0,1)
                    ipart = math.floor(prev)
                    frac = prev - ipart
                    if ipart:
                        coeff = coeff * RationalFunction.from_poly(base) ** ipart
                    if frac:
                        pows[base] = frac
                    else:
                        pows.pop(base, None)
                key = (frozenset(pows.items()), e1 + e2)
                prev = out.get(key)
                s = coeff if prev is None else prev + coeff
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return SymValue(self.ctx, out)

    def inverse(self) -> "SymValue":
        if self.is_zero():
            raise ZeroDivisionError("division by zero value")
        if len(self.terms) == 1:
            (pows, exparg), c = next(iter(self.terms.items()))
            ipows = {}
            coeff = c.inverse()
            for base, ex in pows:
                # base^-ex = base^(1-ex) / base
                ipows[base] = 1 - ex
                coeff = coeff * RationalFunction.from_poly(base).inverse()
            return SymValue(self.ctx, {(frozenset(ipows.items()), -exparg): coeff})
        raise NotEvaluable("division by a multi-term symbolic value")

    def derivative(self, name: str) -> "SymValue":
        out: dict = {}
        for (pows, exparg), c in self.terms.items():
            bracket = c.derivative(name)
            for base, ex in pows:
                db = base.derivative(name)
                if not db.is_zero():
                    bracket = bracket + c * RationalFunction(db * ex.numerator,
                                                             base * ex.denominator)
            de = exparg.derivative(name)
            if not de.is_zero():
                bracket = bracket + c * de
            if bracket.is_zero():
                continue
            key = (pows, exparg)
            prev = out.get(key)
            s = bracket if prev is None else prev + bracket
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return SymValue(self.ctx, out)

    def eval_rational(self, point: Mapping[str, Fraction]) -> Fraction:
        """Full numeric evaluation; exact roots required for pow factors."""
        total = Fraction(0)
        for (pows, exparg), c in self.terms.items():
            val = c.eval(point)
            for base, ex in pows:
                b = base.eval(point)
                val *= _rational_power(b, ex)
            if not exparg.is_zero():
                e = exparg.eval(point)
                if e != 0:
                    raise NotEvaluable("exp at a nonzero argument is irrational")
            total += val
        return total

    def __repr__(self):
        if not self.terms:
            return "SymValue(0)"
        parts = []
        for (pows, exparg), c in self.terms.items():
            bits = [f"({c})"]
            for base, ex in sorted(pows, key=lambda t: str(t[0])):
                bits.append(f"({base})^{ex}")
            if not exparg.is_zero():
                bits.append(f"exp({exparg})")
            parts.append("*".join(bits))
        return "SymValue(" + " + ".join(parts) + ")"


def _rational_power(b: Fraction, e: Fraction) -> Fraction:
    if e.denominator == 1:
        return b ** int(e)
    if b == 0:
        if e > 0:
            return Fraction(0)
        raise ZeroDivisionError("0 to a negative power")
    num = _exact_root(b.numerator, e.denominator)
    den = _exact_root(b.denominator, e.denominator)
    if num is None or den is None:
        raise NotEvaluable(f"no exact rational {e.denominator}-th root of {b}")
    return Fraction(num, den) ** e.numerator


def _exact_root(n: int, q: int):
    if n < 0:
        if q % 2 == 0:
            return None
        r = _exact_root(-n, q)
        return -r if r is not None else None
    r = round(n ** (1.0 / q))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** q == n:
            return cand
    return None


def _pow_value(ctx: Context, base: RationalFunction, expo: Fraction) -> SymValue:
    if expo.denominator == 1:
        return SymValue.rational(ctx, base ** int(expo))
    if base.is_zero():
        if expo > 0:
            return SymValue(ctx)
        raise ZeroDivisionError("0 to a negative power")
    if base.is_constant():
        return SymValue.const(ctx, _rational_power(base.constant_value(), expo))
    coeff = RationalFunction.const(ctx, 1)
    pows = {}
    for poly, sign in ((base.num, 1), (base.den, -1)):
        if poly.is_constant():
            coeff = coeff * SymValue.const(ctx, _rational_power(
                Fraction(poly.constant_value()), sign * expo)).as_rational()
            continue
        canon = poly.int_normalize()
        if poly.lc() < 0:
            canon = -canon  # keep the sign inside the radical
        scale = Fraction(poly.lc()) / Fraction(canon.lc())
        coeff = coeff * _rational_power(scale, sign * expo)
        e = sign * expo
        ipart = math.floor(e)
        frac = e - ipart
        if ipart:
            coeff = coeff * RationalFunction.from_poly(canon) ** ipart
        if frac:
            prev = pows.get(canon, Fraction(0)) + frac
            ip2 = math.floor(prev)
            if ip2:
                coeff = coeff * RationalFunction.from_poly(canon) ** ip2
            if prev - ip2:
                pows[canon] = prev - ip2
            else:
                pows.pop(canon, None)
    return SymValue(ctx, {(frozenset(pows.items()), RationalFunction.const(ctx, 0)): coeff})


# ------------------------------------------------------------ the evaluator


def sym_eval(node, ctx: Context, assignment: Mapping[str, Fraction]) -> SymValue:
    """Evaluate an AST with the given exact assignments; the remaining
    symbols stay symbolic in the context."""
    if isinstance(node, Num):
        return SymValue.const(ctx, node.value)
    if isinstance(node, Sym):
        if node.name in assignment:
            return SymValue.const(ctx, Fraction(assignment[node.name]))
        if node.name in ctx.index:
            return SymValue.rational(ctx, RationalFunction.var(ctx, node.name))
        raise NotEvaluable(f"unassigned symbol {node.name!r}")
    if isinstance(node, Neg):
        return -sym_eval(node.operand, ctx, assignment)
    if isinstance(node, BinOp):
        if node.op == "^":
            expo_val = sym_eval(node.right, ctx, assignment)
            expo = expo_val.as_rational()
            if not expo.is_constant():
                raise NotEvaluable("symbolic exponent is not exactly evaluable")
            base = sym_eval(node.left, ctx, assignment)
            e = Fraction(expo.constant_value())
            if e.denominator == 1 and e >= 0:
                out = SymValue.const(ctx, 1)
                for _ in range(int(e)):
                    out = out * base
                return out
            if e.denominator == 1:
                out = SymValue.const(ctx, 1)
                inv = base.inverse()
                for _ in range(-int(e)):
                    out = out * inv
                return out
            return _pow_value(ctx, base.as_rational(), e)
        a = sym_eval(node.left, ctx, assignment)
        b = sym_eval(node.right, ctx, assignment)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a * b.inverse()
    if isinstance(node, Call):
        return _eval_call(node, ctx, assignment)
    raise TypeError(f"not an AST node: {node!r}")


def _int_arg(node, ctx, assignment) -> int:
    v = sym_eval(node, ctx, assignment).as_rational()
    if not v.is_constant():
        raise NotEvaluable("expected an integer argument")
    c = Fraction(v.constant_value())
    if c.denominator != 1:
        raise NotEvaluable(f"expected an integer, got {c}")
    return int(c)


def _eval_call(node: Call, ctx: Context, assignment) -> SymValue:
    name = node.name
    args = node.args
    if name == "factorial":
        n = _int_arg(args[0], ctx, assignment)
        if n < 0:
            raise NotEvaluable("factorial of a negative integer")
        return SymValue.const(ctx, math.factorial(n))
    if name == "binomial":
        top = sym_eval(args[0], ctx, assignment).as_rational()
        k = _int_arg(args[1], ctx, assignment)
        if k < 0:
            return SymValue(ctx)
        out = RationalFunction.const(ctx, 1)
        for i in range(1, k + 1):
            out = out * (top - (k - i)) * Fraction(1, i)
        return SymValue.rational(ctx, out)
    if name == "pochhammer":
        a = sym_eval(args[0], ctx, assignment).as_rational()
        m = _int_arg(args[1], ctx, assignment)
        out = RationalFunction.const(ctx, 1)
        if m >= 0:
            for i in range(m):
                out = out * (a + i)
        else:
            for i in range(1, -m + 1):
                out = out * (a - i).inverse()
        return SymValue.rational(ctx, out)
    if name == "qpochhammer":
        x = sym_eval(args[0], ctx, assignment).as_rational()
        qb = sym_eval(args[1], ctx, assignment).as_rational()
        m = _int_arg(args[2], ctx, assignment)
        out = RationalFunction.const(ctx, 1)
        one = RationalFunction.const(ctx, 1)
        if m >= 0:
            for j in range(m):
                out = out * (one - x * qb ** j)
        else:
            for j in range(1, -m + 1):
                out = out * (one - x * qb ** (-j)).inverse()
        return SymValue.rational(ctx, out)
    if name == "power":
        base = sym_eval(args[0], ctx, assignment)
        ev = sym_eval(args[1], ctx, assignment).as_rational()
        if not ev.is_constant():
            raise NotEvaluable("symbolic exponent is not exactly evaluable")
        e = Fraction(ev.constant_value())
        if e.denominator == 1:
            if e >= 0:
                out = SymValue.const(ctx, 1)
                for _ in range(int(e)):
                    out = out * base
                return out
            inv = base.inverse()
            out = SymValue.const(ctx, 1)
            for _ in range(-int(e)):
                out = out * inv
            return out
        return _pow_value(ctx, base.as_rational(), e)
    if name == "sqrt":
        base = sym_eval(args[0], ctx, assignment).as_rational()
        return _pow_value(ctx, base, Fraction(1, 2))
    if name == "exp":
        arg = sym_eval(args[0], ctx, assignment).as_rational()
        if arg.is_zero():
            return SymValue.const(ctx, 1)
        return SymValue(ctx, {(frozenset(), arg): RationalFunction.const(ctx, 1)})
    if name in ("chebyshevT", "legendreP"):
        n = _int_arg(args[0], ctx, assignment)
        z = sym_eval(args[1], ctx, assignment).as_rational()
        if name == "chebyshevT":
            n = abs(n)  # T_{-n} = T_n
            return SymValue.rational(ctx, _three_term(z, n,
                                                      lambda k, prev, pprev, z: z * 2 * prev - pprev,
                                                      RationalFunction.const(ctx, 1), z))
        if n < 0:
            n = -n - 1  # P_{-n} = P_{n-1}
        return SymValue.rational(ctx, _three_term(z, n,
                                                  lambda k, prev, pprev, z:
                                                  (z * prev * (2 * k - 1) - pprev * (k - 1)) * Fraction(1, k),
                                                  RationalFunction.const(ctx, 1), z))
    if name == "laguerreL":
        n = _int_arg(args[0], ctx, assignment)
        if n < 0:
            raise NotEvaluable("Laguerre index must be nonnegative")
        a = sym_eval(args[1], ctx, assignment).as_rational()
        x = sym_eval(args[2], ctx, assignment).as_rational()
        one = RationalFunction.const(ctx, 1)
        if n == 0:
            return SymValue.rational(ctx, one)
        prev, cur = one, one + a - x
        for k in range(1, n):
            nxt = ((a + 2 * k + 1 - x) * cur - (a + k) * prev) * Fraction(1, k + 1)
            prev, cur = cur, nxt
        return SymValue.rational(ctx, cur)
    if name == "sum":
        body, var, lo, hi = args
        a = _int_arg(lo, ctx, assignment)
        b = _int_arg(hi, ctx, assignment)
        total = SymValue(ctx)
        point = dict(assignment)
        for k in range(a, b + 1):
            point[var.name] = Fraction(k)
            total = total + sym_eval(body, ctx, point)
        return total
    if name == "integral":
        raise NotEvaluable("integrals are not oracle-evaluable")
    raise NotEvaluable(f"unknown function atom {name!r}")


def _three_term(z: RationalFunction, n: int, step, f0: RationalFunction, f1: RationalFunction):
    if n == 0:
        return f0
    if n == 1:
        return f1
    pprev, prev = f0, f1
    for k in range(2, n + 1):
        pprev, prev = prev, step(k, prev, pprev, z)
    return prev


def eval_expression(expr, point: Mapping[str, Fraction]) -> Fraction:
    """Exact value of an expression at a full rational point."""
    if isinstance(expr, str):
        expr = parse(expr)
    ctx = Context(())
    point = {k: Fraction(v) for k, v in point.items()}
    val = sym_eval(expr, ctx, point)
    return val.eval_rational({})


# ----------------------------------------------------------------- the grid


@dataclass
class SampleGrid:
    """Assignments of exact values; denominator hits are skipped, reported."""

    assignments: list

    @staticmethod
    def product(ranges: Mapping[str, Iterable]) -> "SampleGrid":
        names = list(ranges)
        out = [{}]
        for n in names:
            nxt = []
            for base in out:
                for v in ranges[n]:
                    d = dict(base)
                    d[n] = Fraction(v)
                    nxt.append(d)
            out = nxt
        return SampleGrid(out)

    def __iter__(self):
        return iter(self.assignments)

    def __len__(self):
        return len(self.assignments)


@dataclass
class CheckReport:
    checked: int = 0
    failures: list = field(default_factory=list)   # {"operator": i, "point": ..., "residue": ...}
    skipped: list = field(default_factory=list)    # {"point": ..., "reason": ...}

    @property
    def ok(self) -> bool:
        return not self.failures and self.checked > 0

    def to_json(self) -> list:
        return [
            {"operator": f["operator"], "point": {k: str(v) for k, v in f["point"].items()},
             "residue": str(f["residue"])}
            for f in self.failures
        ]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


# --------------------------------------------------------- operator checking


def _algebra_discrete_info(algebra: OreAlgebra):
    """Map each generator to how it moves a point and its symbols."""
    info = []
    for g in algebra.gens:
        if g.kind == SHIFT:
            info.append(("shift", g.var, None))
        elif g.kind == QSHIFT:
            info.append(("qshift", g.disc, (g.var, g.q)))
        else:
            info.append(("der", g.var, None))
    return info


def _symbolic_context(algebra: OreAlgebra, discrete: set) -> Context:
    names = [n for n in algebra.ctx.names if n not in discrete]
    return Context(names)


def check_annihilator(ops, expr, grid: SampleGrid) -> CheckReport:
    """Check that every operator kills the expression at every grid point.

    Discrete variables take the grid's integer values; continuous variables
    and parameters stay symbolic, so "evaluates to zero" is an identity of
    the remaining symbolic value, which is stronger than any point check.
    Grid entries for continuous variables only select reporting points.
    """
    if isinstance(expr, str):
        expr = parse(expr)
    ops = list(ops)
    if not ops:
        raise ValueError("no operators to check")
    algebra = ops[0].algebra
    info = _algebra_discrete_info(algebra)
    discrete = {v for kind, v, _ in info if kind in ("shift", "qshift")}
    qsyms = {v: extra for kind, v, extra in info if kind == "qshift"}
    # symbolic context: everything except shift variables and q^v symbols
    excluded = {qsyms[d][0] if d in qsyms else d for d in discrete}
    ctx = _symbolic_context(algebra, excluded)

    report = CheckReport()
    value_cache: dict = {}

    def value_at(assignment_key, assignment):
        if assignment_key not in value_cache:
            value_cache[assignment_key] = sym_eval(expr, ctx, assignment)
        return value_cache[assignment_key]

    for point in grid:
        disc_point = {k: v for k, v in point.items() if k in discrete}
        if set(disc_point) != discrete:
            missing = discrete - set(disc_point)
            report.skipped.append({"point": point, "reason": f"missing discrete values {missing}"})
            continue
        for idx, op in enumerate(ops):
            try:
                residue = _apply_operator_at(op, expr, ctx, disc_point, info, qsyms, value_at)
            except (ZeroDivisionError, NotEvaluable) as exc:
                report.skipped.append({"point": point, "reason": str(exc)})
                break
            report.checked += 1
            if residue.is_zero():
                continue
            # nonzero symbolic residue: evaluate at the continuous values if
            # given, otherwise report the symbolic value
            res_repr = residue
            cont_point = {k: Fraction(v) for k, v in point.items() if k in ctx.index}
            if set(cont_point) == set(ctx.names):
                try:
                    res_repr = residue.eval_rational(cont_point)
                    if res_repr == 0:
                        continue
                except (ZeroDivisionError, NotEvaluable):
                    pass
            report.failures.append({"operator": idx, "point": point, "residue": res_repr})
    return report


def _apply_operator_at(op: OrePolynomial, expr, ctx: Context, disc_point: dict,
                       info, qsyms, value_at) -> SymValue:
    A = op.algebra
    total = SymValue(ctx)
    for m, c in op.terms.items():
        shifted = dict(disc_point)
        ders = []
        for i in range(len(A.elim), A.nmon):
            e = m[i]
            if not e:
                continue
            kind, var, extra = info[i - len(A.elim)]
            if kind in ("shift", "qshift"):
                shifted[var] = shifted[var] + e
            else:
                ders.append((var, e))
        key = tuple(sorted(shifted.items()))
        val = value_at(key, shifted)
        for var, e in ders:
            for _ in range(e):
                val = val.derivative(var)
        # coefficient: substitute the discrete point (q symbols as q powers)
        mapping = {}
        for kind, var, extra in info:
            if kind == "shift":
                mapping[var] = RationalFunction.const(ctx, Fraction(disc_point[var]))
            elif kind == "qshift":
                qv, q = extra
                k0 = int(disc_point[var])
                qrf = RationalFunction.var(ctx, q)
                mapping[qv] = qrf ** k0
        coeff = c.compose(ctx, mapping)
        total = total + val * coeff
    return total


def check_sum_identity(telescoper: OrePolynomial, summand, sum_var: str,
                       bounds: tuple, grid: SampleGrid) -> CheckReport:
    """Apply a telescoper to exact partial sums and report the residues.

    ``bounds`` are expressions (or text) for the lower/upper limit of the
    sum; they are evaluated at each (shifted) grid point, so n-dependent
    limits like (0, n) are fine.
    """
    if isinstance(summand, str):
        summand = parse(summand)
    lo, hi = bounds
    if isinstance(lo, str):
        lo = parse(lo)
    if isinstance(hi, str):
        hi = parse(hi)
    A = telescoper.algebra
    info = _algebra_discrete_info(A)
    report = CheckReport()
    ctx0 = Context(())

    def F(point: dict) -> Fraction:
        a = sym_eval(lo, ctx0, point).as_rational().constant_value()
        b = sym_eval(hi, ctx0, point).as_rational().constant_value()
        if a.denominator != 1 or b.denominator != 1:
            raise NotEvaluable("sum bound is not an integer at this point")
        total = Fraction(0)
        inner = dict(point)
        for k in range(int(a), int(b) + 1):
            inner[sum_var] = Fraction(k)
            total += eval_expression(summand, inner)
        return total

    for point in grid:
        point = {k: Fraction(v) for k, v in point.items()}
        try:
            residue = Fraction(0)
            for m, c in telescoper.terms.items():
                shifted = dict(point)
                for i in range(len(A.elim), A.nmon):
                    e = m[i]
                    if not e:
                        continue
                    kind, var, extra = info[i - len(A.elim)]
                    if kind != "shift":
                        raise NotEvaluable("only shift telescopers are summable")
                    shifted[var] = shifted[var] + e
                residue += c.eval(point) * F(shifted)
        except (ZeroDivisionError, NotEvaluable) as exc:
            report.skipped.append({"point": point, "reason": str(exc)})
            continue
        report.checked += 1
        if residue != 0:
            report.failures.append({"operator": 0, "point": point, "residue": residue})
    return report


def evaluate_boundary(boundary, summand, grid: SampleGrid) -> CheckReport:
    """Evaluate pending boundary brackets [C f] at finite integer bounds.

    For each grid point and each discrete boundary term, computes
    (C f)(upper+1) - (C f)(lower) exactly and reports nonzero residues.
    Points where a certificate denominator vanishes are skipped and listed.
    """
    if isinstance(summand, str):
        summand = parse(summand)
    report = CheckReport()
    ctx0 = Context(())
    for term in boundary.terms:
        if term.status == "assumed-zero":
            continue
        if term.status != "pending-evaluation" or term.certificate is None:
            continue
        cert = term.certificate
        A = cert.algebra
        info = _algebra_discrete_info(A)
        lo = parse(term.lower) if isinstance(term.lower, str) else term.lower
        hi = parse(term.upper) if isinstance(term.upper, str) else term.upper
        for point in grid:
            point = {k: Fraction(v) for k, v in point.items()}
            try:
                a = sym_eval(lo, ctx0, point).as_rational().constant_value()
                b = sym_eval(hi, ctx0, point).as_rational().constant_value()
                residue = Fraction(0)
                for endpoint, sign in ((int(b) + 1, 1), (int(a), -1)):
                    at = dict(point)
                    at[term.var] = Fraction(endpoint)
                    val = Fraction(0)
                    for m, c in cert.terms.items():
                        shifted = dict(at)
                        for i in range(len(A.elim), A.nmon):
                            e = m[i]
                            if not e:
                                continue
                            kind, var, extra = info[i - len(A.elim)]
                            if kind != "shift":
                                raise NotEvaluable("continuous bracket needs external limits")
                            shifted[var] = shifted[var] + e
                        val += c.eval(at) * eval_expression(summand, shifted)
                    residue += sign * val
            except (ZeroDivisionError, NotEvaluable) as exc:
                report.skipped.append({"point": point, "reason": str(exc)})
                continue
            report.checked += 1
            if residue != 0:
                report.failures.append({"operator": 0, "point": point, "residue": residue})
    return report
