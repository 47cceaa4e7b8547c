"""Annihilating ideals for closed-form expressions.

The front door of the engine: parse a closed form, recognize its atoms, and
assemble an annihilating ideal.  Products of hypergeometric /
hyperexponential / q-hypergeometric atoms combine multiplicatively into one
first-order operator per generator; sums go through the addition closure;
the named polynomial families (Chebyshev, Legendre, Laguerre) carry
built-in defining systems that are specialized by the substitution
closures.  Defining systems for atoms without closed forms can be built
directly from operator text with ``buchberger`` and combined through
``dfinite_times``; no registry is needed.

Supported atoms: factorial, binomial, pochhammer, qpochhammer, power, exp,
sqrt, chebyshevT, legendreP, laguerreL.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .closure import (dfinite_plus, dfinite_times, substitute_algebraic,
                      substitute_integer_linear)
from .config import Caps, DEFAULT_CAPS
from .expressions import BinOp, Call, KNOWN_ATOMS, Neg, Num, Sym, free_symbols, parse
from .groebner import GroebnerBasis, buchberger
from .ore import (DERIVATIVE, QSHIFT, SHIFT, Generator, OreAlgebra,
                  OrePolynomial, embed_operator, restrict_algebra)
from .ratfun import Context, Polynomial, RationalFunction


class NotHolonomicError(ValueError):
    """The expression is not recognizably d-finite for the given algebra."""


def annihilator(expr, algebra: OreAlgebra, caps: Caps = DEFAULT_CAPS) -> GroebnerBasis:
    """Annihilating ideal of the expression with respect to the algebra."""
    if isinstance(expr, str):
        expr = parse(expr)
    summands = _flatten_sum(expr)
    ideals = [_annihilate_product(s, algebra, caps) for s in summands]
    out = ideals[0]
    for nxt in ideals[1:]:
        out = dfinite_plus(out, nxt, caps)
    return out


def _flatten_sum(node) -> list:
    if isinstance(node, BinOp) and node.op in ("+", "-"):
        left = _flatten_sum(node.left)
        right = _flatten_sum(node.right)
        if node.op == "-":
            right = [Neg(r) for r in right]
        return left + right
    if isinstance(node, Neg):
        return [Neg(r) for r in _flatten_sum(node.operand)]
    return [node]


def _flatten_product(node, exponent: int, factors: list):
    if isinstance(node, Neg):
        factors.append((Num(Fraction(-1)), exponent))
        _flatten_product(node.operand, exponent, factors)
        return
    if isinstance(node, BinOp):
        if node.op == "*":
            _flatten_product(node.left, exponent, factors)
            _flatten_product(node.right, exponent, factors)
            return
        if node.op == "/":
            _flatten_product(node.left, exponent, factors)
            _flatten_product(node.right, -exponent, factors)
            return
        if node.op == "^":
            e = _int_literal(node.right)
            if e is not None:
                _flatten_product(node.left, exponent * e, factors)
                return
            # symbolic exponent: same as the power atom
            factors.append((Call("power", (node.left, node.right)), exponent))
            return
    factors.append((node, exponent))


def _int_literal(node):
    if isinstance(node, Num) and node.value.denominator == 1:
        return int(node.value)
    if isinstance(node, Neg):
        v = _int_literal(node.operand)
        return -v if v is not None else None
    return None


def _annihilate_product(node, algebra: OreAlgebra, caps: Caps) -> GroebnerBasis:
    ctx = algebra.ctx
    factors: list = []
    _flatten_product(node, 1, factors)

    rational = RationalFunction.const(ctx, 1)
    first_order: list = []     # (atom AST, exponent)
    higher: list = []          # (prebuilt GroebnerBasis, exponent)
    for ast, e in factors:
        r = _try_ratfun(ast, ctx)
        if r is not None:
            rational = rational * r ** e
            continue
        if isinstance(ast, Call) and ast.name in ("chebyshevT", "legendreP", "laguerreL"):
            if e < 0:
                raise NotHolonomicError(f"1/{ast.name}(...) is not d-finite")
            higher.append((_named_family_ideal(ast, algebra, caps), e))
            continue
        if isinstance(ast, Call) and ast.name in KNOWN_ATOMS:
            first_order.append((ast, e))
            continue
        if isinstance(ast, (BinOp, Neg)):
            # composite factor (e.g. a parenthesized sum): recurse
            if e < 0:
                raise NotHolonomicError("reciprocal of a compound factor is not d-finite")
            higher.append((annihilator(ast, algebra, caps), e))
            continue
        if isinstance(ast, Call) and not ast.bracket:
            raise NotHolonomicError(f"unknown function atom {ast.name!r}")
        raise NotHolonomicError(f"cannot annihilate factor {ast!r}")

    ops = _first_order_ideal(rational, first_order, algebra)
    ideal = buchberger(ops, caps=caps)
    for sub_ideal, e in higher:
        for _ in range(e):
            ideal = dfinite_times(ideal, sub_ideal, caps)
    return ideal


def _try_ratfun(node, ctx: Context):
    """Convert to a rational function over the context, or None."""
    try:
        return _ast_to_ratfun(node, ctx)
    except _NotRational:
        return None


class _NotRational(Exception):
    pass


def _ast_to_ratfun(node, ctx: Context) -> RationalFunction:
    if isinstance(node, Num):
        return RationalFunction.const(ctx, node.value)
    if isinstance(node, Sym):
        if node.name in ctx.index:
            return RationalFunction.var(ctx, node.name)
        raise _NotRational
    if isinstance(node, Neg):
        return -_ast_to_ratfun(node.operand, ctx)
    if isinstance(node, BinOp):
        if node.op == "^":
            e = _int_literal(node.right)
            if e is None:
                raise _NotRational
            return _ast_to_ratfun(node.left, ctx) ** e
        a = _ast_to_ratfun(node.left, ctx)
        b = _ast_to_ratfun(node.right, ctx)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a / b
    raise _NotRational


# ----------------------------------------------------- first-order assembly


def _first_order_ideal(rational: RationalFunction, atoms: list, algebra: OreAlgebra) -> list:
    """One first-order operator per generator from the combined quotients."""
    ops = []
    for gen in algebra.gens:
        if gen.kind == DERIVATIVE:
            logd = _ratfun_logderiv(rational, gen)
            for ast, e in atoms:
                logd = logd + _atom_logderiv(ast, gen, algebra) * e
            # operator den * D - num for logd = num/den
            D = algebra.gen(gen.var)
            if logd.is_zero():
                ops.append(D)
            else:
                ops.append(D.scale(RationalFunction.from_poly(logd.den))
                           - algebra.from_coeff(RationalFunction.from_poly(logd.num)))
        else:
            quot = _ratfun_quotient(rational, gen)
            for ast, e in atoms:
                quot = quot * _atom_quotient(ast, gen, algebra) ** e
            S = algebra.gen(gen.var)
            ops.append(S.scale(RationalFunction.from_poly(quot.den))
                       - algebra.from_coeff(RationalFunction.from_poly(quot.num)))
    return ops


def _sigma_rf(c: RationalFunction, gen: Generator) -> RationalFunction:
    if gen.kind == SHIFT:
        return c.shift_var(gen.var, 1)
    return c.qshift_var(gen.var, gen.q, 1)


def _ratfun_quotient(r: RationalFunction, gen: Generator) -> RationalFunction:
    if r.is_zero():
        raise NotHolonomicError("zero factor")
    return _sigma_rf(r, gen) / r


def _ratfun_logderiv(r: RationalFunction, gen: Generator) -> RationalFunction:
    if r.is_zero():
        raise NotHolonomicError("zero factor")
    return r.derivative(gen.var) / r


def _gamma_ratio(z: RationalFunction, c: int) -> RationalFunction:
    """Gamma(z + c)/Gamma(z) as a rational function (c an integer)."""
    ctx = z.ctx
    out = RationalFunction.const(ctx, 1)
    if c >= 0:
        for i in range(c):
            out = out * (z + i)
    else:
        for i in range(1, -c + 1):
            out = out * (z - i).inverse()
    return out


def _linear_shift_amount(u: RationalFunction, gen: Generator) -> int:
    """How much u moves under the generator's shift; must be an integer."""
    delta = _sigma_rf(u, gen) - u
    if not delta.is_constant():
        raise NotHolonomicError(f"argument {u} is not integer-linear in {gen.var}")
    c = delta.constant_value()
    if Fraction(c).denominator != 1:
        raise NotHolonomicError(f"argument shift {c} is not an integer")
    return int(c)


def _atom_quotient(ast: Call, gen: Generator, algebra: OreAlgebra) -> RationalFunction:
    """Shift quotient sigma(f)/f of a first-order atom."""
    ctx = algebra.ctx
    name = ast.name
    if gen.kind == QSHIFT:
        return _atom_quotient_q(ast, gen, algebra)
    if name == "factorial":
        u = _arg_rf(ast.args[0], ctx)
        return _gamma_ratio(u + 1, _linear_shift_amount(u, gen))
    if name == "binomial":
        u = _arg_rf(ast.args[0], ctx)
        w = _arg_rf(ast.args[1], ctx)
        cu = _linear_shift_amount(u, gen)
        cw = _linear_shift_amount(w, gen)
        return _gamma_ratio(u + 1, cu) * (_gamma_ratio(w + 1, cw)
                                          * _gamma_ratio(u - w + 1, cu - cw)).inverse()
    if name == "pochhammer":
        a = _arg_rf(ast.args[0], ctx)
        u = _arg_rf(ast.args[1], ctx)
        ca = _linear_shift_amount(a, gen)
        cu = _linear_shift_amount(u, gen)
        return _gamma_ratio(a + u, ca + cu) * _gamma_ratio(a, ca).inverse()
    if name == "power":
        base_rf = _try_ratfun(ast.args[0], ctx)
        expo_rf = _try_ratfun(ast.args[1], ctx)
        if expo_rf is not None:
            delta = _sigma_rf(expo_rf, gen) - expo_rf
            if delta.is_zero():
                if base_rf is None:
                    raise NotHolonomicError("power base is not rational")
                ratio = _sigma_rf(base_rf, gen) / base_rf
                if ratio.is_one():
                    return ratio
                raise NotHolonomicError(
                    f"power({ast.args[0]!r}, ...) is not hypergeometric in {gen.var}")
            if not delta.is_constant() or Fraction(delta.constant_value()).denominator != 1:
                raise NotHolonomicError("power exponent shift is not an integer")
            c = int(delta.constant_value())
            if base_rf is None or not _sigma_rf(base_rf, gen) == base_rf:
                raise NotHolonomicError("power base must be free of the shifted variable")
            return base_rf ** c
        raise NotHolonomicError("power exponent is not recognizable")
    if name in ("exp", "sqrt"):
        u = _arg_rf(ast.args[0], ctx)
        if _sigma_rf(u, gen) == u:
            return RationalFunction.const(ctx, 1)
        raise NotHolonomicError(f"{name} argument moves under {gen.var}")
    if name == "qpochhammer":
        for a in ast.args:
            r = _try_ratfun(a, ctx)
            if r is None or not (_sigma_rf(r, gen) == r):
                raise NotHolonomicError("q-Pochhammer argument moves under a plain shift")
        return RationalFunction.const(ctx, 1)
    raise NotHolonomicError(f"atom {name} has no shift quotient rule")


def _atom_logderiv(ast: Call, gen: Generator, algebra: OreAlgebra) -> RationalFunction:
    """Logarithmic derivative f'/f of a first-order atom."""
    ctx = algebra.ctx
    name = ast.name
    x = gen.var
    if name == "power":
        base = _arg_rf(ast.args[0], ctx)
        expo = _try_ratfun(ast.args[1], ctx)
        if expo is None:
            # exponent may involve discrete symbols outside the field (q-mode
            # never has derivative generators; otherwise reject)
            raise NotHolonomicError("power exponent is not rational")
        if not expo.derivative(x).is_zero():
            raise NotHolonomicError(f"exponent of power depends on {x}: not hyperexponential")
        return expo * base.derivative(x) / base
    if name == "exp":
        return _arg_rf(ast.args[0], ctx).derivative(x)
    if name == "sqrt":
        u = _arg_rf(ast.args[0], ctx)
        return u.derivative(x) / (u * 2)
    if name in ("factorial", "binomial", "pochhammer", "qpochhammer"):
        for a in ast.args:
            r = _try_ratfun(a, ctx)
            if r is None or not r.derivative(x).is_zero():
                raise NotHolonomicError(f"{name} argument depends on continuous {x}")
        return RationalFunction.const(ctx, 0)
    raise NotHolonomicError(f"atom {name} has no logarithmic derivative rule")


def _arg_rf(node, ctx: Context) -> RationalFunction:
    r = _try_ratfun(node, ctx)
    if r is None:
        raise NotHolonomicError(f"argument {node!r} is not rational over the coefficient field")
    return r


# ---------------------------------------------------------------- q quotients


def _disc_names(algebra: OreAlgebra) -> dict:
    """Map of discrete index names to their q-power symbols."""
    return {g.disc: g for g in algebra.gens if g.kind == QSHIFT}


def _disc_poly(node, disc_ctx: Context) -> Polynomial:
    """Exponent polynomial over the discrete index names."""
    if isinstance(node, Num):
        return Polynomial.const(disc_ctx, node.value)
    if isinstance(node, Sym):
        if node.name in disc_ctx.index:
            return Polynomial.var(disc_ctx, node.name)
        raise NotHolonomicError(f"symbol {node.name!r} in a q-exponent is not a discrete index")
    if isinstance(node, Neg):
        return -_disc_poly(node.operand, disc_ctx)
    if isinstance(node, BinOp):
        if node.op == "^":
            e = _int_literal(node.right)
            if e is None or e < 0:
                raise NotHolonomicError("bad power in q-exponent")
            return _disc_poly(node.left, disc_ctx) ** e
        a = _disc_poly(node.left, disc_ctx)
        b = _disc_poly(node.right, disc_ctx)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            d = b
            if not d.is_constant():
                raise NotHolonomicError("division by a nonconstant in a q-exponent")
            return a * (Fraction(1) / Fraction(d.constant_value()))
    raise NotHolonomicError(f"cannot read q-exponent {node!r}")


def _q_power_of_linear(p: Polynomial, base: RationalFunction, algebra: OreAlgebra,
                       disc_map: dict) -> RationalFunction:
    """base^(linear form) as a rational function: q^c0 * prod(qv^cv)."""
    ctx = algebra.ctx
    const = Fraction(0)
    out = RationalFunction.const(ctx, 1)
    for e, c in p.terms.items():
        deg = sum(e)
        if deg == 0:
            const += Fraction(c)
            continue
        if deg > 1:
            raise NotHolonomicError("q-exponent shift is not integer-linear")
        if Fraction(c).denominator != 1:
            raise NotHolonomicError("q-exponent shift has a non-integer coefficient")
        i = next(i for i, d in enumerate(e) if d)
        name = p.ctx.names[i]
        qsym = disc_map[name].var
        out = out * RationalFunction.var(ctx, qsym) ** int(c)
    if const.denominator != 1:
        raise NotHolonomicError("q-exponent shift has a non-integer constant")
    return out * base ** int(const)


def _eval_q_ratfun(node, algebra: OreAlgebra, disc_map: dict) -> RationalFunction:
    """Evaluate q-mode arguments like q^(n+1) into the coefficient field."""
    ctx = algebra.ctx
    if isinstance(node, Num):
        return RationalFunction.const(ctx, node.value)
    if isinstance(node, Sym):
        if node.name in ctx.index:
            return RationalFunction.var(ctx, node.name)
        raise NotHolonomicError(f"symbol {node.name!r} not in the q coefficient field")
    if isinstance(node, Neg):
        return -_eval_q_ratfun(node.operand, algebra, disc_map)
    if isinstance(node, Call) and node.name == "power":
        return _eval_q_power(node.args[0], node.args[1], algebra, disc_map)
    if isinstance(node, BinOp):
        if node.op == "^":
            e = _int_literal(node.right)
            if e is not None:
                return _eval_q_ratfun(node.left, algebra, disc_map) ** e
            return _eval_q_power(node.left, node.right, algebra, disc_map)
        a = _eval_q_ratfun(node.left, algebra, disc_map)
        b = _eval_q_ratfun(node.right, algebra, disc_map)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a * b
        if node.op == "/":
            return a / b
    raise NotHolonomicError(f"cannot evaluate q-argument {node!r}")


def _eval_q_power(base_ast, expo_ast, algebra: OreAlgebra, disc_map: dict) -> RationalFunction:
    ctx = algebra.ctx
    base = _try_ratfun(base_ast, ctx)
    if base is None:
        raise NotHolonomicError("q-power base is not in the coefficient field")
    e_int = _int_literal(expo_ast)
    if e_int is not None:
        return base ** e_int
    disc_ctx = Context(tuple(sorted(disc_map)))
    p = _disc_poly(expo_ast, disc_ctx)
    return _q_power_of_linear(p, base, algebra, disc_map)


def _atom_quotient_q(ast: Call, gen: Generator, algebra: OreAlgebra) -> RationalFunction:
    """Quotient of an atom under a q-shift generator (qv -> q*qv)."""
    ctx = algebra.ctx
    name = ast.name
    disc_map = _disc_names(algebra)
    v = gen.disc
    if name == "power":
        base = _try_ratfun(ast.args[0], ctx)
        disc_ctx = Context(tuple(sorted(disc_map)))
        try:
            p = _disc_poly(ast.args[1], disc_ctx)
        except NotHolonomicError:
            p = None
        if p is not None:
            delta = p.shift_var(v, 1) - p
            if base is None:
                raise NotHolonomicError("q-power base is not rational")
            return _q_power_of_linear(delta, base, algebra, disc_map)
        raise NotHolonomicError("power exponent is not polynomial in the discrete indexes")
    if name == "qpochhammer":
        x = _eval_q_ratfun(ast.args[0], algebra, disc_map)
        qb = _eval_q_ratfun(ast.args[1], algebra, disc_map)
        disc_ctx = Context(tuple(sorted(disc_map)))
        u = _disc_poly(ast.args[2], disc_ctx)
        qrf = RationalFunction.var(ctx, gen.q)
        if qb == qrf:
            qb_dir = 1
        elif qb == qrf.inverse():
            qb_dir = -1
        else:
            raise NotHolonomicError("q-Pochhammer base must be q or 1/q")
        cu_poly = u.shift_var(v, 1) - u
        if not cu_poly.is_constant():
            raise NotHolonomicError("q-Pochhammer length is not integer-linear")
        cu = Fraction(cu_poly.constant_value())
        if cu.denominator != 1:
            raise NotHolonomicError("q-Pochhammer length shift is not an integer")
        cu = int(cu)
        sx = x.qshift_var(gen.var, gen.q, 1)
        ratio = sx / x
        if not ratio.free_of([g.var for g in algebra.gens]):
            raise NotHolonomicError("q-Pochhammer argument is not a q-monomial")
        cx = _pure_q_power(ratio, gen.q, ctx)
        q_to_u = _q_power_of_linear(u, qrf, algebra, disc_map)
        qb_to_u = q_to_u if qb_dir == 1 else q_to_u.inverse()
        one = RationalFunction.const(ctx, 1)
        out = one
        # length steps at the shifted argument
        for i in range(abs(cu)):
            step = i if cu > 0 else -1 - i
            factor = one - sx * qb_to_u * qb ** step
            out = out * factor if cu > 0 else out * factor.inverse()
        # argument steps x -> x*q^cx at the original length
        for t in range(abs(cx)):
            tt = t if cx > 0 else -1 - t
            if qb_dir == 1:
                # (x q^(t+1); q)_u / (x q^t; q)_u = (1 - x q^t q^u)/(1 - x q^t)
                numer = one - x * qrf ** tt * q_to_u
                denom = one - x * qrf ** tt
            else:
                # (x q^(t+1); 1/q)_u / (x q^t; 1/q)_u = (1 - x q^(t+1))/(1 - x q^(t+1-u))
                numer = one - x * qrf ** (tt + 1)
                denom = one - x * qrf ** (tt + 1) * q_to_u.inverse()
            out = out * numer / denom if cx > 0 else out * denom / numer
        return out
    if name in ("factorial", "binomial", "pochhammer", "exp", "sqrt"):
        for a in ast.args:
            r = _try_ratfun(a, ctx)
            if r is None or not (_sigma_rf(r, gen) == r):
                raise NotHolonomicError(f"{name} is not q-hypergeometric in {gen.var}")
        return RationalFunction.const(ctx, 1)
    raise NotHolonomicError(f"atom {name} has no q-shift quotient rule")


def _pure_q_power(r: RationalFunction, q: str, ctx: Context) -> int:
    """Exponent c with r == q^c; raises when r is not a pure q power."""
    qrf = RationalFunction.var(ctx, q)
    for c in range(0, 30):
        if r == qrf ** c:
            return c
        if r == qrf ** (-c):
            return -c
    raise NotHolonomicError("argument ratio is not a small q power")


# ------------------------------------------------------------ named families


_FAMILY_SYSTEMS = {
    # operator texts over placeholder names (idx, par, arg)
    "chebyshevT": (
        ("idx", None, "arg"),
        ["idx*S[idx] + (1-arg^2)*Der[arg] - idx*arg",
         "(arg^2-1)*Der[arg]^2 + arg*Der[arg] - idx^2"],
    ),
    "legendreP": (
        ("idx", None, "arg"),
        ["(idx+1)*S[idx] - (arg^2-1)*Der[arg] - (idx+1)*arg",
         "(arg^2-1)*Der[arg]^2 + 2*arg*Der[arg] - idx*(idx+1)"],
    ),
    "laguerreL": (
        ("idx", "par", "arg"),
        ["S[par] + Der[arg] - 1",
         "(idx+1)*S[idx] - arg*Der[arg] + (-par-idx+arg-1)",
         "arg*Der[arg]^2 + (par-arg+1)*Der[arg] + idx"],
    ),
}


def _named_family_ideal(ast: Call, algebra: OreAlgebra, caps: Caps) -> GroebnerBasis:
    """Defining ideal of a classical family atom, specialized to its arguments.

    The first argument must be a discrete variable plus an integer constant;
    the trailing argument may be any rational expression in continuous
    variables (handled by the substitution closure); Laguerre's middle
    parameter may be a discrete variable (plus integer) or a symbol of the
    coefficient field.
    """
    from .expressions import parse_operator
    name = ast.name
    roles, texts = _FAMILY_SYSTEMS[name]
    ctx = algebra.ctx

    idx_var, idx_off = _var_plus_int(ast.args[0])
    gen_idx = algebra.generator_for(idx_var)
    if gen_idx.kind != SHIFT:
        raise NotHolonomicError(f"{name} index {idx_var} has no shift generator")

    par_var = par_off = None
    arg_ast = ast.args[-1]
    if name == "laguerreL":
        try:
            par_var, par_off = _var_plus_int(ast.args[1])
        except NotHolonomicError:
            par_var = None
        if par_var is not None and not any(g.var == par_var and g.kind == SHIFT
                                           for g in algebra.gens):
            par_var = None  # parameter without generator: drop its relation

    arg_rf = _arg_rf(arg_ast, ctx)
    arg_is_var = (isinstance(arg_ast, Sym)
                  and any(g.var == arg_ast.name and g.kind == DERIVATIVE for g in algebra.gens))

    # build the template over fresh names, renamed to the final ones upfront
    fresh_arg = arg_ast.name if arg_is_var else _fresh("z", algebra)
    mapping = {"idx": idx_var, "arg": fresh_arg}
    gens = [Generator(SHIFT, idx_var), Generator(DERIVATIVE, fresh_arg)]
    if name == "laguerreL":
        if par_var is not None:
            mapping["par"] = par_var
            gens.insert(1, Generator(SHIFT, par_var))
        else:
            par_sym = _family_param_symbol(ast.args[1], algebra)
            mapping["par"] = par_sym
    field = [mapping[r] for r in roles if r is not None and mapping.get(r)]
    field = list(dict.fromkeys(field))
    base_algebra = OreAlgebra(field, gens, ())
    ops = []
    for text in texts:
        t = text
        for role, final in mapping.items():
            t = re.sub(rf"\b{role}\b", final, t)
        if name == "laguerreL" and par_var is None and f"S[{mapping['par']}]" in t:
            continue  # parameter relation needs the dropped shift generator
        ops.append(parse_operator(t, base_algebra))
    ideal = buchberger(ops, caps=caps)

    # index shift n -> n + c
    if idx_off:
        ideal = substitute_integer_linear(ideal, idx_var, {idx_var: 1}, idx_off, base_algebra, caps)
    if name == "laguerreL" and par_var is not None and par_off:
        ideal = substitute_integer_linear(ideal, par_var, {par_var: 1}, par_off, base_algebra, caps)

    # continuous argument substitution
    if not arg_is_var:
        target_gens = [g for g in ideal.algebra.gens if g.var != fresh_arg]
        cont_targets = [g for g in algebra.gens if g.kind == DERIVATIVE]
        for g in cont_targets:
            if all(t.var != g.var for t in target_gens):
                target_gens.append(g)
        field_vars = [v for v in ideal.algebra.field_vars if v != fresh_arg]
        for g in cont_targets:
            if g.var not in field_vars:
                field_vars.append(g.var)
        for v in algebra.field_vars:
            if v not in field_vars and v in (arg_rf.num.variables_used() | arg_rf.den.variables_used()):
                field_vars.append(v)
        target = OreAlgebra(field_vars, target_gens, ())
        value = arg_rf.rename(target.ctx)
        ideal = substitute_algebraic(ideal, fresh_arg, value, target, caps)

    # embed into the full algebra: add trivial relations for missing generators
    ops = [embed_operator(g, algebra) for g in ideal.elements]
    have = {g.var for g in ideal.algebra.gens}
    for g in algebra.gens:
        if g.var in have:
            continue
        if g.kind == DERIVATIVE:
            ops.append(algebra.gen(g.var))
        else:
            ops.append(algebra.gen(g.var) - algebra.one())
    return buchberger(ops, caps=caps)


def _var_plus_int(node) -> tuple:
    if isinstance(node, Sym):
        return node.name, 0
    if isinstance(node, BinOp) and node.op in ("+", "-") and isinstance(node.left, Sym):
        c = _int_literal(node.right)
        if c is not None:
            return node.left.name, c if node.op == "+" else -c
    raise NotHolonomicError(f"family index must be a discrete variable plus an integer, got {node!r}")


def _family_param_symbol(node, algebra: OreAlgebra) -> str:
    if isinstance(node, Sym) and node.name in algebra.ctx.index:
        return node.name
    raise NotHolonomicError("family parameter must be a coefficient symbol or shifted variable")


def _fresh(base: str, algebra: OreAlgebra) -> str:
    names = set(algebra.ctx.names) | set(algebra.elim)
    if base not in names:
        return base
    i = 2
    while f"{base}{i}" in names:
        i += 1
    return f"{base}{i}"
