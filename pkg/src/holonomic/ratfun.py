"""Exact sparse multivariate polynomial and rational function arithmetic.

Polynomials are sparse maps from exponent vectors to ``fractions.Fraction``
coefficients over an immutable, ordered tuple of variable names (the
:class:`Context`).  Term order is degree-lexicographic in declaration order.
Rational functions always keep a coprime numerator/denominator pair whose
denominator has leading coefficient 1, so equal values have equal
representations.

All values are immutable after construction and all operations are pure;
instances can be shared freely between threads.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

_ZERO = 0
_ONE = 1


def _coeff(c):
    """Normalize a coefficient: plain int when integral, Fraction otherwise.

    Integer coefficients keep the hot arithmetic paths in C-speed int math;
    ints and Fractions mix transparently everywhere except true division,
    which goes through :func:`_divc`.
    """
    t = type(c)
    if t is int:
        return c
    if t is Fraction:
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, float):
        raise TypeError("float coefficients are not allowed; use Fraction")
    if isinstance(c, int):
        return int(c)
    return _coeff(Fraction(c))


def _divc(a, b):
    """Exact coefficient division a / b, normalized like :func:`_coeff`."""
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
        return Fraction(a, b)
    q = Fraction(a) / b
    return q.numerator if q.denominator == 1 else q


class Context:
    """An ordered set of variable names shared by a family of polynomials."""

    __slots__ = ("names", "index")

    def __init__(self, names: Sequence[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names: {names}")
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, Context) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Context({', '.join(self.names)})"

    def zero_exp(self) -> tuple:
        return (0,) * len(self.names)


def _deglex_key(exp: tuple) -> tuple:
    return (sum(exp), exp)


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: Mapping[tuple, Fraction]):
        self.ctx = ctx
        out = {}
        for e, c in terms.items():
            if type(c) is not int:
                c = _coeff(c)
            if c:
                out[e] = c
        self.terms = out

    # ---------------------------------------------------------------- basic

    @staticmethod
    def zero(ctx: Context) -> "Polynomial":
        return Polynomial(ctx, {})

    @staticmethod
    def const(ctx: Context, value) -> "Polynomial":
        value = _coeff(value)
        if value == 0:
            return Polynomial(ctx, {})
        return Polynomial(ctx, {ctx.zero_exp(): value})

    @staticmethod
    def var(ctx: Context, name: str) -> "Polynomial":
        exp = list(ctx.zero_exp())
        exp[ctx.index[name]] = 1
        return Polynomial(ctx, {tuple(exp): _ONE})

    @staticmethod
    def monomial(ctx: Context, exp: tuple, coeff=_ONE) -> "Polynomial":
        return Polynomial(ctx, {tuple(exp): _coeff(coeff)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ctx.zero_exp() in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return _ZERO
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.terms[self.ctx.zero_exp()]

    def leading(self) -> tuple:
        """Leading (exponent, coefficient) under deglex."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_deglex_key)
        return e, self.terms[e]

    def lc(self) -> Fraction:
        return self.leading()[1]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, name: str) -> int:
        if not self.terms:
            return -1
        i = self.ctx.index[name]
        return max(e[i] for e in self.terms)

    def variables_used(self) -> set:
        used = set()
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    used.add(self.ctx.names[i])
        return used

    def sort_key(self) -> tuple:
        """Canonical hashable key (for dedup of factor sets etc.)."""
        return tuple(sorted(self.terms.items()))

    # ----------------------------------------------------------- arithmetic

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.ctx, other)
        return isinstance(other, Polynomial) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, self.sort_key()))

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ctx, {e: -c for e, c in self.terms.items()})

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.ctx, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial(self.ctx, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = _coeff(other)
            if other == 0:
                return Polynomial.zero(self.ctx)
            return Polynomial(self.ctx, {e: c * other for e, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial.zero(self.ctx)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, _ZERO) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Polynomial(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Polynomial.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def mul_term(self, exp: tuple, coeff) -> "Polynomial":
        coeff = _coeff(coeff)
        if coeff == 0:
            return Polynomial.zero(self.ctx)
        return Polynomial(self.ctx, {tuple(x + y for x, y in zip(e, exp)): c * coeff
                                     for e, c in self.terms.items()})

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        c = self.lc()
        if c == 1:
            return self
        return self * _divc(1, c)

    # --------------------------------------------------------- substitution

    def derivative(self, name: str) -> "Polynomial":
        i = self.ctx.index[name]
        out: dict = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                s = out.get(ne, _ZERO) + c * e[i]
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
        return Polynomial(self.ctx, out)

    def shift_var(self, name: str, offset) -> "Polynomial":
        """Substitute name -> name + offset (offset a rational constant)."""
        offset = _coeff(Fraction(offset))
        if offset == 0:
            return self
        i = self.ctx.index[name]
        out: dict = {}
        for e, c in self.terms.items():
            d = e[i]
            if d == 0:
                s = out.get(e, _ZERO) + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
                continue
            # (v + offset)^d expanded by the binomial theorem
            pw = _ONE
            for k in range(d, -1, -1):
                ne = e[:i] + (k,) + e[i + 1:]
                coeff = c * math.comb(d, k) * pw
                s = out.get(ne, _ZERO) + coeff
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
                pw *= offset
        return Polynomial(self.ctx, out)

    def scale_var(self, name: str, factor) -> "Polynomial":
        """Substitute name -> factor * name (factor a rational constant)."""
        factor = _coeff(Fraction(factor))
        i = self.ctx.index[name]
        out: dict = {}
        for e, c in self.terms.items():
            out[e] = c * factor ** e[i]
        return Polynomial(self.ctx, out)

    def qshift_var(self, name: str, qname: str, power: int = 1) -> "Polynomial":
        """Substitute name -> q^power * name where q is another context variable."""
        i = self.ctx.index[name]
        j = self.ctx.index[qname]
        out: dict = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[j] += power * e[i]
            out[tuple(ne)] = c
        return Polynomial(self.ctx, out)

    def compose(self, target_ctx: Context, mapping: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        """Evaluate under name -> value (RationalFunction over target_ctx).

        Unmapped variables must exist in the target context and map to
        themselves.
        """
        values = []
        for n in self.ctx.names:
            if n in mapping:
                v = mapping[n]
                if isinstance(v, (int, Fraction)):
                    v = RationalFunction.const(target_ctx, v)
                values.append(v)
            else:
                values.append(RationalFunction.var(target_ctx, n))
        result = RationalFunction.const(target_ctx, 0)
        for e, c in self.terms.items():
            term = RationalFunction.const(target_ctx, c)
            for v, d in zip(values, e):
                if d:
                    term = term * v ** d
            result = result + term
        return result

    def eval(self, point: Mapping[str, Fraction]) -> Fraction:
        """Evaluate at a full rational point."""
        total = Fraction(0)
        vals = [Fraction(point[n]) for n in self.ctx.names]
        for e, c in self.terms.items():
            t = c
            for v, d in zip(vals, e):
                if d:
                    t *= v ** d
            total += t
        return total

    def subst_const(self, name: str, value) -> "Polynomial":
        """Partial evaluation: substitute a rational constant for one variable."""
        value = _coeff(Fraction(value))
        i = self.ctx.index[name]
        out: dict = {}
        for e, c in self.terms.items():
            d = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            val = c * value ** d if d else c
            s = out.get(ne, _ZERO) + val
            if s:
                out[ne] = s
            else:
                out.pop(ne, None)
        return Polynomial(self.ctx, out)

    def rename(self, target_ctx: Context, rename: Mapping[str, str] | None = None) -> "Polynomial":
        """Re-express over another context (variables map by name)."""
        rename = rename or {}
        pos = []
        for i, n in enumerate(self.ctx.names):
            m = rename.get(n, n)
            pos.append(target_ctx.index[m] if m in target_ctx.index else None)
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * len(target_ctx.names)
            for i, d in enumerate(e):
                if d:
                    if pos[i] is None:
                        raise ValueError(f"variable {self.ctx.names[i]} missing from target context")
                    ne[pos[i]] += d
            key = tuple(ne)
            s = out.get(key, _ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Polynomial(target_ctx, out)

    # ------------------------------------------------------------- division

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Exact division; raises ArithmeticError when not divisible."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if divisor.is_constant():
            return self * _divc(1, divisor.constant_value())
        rem = dict(self.terms)
        de, dc = divisor.leading()
        out: dict = {}
        # lazy max-heap over deglex keys (negated for heapq)
        heap = [(-sum(e), tuple(-x for x in e), e) for e in rem]
        heapq.heapify(heap)
        while heap:
            _, _, e = heapq.heappop(heap)
            c = rem.pop(e, None)
            if c is None:
                continue
            qe = tuple(x - y for x, y in zip(e, de))
            if any(x < 0 for x in qe):
                raise ArithmeticError("inexact polynomial division")
            qc = _divc(c, dc)
            out[qe] = out.get(qe, _ZERO) + qc
            for he, hc in divisor.terms.items():
                if he == de:
                    continue
                ne = tuple(x + y for x, y in zip(qe, he))
                old = rem.get(ne)
                s = (old if old is not None else _ZERO) - qc * hc
                if s:
                    if old is None:
                        heapq.heappush(heap, (-sum(ne), tuple(-x for x in ne), ne))
                    rem[ne] = s
                else:
                    rem.pop(ne, None)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        return Polynomial(self.ctx, out)

    def divides(self, other: "Polynomial") -> bool:
        try:
            other.exact_div(self)
            return True
        except ArithmeticError:
            return False

    # ------------------------------------------------------ univariate view

    def as_univariate(self, name: str) -> dict:
        """View as a univariate polynomial in ``name``: degree -> Polynomial."""
        i = self.ctx.index[name]
        out: dict = {}
        for e, c in self.terms.items():
            d = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            bucket = out.setdefault(d, {})
            bucket[ne] = bucket.get(ne, _ZERO) + c
        return {d: Polynomial(self.ctx, t) for d, t in out.items() if any(c for c in t.values())}

    def from_univariate(self, name: str, coeffs: Mapping[int, "Polynomial"]) -> "Polynomial":
        i = self.ctx.index[name]
        out: dict = {}
        for d, p in coeffs.items():
            for e, c in p.terms.items():
                ne = e[:i] + (e[i] + d,) + e[i + 1:]
                s = out.get(ne, _ZERO) + c
                if s:
                    out[ne] = s
                else:
                    out.pop(ne, None)
        return Polynomial(self.ctx, out)

    # -------------------------------------------------------------- content

    def monomial_content(self) -> tuple:
        """Componentwise minimum exponent vector over all terms."""
        if not self.terms:
            return self.ctx.zero_exp()
        its = iter(self.terms)
        m = list(next(its))
        for e in its:
            for i, d in enumerate(e):
                if d < m[i]:
                    m[i] = d
        return tuple(m)

    def strip_monomial_content(self) -> tuple:
        m = self.monomial_content()
        if not any(m):
            return m, self
        return m, Polynomial(self.ctx, {tuple(x - y for x, y in zip(e, m)): c
                                        for e, c in self.terms.items()})

    def int_normalize(self) -> "Polynomial":
        """Scale to integer coefficients with content 1 and positive lc."""
        if self.is_zero():
            return self
        num_gcd = 0
        den_lcm = 1
        for c in self.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        scale = Fraction(den_lcm, num_gcd)
        if self.lc() < 0:
            scale = -scale
        if scale == 1:
            return self
        return self * scale

    # -------------------------------------------------------------- display

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: _deglex_key(t[0]), reverse=True)
        parts = []
        for e, c in items:
            factors = []
            for n, d in zip(self.ctx.names, e):
                if d == 1:
                    factors.append(n)
                elif d > 1:
                    factors.append(f"{n}^{d}")
            if not factors:
                body = _frac_str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = _frac_str(abs(c)) + "*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------------------- gcd


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Greatest common divisor, normalized to leading coefficient 1."""
    if p.ctx != q.ctx:
        raise ValueError("gcd of polynomials over different contexts")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    mp, pp = p.strip_monomial_content()
    mq, qq = q.strip_monomial_content()
    mg = tuple(min(a, b) for a, b in zip(mp, mq))
    common = Polynomial.monomial(p.ctx, mg)
    if pp.is_constant() or qq.is_constant():
        return common
    if pp.terms == qq.terms or pp.monic().terms == qq.monic().terms:
        return common * pp.monic()
    if _gcd_certainly_constant(pp, qq):
        return common
    g = _gcd_recursive(pp, qq)
    return (common * g).monic()


_PROBE_PRIME = (1 << 31) - 1


def _gcd_certainly_constant(p: Polynomial, q: Polynomial) -> bool:
    """Sound modular certificate that gcd(p, q) is a constant.

    For each shared variable the polynomials are evaluated to univariate
    images modulo a prime; when the leading coefficients survive, the image
    gcd bounds the degree of the true gcd in that variable.  A degree-0
    bound for every shared variable proves the gcd constant.  ``False``
    only means "could not certify", never "not coprime".
    """
    shared = sorted(p.variables_used() & q.variables_used())
    if not shared:
        return True
    for v in shared:
        certified = False
        for attempt in range(4):
            pu = _univ_image_mod(p, v, attempt)
            qu = _univ_image_mod(q, v, attempt)
            if pu is None or qu is None:
                continue
            if len(pu) - 1 != p.degree(v) or len(qu) - 1 != q.degree(v):
                continue  # leading coefficient collapsed at this point
            if _univ_gcd_degree_mod(pu, qu) == 0:
                certified = True
                break
            return False  # image gcd nonconstant: cannot certify, maybe common factor
        if not certified:
            return False
    return True


def _univ_image_mod(p: Polynomial, v: str, attempt: int):
    """Dense coefficient list of p with all vars but v evaluated, mod prime."""
    prime = _PROBE_PRIME
    iv = p.ctx.index[v]
    seed = 0x9E3779B9 * (attempt + 1)
    point = []
    for i, name in enumerate(p.ctx.names):
        seed = (seed * 6364136223846793005 + 1442695040888963407) & ((1 << 64) - 1)
        point.append(2 + (seed >> 33) % 10007)
    deg = p.degree(v)
    out = [0] * (deg + 1)
    for e, c in p.terms.items():
        if c.denominator % prime == 0:
            return None
        val = c.numerator * pow(c.denominator, prime - 2, prime) % prime
        for i, d in enumerate(e):
            if d and i != iv:
                val = val * pow(point[i], d, prime) % prime
        out[e[iv]] = (out[e[iv]] + val) % prime
    while out and out[-1] == 0:
        out.pop()
    if not out:
        return None
    return out


def _univ_gcd_degree_mod(a: list, b: list) -> int:
    prime = _PROBE_PRIME
    a, b = list(a), list(b)
    while b:
        if len(a) < len(b):
            a, b = b, a
            continue
        inv = pow(b[-1], prime - 2, prime)
        while len(a) >= len(b) and a:
            f = a[-1] * inv % prime
            off = len(a) - len(b)
            for i in range(len(b)):
                a[off + i] = (a[off + i] - f * b[i]) % prime
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def _gcd_recursive(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_constant() or q.is_constant():
        return Polynomial.const(p.ctx, 1)
    shared = p.variables_used() & q.variables_used()
    if not shared:
        return Polynomial.const(p.ctx, 1)
    # main variable: the shared variable of least combined degree keeps the
    # pseudo-remainder sequence short
    v = min(shared, key=lambda n: (p.degree(n) + q.degree(n), n))
    pu, qu = p.as_univariate(v), q.as_univariate(v)
    pc = _content_of(pu, p.ctx)
    qc = _content_of(qu, p.ctx)
    pp = p.exact_div(pc)
    qp = q.exact_div(qc)
    cont = _gcd_recursive(pc, qc) if not (pc.is_constant() or qc.is_constant()) else Polynomial.const(p.ctx, 1)
    prim = _gcd_primitive(pp, qp, v)
    return (cont * prim).monic()


def _content_of(uni: Mapping[int, Polynomial], ctx: Context) -> Polynomial:
    g = Polynomial.zero(ctx)
    for p in uni.values():
        g = poly_gcd(g, p)
        if g.is_constant() and not g.is_zero():
            return Polynomial.const(ctx, 1)
    return g if not g.is_zero() else Polynomial.const(ctx, 1)


def _gcd_primitive(p: Polynomial, q: Polynomial, v: str) -> Polynomial:
    """GCD of inputs primitive with respect to v."""
    p, q = p.int_normalize(), q.int_normalize()
    used = p.variables_used() | q.variables_used()
    if used == {v}:
        return _gcd_univariate_dense(p, q, v)
    g = _gcd_interp(p, q, v)
    if g is not None:
        return g
    return _gcd_prs(p, q, v)


def _gcd_univariate_dense(p: Polynomial, q: Polynomial, v: str) -> Polynomial:
    """Primitive PRS on integer coefficient lists (fast univariate path)."""
    a = _dense_int_coeffs(p, v)
    b = _dense_int_coeffs(q, v)
    if len(a) < len(b):
        a, b = b, a
    while b:
        # pseudo-remainder with integer-primitive normalization per step
        r = list(a)
        lb = b[-1]
        while len(r) >= len(b):
            lr = r[-1]
            off = len(r) - len(b)
            r = [c * lb for c in r]
            for i in range(len(b)):
                r[off + i] -= lr * b[i]
            r.pop()
            while r and r[-1] == 0:
                r.pop()
            g = 0
            for c in r:
                g = math.gcd(g, c)
            if g > 1:
                r = [c // g for c in r]
        a, b = b, r
    ctx = p.ctx
    iv = ctx.index[v]
    zero = ctx.zero_exp()
    terms = {}
    for d, c in enumerate(a):
        if c:
            terms[zero[:iv] + (d,) + zero[iv + 1:]] = c
    return Polynomial(ctx, terms).monic()


def _dense_int_coeffs(p: Polynomial, v: str) -> list:
    pi = p.int_normalize()
    out = [0] * (pi.degree(v) + 1)
    iv = p.ctx.index[v]
    for e, c in pi.terms.items():
        out[e[iv]] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def _gcd_interp(p: Polynomial, q: Polynomial, x: str, depth: int = 0):
    """Evaluation/interpolation gcd for inputs primitive in x.

    Evaluates one auxiliary variable at integer points, computes image gcds
    recursively, normalizes leading coefficients through gamma =
    gcd(lc_x(p), lc_x(q)), interpolates, and certifies the candidate by
    exact division.  Returns None when interpolation fails to converge;
    callers fall back to the pseudo-remainder sequence.
    """
    if depth > 8:
        return None
    others = sorted((p.variables_used() | q.variables_used()) - {x})
    if not others:
        return _gcd_univariate_dense(p, q, x)
    y = min(others, key=lambda n: min(p.degree(n), q.degree(n)))
    dxp, dxq = p.degree(x), q.degree(x)
    lcp = p.as_univariate(x).get(dxp)
    lcq = q.as_univariate(x).get(dxq)
    gamma = poly_gcd(lcp, lcq)
    dy_bound = min(p.degree(y), q.degree(y)) + max(gamma.degree(y), 0) + 1

    ts: list = []
    images: list = []
    best_dx = None
    t_iter = itertools.chain([0], *[(k, -k) for k in range(1, 6 * dy_bound + 12)])
    for t in t_iter:
        if len(ts) > dy_bound + 1:
            break
        pe = p.subst_const(y, t)
        qe = q.subst_const(y, t)
        if pe.degree(x) != dxp or qe.degree(x) != dxq:
            continue  # leading coefficient vanished: unlucky point
        h = poly_gcd(pe, qe)
        dx = h.degree(x)
        if dx <= 0:
            return Polynomial.const(p.ctx, 1)
        if best_dx is not None and dx > best_dx:
            continue
        if best_dx is None or dx < best_dx:
            best_dx = dx
            ts, images = [], []
        ge = gamma.subst_const(y, t)
        lc_h = h.as_univariate(x)[dx]
        if lc_h.is_constant():
            H = h * (ge * _divc(1, lc_h.constant_value()))
        else:
            try:
                H = h * ge.exact_div(lc_h)
            except ArithmeticError:
                continue
        ts.append(t)
        images.append(H)
        if len(ts) >= dy_bound + 1:
            cand = _newton_interpolate(ts, images, y)
            cand = _strip_x_content(cand, x)
            if cand is not None and cand.divides(p) and cand.divides(q):
                return cand.monic()
            return None
    return None


def _newton_interpolate(ts: list, values: list, y: str) -> Polynomial:
    ctx = values[0].ctx
    yv = Polynomial.var(ctx, y)
    coeffs: list = []
    basis_at = []  # products prod_{l<j}(t - t_l) lazily per point
    for i, (t, H) in enumerate(zip(ts, values)):
        # evaluate current interpolant at t
        acc = Polynomial.zero(ctx)
        prod = 1
        for j, a in enumerate(coeffs):
            if j > 0:
                prod *= t - ts[j - 1]
            acc = acc + a * prod
        if coeffs:
            prod *= t - ts[len(coeffs) - 1]
        diff = H - acc
        coeffs.append(diff * _divc(1, prod) if prod != 1 else diff)
    result = Polynomial.zero(ctx)
    base = Polynomial.const(ctx, 1)
    for j, a in enumerate(coeffs):
        if j > 0:
            base = base * (yv - ts[j - 1])
        result = result + a * base
    return result


def _strip_x_content(cand: Polynomial, x: str):
    if cand.is_zero():
        return None
    uni = cand.as_univariate(x)
    cont = _content_of(uni, cand.ctx)
    if cont.is_constant():
        return cand
    return cand.exact_div(cont)


def _gcd_prs(p: Polynomial, q: Polynomial, v: str) -> Polynomial:
    """Primitive PRS fallback; always correct, can be slow on dense inputs."""
    if p.degree(v) < q.degree(v):
        p, q = q, p
    while True:
        r = _prem(p, q, v)
        if r.is_zero():
            break
        if r.degree(v) <= 0:
            return Polynomial.const(p.ctx, 1)
        ru = r.as_univariate(v)
        r = r.exact_div(_content_of(ru, r.ctx)).int_normalize()
        p, q = q, r
    qu = q.as_univariate(v)
    return q.exact_div(_content_of(qu, q.ctx))


def _prem(a: Polynomial, b: Polynomial, v: str) -> Polynomial:
    """Pseudo-remainder of a by b with respect to v, up to a constant.

    The remainder is rescaled to primitive integer coefficients after every
    elimination pass; gcd callers only need the result up to units and the
    rescaling prevents the classic coefficient explosion of pseudo-division.
    """
    db = b.degree(v)
    bu = b.as_univariate(v)
    lb = bu[db]
    r = a
    iv = a.ctx.index[v]
    while not r.is_zero():
        dr = r.degree(v)
        if dr < db:
            break
        ru = r.as_univariate(v)
        lr = ru[dr]
        shift = [0] * len(a.ctx.names)
        shift[iv] = dr - db
        r = (r * lb - b.mul_term(tuple(shift), _ONE) * lr).int_normalize()
    return r


def poly_lcm(p: Polynomial, q: Polynomial) -> Polynomial:
    if p.is_zero() or q.is_zero():
        return Polynomial.zero(p.ctx)
    g = poly_gcd(p, q)
    return (p * q).exact_div(g).monic()


# ---------------------------------------------------------- rational numbers


class RationalFunction:
    """Quotient of two polynomials, kept coprime with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial, normalize: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("division by zero")
        if normalize:
            if num.is_zero():
                den = Polynomial.const(num.ctx, 1)
            else:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                c = den.lc()
                if c != 1:
                    inv = _divc(1, c)
                    num = num * inv
                    den = den * inv
        self.num = num
        self.den = den

    # ---------------------------------------------------------- constructors

    @staticmethod
    def const(ctx: Context, value) -> "RationalFunction":
        return RationalFunction(Polynomial.const(ctx, value), Polynomial.const(ctx, 1), normalize=False)

    @staticmethod
    def var(ctx: Context, name: str) -> "RationalFunction":
        return RationalFunction(Polynomial.var(ctx, name), Polynomial.const(ctx, 1), normalize=False)

    @staticmethod
    def from_poly(p: Polynomial) -> "RationalFunction":
        return RationalFunction(p, Polynomial.const(p.ctx, 1), normalize=False)

    @property
    def ctx(self) -> Context:
        return self.num.ctx

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_constant() and self.num == Polynomial.const(self.ctx, 1)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return Fraction(self.num.constant_value()) / self.den.constant_value()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    # ------------------------------------------------------------ arithmetic

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(self.ctx, other)
        return (isinstance(other, RationalFunction)
                and self.num == other.num and self.den == other.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, normalize=False)

    def __add__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(self.ctx, other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        b, d = self.den, other.den
        if b.is_constant() and d.is_constant():
            # both polynomial up to constants
            return RationalFunction(self.num * d.constant_value() + other.num * b.constant_value(),
                                    b * d.constant_value(), normalize=False)
        g0 = poly_gcd(b, d)
        if g0.is_constant():
            num = self.num * d + other.num * b
            den = b * d
            c = den.lc()
            if c != 1:
                inv = _divc(1, c)
                num, den = num * inv, den * inv
            return RationalFunction(num, den, normalize=False) if not num.is_zero() \
                else RationalFunction.const(self.ctx, 0)
        bp = b.exact_div(g0)
        dp = d.exact_div(g0)
        t = self.num * dp + other.num * bp
        if t.is_zero():
            return RationalFunction.const(self.ctx, 0)
        g1 = poly_gcd(t, g0)
        if g1.is_constant():
            num, den = t, bp * d
        else:
            num = t.exact_div(g1)
            den = bp * d.exact_div(g1)
        c = den.lc()
        if c != 1:
            inv = _divc(1, c)
            num, den = num * inv, den * inv
        return RationalFunction(num, den, normalize=False)

    __radd__ = __add__

    def __sub__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            other = RationalFunction.const(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other) -> "RationalFunction":
        return (-self) + other

    def __mul__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            other = _coeff(other)
            if other == 0:
                return RationalFunction.const(self.ctx, 0)
            return RationalFunction(self.num * other, self.den, normalize=False)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalFunction.const(self.ctx, 0)
        a, b = self.num, self.den
        c, d = other.num, other.den
        g1 = poly_gcd(a, d) if not (a.is_constant() or d.is_constant()) else None
        g2 = poly_gcd(c, b) if not (c.is_constant() or b.is_constant()) else None
        if g1 is not None and not g1.is_constant():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if g2 is not None and not g2.is_constant():
            c, b = c.exact_div(g2), b.exact_div(g2)
        num, den = a * c, b * d
        lc = den.lc()
        if lc != 1:
            inv = _divc(1, lc)
            num, den = num * inv, den * inv
        return RationalFunction(num, den, normalize=False)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        num, den = self.den, self.num
        lc = den.lc()
        if lc != 1:
            inv = _divc(1, lc)
            num, den = num * inv, den * inv
        return RationalFunction(num, den, normalize=False)

    def __truediv__(self, other) -> "RationalFunction":
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * _coeff(1 / other)
        return self * other.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        result = RationalFunction.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # --------------------------------------------------------- substitutions

    def derivative(self, name: str) -> "RationalFunction":
        n, d = self.num, self.den
        if d.is_constant():
            return RationalFunction(n.derivative(name), d, normalize=False)
        return RationalFunction(n.derivative(name) * d - n * d.derivative(name), d * d)

    def shift_var(self, name: str, offset) -> "RationalFunction":
        return RationalFunction(self.num.shift_var(name, offset), self.den.shift_var(name, offset))

    def qshift_var(self, name: str, qname: str, power: int = 1) -> "RationalFunction":
        return RationalFunction(self.num.qshift_var(name, qname, power),
                                self.den.qshift_var(name, qname, power))

    def compose(self, target_ctx: Context, mapping: Mapping[str, "RationalFunction"]) -> "RationalFunction":
        num = self.num.compose(target_ctx, mapping)
        den = self.den.compose(target_ctx, mapping)
        return num / den

    def rename(self, target_ctx: Context, rename: Mapping[str, str] | None = None) -> "RationalFunction":
        return RationalFunction(self.num.rename(target_ctx, rename), self.den.rename(target_ctx, rename))

    def eval(self, point: Mapping[str, Fraction]) -> Fraction:
        d = self.den.eval(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at sample point")
        return self.num.eval(point) / d

    def free_of(self, names: Iterable[str]) -> bool:
        used = self.num.variables_used() | self.den.variables_used()
        return not (used & set(names))

    # -------------------------------------------------------------- display

    def __str__(self) -> str:
        if self.den.is_constant() and self.den.constant_value() == 1:
            return str(self.num)
        ns = str(self.num)
        ds = str(self.den)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        if "*" in ds or " " in ds or "/" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


# ----------------------------------------------------------------- nullspace


def nullspace(matrix: Sequence[Sequence[RationalFunction]]) -> list:
    """Basis of the right nullspace of a matrix over the fraction field.

    Rows are cleared of denominators and eliminated fraction-free (cross
    multiplication with per-row content removal) to control coefficient
    growth; back substitution happens over the fraction field.  Returns a
    list of vectors (lists of RationalFunction); empty iff the nullspace is
    trivial.
    """
    nrows = len(matrix)
    if nrows == 0:
        return []
    ncols = len(matrix[0])
    ctx = None
    for row in matrix:
        if len(row) != ncols:
            raise ValueError("matrix rows of unequal length")
        for x in row:
            ctx = x.ctx
            break
        if ctx is not None:
            break
    if ncols == 0:
        return []
    if ctx is None:
        raise ValueError("empty matrix row")

    sparse_rows = []
    for row in matrix:
        den = Polynomial.const(ctx, 1)
        for x in row:
            if not x.is_zero() and not x.den.is_constant():
                den = poly_lcm(den, x.den)
        entries = {}
        for j, x in enumerate(row):
            if x.is_zero():
                continue
            p = x.num * den.exact_div(x.den)
            if not p.is_zero():
                entries[j] = p
        if entries:
            sparse_rows.append(_row_remove_content(entries, ctx))

    # modular pre-selection: exact elimination only touches a set of rows
    # that is independent modulo a prime at a random point; the basis is
    # then verified exactly against every remaining row (retrying with the
    # violated rows added keeps the result sound whatever the evaluation).
    selected = _modular_select(sparse_rows, ctx, salt=0)
    selected_set = set(selected)
    for attempt in range(4):
        basis = _solve_selected([sparse_rows[i] for i in selected], ncols, ctx)
        violations = []
        for ri, row in enumerate(sparse_rows):
            if ri in selected_set:
                continue
            for vec in basis:
                acc = RationalFunction.const(ctx, 0)
                for j, p in row.items():
                    if not vec[j].is_zero():
                        acc = acc + RationalFunction.from_poly(p) * vec[j]
                if not acc.is_zero():
                    violations.append(ri)
                    break
        if not violations:
            return basis
        selected.extend(violations)
        selected_set.update(violations)
    # fallback: fully exact elimination over all rows
    return _solve_selected(sparse_rows, ncols, ctx)


def _solve_selected(rows: list, ncols: int, ctx: Context) -> list:
    if ncols <= 16:
        pivot_rows = _eliminate_bareiss(rows, ctx)
    else:
        pivot_rows = _eliminate_sparse(rows, ctx)
    pivot_cols = {pc: i for i, (pc, _) in enumerate(pivot_rows)}
    free_cols = [j for j in range(ncols) if j not in pivot_cols]
    basis = []
    zero = RationalFunction.const(ctx, 0)
    for f in free_cols:
        vec = [zero] * ncols
        vec[f] = RationalFunction.const(ctx, 1)
        for pcol, row in reversed(pivot_rows):
            acc = RationalFunction.const(ctx, 0)
            for j, p in row.items():
                if j == pcol:
                    continue
                if not vec[j].is_zero():
                    acc = acc + RationalFunction.from_poly(p) * vec[j]
            if not acc.is_zero():
                vec[pcol] = -acc / RationalFunction.from_poly(row[pcol])
        basis.append(_primitive_vector(vec, ctx))
    return basis


def _modular_select(rows: list, ctx: Context, salt: int = 0) -> list:
    """Indexes of rows independent modulo a prime at a pseudorandom point."""
    prime = _PROBE_PRIME
    seed = 0xC2B2AE3D * (salt + 1)
    point = []
    for _ in ctx.names:
        seed = (seed * 6364136223846793005 + 1442695040888963407) & ((1 << 64) - 1)
        point.append(2 + (seed >> 33) % 100003)

    def eval_mod(p: Polynomial):
        total = 0
        for e, c in p.terms.items():
            if c.denominator % prime == 0:
                return None
            val = c.numerator * pow(c.denominator, prime - 2, prime) % prime
            for i, d in enumerate(e):
                if d:
                    val = val * pow(point[i], d, prime) % prime
            total = (total + val) % prime
        return total

    order = sorted(range(len(rows)), key=lambda i: (len(rows[i]), sorted(rows[i])))
    pivots = {}
    selected = []
    for ri in order:
        vec = {}
        bad = False
        for c, p in rows[ri].items():
            v = eval_mod(p)
            if v is None:
                bad = True
                break
            if v:
                vec[c] = v
        if bad:
            selected.append(ri)  # cannot evaluate: keep it to stay sound
            continue
        while vec:
            hit = next((c for c in vec if c in pivots), None)
            if hit is None:
                break
            prow = pivots[hit]
            f = vec.pop(hit) * pow(prow[hit], prime - 2, prime) % prime
            for c, v in prow.items():
                if c == hit:
                    continue
                nv = (vec.get(c, 0) - f * v) % prime
                if nv:
                    vec[c] = nv
                else:
                    vec.pop(c, None)
        if vec:
            pivots[min(vec)] = vec
            selected.append(ri)
    return selected


def _eliminate_bareiss(rows: list, ctx: Context) -> list:
    """Fraction-free one-step Bareiss elimination; returns pivot rows.

    Every remaining row is updated at every step and divided exactly by the
    previous pivot, which keeps entries the size of matrix minors without
    any gcd work.  Right choice for small dense systems.
    """
    remaining = [dict(r) for r in rows]
    pivots: list = []
    prev: Polynomial | None = None
    while True:
        best = None
        for ri, row in enumerate(remaining):
            if not row:
                continue
            for c, e in row.items():
                key = (len(row), len(e.terms), c)
                if best is None or key < best[0]:
                    best = (key, ri, c)
        if best is None:
            break
        _, ri, pc = best
        piv = remaining.pop(ri)
        pentry = piv[pc]
        nxt = []
        for row in remaining:
            if not row:
                nxt.append(row)
                continue
            rc = row.pop(pc, None)
            out = {}
            cols = set(row)
            if rc is not None:
                cols |= set(piv)
                cols.discard(pc)
            for j in cols:
                a = row.get(j)
                b = piv.get(j) if rc is not None else None
                if a is not None and b is not None:
                    val = a * pentry - rc * b
                elif a is not None:
                    val = a * pentry
                elif b is not None:
                    val = -rc * b
                else:
                    continue
                if val.is_zero():
                    continue
                out[j] = val.exact_div(prev) if prev is not None else val
            nxt.append(out)
        remaining = nxt
        pivots.append((pc, piv))
        prev = pentry
    return pivots


def _eliminate_sparse(rows: list, ctx: Context) -> list:
    """Cross-multiplication elimination with per-row content removal.

    Avoids the uniform row scaling of Bareiss, which is what makes large
    sparse ansatz systems tractable; polynomial content is stripped after
    every combination to control growth.
    """
    pivot_rows: list = []
    pivot_cols: dict = {}
    for entries in sorted(rows, key=lambda r: (len(r), sorted(r))):
        row = dict(entries)
        while row:
            hit = [c for c in row if c in pivot_cols]
            if not hit:
                break
            c = hit[0]
            prow = pivot_rows[pivot_cols[c]][1]
            pc = prow[c]
            rc = row.pop(c)
            new = {}
            for j in set(row) | set(prow):
                if j == c:
                    continue
                a = row.get(j)
                b = prow.get(j)
                if a is not None and b is not None:
                    val = a * pc - b * rc
                elif a is not None:
                    val = a * pc
                else:
                    val = -(b * rc)
                if not val.is_zero():
                    new[j] = val
            row = _row_remove_content(new, ctx)
        if row:
            pcol = min(row, key=lambda j: (len(row[j].terms), j))
            pivot_cols[pcol] = len(pivot_rows)
            pivot_rows.append((pcol, row))
    return pivot_rows


def _primitive_vector(vec: list, ctx: Context) -> list:
    """Scale a vector to coprime polynomial entries (content removed)."""
    den = Polynomial.const(ctx, 1)
    for x in vec:
        if not x.is_zero() and not x.den.is_constant():
            den = poly_lcm(den, x.den)
    polys = [x.num * den.exact_div(x.den) if not x.is_zero() else Polynomial.zero(ctx) for x in vec]
    g = Polynomial.zero(ctx)
    for p in polys:
        if not p.is_zero():
            g = poly_gcd(g, p)
            if g.is_constant():
                break
    if not g.is_zero() and not g.is_constant():
        polys = [p.exact_div(g) if not p.is_zero() else p for p in polys]
    row = _row_remove_content({j: p for j, p in enumerate(polys) if not p.is_zero()}, ctx)
    out = [RationalFunction.const(ctx, 0)] * len(vec)
    for j, p in row.items():
        out[j] = RationalFunction.from_poly(p)
    return out


def _row_remove_content(row: dict, ctx: Context) -> dict:
    if not row:
        return row
    polys = list(row.values())
    if any(p.is_constant() for p in polys):
        g = None
    else:
        g = Polynomial.zero(ctx)
        for p in polys:
            g = poly_gcd(g, p)
            if g.is_constant():
                g = None
                break
    out = {}
    for j, p in row.items():
        q = p.exact_div(g) if g is not None else p
        out[j] = q
    # integer normalization across the row
    num_gcd = 0
    den_lcm = 1
    for p in out.values():
        for c in p.terms.values():
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    if num_gcd not in (0, 1) or den_lcm != 1:
        scale = Fraction(den_lcm, num_gcd)
        out = {j: p * scale for j, p in out.items()}
    return out


# --------------------------------------------------------- factor extraction


def distinct_factors(polys: Iterable[Polynomial]) -> list:
    """Distinct non-constant factors of the given polynomials.

    Splits by monomial content, squarefree decomposition (gcd with partial
    derivatives), mutual gcd refinement across the collected set, rational
    roots of univariate pieces, and irreducibility of primitive polynomials
    linear in some variable.  Pieces that resist these are kept whole; a
    coarse factor is sound for denominator candidates, just less sharp.
    """
    ctx = None
    pieces = []
    for p in polys:
        if p.is_zero() or p.is_constant():
            continue
        ctx = p.ctx
        m, core = p.strip_monomial_content()
        for i, d in enumerate(m):
            if d:
                pieces.append(Polynomial.var(ctx, ctx.names[i]))
        if not core.is_constant():
            pieces.extend(_squarefree_split(core))
    if ctx is None:
        return []

    # mutual gcd refinement until stable
    factors: list = []
    work = [f.monic() for f in pieces]
    while work:
        f = work.pop()
        if f.is_constant():
            continue
        split = False
        for i, g in enumerate(factors):
            if f == g:
                split = True
                break
            h = poly_gcd(f, g)
            if not h.is_constant():
                if h == g:
                    work.append(f.exact_div(g).monic())
                else:
                    factors.pop(i)
                    work.extend([h, g.exact_div(h).monic(), f.exact_div(h).monic()])
                split = True
                break
        if not split:
            factors.extend(_final_split(f))
    return sorted(set(factors), key=lambda p: (p.total_degree(), p.sort_key()))


def _squarefree_split(p: Polynomial) -> list:
    out = [p]
    for v in sorted(p.variables_used()):
        nxt = []
        for f in out:
            if f.degree(v) <= 0:
                nxt.append(f)
                continue
            g = poly_gcd(f, f.derivative(v))
            if g.is_constant():
                nxt.append(f)
            else:
                nxt.append(g)
                nxt.append(f.exact_div(g))
        out = nxt
    return [f for f in out if not f.is_constant()]


def _final_split(f: Polynomial) -> list:
    f = f.monic()
    used = sorted(f.variables_used())
    if len(used) == 1:
        return _univariate_factor(f, used[0])
    for v in used:
        if f.degree(v) == 1:
            uni = f.as_univariate(v)
            a = uni.get(1, Polynomial.zero(f.ctx))
            b = uni.get(0, Polynomial.zero(f.ctx))
            g = poly_gcd(a, b)
            if g.is_constant():
                return [f]       # primitive and linear in v: irreducible
            rest = f.exact_div(g)
            return [x for p in (g, rest) for x in _final_split(p)]
    return [f]


def _univariate_factor(f: Polynomial, v: str) -> list:
    """Split off rational roots; leave an irreducible-or-unknown remainder."""
    out = []
    fi = f.int_normalize()
    while fi.degree(v) >= 1:
        uni = fi.as_univariate(v)
        a0 = uni.get(0)
        if a0 is None:
            out.append(Polynomial.var(f.ctx, v))
            fi = fi.exact_div(Polynomial.var(f.ctx, v)).int_normalize()
            continue
        lead = uni[fi.degree(v)].constant_value()
        tail = a0.constant_value()
        root = _find_rational_root(fi, v, int(lead), int(tail))
        if root is None:
            break
        lin = (Polynomial.var(f.ctx, v) - Polynomial.const(f.ctx, root)).int_normalize()
        out.append(lin.monic())
        fi = fi.exact_div(lin).int_normalize()
    if fi.degree(v) >= 1:
        out.append(fi.monic())
    return out


def _find_rational_root(f: Polynomial, v: str, lead: int, tail: int):
    if tail == 0:
        return Fraction(0)
    uni = {d: c.constant_value() for d, c in f.as_univariate(v).items()}

    def value(r: Fraction) -> Fraction:
        return sum((c * r ** d for d, c in uni.items()), _ZERO)

    for p in _divisors(abs(tail)):
        for q in _divisors(abs(lead)):
            for sign in (1, -1):
                r = Fraction(sign * p, q)
                if value(r) == 0:
                    return r
    return None


def _divisors(n: int) -> list:
    out = set()
    for i in range(1, int(math.isqrt(n)) + 1):
        if n % i == 0:
            out.add(i)
            out.add(n // i)
    return sorted(out)
