"""Expression parsing: a small functional grammar shared by the whole engine.

The grammar covers exact integer literals, identifiers, ``+ - * / ^`` with
``^`` restricted to integer exponents where operators are involved,
parentheses, function atoms ``name(arg, ...)`` and generator references
``name[arg, ...]`` (used in operator text such as ``(n+1)*S[n] - x*Der[x]``).
Implicit multiplication is not allowed.

Syntax errors carry line and column information.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ore import (DERIVATIVE, QSHIFT, SHIFT, Generator, OreAlgebra,
                  OrePolynomial)
from .ratfun import RationalFunction


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


# ------------------------------------------------------------------ AST nodes


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    bracket: bool = False  # True for generator references like S[n]


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * / ^
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    operand: object


QUANTIFIERS = ("sum", "integral")

KNOWN_ATOMS = ("factorial", "binomial", "pochhammer", "qpochhammer", "power",
               "exp", "sqrt", "chebyshevT", "legendreP", "laguerreL")


# ------------------------------------------------------------------ tokenizer


_TOKEN_CHARS = {"+": "+", "-": "-", "*": "*", "/": "/", "^": "^",
                "(": "(", ")": ")", "[": "[", "]": "]", ",": ","}


def _tokenize(text: str):
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch in _TOKEN_CHARS:
            tokens.append((ch, ch, line, col))
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", line, col)
    tokens.append(("end", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.peek()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2], tok[3])
        return self.advance()

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2], tok[3])
        return node

    # expr := term (('+'|'-') term)*
    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = BinOp(op, node, self.term())
        return node

    # term := factor (('*'|'/') factor)*
    def term(self):
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op = self.advance()[0]
            node = BinOp(op, node, self.factor())
        return node

    # factor := '-' factor | power
    def factor(self):
        if self.peek()[0] == "-":
            self.advance()
            return Neg(self.factor())
        if self.peek()[0] == "+":
            self.advance()
            return self.factor()
        return self.power()

    # power := atom ('^' factor)?   (right associative)
    def power(self):
        node = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            if self.peek()[0] == "-":
                self.advance()
                return BinOp("^", node, Neg(self.factor()))
            return BinOp("^", node, self.factor())
        return node

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.advance()
            return Num(Fraction(int(tok[1])))
        if tok[0] == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok[0] == "ident":
            self.advance()
            name = tok[1]
            nxt = self.peek()
            if nxt[0] == "(":
                self.advance()
                args = self.arg_list(")")
                return Call(name, tuple(args))
            if nxt[0] == "[":
                self.advance()
                args = self.arg_list("]")
                return Call(name, tuple(args), bracket=True)
            return Sym(name)
        raise ParseError(f"unexpected {tok[1]!r}" if tok[1] else "unexpected end of input",
                         tok[2], tok[3])

    def arg_list(self, closer: str):
        args = [self.expr()]
        while True:
            tok = self.peek()
            if tok[0] == ",":
                self.advance()
                args.append(self.expr())
            elif tok[0] == closer:
                self.advance()
                return args
            else:
                raise ParseError(f"expected ',' or {closer!r}, found {tok[1]!r}",
                                 tok[2], tok[3])


def parse(text: str):
    """Parse expression text into an AST; raises ParseError with position."""
    return _Parser(text).parse()


# -------------------------------------------------------------------- printer


def to_text(node) -> str:
    """Canonical text form; parse(to_text(n)) == n for parser output."""
    return _print(node, 0)


def _level(node) -> int:
    """Precedence level of the printed form: add 1, mul/neg 2, pow 3, atom 4."""
    if isinstance(node, BinOp):
        return {"+": 1, "-": 1, "*": 2, "/": 2, "^": 3}[node.op]
    if isinstance(node, Neg):
        return 2
    if isinstance(node, Num):
        if node.value < 0:
            return 2
        return 2 if node.value.denominator != 1 else 4
    return 4


def _print(node, context: int) -> str:
    """Render with parentheses whenever the node binds looser than context."""
    lvl = _level(node)
    if isinstance(node, Num):
        v = node.value
        s = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    elif isinstance(node, Sym):
        s = node.name
    elif isinstance(node, Call):
        o, c = ("[", "]") if node.bracket else ("(", ")")
        return node.name + o + ", ".join(_print(a, 0) for a in node.args) + c
    elif isinstance(node, Neg):
        s = "-" + _print(node.operand, 3)
    elif isinstance(node, BinOp):
        if node.op == "^":
            s = _print(node.left, 4) + "^" + _print(node.right, 3)
        elif node.op in ("*", "/"):
            s = f"{_print(node.left, 2)}{node.op}{_print(node.right, 3)}"
        else:
            s = f"{_print(node.left, 1)} {node.op} {_print(node.right, 2)}"
    else:
        raise TypeError(f"not an AST node: {node!r}")
    return s if lvl >= context else f"({s})"


# --------------------------------------------------------- operator evaluation


def parse_operator(text: str, algebra: OreAlgebra) -> OrePolynomial:
    """Parse operator text and evaluate it in the algebra.

    The expression tree is evaluated with noncommutative multiplication in
    written order, so inputs need not be in normal form.
    """
    return eval_operator(parse(text), algebra)


def eval_operator(node, algebra: OreAlgebra) -> OrePolynomial:
    A = algebra
    if isinstance(node, Num):
        return A.const(node.value)
    if isinstance(node, Sym):
        if node.name in A.ctx.index:
            return A.from_coeff(A.coeff_var(node.name))
        if node.name in A.elim:
            m = [0] * A.nmon
            m[A.elim.index(node.name)] = 1
            return OrePolynomial(A, {tuple(m): RationalFunction.const(A.ctx, 1)})
        raise ValueError(f"unknown symbol {node.name!r} in operator text")
    if isinstance(node, Neg):
        return -eval_operator(node.operand, algebra)
    if isinstance(node, Call):
        if not node.bracket:
            raise ValueError(f"function {node.name!r} not allowed in operator text")
        return _eval_generator(node, A)
    if isinstance(node, BinOp):
        if node.op == "^":
            base = eval_operator(node.left, algebra)
            expo = _int_value(node.right)
            if expo < 0:
                if base.is_coefficient():
                    return A.from_coeff(base.coefficient() ** expo)
                raise ValueError("negative power of a non-coefficient operator")
            return base ** expo
        left = eval_operator(node.left, algebra)
        right = eval_operator(node.right, algebra)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if node.op == "/":
            if not right.is_coefficient():
                raise ValueError("division by a non-coefficient operator")
            return left.scale(right.coefficient().inverse())
    raise TypeError(f"not an AST node: {node!r}")


def _eval_generator(node: Call, A: OreAlgebra) -> OrePolynomial:
    name = node.name
    if name == "S" and len(node.args) == 1 and isinstance(node.args[0], Sym):
        var = node.args[0].name
        gen = A.generator_for(var)
        if gen.kind != SHIFT:
            raise ValueError(f"S[{var}] does not match the declared generator")
        return A.gen(var)
    if name == "Der" and len(node.args) == 1 and isinstance(node.args[0], Sym):
        var = node.args[0].name
        gen = A.generator_for(var)
        if gen.kind != DERIVATIVE:
            raise ValueError(f"Der[{var}] does not match the declared generator")
        return A.gen(var)
    if name == "QS" and len(node.args) == 2 and isinstance(node.args[0], Sym):
        var = node.args[0].name
        gen = A.generator_for(var)
        if gen.kind != QSHIFT:
            raise ValueError(f"QS[{var},..] does not match the declared generator")
        return A.gen(var)
    raise ValueError(f"unknown generator reference {name}[...]")


def _int_value(node) -> int:
    if isinstance(node, Num) and node.value.denominator == 1:
        return int(node.value)
    if isinstance(node, Neg):
        return -_int_value(node.operand)
    raise ValueError("exponent must be an integer literal")


# ------------------------------------------------------- algebra declarations


def parse_algebra(decl: str, params: Sequence[str] = (), extra_vars: Sequence[str] = ()) -> OreAlgebra:
    """Build an algebra from a declaration like ``S[n], S[a], Der[x]``.

    Field variables are the generator variables plus ``extra_vars``;
    ``params`` declares parameters (q parameters of QS generators must be
    among them).  ``QS[qk, q^k]`` is accepted and records the underlying
    discrete index k.
    """
    node_list = []
    for part in decl.split(","):
        part = part.strip()
        if not part:
            continue
        node_list.append(part)
    # re-join bracket groups split by the comma inside QS[qk,q]
    merged = []
    depth = 0
    buf = ""
    for ch in decl:
        if ch == "," and depth == 0:
            if buf.strip():
                merged.append(buf.strip())
            buf = ""
            continue
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        buf += ch
    if buf.strip():
        merged.append(buf.strip())

    gens = []
    params = list(params)
    for item in merged:
        node = parse(item)
        if not isinstance(node, Call) or not node.bracket:
            raise ValueError(f"bad generator declaration {item!r}")
        if node.name == "S" and len(node.args) == 1 and isinstance(node.args[0], Sym):
            gens.append(Generator(SHIFT, node.args[0].name))
        elif node.name == "Der" and len(node.args) == 1 and isinstance(node.args[0], Sym):
            gens.append(Generator(DERIVATIVE, node.args[0].name))
        elif node.name == "QS" and len(node.args) == 2 and isinstance(node.args[0], Sym):
            var = node.args[0].name
            second = node.args[1]
            if isinstance(second, Sym):
                qname, disc = second.name, None
            elif (isinstance(second, BinOp) and second.op == "^"
                  and isinstance(second.left, Sym) and isinstance(second.right, Sym)):
                qname, disc = second.left.name, second.right.name
            else:
                raise ValueError(f"bad q-shift declaration {item!r}")
            if qname not in params:
                params.append(qname)
            gens.append(Generator(QSHIFT, var, q=qname, disc=disc))
        else:
            raise ValueError(f"unknown generator declaration {item!r}")
    field_vars = [g.var for g in gens]
    for v in extra_vars:
        if v not in field_vars and v not in params:
            field_vars.append(v)
    return OreAlgebra(field_vars, gens, params)


# ------------------------------------------------------------- AST utilities


def free_symbols(node) -> set:
    if isinstance(node, Num):
        return set()
    if isinstance(node, Sym):
        return {node.name}
    if isinstance(node, Call):
        out = set()
        if node.name in QUANTIFIERS:
            body, var = node.args[0], node.args[1]
            out |= free_symbols(body) - {var.name}
            for b in node.args[2:]:
                out |= free_symbols(b)
            return out
        for a in node.args:
            out |= free_symbols(a)
        return out
    if isinstance(node, Neg):
        return free_symbols(node.operand)
    if isinstance(node, BinOp):
        return free_symbols(node.left) | free_symbols(node.right)
    raise TypeError(f"not an AST node: {node!r}")
