"""Ore operator algebras, left Groebner bases, D-finite closure properties
and creative telescoping over exact rational function fields."""

from .ratfun import Context, Polynomial, RationalFunction, nullspace, poly_gcd
from .ore import (DERIVATIVE, QSHIFT, SHIFT, Generator, OreAlgebra,
                  OrePolynomial, ore_mul)
from .groebner import (BlockOrder, DegLex, GroebnerBasis, Lex, MonomialOrder,
                       POT, buchberger, eliminate, module_gb, reduce)
from .closure import (NotDFiniteError, QuotientBasis, apply_operator,
                      dfinite_plus, dfinite_times, rank, substitute_algebraic,
                      substitute_integer_linear)
from .expressions import ParseError, parse, parse_algebra, parse_operator, to_text
from .annihilator import NotHolonomicError, annihilator
from .telescoping import (BoundaryExpression, DeltaSpec, DeltaVar,
                          TelescopingResult, assemble_boundary, ct_heuristic,
                          ct_iterated, ct_slow, ct_takayama, find_relation,
                          split_delta)
from .oracle import (CheckReport, NotEvaluable, SampleGrid, check_annihilator,
                     check_sum_identity, eval_expression, evaluate_boundary)
from .config import Caps, CapExceeded, DEFAULT_CAPS

__version__ = "0.1.0"

__all__ = [
    "Context", "Polynomial", "RationalFunction", "nullspace", "poly_gcd",
    "SHIFT", "DERIVATIVE", "QSHIFT", "Generator", "OreAlgebra", "OrePolynomial", "ore_mul",
    "MonomialOrder", "DegLex", "Lex", "BlockOrder", "POT", "GroebnerBasis",
    "buchberger", "reduce", "eliminate", "module_gb",
    "QuotientBasis", "rank", "dfinite_plus", "dfinite_times", "apply_operator",
    "substitute_algebraic", "substitute_integer_linear", "NotDFiniteError",
    "parse", "parse_algebra", "parse_operator", "to_text", "ParseError",
    "annihilator", "NotHolonomicError",
    "DeltaSpec", "DeltaVar", "TelescopingResult", "split_delta",
    "ct_slow", "ct_takayama", "ct_heuristic", "ct_iterated", "find_relation",
    "assemble_boundary", "BoundaryExpression",
    "SampleGrid", "CheckReport", "eval_expression", "check_annihilator",
    "check_sum_identity", "evaluate_boundary", "NotEvaluable",
    "Caps", "CapExceeded", "DEFAULT_CAPS",
]
