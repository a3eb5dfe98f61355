"""The prop of matrices, its diagram evaluator and its traced completion."""

from .diagram import (
    DELTA, EMPTY, EPS, ETA, H, ID, MU, SIGMA,
    ArityError, Compose, DiagramParseError, Empty, Gen, Id, Sym, Tensor, Term, Trace,
    arity, compose, has_trace, ids, parse_diagram, permutation_term, render_diagram, tensor,
    worked_example,
)
from .model import (
    BIALGEBRA_EQUATIONS, H_EQUATIONS, GeneratorModel, MatrixModel, ModelValidationError,
    TraceUnavailable, eval_diagram, matrix_model, polynomial_model,
)
from .traced import (
    Contract, Expand, PairBudget, PairMove, PermuteDashed, Slide, TracedMorphism, permutation_slide,
    apply_move, full_trace, honest_value, iota, pair_equiv_bounded, route,
    tp_compose, tp_tensor, tp_trace,
)

__all__ = [
    "DELTA", "EMPTY", "EPS", "ETA", "H", "ID", "MU", "SIGMA", "ArityError", "Compose",
    "DiagramParseError", "Empty", "Gen", "Id", "Sym", "Tensor", "Term", "Trace", "arity", "compose",
    "has_trace", "ids", "parse_diagram", "permutation_term", "render_diagram", "tensor",
    "worked_example", "BIALGEBRA_EQUATIONS", "H_EQUATIONS", "GeneratorModel", "MatrixModel",
    "ModelValidationError", "TraceUnavailable", "eval_diagram", "matrix_model", "polynomial_model",
    "Contract", "Expand", "PairBudget", "PairMove", "PermuteDashed", "Slide", "TracedMorphism",
    "permutation_slide", "apply_move", "full_trace", "honest_value", "iota", "pair_equiv_bounded",
    "route", "tp_compose", "tp_tensor", "tp_trace",
]
