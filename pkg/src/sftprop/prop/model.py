"""Generator models and the diagram evaluator.

A model assigns a morphism to each generator and supplies the prop
operations (composition, tensor, symmetry, identities) of its target
category. Registration validates the bialgebra equations eagerly.
"""

from __future__ import annotations

from typing import Any, Optional

from ..algebra import (
    IntPoly,
    SemiringMatrix,
    SemiringSpec,
    T,
    ZPLUS,
    ZPLUS_T,
    mat_direct_sum,
    mat_mul,
    permutation_matrix,
)
from .diagram import (
    DELTA,
    EMPTY,
    EPS,
    ETA,
    GENERATOR_ARITY,
    H,
    ID,
    MU,
    SIGMA,
    Compose,
    Empty,
    Gen,
    Id,
    Sym,
    Tensor,
    Term,
    Trace,
    arity,
    compose,
    has_trace,
    tensor,
)
from .traced import TracedMorphism, iota, tp_compose, tp_tensor, tp_trace


class ModelValidationError(ValueError):
    pass


class TraceUnavailable(TypeError):
    pass


BIALGEBRA_EQUATIONS: list[tuple[str, Term, Term]] = [
    ("left unit", compose(MU, tensor(ETA, ID)), ID),
    ("right unit", compose(MU, tensor(ID, ETA)), ID),
    ("associativity", compose(MU, tensor(MU, ID)), compose(MU, tensor(ID, MU))),
    ("commutativity", compose(MU, SIGMA), MU),
    ("left counit", compose(tensor(EPS, ID), DELTA), ID),
    ("right counit", compose(tensor(ID, EPS), DELTA), ID),
    ("coassociativity", compose(tensor(DELTA, ID), DELTA), compose(tensor(ID, DELTA), DELTA)),
    ("cocommutativity", compose(SIGMA, DELTA), DELTA),
    ("copy unit", compose(DELTA, ETA), tensor(ETA, ETA)),
    ("discard product", compose(EPS, MU), tensor(EPS, EPS)),
    ("discard unit", compose(EPS, ETA), EMPTY),
    (
        "bialgebra",
        compose(tensor(MU, MU), tensor(ID, SIGMA, ID), tensor(DELTA, DELTA)),
        compose(DELTA, MU),
    ),
]

H_EQUATIONS: list[tuple[str, Term, Term]] = [
    ("h product", compose(H, MU), compose(MU, tensor(H, H))),
    ("h unit", compose(H, ETA), ETA),
    ("h copy", compose(tensor(H, H), DELTA), compose(DELTA, H)),
    ("h discard", compose(EPS, H), EPS),
]


class GeneratorModel:
    """Base class; subclasses provide the category operations."""

    trace_capable = False

    def __init__(self, semiring: SemiringSpec, generators: dict[str, Any], validate: bool = True):
        self.semiring = semiring
        self.generators = dict(generators)
        for name in ("mu", "eta", "delta", "eps"):
            if name not in self.generators:
                raise ModelValidationError(f"missing generator {name}")
        for name, mor in self.generators.items():
            if name not in GENERATOR_ARITY:
                raise ModelValidationError(f"unknown generator {name}")
            if self.arity_of(mor) != GENERATOR_ARITY[name]:
                raise ModelValidationError(
                    f"generator {name} has arity {self.arity_of(mor)}, expected {GENERATOR_ARITY[name]}"
                )
        if validate:
            self.validate()

    # category operations
    def identity(self, n: int):
        raise NotImplementedError

    def symmetry(self):
        raise NotImplementedError

    def compose(self, f, g):
        raise NotImplementedError

    def tensor(self, f, g):
        raise NotImplementedError

    def trace(self, f):
        raise TraceUnavailable(f"{type(self).__name__} has no trace")

    def arity_of(self, f) -> tuple[int, int]:
        raise NotImplementedError

    def equal(self, f, g) -> bool:
        return f == g

    @property
    def has_h(self) -> bool:
        return "h" in self.generators

    def failed_equations(self) -> list[str]:
        eqs = BIALGEBRA_EQUATIONS + (H_EQUATIONS if self.has_h else [])
        bad = []
        for name, lhs, rhs in eqs:
            if not self.equal(eval_diagram(lhs, self), eval_diagram(rhs, self)):
                bad.append(name)
        return bad

    def validate(self) -> None:
        bad = self.failed_equations()
        if bad:
            raise ModelValidationError("model violates: " + ", ".join(bad))


class MatrixModel(GeneratorModel):
    """Morphisms ``n -> m`` are ``m x n`` matrices; tensor is the direct sum."""

    def identity(self, n: int) -> SemiringMatrix:
        return SemiringMatrix.identity(n, self.semiring)

    def symmetry(self) -> SemiringMatrix:
        return permutation_matrix([1, 0], self.semiring)

    def compose(self, f, g):
        return mat_mul(f, g)

    def tensor(self, f, g):
        return mat_direct_sum(f, g)

    def arity_of(self, f) -> tuple[int, int]:
        return f.cols, f.rows


def matrix_model(semiring: SemiringSpec = ZPLUS, h: Optional[Any] = None, validate: bool = True) -> MatrixModel:
    """The standard model: ``mu -> [1 1]``, ``eta -> 1x0``, ``delta -> [1;1]``, ``eps -> 0x1``, ``h -> [h]``.

    For polynomial semirings ``h`` defaults to ``t``.
    """
    o, z = semiring.one, semiring.zero
    gens = {
        "mu": SemiringMatrix(1, 2, (o, o), semiring),
        "eta": SemiringMatrix(1, 0, (), semiring),
        "delta": SemiringMatrix(2, 1, (o, o), semiring),
        "eps": SemiringMatrix(0, 1, (), semiring),
    }
    if h is None and isinstance(z, IntPoly):
        h = T
    if h is not None:
        gens["h"] = SemiringMatrix(1, 1, (semiring.coerce(h),), semiring)
    return MatrixModel(semiring, gens, validate=validate)


def polynomial_model() -> MatrixModel:
    return matrix_model(ZPLUS_T)


def eval_diagram(term: Term, model: GeneratorModel):
    """Fold a term into the model.

    Terms with traces in a model without a trace are evaluated in the traced
    completion and come back as a :class:`TracedMorphism`.
    """
    arity(term)
    if has_trace(term) and not model.trace_capable:
        if not isinstance(model, MatrixModel):
            raise TraceUnavailable("pair routing needs a matrix model")
        return _fold_pairs(term, model)
    return _fold(term, model)


def _fold(term: Term, model: GeneratorModel):
    if isinstance(term, Gen):
        try:
            return model.generators[term.name]
        except KeyError:
            raise ModelValidationError(f"generator {term.name} is not assigned in this model") from None
    if isinstance(term, Id):
        return model.identity(1)
    if isinstance(term, Empty):
        return model.identity(0)
    if isinstance(term, Sym):
        return model.symmetry()
    if isinstance(term, Compose):
        return model.compose(_fold(term.left, model), _fold(term.right, model))
    if isinstance(term, Tensor):
        return model.tensor(_fold(term.top, model), _fold(term.bottom, model))
    if isinstance(term, Trace):
        return model.trace(_fold(term.inner, model))
    raise TypeError(term)


def _fold_pairs(term: Term, model: MatrixModel) -> TracedMorphism:
    if isinstance(term, Compose):
        return tp_compose(_fold_pairs(term.left, model), _fold_pairs(term.right, model))
    if isinstance(term, Tensor):
        return tp_tensor(_fold_pairs(term.top, model), _fold_pairs(term.bottom, model))
    if isinstance(term, Trace):
        return tp_trace(_fold_pairs(term.inner, model))
    return iota(_fold(term, model))
