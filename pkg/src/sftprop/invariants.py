"""Exact invariants of square nonnegative integer matrices and the comparison driver."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .algebra import (
    Z,
    DimensionError,
    IntPoly,
    InternalConsistencyError,
    SemiringMatrix,
    det_poly,
    identity_minus_t,
    is_prime,
    render_matrix,
    smith_normal_form,
    t_identity_minus,
)
from .certificate import MoveCertificate, SearchStats, verify_certificate
from .io import matrix_to_json
from .shift import SearchBudget, certificate_to_json, flow_search, sse_search
from .weighted import (
    STANDARD_MONOIDS,
    EnumerationBudgetExceeded,
    FiniteMonoid,
    MonoidHom,
    count_fixed_points,
)

REPORT_SCHEMA = 1


def _square(m: SemiringMatrix) -> None:
    if not m.is_square:
        raise DimensionError(f"expected a square matrix, got {m.rows}x{m.cols}")


def _int_rows(m: SemiringMatrix) -> list[list[int]]:
    return [[int(x) for x in m.row(i)] for i in range(m.rows)]


# -- groups and polynomials -------------------------------------------------


@dataclass(frozen=True)
class AbelianGroupClass:
    """Finitely generated abelian group ``Z^free_rank (+) Z/d1 (+) ...`` with ``d1 | d2 | ...``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def render(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " (+) ".join(parts) if parts else "trivial"

    def __str__(self) -> str:
        return self.render()

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": self.render()}


def cokernel_class(m: SemiringMatrix) -> AbelianGroupClass:
    snf = smith_normal_form(m.with_semiring(Z) if m.semiring.name != "z" else m)
    return AbelianGroupClass(snf.free_rank, tuple(abs(d) for d in snf.divisors if abs(d) != 1))


def bowen_franks(m: SemiringMatrix) -> AbelianGroupClass:
    """Cokernel of ``m - I`` over the integers."""
    _square(m)
    mz = SemiringMatrix.from_rows(_int_rows(m), Z, cols=m.cols)
    return cokernel_class(mz - SemiringMatrix.identity(m.rows, Z))


@dataclass(frozen=True)
class ZetaInvariant:
    """``zeta_M(t) = 1 / denominator``."""

    denominator: IntPoly

    def render(self) -> str:
        return self.denominator.render(ascending=True)

    def __str__(self) -> str:
        return self.render()


def _normalize_constant(p: IntPoly) -> IntPoly:
    return -p if p.constant < 0 else p


def zeta_poly(m: SemiringMatrix) -> ZetaInvariant:
    _square(m)
    d = _normalize_constant(det_poly(identity_minus_t(m)))
    if d.constant != 1:
        raise InternalConsistencyError(f"det(I - tM) has constant term {d.constant}")
    return ZetaInvariant(d)


def spectrum_away_from_zero(m: SemiringMatrix) -> IntPoly:
    """Characteristic polynomial with every factor of ``t`` removed, made monic."""
    _square(m)
    p = det_poly(t_identity_minus(m))
    if p.is_zero():
        raise InternalConsistencyError("characteristic polynomial vanished")
    p = p.shift_down(p.low_order())
    return -p if p.leading < 0 else p


def render_spectrum(p: IntPoly) -> str:
    return p.render(ascending=False)


def periodic_point_count(m: SemiringMatrix, period: int) -> int:
    """``trace(m^period)``: closed walks of the given length."""
    _square(m)
    if period < 1:
        raise ValueError("period must be at least 1")
    mz = SemiringMatrix.from_rows(_int_rows(m), Z, cols=m.cols)
    return int(mz.power(period).trace())


# -- finite fields ------------------------------------------------------------


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(a)) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], -1, p)
        a[rank] = [(x * inv) % p for x in a[rank]]
        for r in range(len(a)):
            if r != rank and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        rank += 1
    return rank


def finite_field_fixed_count(m: SemiringMatrix, p: int, lam: int) -> int:
    """Solutions of ``lam * (m x) = x`` over the prime field of order ``p``."""
    _square(m)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    n = m.rows
    rows = _int_rows(m)
    a = [[lam * rows[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
    return p ** (n - rank_mod_p(a, p))


# -- presentations ------------------------------------------------------------


@dataclass(frozen=True)
class ModulePresentation:
    relation_matrix: SemiringMatrix
    generators: int
    fitting_invariant: IntPoly


def dimension_module(m: SemiringMatrix) -> ModulePresentation:
    """Presentation of the cokernel of ``I - tM`` over Z[t].

    Raises :class:`InternalConsistencyError` if the specialization at
    ``t = 1`` disagrees with the Bowen-Franks group.
    """
    _square(m)
    rel = identity_minus_t(m)
    fit = _normalize_constant(det_poly(rel))
    at_one = SemiringMatrix(rel.rows, rel.cols, (x(1) for x in rel.entries), Z)
    if cokernel_class(at_one) != bowen_franks(m):
        raise InternalConsistencyError("dimension module at t=1 disagrees with the Bowen-Franks group")
    return ModulePresentation(rel, m.rows, fit)


_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


@dataclass(frozen=True)
class SemimodulePresentation:
    """``<x_1 .. x_n | tMx = x>``; relation ``i`` is ``sum_j (t m_ij) x_j = x_i``."""

    generators: int
    relations: tuple[tuple[tuple[IntPoly, ...], int], ...]  # (coefficients of lhs, index on rhs)

    def _var(self, j: int) -> str:
        return "x" if self.generators == 1 else "x" + str(j + 1).translate(_SUBSCRIPTS)

    def render(self) -> str:
        sep = "" if self.generators == 1 else " "
        names = ",".join(self._var(j) for j in range(self.generators))
        rels = []
        for coeffs, rhs in self.relations:
            terms = []
            for j, c in enumerate(coeffs):
                if c.is_zero():
                    continue
                coef = c.render(ascending=False, star=False, spaces=False)
                if sum(1 for x in c.coeffs if x) > 1:
                    coef = f"({coef})"
                terms.append(f"{coef}{sep}{self._var(j)}")
            lhs = " + ".join(terms) if terms else "0"
            rels.append(f"{lhs} = {self._var(rhs)}")
        return f"⟨{names} | {', '.join(rels)}⟩"

    def __str__(self) -> str:
        return self.render()


def semimodule_presentation(m: SemiringMatrix) -> SemimodulePresentation:
    """Generators and relations of the Z_+[t]-semimodule attached to ``m``.

    The output is not normalized: no normal form for these semimodules is
    known, so presentations are never compared. For the full 2-shift
    ``[[2]]`` the presentation ``<x | 2tx = x>`` describes Z_+[1/2], with
    ``t`` acting as multiplication by 1/2.
    """
    _square(m)
    rows = _int_rows(m)
    if any(x < 0 for r in rows for x in r):
        raise ValueError("semimodule presentation needs a Z_+ matrix")
    rels = tuple((tuple(IntPoly.monomial(a, 1) for a in r), i) for i, r in enumerate(rows))
    return SemimodulePresentation(m.rows, rels)


# -- comparison -----------------------------------------------------------------


@dataclass(frozen=True)
class Equivalent:
    certificate: MoveCertificate
    outcome: str = field(default="equivalent", init=False)


@dataclass(frozen=True)
class Distinguished:
    invariant: str
    value_m: str
    value_n: str
    outcome: str = field(default="distinguished", init=False)


@dataclass(frozen=True)
class Unknown:
    budget: SearchBudget
    table: tuple[tuple[str, str, str], ...]
    outcome: str = field(default="unknown", init=False)


EquivVerdict = Union[Equivalent, Distinguished, Unknown]

EXIT_CODES = {"equivalent": 0, "distinguished": 1, "unknown": 2}

FIXED_COUNT_MONOIDS = ("z2", "z3", "subsets2", "max3")
FIELD_PRIMES = (2, 3, 5, 7)
FIXED_COUNT_BUDGET = 10 ** 6


def monoid_cases(relation: str) -> list[tuple[str, FiniteMonoid, MonoidHom]]:
    """Monoids whose fixed counts enter the comparison table.

    Identity homomorphisms only for flow; negation on Z/3 is added for SSE.
    """
    cases = []
    for name in FIXED_COUNT_MONOIDS:
        mon = STANDARD_MONOIDS[name]()
        cases.append((name, mon, MonoidHom.identity(mon)))
    if relation == "sse":
        z3 = STANDARD_MONOIDS["z3"]()
        cases.append(("z3:neg", z3, MonoidHom(z3, [0, 2, 1])))
    return cases


def invariant_table(m: SemiringMatrix, n: SemiringMatrix, relation: str) -> list[tuple[str, str, str]]:
    """Rows ``(name, value on m, value on n)`` in a fixed order."""
    rows: list[tuple[str, str, str]] = []

    def add(name, fn):
        rows.append((name, fn(m), fn(n)))

    if relation == "sse":
        add("zeta", lambda x: zeta_poly(x).render())
        add("spectrum", lambda x: render_spectrum(spectrum_away_from_zero(x)))
        add("fitting", lambda x: dimension_module(x).fitting_invariant.render())
    add("bowen_franks", lambda x: bowen_franks(x).render())
    for name, mon, hom in monoid_cases(relation):
        if mon.size ** max(m.rows, n.rows) > FIXED_COUNT_BUDGET:
            continue
        add(f"fixed_count[{name}]", lambda x, mon=mon, hom=hom: str(count_fixed_points(x, mon, hom)))
    if relation == "sse":
        for p in FIELD_PRIMES:
            for lam in range(p):
                add(f"finite_field[p={p},lambda={lam}]", lambda x, p=p, lam=lam: str(finite_field_fixed_count(x, p, lam)))
    return rows


def compare(m: SemiringMatrix, n: SemiringMatrix, relation: str = "sse",
            budget: SearchBudget = SearchBudget(), stats: Optional[SearchStats] = None) -> EquivVerdict:
    """Separate by invariants, then search; exhaustion is never a negative answer."""
    _square(m)
    _square(n)
    if relation not in ("sse", "flow"):
        raise ValueError(f"unknown relation {relation!r}")
    table = invariant_table(m, n, relation)
    for name, a, b in table:
        if a != b:
            return Distinguished(name, a, b)
    search = sse_search if relation == "sse" else flow_search
    cert = search(m, n, budget, stats)
    if cert is not None:
        if not verify_certificate(cert):
            raise InternalConsistencyError("search produced a certificate that does not replay")
        return Equivalent(cert)
    return Unknown(budget, tuple(table))


def verdict_to_json(v: EquivVerdict) -> dict:
    out: dict = {"schema": REPORT_SCHEMA, "outcome": v.outcome, "exit_code": EXIT_CODES[v.outcome]}
    if isinstance(v, Equivalent):
        out["steps"] = len(v.certificate.steps)
        out["certificate"] = certificate_to_json(v.certificate)
    elif isinstance(v, Distinguished):
        out["invariant"] = v.invariant
        out["value_m"] = v.value_m
        out["value_n"] = v.value_n
    else:
        out["budget"] = v.budget.to_json()
        out["table"] = [{"invariant": a, "value_m": b, "value_n": c} for a, b, c in v.table]
    return out


# -- full report ------------------------------------------------------------------


def invariant_report(
    m: SemiringMatrix,
    monoids: Sequence[tuple[str, FiniteMonoid, MonoidHom]] = (),
    modulus: Optional[int] = None,
    lam: Optional[int] = None,
    series_order: int = 8,
) -> dict:
    """Everything computable about ``m`` as a JSON-ready dict with canonical strings."""
    _square(m)
    dm = dimension_module(m)
    report = {
        "schema": REPORT_SCHEMA,
        "matrix": matrix_to_json(m),
        "size": m.rows,
        "bowen_franks": bowen_franks(m).to_json(),
        "zeta": zeta_poly(m).render(),
        "spectrum": render_spectrum(spectrum_away_from_zero(m)),
        "fitting": dm.fitting_invariant.render(),
        "dimension_module": {"generators": dm.generators, "relation_matrix": render_matrix(dm.relation_matrix)},
        "semimodule": semimodule_presentation(m).render(),
        "periodic_points": [periodic_point_count(m, k) for k in range(1, series_order + 1)],
    }
    fixed = []
    for name, mon, hom in monoids:
        try:
            count = str(count_fixed_points(m, mon, hom))
        except EnumerationBudgetExceeded as exc:
            count = f"skipped: {exc}"
        fixed.append({"monoid": name, "hom": list(hom.map), "count": count})
    report["fixed_counts"] = fixed
    if modulus is not None:
        lams = [lam] if lam is not None else list(range(modulus))
        report["finite_field"] = [
            {"p": modulus, "lambda": x, "count": finite_field_fixed_count(m, modulus, x)} for x in lams
        ]
    return report
