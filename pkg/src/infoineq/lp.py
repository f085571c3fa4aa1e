"""Exact-rational decision layer: cone membership and multiplier extraction.

A candidate inequality "objective . h >= 0 for every h with Eh >= 0, Ch = 0"
(E the elemental rows, C the constraint rows) holds iff the objective lies in
the cone generated by the rows of E plus the row span of C, i.e. iff there
are multipliers lam >= 0 and nu with

    E^T lam - C^T nu = objective.

Feasibility of that system is decided by a phase-1 simplex over Fractions
with Bland's pivot rule (entering: lowest eligible column index; leaving:
lowest basic column index among minimum ratios), which terminates on every
input and makes results reproducible.  When the system is infeasible the
final multiplier vector of the phase-1 objective is a Farkas witness; its
negation is a point of the cone on which the objective is strictly negative,
which certifies that the inequality is not provable this way.

Everything is exact: certificates verify by coordinate equality, never by
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .canonical import CanonicalVector
from .errors import CertificateUnavailableError, DimensionMismatchError

if TYPE_CHECKING:  # imported only for annotations; avoids an import cycle
    from .constraints import ConstraintMatrix
    from .elemental import ElementalMatrix

_ZERO = Fraction(0)
_ONE = Fraction(1)

# Generous cap on simplex pivots; Bland's rule terminates long before this on
# any instance this package can build.
_MAX_PIVOTS = 1_000_000


@dataclass(frozen=True)
class Certificate:
    """Multipliers with E^T lam - C^T nu = objective and lam >= 0 elementwise."""

    lam: tuple[Fraction, ...]  # one per elemental row, nonnegative
    nu: tuple[Fraction, ...]  # one per constraint row, any sign


@dataclass(frozen=True)
class InfeasibleCombination:
    """No nonnegative combination exists; `witness` separates the target."""

    witness: CanonicalVector  # E.witness >= 0, C.witness = 0, target.witness < 0


@dataclass(frozen=True)
class ProvenSTI:
    """The inequality is a (constrained) Shannon-type inequality."""

    certificate: Certificate


@dataclass(frozen=True)
class NotProvable:
    """Not provable as a Shannon-type inequality; `ray` is the disproof direction.

    The inequality may still hold: for three or more variables the elemental
    rows describe a strict outer bound of the entropic region.
    """

    ray: CanonicalVector


SolveOutcome = ProvenSTI | NotProvable


@dataclass(frozen=True)
class ConeProblem:
    """Decide whether `objective . h >= 0` on {h : Eh >= 0, Ch = 0}.

    The objective is the canonical vector of RHS minus LHS of the candidate
    inequality, so nonnegativity over the cone proves the inequality.
    """

    objective: CanonicalVector
    elemental: "ElementalMatrix"
    constraints: "ConstraintMatrix | None" = None

    def __post_init__(self):
        if self.elemental.n != self.objective.n:
            raise DimensionMismatchError("elemental matrix built for a different universe")
        if self.constraints is not None and self.constraints.n != self.objective.n:
            raise DimensionMismatchError("constraint matrix built for a different universe")


def _phase1_feasibility(
    columns: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction],
) -> tuple[list[Fraction] | None, list[Fraction] | None]:
    """Decide {x >= 0 : sum_j x_j columns[j] = rhs} by phase-1 simplex.

    Returns (x, None) when feasible and (None, y) when not, with y a Farkas
    witness: y . columns[j] <= 0 for every j and y . rhs > 0.
    """
    m = len(rhs)
    nc = len(columns)
    # Row-major tableau with artificial identity appended; rows scaled so the
    # right-hand side is nonnegative.
    sign = [1] * m
    rows: list[list[Fraction]] = []
    b: list[Fraction] = []
    for i in range(m):
        if rhs[i] < 0:
            sign[i] = -1
            row = [-col[i] for col in columns]
            b.append(-rhs[i])
        else:
            row = [col[i] for col in columns]
            b.append(rhs[i])
        row.extend(_ONE if k == i else _ZERO for k in range(m))
        rows.append(row)
    basis = [nc + i for i in range(m)]

    # Reduced-cost row for "minimize the sum of artificials": every basic
    # artificial has cost 1, so subtract each constraint row from the costs.
    cost = [_ZERO] * nc + [_ONE] * m
    for i in range(m):
        rowi = rows[i]
        for j in range(nc + m):
            if rowi[j]:
                cost[j] -= rowi[j]
    obj = sum(b, _ZERO)

    for _ in range(_MAX_PIVOTS):
        if obj == 0:
            break
        # Entering column: lowest index with negative reduced cost.  Artificial
        # columns never re-enter; their reduced costs are still maintained
        # because the Farkas witness is read off them at the end.
        enter = -1
        for j in range(nc):
            if cost[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        # Leaving row: minimum ratio, ties by lowest basic column index.
        leave = -1
        best: Fraction | None = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = b[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            # The phase-1 objective is bounded below by zero, so an unbounded
            # direction is impossible.
            raise AssertionError("phase-1 simplex found an unbounded direction")
        # Pivot on (leave, enter).
        prow = rows[leave]
        piv = prow[enter]
        if piv != 1:
            inv = _ONE / piv
            rows[leave] = prow = [v * inv for v in prow]
            b[leave] *= inv
        for i in range(m):
            if i == leave:
                continue
            f = rows[i][enter]
            if f:
                rowi = rows[i]
                rows[i] = [v - f * p for v, p in zip(rowi, prow)]
                b[i] -= f * b[leave]
        f = cost[enter]
        if f:
            cost = [v - f * p for v, p in zip(cost, prow)]
            obj += f * b[leave]
        basis[leave] = enter
    else:
        raise AssertionError("simplex pivot limit exceeded")

    if obj == 0:
        x = [_ZERO] * nc
        for i, col in enumerate(basis):
            if col < nc:
                x[col] = b[i]
        return x, None
    # Infeasible: multipliers from the artificial reduced costs, mapped back
    # through the row scaling.  y_i = cost_of_artificial - reduced_cost.
    y = [sign[i] * (_ONE - cost[nc + i]) for i in range(m)]
    return None, y


def _constraint_rows(constraints: "ConstraintMatrix | None"):
    return constraints.rows if constraints is not None else ()


def nonneg_combination(
    target: CanonicalVector,
    elemental: "ElementalMatrix",
    constraints: "ConstraintMatrix | None" = None,
) -> Certificate | InfeasibleCombination:
    """Find lam >= 0 and nu with E^T lam - C^T nu = target, or a separating witness."""
    if elemental.n != target.n:
        raise DimensionMismatchError("elemental matrix built for a different universe")
    if constraints is not None and constraints.n != target.n:
        raise DimensionMismatchError("constraint matrix built for a different universe")
    qrows = _constraint_rows(constraints)
    columns: list[tuple[Fraction, ...]] = [term.row.coeffs for term in elemental.rows]
    columns += [tuple(-c for c in row.row.coeffs) for row in qrows]  # nu positive part
    columns += [row.row.coeffs for row in qrows]  # nu negative part
    x, farkas = _phase1_feasibility(columns, target.coeffs)
    ne = len(elemental.rows)
    nq = len(qrows)
    if x is not None:
        lam = tuple(x[:ne])
        nu = tuple(x[ne + j] - x[ne + nq + j] for j in range(nq))
        cert = Certificate(lam, nu)
        # Re-check the returned object against the original data; a failure
        # here is a solver bug, never a property of the input.
        if not _combination_matches(target, elemental, constraints, cert):
            raise AssertionError("internal error: simplex produced an invalid certificate")
        return cert
    witness = CanonicalVector(target.n, tuple(-v for v in farkas))
    if not _witness_is_valid(target, elemental, constraints, witness):
        raise AssertionError("internal error: simplex produced an invalid witness")
    return InfeasibleCombination(witness)


def _combination_matches(
    target: CanonicalVector,
    elemental: "ElementalMatrix",
    constraints: "ConstraintMatrix | None",
    cert: Certificate,
) -> bool:
    if any(v < 0 for v in cert.lam):
        return False
    total = [_ZERO] * len(target.coeffs)
    for coeff, term in zip(cert.lam, elemental.rows):
        if coeff:
            for k, v in enumerate(term.row.coeffs):
                if v:
                    total[k] += coeff * v
    for coeff, row in zip(cert.nu, _constraint_rows(constraints)):
        if coeff:
            for k, v in enumerate(row.row.coeffs):
                if v:
                    total[k] -= coeff * v
    return total == list(target.coeffs)


def _witness_is_valid(
    target: CanonicalVector,
    elemental: "ElementalMatrix",
    constraints: "ConstraintMatrix | None",
    witness: CanonicalVector,
) -> bool:
    if target.dot(witness) >= 0:
        return False
    if any(term.row.dot(witness) < 0 for term in elemental.rows):
        return False
    return all(row.row.dot(witness) == 0 for row in _constraint_rows(constraints))


def solve(p: ConeProblem) -> SolveOutcome:
    """Decide the cone problem.

    The zero vector always satisfies the constraints, so the minimum of the
    objective over the cone is either exactly zero (proven, with a
    certificate) or unbounded below (not provable, with a witness ray).
    """
    result = nonneg_combination(p.objective, p.elemental, p.constraints)
    if isinstance(result, Certificate):
        return ProvenSTI(result)
    return NotProvable(result.witness)


def extract_dual(p: ConeProblem) -> Certificate:
    """Certificate for a problem already known to be provable."""
    result = nonneg_combination(p.objective, p.elemental, p.constraints)
    if isinstance(result, Certificate):
        return result
    raise CertificateUnavailableError(
        "the objective is unbounded below on the cone; no certificate exists")


def verify_certificate(p: ConeProblem, c: Certificate) -> bool:
    """Exact check of E^T lam - C^T nu = objective and lam >= 0. No tolerance."""
    qrows = _constraint_rows(p.constraints)
    if len(c.lam) != len(p.elemental.rows) or len(c.nu) != len(qrows):
        raise DimensionMismatchError(
            f"certificate sized {len(c.lam)}/{len(c.nu)} for a problem with "
            f"{len(p.elemental.rows)} elemental and {len(qrows)} constraint rows")
    return _combination_matches(p.objective, p.elemental, p.constraints, c)


def is_disproof_ray(p: ConeProblem, ray: CanonicalVector) -> bool:
    """Exact check that `ray` witnesses NotProvable for this problem."""
    if ray.n != p.objective.n:
        raise DimensionMismatchError("ray built for a different universe")
    return _witness_is_valid(p.objective, p.elemental, p.constraints, ray)
