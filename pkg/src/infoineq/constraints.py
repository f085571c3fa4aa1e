"""Compile constraint declarations into equality rows with provenance.

Each declared PMF structure becomes one or more canonical rows asserted to
vanish on every admissible entropy vector:

  * Markov chain B1 -> ... -> Bm: the m-2 cut conditions
    I(B1..Bk ; B(k+2)..Bm | B(k+1)) = 0.
  * mutual independence of groups: H(union) - sum of group entropies = 0.
  * functional dependency: H(target | source) = 0.
  * PMF factorization: for each factor beyond the first,
    I(head ; earlier-heads-minus-given | given) = 0, skipping factors whose
    given set already covers everything introduced.
  * explicit: the canonical vector of the given expression.

Every row keeps a label that reparses to exactly the stored vector, plus the
declaration that produced it; proofs quote both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .canonical import CanonicalVector, canonicalize
from .errors import (
    DimensionMismatchError,
    EmptySetError,
    OverlappingBlocksError,
    OverlappingGroupsError,
    InvalidFactorizationError,
    TooFewBlocksError,
)
from .parser import (
    ConstraintDecl,
    Entropy,
    Explicit,
    Factorization,
    FuncDep,
    InfoExpr,
    MarkovChain,
    MutualIndep,
    MutualInfo,
    VarUniverse,
    render_constraint,
    render_expr,
    render_measure,
)


@dataclass(frozen=True)
class ConstraintRow:
    """One equality row: `row` vanishes on every admissible entropy vector."""

    row: CanonicalVector
    label: str  # expression text that canonicalizes to `row`
    origin: ConstraintDecl
    origin_text: str  # rendered declaration, for proof provenance


@dataclass(frozen=True)
class ConstraintMatrix:
    """Deduplicated equality rows over one universe."""

    n: int
    rows: tuple[ConstraintRow, ...]

    def __len__(self) -> int:
        return len(self.rows)


def _mi_row(alpha: int, beta: int, gamma: int, u: VarUniverse,
            origin: ConstraintDecl, origin_text: str) -> ConstraintRow:
    measure = MutualInfo(alpha, beta, gamma)
    expr = InfoExpr(((Fraction(1), measure),))
    return ConstraintRow(canonicalize(expr, u.n), render_measure(measure, u), origin, origin_text)


def compile_markov(blocks: Sequence[int], u: VarUniverse) -> list[ConstraintRow]:
    """Cut conditions of a Markov chain: one row per interior block."""
    if len(blocks) < 3:
        raise TooFewBlocksError(f"a Markov chain needs at least 3 blocks, got {len(blocks)}")
    seen = 0
    for block in blocks:
        if block == 0:
            raise EmptySetError("Markov blocks must be nonempty")
        if block & seen:
            raise OverlappingBlocksError("Markov blocks must be pairwise disjoint")
        seen |= block
    decl = MarkovChain(tuple(blocks))
    text = render_constraint(decl, u)
    rows = []
    for k in range(1, len(blocks) - 1):
        past = 0
        for b in blocks[:k]:
            past |= b
        future = 0
        for b in blocks[k + 1:]:
            future |= b
        rows.append(_mi_row(past, future, blocks[k], u, decl, text))
    return rows


def compile_indep(groups: Sequence[int], u: VarUniverse) -> list[ConstraintRow]:
    """Mutual independence of groups: H(union) = sum of group entropies."""
    if len(groups) < 2:
        raise ValueError("independence needs at least 2 groups")
    union = 0
    for g in groups:
        if g == 0:
            raise EmptySetError("independence groups must be nonempty")
        if g & union:
            raise OverlappingGroupsError("independence groups must be pairwise disjoint")
        union |= g
    decl = MutualIndep(tuple(groups))
    text = render_constraint(decl, u)
    terms = [(Fraction(1), Entropy(union))]
    terms += [(Fraction(-1), Entropy(g)) for g in groups]
    expr = InfoExpr(tuple(terms))
    return [ConstraintRow(canonicalize(expr, u.n), render_expr(expr, u), decl, text)]


def compile_funcdep(target: int, source: int, u: VarUniverse) -> ConstraintRow:
    """Functional dependency: H(target | source) = 0."""
    if target == 0 or source == 0:
        raise EmptySetError("functional dependency needs nonempty sets")
    decl = FuncDep(target, source)
    measure = Entropy(target, source)
    expr = InfoExpr(((Fraction(1), measure),))
    return ConstraintRow(canonicalize(expr, u.n), render_measure(measure, u),
                         decl, render_constraint(decl, u))


def compile_factorization(factors: Sequence[tuple[int, int]], u: VarUniverse) -> list[ConstraintRow]:
    """Conditional independencies read off an ordered PMF factorization."""
    decl = Factorization(tuple(factors))
    text = render_constraint(decl, u)
    introduced = 0
    rows = []
    for k, (head, given) in enumerate(factors):
        if head == 0:
            raise InvalidFactorizationError("factor heads must be nonempty")
        if head & introduced:
            raise InvalidFactorizationError("a variable appears in more than one factor head")
        if given & ~introduced:
            raise InvalidFactorizationError(
                "a factor conditions on a variable no earlier factor introduces")
        if k >= 1:
            rest = introduced & ~given
            if rest:
                rows.append(_mi_row(head, rest, given, u, decl, text))
        introduced |= head
    return rows


def compile_explicit(e: InfoExpr, u: VarUniverse) -> ConstraintRow:
    """A user-supplied expression asserted to equal zero."""
    decl = Explicit(e)
    return ConstraintRow(canonicalize(e, u.n), render_expr(e, u), decl, render_constraint(decl, u))


def _compile_decl(decl: ConstraintDecl, u: VarUniverse) -> list[ConstraintRow]:
    if isinstance(decl, MarkovChain):
        return compile_markov(decl.blocks, u)
    if isinstance(decl, MutualIndep):
        return compile_indep(decl.groups, u)
    if isinstance(decl, FuncDep):
        return [compile_funcdep(decl.target, decl.source, u)]
    if isinstance(decl, Factorization):
        return compile_factorization(decl.factors, u)
    if isinstance(decl, Explicit):
        return [compile_explicit(decl.expr, u)]
    raise TypeError(f"unknown constraint declaration {decl!r}")


def dedup_rows(rows: Iterable[ConstraintRow]) -> tuple[ConstraintRow, ...]:
    """Drop identically-zero rows and repeats (by exact canonical equality)."""
    seen: set[tuple[Fraction, ...]] = set()
    kept = []
    for row in rows:
        if row.row.is_zero():
            continue
        key = row.row.coeffs
        if key in seen:
            continue
        seen.add(key)
        kept.append(row)
    return tuple(kept)


def build_constraint_matrix(decls: Iterable[ConstraintDecl], u: VarUniverse) -> ConstraintMatrix:
    """Compile all declarations, drop zero rows, deduplicate, keep provenance."""
    rows: list[ConstraintRow] = []
    for decl in decls:
        rows.extend(_compile_decl(decl, u))
    for row in rows:
        if row.row.n != u.n:
            raise DimensionMismatchError("constraint row built for a different universe")
    return ConstraintMatrix(u.n, dedup_rows(rows))
