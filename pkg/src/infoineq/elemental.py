"""Elemental information measures and the matrix of their canonical rows.

For n variables the elemental measures are the n conditional entropies
H(X_i | all others) and the C(n,2) * 2**(n-2) conditional mutual informations
I(X_i ; X_j | X_K) with i < j and K ranging over subsets of the remaining
variables.  Nonnegativity of exactly these measures defines the polymatroid
outer bound of the entropic region, so their canonical rows are the
inequality matrix every proof is built from.

Row order is fixed: the conditional entropies by ascending i, then the
conditional mutual informations by ascending (i, j, mask(K)).  Proof output
and golden tests rely on this order being stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .canonical import CanonicalVector, cond_entropy, measure_vector, mutual_info
from .errors import InfeasibleDecompositionError
from .parser import Measure


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(f"X{i}" for i in range(1, n + 1))


def _set_label(mask: int, names: Sequence[str]) -> str:
    return ",".join(name for i, name in enumerate(names) if mask >> i & 1)


@dataclass(frozen=True)
class ElementalTerm:
    """One elemental measure: H(X_i | rest) when j is None, else I(X_i;X_j|X_K)."""

    i: int
    j: int | None
    cond: int  # conditioning mask: the complement of {i} for entropy terms
    row: CanonicalVector

    def label(self, names: Sequence[str] | None = None) -> str:
        names = names or _default_names(self.row.n)
        first = names[self.i - 1]
        if self.j is None:
            return f"H({first}|{_set_label(self.cond, names)})" if self.cond else f"H({first})"
        second = names[self.j - 1]
        if self.cond:
            return f"I({first};{second}|{_set_label(self.cond, names)})"
        return f"I({first};{second})"


@dataclass(frozen=True)
class ElementalMatrix:
    """All elemental measures for one universe size, in canonical row order."""

    n: int
    rows: tuple[ElementalTerm, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def labels(self, names: Sequence[str] | None = None) -> tuple[str, ...]:
        return tuple(term.label(names) for term in self.rows)


def eim_count(n: int) -> int:
    """Number of elemental measures: n + C(n,2) * 2**(n-2); degenerates to 1 at n=1."""
    if n < 1:
        raise ValueError("universe size must be at least 1")
    if n == 1:
        return 1
    return n + comb(n, 2) * (1 << (n - 2))


def _ascending_submasks(mask: int):
    """All submasks of `mask`, in ascending numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def enumerate_eims(n: int) -> ElementalMatrix:
    """Build the elemental matrix for n variables, rows in the documented order."""
    if n < 1:
        raise ValueError("universe size must be at least 1")
    full = (1 << n) - 1
    rows: list[ElementalTerm] = []
    for i in range(1, n + 1):
        rest = full & ~(1 << (i - 1))
        rows.append(ElementalTerm(i, None, rest, cond_entropy(1 << (i - 1), rest, n)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            others = full & ~(1 << (i - 1)) & ~(1 << (j - 1))
            for k_mask in _ascending_submasks(others):
                row = mutual_info(1 << (i - 1), 1 << (j - 1), k_mask, n)
                rows.append(ElementalTerm(i, j, k_mask, row))
    return ElementalMatrix(n, tuple(rows))


def bim_to_eim_decomposition(
    b: Measure, n: int, matrix: ElementalMatrix | None = None,
) -> list[tuple[ElementalTerm, Fraction]]:
    """Write a basic measure as a nonnegative combination of elemental measures.

    Every entropy or conditional mutual information term admits such a
    combination; failure indicates an internal inconsistency, not bad input.
    Pass a prebuilt matrix to amortize construction over many calls.
    """
    from . import lp  # deferred: lp depends on this module's types

    if matrix is None:
        matrix = enumerate_eims(n)
    target = measure_vector(b, n)
    result = lp.nonneg_combination(target, matrix, None)
    if not isinstance(result, lp.Certificate):
        raise InfeasibleDecompositionError(
            "a basic measure failed to decompose over the elemental measures")
    return [(term, coeff) for term, coeff in zip(matrix.rows, result.lam) if coeff]
