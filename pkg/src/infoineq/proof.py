"""Turn a verified certificate into a rendered analytic proof.

The certificate multipliers rewrite the canonical difference of the two sides
as a nonnegative combination of elemental measures plus multiples of the
declared constraint rows (the "elemental form").  Each elemental term is
nonnegative by definition and each constraint term vanishes by assumption,
so the identity is the whole proof; verifying it is an exact coordinate
comparison of canonical vectors.

Renderers are deterministic: text, LaTeX (an align* environment plus an
itemized justification list; compile with article + amsmath, T1 fontenc),
and a versioned JSON document whose numbers allow independent re-checking.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .canonical import CanonicalVector, canonicalize
from .errors import UnverifiedCertificateError
from .lp import Certificate, ConeProblem, verify_certificate
from .parser import (
    InfoExpr,
    RelOp,
    Relation,
    VarUniverse,
    parse_expr,
    render_expr,
    render_relation,
)


def difference_expr(relation: Relation) -> InfoExpr:
    """The side difference whose nonnegativity is equivalent to the relation.

    LEQ gives RHS - LHS, GEQ gives LHS - RHS.  Equalities are proven one
    direction at a time and are rejected here.
    """
    if relation.op is RelOp.LEQ:
        return relation.rhs - relation.lhs
    if relation.op is RelOp.GEQ:
        return relation.lhs - relation.rhs
    raise ValueError("equalities are proven per direction; split before building a proof")


@dataclass(frozen=True)
class ElementalForm:
    """The proved identity: difference = sum of elemental terms - constraint terms.

    `eim_terms` hold strictly positive multipliers; `constraint_terms` hold
    the nonzero equality multipliers as extracted (each enters the rendered
    identity with its sign flipped).  `constraint_groups` lists every declared
    constraint with all of its compiled row labels, in declaration order, for
    the provenance sections.
    """

    universe: VarUniverse
    relation: Relation
    n: int
    eim_terms: tuple[tuple[Fraction, str], ...]
    constraint_terms: tuple[tuple[Fraction, str, str], ...]
    constraint_groups: tuple[tuple[str, tuple[str, ...]], ...]


def build_elemental_form(
    p: ConeProblem, c: Certificate, relation: Relation, universe: VarUniverse,
) -> ElementalForm:
    """Attach labels to the nonzero multipliers and re-verify the identity."""
    if not verify_certificate(p, c):
        raise UnverifiedCertificateError("certificate does not verify; refusing to build a proof")
    names = universe.names
    eim_terms = tuple(
        (coeff, term.label(names))
        for coeff, term in zip(c.lam, p.elemental.rows) if coeff
    )
    qrows = p.constraints.rows if p.constraints is not None else ()
    constraint_terms = tuple(
        (coeff, row.label, row.origin_text)
        for coeff, row in zip(c.nu, qrows) if coeff
    )
    groups: list[tuple[str, list[str]]] = []
    for row in qrows:
        if groups and groups[-1][0] == row.origin_text:
            groups[-1][1].append(row.label)
        else:
            groups.append((row.origin_text, [row.label]))
    form = ElementalForm(
        universe=universe,
        relation=relation,
        n=universe.n,
        eim_terms=eim_terms,
        constraint_terms=constraint_terms,
        constraint_groups=tuple((decl, tuple(labels)) for decl, labels in groups),
    )
    _check_identity(form)
    return form


def _check_identity(form: ElementalForm) -> None:
    """Recompute both sides of the identity from the labels alone."""
    total = CanonicalVector.zero(form.n)
    for coeff, label in form.eim_terms:
        total = total + canonicalize(parse_expr(label, form.universe), form.n).scale(coeff)
    for coeff, label, _ in form.constraint_terms:
        total = total - canonicalize(parse_expr(label, form.universe), form.n).scale(coeff)
    expected = canonicalize(difference_expr(form.relation), form.n)
    if total != expected:
        raise UnverifiedCertificateError("elemental form identity failed to re-verify")


@dataclass(frozen=True)
class Justification:
    label: str
    origin: str | None  # None: nonnegative because elemental


@dataclass(frozen=True)
class ProofDocument:
    """Layout-neutral proof: every renderer formats exactly this data."""

    statement: str
    assumptions: tuple[str, ...]
    identity_lhs: str
    identity_terms: tuple[tuple[Fraction, str], ...]  # signed coefficient, label
    justifications: tuple[Justification, ...]
    conclusion_op: str  # "<=" or ">="


def compose_document(form: ElementalForm) -> ProofDocument:
    u = form.universe
    diff = difference_expr(form.relation)
    terms: list[tuple[Fraction, str]] = list(form.eim_terms)
    terms += [(-coeff, label) for coeff, label, _ in form.constraint_terms]
    justifications = [Justification(label, None) for _, label in form.eim_terms]
    justifications += [Justification(label, origin) for _, label, origin in form.constraint_terms]
    return ProofDocument(
        statement=render_relation(form.relation, u),
        assumptions=tuple(decl for decl, _ in form.constraint_groups),
        identity_lhs=render_expr(diff, u),
        identity_terms=tuple(terms),
        justifications=tuple(justifications),
        conclusion_op=form.relation.op.value,
    )


def _join_terms(terms: tuple[tuple[Fraction, str], ...]) -> str:
    if not terms:
        return "0"
    parts: list[str] = []
    for k, (coeff, label) in enumerate(terms):
        mag = abs(coeff)
        body = label if mag == 1 else f"{mag} {label}"
        if k == 0:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(parts)


def render_text(f: ElementalForm) -> str:
    """Plain-text proof; five lines when there are no constraints."""
    doc = compose_document(f)
    lines = [f"Prove: {doc.statement}"]
    if doc.assumptions:
        lines.append("Assume:")
        lines.extend(f"  {a}" for a in doc.assumptions)
    lines.append("Difference in elemental form:")
    lines.append(f"  {doc.identity_lhs} = {_join_terms(doc.identity_terms)}")
    for j in doc.justifications:
        if j.origin is None:
            lines.append(f"  {j.label} ≥ 0, elemental")
        else:
            lines.append(f"  {j.label} = 0, from {j.origin}")
    arrow = "≤" if doc.conclusion_op == "<=" else "≥"
    lines.append(f"Canonical forms verified; hence LHS {arrow} RHS. ∎")
    return "\n".join(lines) + "\n"


_NAME_DIGITS_RE = re.compile(r"\b([A-Za-z]+)(\d+)\b")


def _latexify(s: str) -> str:
    """Math-mode friendly copy of a label: X1 -> X_{1}, | -> \\mid."""
    out = _NAME_DIGITS_RE.sub(r"\1_{\2}", s)
    out = out.replace("_", r"\_").replace(r"\_{", "_{")  # keep generated subscripts
    return out.replace("|", r" \mid ")


def render_latex(f: ElementalForm) -> str:
    doc = compose_document(f)
    lines = [f"% Prove: {doc.statement}"]
    for a in doc.assumptions:
        lines.append(f"% Assume: {a}")
    lines.append(r"\begin{align*}")
    lines.append(f"{_latexify(doc.identity_lhs)}")
    lines.append(f"  &= {_latexify(_join_terms(doc.identity_terms))} \\\\")
    lines.append(r"  &\geq 0.")
    lines.append(r"\end{align*}")
    lines.append(r"\begin{itemize}")
    for j in doc.justifications:
        if j.origin is None:
            lines.append(rf"\item ${_latexify(j.label)} \geq 0$ (elemental)")
        else:
            lines.append(rf"\item ${_latexify(j.label)} = 0$ (\texttt{{{j.origin}}})")
    lines.append(r"\end{itemize}")
    op_word = "\\leq" if doc.conclusion_op == "<=" else "\\geq"
    lines.append(rf"% hence LHS ${op_word}$ RHS")
    return "\n".join(lines) + "\n"


def _fraction_entry(label: str, value: Fraction) -> dict:
    return {"row_label": label, "num": str(value.numerator), "den": str(value.denominator)}


def render_json(f: ElementalForm, c: Certificate) -> str:
    """Versioned machine-readable proof; zero multipliers are omitted."""
    nonzero_lam = sum(1 for v in c.lam if v)
    nonzero_nu = sum(1 for v in c.nu if v)
    if nonzero_lam != len(f.eim_terms) or nonzero_nu != len(f.constraint_terms):
        raise ValueError("certificate does not match the elemental form it came from")
    doc = {
        "schema_version": 1,
        "statement": {
            "lhs": render_expr(f.relation.lhs, f.universe),
            "rhs": render_expr(f.relation.rhs, f.universe),
            "op": f.relation.op.value,
        },
        "universe": list(f.universe.names),
        "constraints": [
            {"decl": decl, "rows": list(labels)} for decl, labels in f.constraint_groups
        ],
        "certificate": {
            "lambda": [_fraction_entry(label, coeff) for coeff, label in f.eim_terms],
            "nu": [_fraction_entry(label, coeff) for coeff, label, _ in f.constraint_terms],
        },
        "verified": True,
    }
    return json.dumps(doc, indent=2) + "\n"
