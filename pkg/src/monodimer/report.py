"""
Coefficient tables and verdicts in text, JSON and LaTeX.

JSON schema ``monodimer.report/1``::

    verdict := {schema, claim, order, status, label, notes: [str],
                witness?: {k, label, residualTerms: terms},
                residuals?: [{k, residualTerms: terms}],
                checks?: [verdict], tables?: [table]}
    table   := {schema, map, symbol, order, constraints: [str],
                entries: [{index, text, terms}]}
    terms   := [{coeff: "n" | "n/m", exps: {d: int, b: {i: e}, J: {i: e}}}]

Terms are listed in canonical order, so emitting then parsing is the
identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .algebra import Monomial, MultiPoly, to_text
from .verification import Verdict, Witness

SCHEMA = "monodimer.report/1"

LATEX_SYMBOLS = {"J": r"\bar{J}", "b": "b", "a": "a", "a'": "a'"}


@dataclass(frozen=True)
class CoeffTable:
    map: str                       # f, f^-1, g, h
    symbol: str                    # J, b, a, a'
    order: int
    entries: tuple[MultiPoly, ...]  # components 1..order
    constraints: tuple[str, ...] = ()

    def __getitem__(self, i: int) -> MultiPoly:
        return self.entries[i - 1]


# JSON

def poly_to_json(p: MultiPoly) -> list[dict]:
    out = []
    for mono, c in p.monomials():
        out.append({
            "coeff": str(c),
            "exps": {"d": mono.d_exp,
                     "b": {str(i): e for i, e in mono.b_exps},
                     "J": {str(i): e for i, e in mono.j_exps}},
        })
    return out


def poly_from_json(terms: list[dict]) -> MultiPoly:
    pairs = []
    for t in terms:
        exps = t["exps"]
        mono = Monomial(
            int(exps.get("d", 0)),
            tuple(sorted((int(i), int(e)) for i, e in exps.get("b", {}).items())),
            tuple(sorted((int(i), int(e)) for i, e in exps.get("J", {}).items())),
        )
        pairs.append((mono, Fraction(t["coeff"])))
    return MultiPoly.from_terms(pairs)


def table_to_json(t: CoeffTable) -> dict:
    return {
        "schema": SCHEMA,
        "map": t.map,
        "symbol": t.symbol,
        "order": t.order,
        "constraints": list(t.constraints),
        "entries": [{"index": i, "text": to_text(p), "terms": poly_to_json(p)}
                    for i, p in enumerate(t.entries, 1)],
    }


def table_from_json(obj: dict) -> CoeffTable:
    entries = sorted(obj["entries"], key=lambda e: e["index"])
    return CoeffTable(obj["map"], obj["symbol"], obj["order"],
                      tuple(poly_from_json(e["terms"]) for e in entries),
                      tuple(obj.get("constraints", ())))


def verdict_to_json(v: Verdict, tables=()) -> dict:
    out = {"schema": SCHEMA, "claim": v.claim, "order": v.order, "status": v.status,
           "label": v.label, "notes": list(v.notes)}
    if v.witness is not None:
        out["witness"] = {"k": v.witness.k, "label": v.witness.label,
                          "residualTerms": poly_to_json(v.witness.residual)}
    if v.residuals:
        out["residuals"] = [{"k": k, "residualTerms": poly_to_json(r)} for k, r in v.residuals]
    if v.checks:
        out["checks"] = [verdict_to_json(c) for c in v.checks]
    if tables:
        out["tables"] = [table_to_json(t) for t in tables]
    return out


def verdict_from_json(obj: dict) -> Verdict:
    w = obj.get("witness")
    witness = None
    if w is not None:
        witness = Witness(w["k"], poly_from_json(w["residualTerms"]), w.get("label", ""))
    return Verdict(
        claim=obj["claim"], order=obj["order"], status=obj["status"], witness=witness,
        label=obj.get("label", ""),
        residuals=tuple((r["k"], poly_from_json(r["residualTerms"]))
                        for r in obj.get("residuals", ())),
        checks=tuple(verdict_from_json(c) for c in obj.get("checks", ())),
        notes=tuple(obj.get("notes", ())),
    )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


# text

def table_to_text(t: CoeffTable) -> str:
    lines = [f"# map {t.map}, order {t.order}" +
             (f"; {', '.join(t.constraints)}" if t.constraints else "")]
    for i, p in enumerate(t.entries, 1):
        lines.append(f"{t.symbol}{i} = {to_text(p)}")
    return "\n".join(lines)


def verdict_to_text(v: Verdict, indent: str = "") -> str:
    head = f"{indent}{v.claim} order={v.order} status={v.status}"
    if v.label:
        head += f"  [{v.label}]"
    lines = [head]
    for k, r in v.residuals:
        lines.append(f"{indent}  k={k} residual {to_text(r)}")
    if v.witness is not None:
        lines.append(f"{indent}  witness k={v.witness.k} ({v.witness.label}): "
                     f"{to_text(v.witness.residual)}")
    for c in v.checks:
        lines.append(verdict_to_text(c, indent + "  "))
    for n in v.notes:
        lines.append(f"{indent}{n}")
    return "\n".join(lines)


# LaTeX

def _latex_factor(name: str, e: int) -> str:
    if name == "d":
        base = "d"
    else:
        base = ("b" if name[0] == "b" else r"\bar{J}") + "_{" + name[1:] + "}"
    return base if e == 1 else f"{base}^{{{e}}}"


def _latex_frac(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return rf"\frac{{{c.numerator}}}{{{c.denominator}}}"


def _latex_sum(items: list[tuple[Monomial, Fraction]]) -> str:
    out = ""
    for n, (mono, c) in enumerate(items):
        factors = " ".join(_latex_factor(name, e) for name, e in mono.factors())
        mag = abs(c)
        body = factors if factors and mag == 1 else (_latex_frac(mag) + (" " + factors if factors else ""))
        if n == 0:
            out += ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out or "0"


def poly_to_latex(p: MultiPoly) -> str:
    """Pull out a rational content and the lowest power of d, as in
    ``\\frac{1}{4}\\frac{1}{d^{2}}(2 d^{2} + b_{2})``."""
    items = p.monomials()
    if not items:
        return "0"
    dmin = min(m.d_exp for m, _ in items)
    nums = [c.numerator for _, c in items]
    dens = [c.denominator for _, c in items]
    content = Fraction(gcd(*nums), lcm(*dens))
    if all(m.d_exp == 0 for m, _ in items):
        return _latex_sum(items)
    inner = [(Monomial(m.d_exp - dmin, m.b_exps, m.j_exps), c / content) for m, c in items]
    prefix = "" if content == 1 else _latex_frac(content)
    if dmin < 0:
        prefix += rf"\frac{{1}}{{{_latex_factor('d', -dmin)}}}"
    elif dmin > 0:
        prefix += (" " if prefix else "") + _latex_factor("d", dmin)
    if len(inner) == 1:
        body = _latex_sum(inner)
        return prefix if body == "1" else f"{prefix} {body}"
    return rf"{prefix}\left({_latex_sum(inner)}\right)"


def table_to_latex(t: CoeffTable) -> str:
    sym = LATEX_SYMBOLS.get(t.symbol, t.symbol)
    lines = []
    for i, p in enumerate(t.entries, 1):
        lines.append("\\begin{equation}\n"
                     f"{sym}_{{{i}}} = {poly_to_latex(p)}\n"
                     "\\end{equation}")
    return "\n\n".join(lines)


def verdict_to_latex(v: Verdict) -> str:
    lines = [f"% {v.claim}, order {v.order}: {v.status}"]
    for k, r in v.residuals:
        lines.append(f"% k={k}: {poly_to_latex(r)}")
    if v.witness is not None:
        lines.append("\\begin{equation}\n"
                     f"R_{{{v.witness.k}}} = {poly_to_latex(v.witness.residual)}\n"
                     "\\end{equation}")
    lines.extend(f"% {n}" for n in v.notes)
    return "\n".join(lines)
