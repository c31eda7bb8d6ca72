"""Serialization of check results and transition tables.

JSON layout::

    {"version": ..., "config": {...}, "results": [...], "summary": {...}}

Rational functions become ``{"num": [[exp, coef], ...], "den": [[exp, coef], ...]}``,
Lusztig data ``{"word": [...], "c": [...]}`` and words integer arrays.
Timings are kept out of this document so that equal configurations give
byte-identical output; :func:`timing_document` collects them separately.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence

from .checks import CheckResult
from .exact import LaurentPoly, RatFun, TruncSeries
from .pbw import LusztigDatum
from .words import WordElement

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"

__all__ = [
    "SCHEMA_VERSION",
    "to_jsonable",
    "ratfun_json",
    "ratfun_from_json",
    "build_report",
    "timing_document",
    "dump_json",
    "results_csv",
    "results_latex",
    "latex_ratfun",
    "tables_document",
    "tables_json",
    "tables_csv",
    "tables_latex",
]


def ratfun_json(x) -> dict:
    x = x if isinstance(x, RatFun) else RatFun.from_laurent(x) if isinstance(x, LaurentPoly) else RatFun(x)
    return {"num": [list(p) for p in x.numerator.items()], "den": [list(p) for p in x.denominator.items()]}


def ratfun_from_json(d: dict) -> RatFun:
    num = LaurentPoly({e: c for e, c in d["num"]})
    den = LaurentPoly({e: c for e, c in d["den"]})
    return RatFun(num, den)


def to_jsonable(x):
    if isinstance(x, (RatFun, LaurentPoly)):
        return ratfun_json(x)
    if isinstance(x, LusztigDatum):
        return {"word": list(x.word), "c": list(x.c)}
    if isinstance(x, WordElement):
        return {"weight": list(x.weight), "terms": [[list(w), ratfun_json(x[w])] for w in sorted(x.support())]}
    if isinstance(x, TruncSeries):
        return {"lowest": x.lowest, "coeffs": list(x.coeffs), "cutoff": x.cutoff}
    if isinstance(x, dict):
        if all(isinstance(k, str) for k in x):
            return {k: to_jsonable(v) for k, v in x.items()}
        return [[to_jsonable(k), to_jsonable(v)] for k, v in sorted(x.items(), key=lambda kv: repr(kv[0]))]
    if isinstance(x, (list, tuple)):
        return [to_jsonable(v) for v in x]
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    return str(x)


def _summary(results: Sequence[CheckResult]) -> dict:
    out = {"total": len(results), "pass": 0, "fail": 0, "reported": 0}
    for r in results:
        out[r.status] = out.get(r.status, 0) + 1
    per: dict = {}
    for r in results:
        d = per.setdefault(r.check, {"pass": 0, "fail": 0, "reported": 0})
        d[r.status] += 1
    out["by_check"] = per
    return out


def build_report(config: dict, results: Sequence[CheckResult]) -> dict:
    return {
        "version": {"schema": SCHEMA_VERSION, "tool": TOOL_VERSION},
        "config": to_jsonable(config),
        "results": [
            {
                "check": r.check,
                "params": to_jsonable(r.params),
                "status": r.status,
                "witness": to_jsonable(r.witness),
                "details": to_jsonable(r.details),
            }
            for r in results
        ],
        "summary": _summary(results),
    }


def timing_document(results: Sequence[CheckResult], started: str, total: float) -> dict:
    return {
        "started": started,
        "total_seconds": total,
        "records": [{"check": r.check, "params": to_jsonable(r.params), "seconds": r.timing} for r in results],
    }


def dump_json(doc) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def results_csv(results: Sequence[CheckResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check", "params", "status", "witness"])
    for r in results:
        w.writerow([
            r.check,
            json.dumps(to_jsonable(r.params), sort_keys=True),
            r.status,
            "" if r.witness is None else json.dumps(to_jsonable(r.witness), sort_keys=True),
        ])
    return buf.getvalue()


def _tex_escape(s: str) -> str:
    return s.replace("_", r"\_")


def results_latex(results: Sequence[CheckResult]) -> str:
    lines = [r"\begin{tabular}{lll}", r"\hline", r"check & parameters & status \\", r"\hline"]
    for r in results:
        params = ", ".join(f"{k}={v}" for k, v in r.params.items())
        lines.append(f"{_tex_escape(r.check)} & {_tex_escape(params)} & {r.status} \\\\")
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


# -- LaTeX for rational functions -----------------------------------------------

def _latex_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = ""
    for k, (e, c) in enumerate(sorted(p.items())):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            mono = str(a)
        else:
            power = "t" if e == 1 else f"t^{{{e}}}"
            mono = power if a == 1 else f"{a}{power}"
        if k == 0:
            out = ("-" if c < 0 else "") + mono
        else:
            out += f" {sign} {mono}"
    return out


def _one_minus_t2_power(den: LaurentPoly) -> tuple[int, int] | None:
    """``(sign, k)`` with ``den == sign * (1 - t^2)^k``, if any."""
    base = LaurentPoly({0: 1, 2: -1})
    acc = LaurentPoly(1)
    for k in range(0, 40):
        if acc == den:
            return 1, k
        if -acc == den:
            return -1, k
        if acc.degree > den.degree:
            return None
        acc = acc * base
    return None


def latex_ratfun(x) -> str:
    x = x if isinstance(x, RatFun) else RatFun(x) if isinstance(x, int) else RatFun.from_laurent(x)
    num, den = x.numerator, x.denominator
    if den == LaurentPoly(1):
        return _latex_laurent(num)
    form = _one_minus_t2_power(den)
    if form is not None:
        sign, k = form
        n = num if sign > 0 else -num
        body = _latex_laurent(n)
        if len(n.items()) > 1:
            body = f"({body})"
        elif body == "1":
            body = ""
        return f"{body}(1 - t^{{2}})^{{-{k}}}"
    return rf"\frac{{{_latex_laurent(num)}}}{{{_latex_laurent(den)}}}"


# -- transition tables ------------------------------------------------------

def tables_document(c, word, beta) -> dict:
    from .bases import canonical_basis, transition_matrices

    tr = transition_matrices(c, word, beta)
    cb = canonical_basis(c, word, beta)
    return {
        "type": c.type,
        "rank": c.rank,
        "word": list(word),
        "beta": list(beta),
        "data": tr.data,
        "matrices": {"P:Et": tr.P_Et, "Et:E": tr.Et_E, "E:L": tr.E_L, "P:L": tr.P_L},
        "canonical_basis": [g.chars for g in cb.members],
        "simple_characters": tr.simple,
    }


def tables_json(doc: dict) -> str:
    return dump_json(to_jsonable(doc))


def tables_csv(doc: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    labels = [repr(d) for d in doc["data"]]
    for name, M in doc["matrices"].items():
        w.writerow([name] + labels)
        for lab, row in zip(labels, M):
            w.writerow([lab] + [str(x) for x in row])
        w.writerow([])
    return buf.getvalue()


def tables_latex(doc: dict) -> str:
    labels = [repr(d) for d in doc["data"]]
    n = len(labels)
    out = [f"% {doc['type']}{doc['rank']}, word {tuple(doc['word'])}, beta {tuple(doc['beta'])}"]
    for name, M in doc["matrices"].items():
        out.append(f"% [{name}]")
        out.append(r"\begin{tabular}{l" + "c" * n + "}")
        out.append(" & ".join([""] + [f"${lab}$" for lab in labels]) + r" \\")
        out.append(r"\hline")
        for lab, row in zip(labels, M):
            out.append(" & ".join([f"${lab}$"] + [f"${latex_ratfun(x)}$" for x in row]) + r" \\")
        out.append(r"\end{tabular}")
        out.append("")
    out.append("% simple characters")
    for lab, L in zip(labels, doc["simple_characters"]):
        terms = " + ".join(f"({latex_ratfun(L[w])})[{''.join(map(str, w))}]" for w in sorted(L.support()))
        out.append(f"% L_{{{lab}}} = {terms}")
    return "\n".join(out) + "\n"
