"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the verdict lines are
repeated in the terminal summary) or directly as a script.
"""

from __future__ import annotations

import pytest

from klrpbw.bases import canonical_basis, determinant_direct, transition_matrices
from klrpbw.checks import rank_one_series, run_checks, sl3_anchor, SL3_EXPONENT
from klrpbw.cli import _sample_words
from klrpbw.exact import LaurentPoly, RatFun, series_expand
from klrpbw.roots import adapted_orientation, cartan, enumerate_w0_words, weights_up_to
from klrpbw.words import WordElement, monomial_image

VERDICTS: list[str] = []

A2, A3, D4 = cartan("A", 2), cartan("A", 3), cartan("D", 4)
t = RatFun.from_laurent(LaurentPoly.monomial(1))
BASIS_CHECKS = ["positivity", "orthogonality", "unitriangularity", "equality", "determinant", "move_invariance"]


def verdict(n: int, ok: bool, text: str) -> None:
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {text}"
    VERDICTS.append(line)
    print(line)


def _failures(results, check):
    return [r for r in results if r.check == check and r.status == "fail"]


def _count(results, check):
    return sum(r.check == check for r in results)


# -- shared runs ----------------------------------------------------------------

_RUNS: dict = {}


def basis_run(name):
    if name not in _RUNS:
        if name == "A2":
            c, words, h = A2, enumerate_w0_words(A2), 6
        elif name == "A3":
            c, words, h = A3, enumerate_w0_words(A3), 6
        else:
            c, words, h = D4, _sample_words(D4, enumerate_w0_words(D4), 0), 5
        _RUNS[name] = (c, words, run_checks(c, BASIS_CHECKS, weights_up_to(c, h), words))
    return _RUNS[name]


# -- criteria ------------------------------------------------------------------

def test_c01_convention_pin():
    res = []
    for c in (A2, A3):
        res += run_checks(c, ["klr_oracle"], weights_up_to(c, 4, ht_min=1), [enumerate_w0_words(c)[0]])
    form = [r for r in res if r.params.get("item") == "form = gdim_block"]
    enum = [r for r in res if r.params.get("item") == "gdim_enumerate"]
    pairs = sum(r.params["pairs"] for r in form)
    ok = bool(form) and bool(enum) and all(r.status == "pass" for r in form + enum)
    verdict(1, ok, f"form = gdim_block on {pairs} word pairs (A2, A3, ht<=4); enumeration to degree 10 on {len(enum)} weights")
    assert ok


def _basis_criterion(n, check, label):
    lines, ok = [], True
    for name in ("A2", "A3", "D4"):
        c, words, res = basis_run(name)
        bad = _failures(res, check)
        ok &= not bad and _count(res, check) > 0
        lines.append(f"{name}: {_count(res, check)} cases, {len(bad)} fail")
    verdict(n, ok, f"{label}; " + "; ".join(lines))
    return ok


def test_c02_positivity():
    c, words, _ = basis_run("D4")
    adapted = sum(adapted_orientation(D4, w) is not None for w in words)
    assert len(words) >= 20 and 0 < adapted < len(words)
    assert len(basis_run("A3")[1]) == 16 and len(basis_run("A2")[1]) == 2
    assert _basis_criterion(2, "positivity", "[P:Et] in N[t]")


def test_c03_equality():
    assert _basis_criterion(3, "equality", "[P:Et]_{b,b'} = [E:L]_{b',b}")


def test_c04_orthogonality():
    assert _basis_criterion(4, "orthogonality", "(lower PBW, upper PBW) = delta")


def test_c05_unitriangularity():
    assert _basis_criterion(5, "unitriangularity", "[E:L] unitriangular, [Et:L] vanishes off the order")


def test_c06_worked_a2_values():
    w, beta = (1, 2, 1), (1, 1)
    inv2 = RatFun(1, LaurentPoly({0: 1, 2: -1}) ** 2)
    inv3 = RatFun(1, LaurentPoly({0: 1, 2: -1}) ** 3)
    cb = canonical_basis(A2, w, beta)
    tr = transition_matrices(A2, w, beta)
    checks = {
        "canonical basis {E1E2, E2E1}": [g.chars for g in cb.members] == [monomial_image(A2, (1, 2)), monomial_image(A2, (2, 1))],
        "[P:Et] = [[1,0],[t,1]]": tr.P_Et == [[RatFun(1), RatFun()], [t, RatFun(1)]],
        "[P:L] = (1-t^2)^-2 [[1,t],[t,1]]": tr.P_L == [[inv2, t * inv2], [t * inv2, inv2]],
        "gch L = {[12], [21]}": tr.simple == [WordElement({(1, 2): 1}, beta), WordElement({(2, 1): 1}, beta)],
        "D = (1-t^2)^-3": all(determinant_direct(A2, x, beta) == inv3 for x in enumerate_w0_words(A2)),
    }
    ok = all(checks.values())
    verdict(6, ok, "; ".join(f"{k}: {'ok' if v else 'WRONG'}" for k, v in checks.items()))
    assert ok


def test_c07_determinant():
    lines, ok = [], True
    reported = []
    for name in ("A2", "A3"):
        c, words, res = basis_run(name)
        det = [r for r in res if r.check == "determinant" and r.params.get("item") is None
               and sum(r.params["beta"]) <= 5]
        bad = [r for r in det if r.status == "fail"]
        ok &= bool(det) and not bad
        ep = [r for r in res if r.params.get("item") == "ep_t product" and sum(r.params["beta"]) <= 5]
        differs = [r for r in ep if r.details["differs"]]
        ok &= bool(ep) and all(r.status == "reported" for r in ep)
        reported.append(f"{name}: ep_t product differs at {len(differs)}/{len(ep)} weights")
        lines.append(f"{name}: {len(det)} weights x {len(words)} words, {len(bad)} fail")
    # the A2 witness of the discrepancy must be among the reported ones
    a2 = [r for r in basis_run("A2")[2] if r.params.get("item") == "ep_t product" and r.params["beta"] == [1, 1]]
    ok &= bool(a2) and a2[0].details["differs"]
    verdict(7, ok, "det = prod [Et:E] = Kostant product, word-independent; " + "; ".join(lines)
            + " | REPORTED: " + "; ".join(reported))
    assert ok


def test_c08_move_coherence():
    lines, ok = [], True
    for name in ("A2", "A3", "D4"):
        c, words, res = basis_run(name)
        mv = [r for r in res if r.check == "move_invariance"]
        bad = [r for r in mv if r.status == "fail"]
        ok &= bool(mv) and not bad
        lines.append(f"{name}: {len(words)} words, {len(mv)} records, {len(bad)} fail")
    verdict(8, ok, "canonical sets equal across words via transported data, 3-moves involutive; " + "; ".join(lines))
    assert ok


def test_c09_rank_one_series():
    res = [rank_one_series(c, i, m, 20) for c in (A2, A3, D4) for i in c.vertices for m in range(1, 5)]
    bad = [r for r in res if r.status != "pass"]
    ok = not bad
    verdict(9, ok, f"[Et_mi : E_mi] = prod_k (1-t^2k)^-1 to degree 20: {len(res) - len(bad)}/{len(res)} (m<=4, A2/A3/D4)")
    assert ok


def test_c10_quiver():
    lines, ok = [], True
    for c, words, h in ((A2, enumerate_w0_words(A2), 5), (A3, enumerate_w0_words(A3), 5),
                        (D4, _sample_words(D4, enumerate_w0_words(D4), 0), 5)):
        res = run_checks(c, ["quiver_crosscheck"], weights_up_to(c, h), words)
        gab = next(r for r in res if r.params.get("item") == "Gabriel count")
        bad = [r for r in res if r.status == "fail"]
        eps = sum(r.params.get("item") == "epsilon" for r in res)
        sai = sum(r.params.get("item") == "Saito" for r in res)
        ok &= not bad and eps > 0 and sai > 0
        lines.append(f"{c.name}: {gab.details['indecomposables']} indecomposables, "
                     f"epsilon/Saito on {eps}/{sai} weights, {len(bad)} fail")
    verdict(10, ok, "; ".join(lines))
    assert ok


def test_c11_sl3_anchor():
    r = sl3_anchor(A2, SL3_EXPONENT, 20)
    q = r.details["normalized"]
    one_m = RatFun.from_laurent(LaurentPoly({0: 1, 2: -1}))
    flagged = r.details["displayed_exponent"] != SL3_EXPONENT and bool(r.details["note"])
    ok = r.status == "pass" and list(q) == [(2, 1)] and q[(2, 1)] == one_m and flagged
    # the displayed exponent does not satisfy the identity under these conventions
    other = sl3_anchor(A2, 2, 20)
    verdict(11, ok, f"gch(P2*P1) - t^{SL3_EXPONENT} gch(P1*P2) = gch(Q21) = [21]/(1-t^2), series >= 0; "
            f"FLAGGED: displayed exponent t^2 differs (anchor with e=2: {other.status})")
    assert ok


def test_zz_summary():
    print("\n".join(VERDICTS))


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
