"""End-to-end reproduction scenarios with expected-versus-actual tables.

Each target returns ``{"target", "rows", "pass"}`` where every row is a
``{"claim", "expected", "actual", "pass"}`` record.  The acceptance suite runs
these targets directly.
"""

from __future__ import annotations

import json
import os
import time
from math import comb
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from .constructions import add_dominating_vertex, builtin, delete_vertex, is_doubly_regular, paley
from .core import Tournament, gram_square, random_tournament, seidel
from .counting import (
    _diamond_mask,
    count_3cycles_degree,
    count_diamonds_oracle,
    cycles_from_gram,
    diamonds_from_gram,
    principal_det4_all,
)
from .extremal import (
    bound,
    certify_extremal,
    conjecture_probe,
    lemma_conference_plus_apex_check,
    lemma_deleted_max_check,
    verify_certificate,
)
from .search import local_search, search_max
from .spectral import (
    char_poly,
    deleted_drt_form,
    ew_form,
    is_skew_conference,
    is_skew_ew,
    match_spectral_form,
    poly_mul,
    poly_pow,
    x2_plus,
)
from .switching import are_switching_equivalent, fingerprint, switch

DEFAULT_SEED = 20240601


def _row(claim: str, expected, actual) -> dict:
    return {"claim": claim, "expected": expected, "actual": actual, "pass": expected == actual}


def _table(target: str, rows: list[dict], **extra) -> dict:
    return {"target": target, "rows": rows, "pass": all(r["pass"] for r in rows), **extra}


# corpus ---------------------------------------------------------------------


def corpus(seed: int = DEFAULT_SEED, exhaustive_max: int = 6,
           random_orders=range(7, 17), per_order: int = 500) -> Iterator[Tournament]:
    """Every tournament on at most ``exhaustive_max`` vertices, then seeded random ones."""
    for n in range(1, exhaustive_max + 1):
        for idx in range(1 << comb(n, 2)):
            yield Tournament.from_index(n, idx)
    rng = np.random.default_rng(seed)
    for n in random_orders:
        for _ in range(per_order):
            yield random_tournament(n, rng)


def oracle_corpus(seed: int = DEFAULT_SEED, per_order: int = 500) -> dict:
    """Oracle/closed-form agreement and the principal-minor identities on the corpus."""
    counts = {"tournaments": 0, "delta_mismatch": 0, "c3_mismatch": 0,
              "minor_sum_mismatch": 0, "det4_bad": 0, "beta_alpha_mismatch": 0}
    for T in corpus(seed, per_order=per_order):
        counts["tournaments"] += 1
        n = T.n
        S = seidel(T)
        M = gram_square(S)
        delta = count_diamonds_oracle(T)
        if delta != diamonds_from_gram(M):
            counts["delta_mismatch"] += 1
        if count_3cycles_degree(T) != cycles_from_gram(M):
            counts["c3_mismatch"] += 1
        pa = char_poly(S, terms=4)
        pb = char_poly(M, terms=2)
        a2 = pa[2] if n >= 2 else 0
        a4 = pa[4] if n >= 4 else 0
        b2 = pb[2] if n >= 2 else 0
        if a4 != 8 * delta + comb(n, 4):
            counts["minor_sum_mismatch"] += 1
        if b2 != 2 * a4 + a2 * a2 or a2 != comb(n, 2):
            counts["beta_alpha_mismatch"] += 1
        if n >= 4:
            dets = principal_det4_all(S)
            if not np.array_equal(dets, np.where(_diamond_mask(T), 9, 1)):
                counts["det4_bad"] += 1
    rows = [_row(f"{k} over corpus", 0, v) for k, v in counts.items() if k != "tournaments"]
    return _table("oracle-corpus", rows, seed=seed, tournaments=counts["tournaments"])


def switching_invariance(max_n: int = 5) -> dict:
    bad_delta = bad_poly = checked = 0
    for n in range(1, max_n + 1):
        for idx in range(1 << comb(n, 2)):
            T = Tournament.from_index(n, idx)
            d0 = count_diamonds_oracle(T)
            p0 = char_poly(seidel(T)).coeffs
            for mask in range(1 << n):
                U = switch(T, [v for v in range(n) if mask >> v & 1])
                checked += 1
                bad_delta += count_diamonds_oracle(U) != d0
                bad_poly += char_poly(seidel(U)).coeffs != p0
    rows = [_row("delta changes under switching", 0, bad_delta),
            _row("char poly changes under switching", 0, bad_poly)]
    return _table("switching", rows, switchings=checked)


# paper instances ---------------------------------------------------------------


def paley_table(qs=(3, 7, 11, 19)) -> dict:
    rows = []
    for q in qs:
        T = paley(q)
        star = add_dominating_vertex(T)
        n = q + 1
        formula = n * n * q * (q - 1) // 96
        rows.append(_row(f"T({q}) doubly regular", True, is_doubly_regular(T)))
        h = {int(x) for x in (T.adjacency @ T.adjacency.T)[np.triu_indices(q, 1)]}
        rows.append(_row(f"T({q}) pair out-degree", [(q - 3) // 4], sorted(h)))
        rows.append(_row(f"T*({q}) skew-conference", True, is_skew_conference(seidel(star))))
        rows.append(_row(f"T*({q}) diamonds (oracle)", formula, count_diamonds_oracle(star)))
        rows.append(_row(f"T*({q}) diamonds (closed form)", formula,
                         diamonds_from_gram(gram_square(seidel(star)))))
    return _table("paley-table", rows)


PRINTED_PAPER10_POLY = poly_mul(x2_plus(1), poly_pow([1, 0, 18, 0, 61], 2))


def paper10() -> dict:
    """The printed 10-vertex instance, checked against the printed claims."""
    T = builtin("paper10")
    S = seidel(T)
    p = char_poly(S)
    I = np.eye(10, dtype=np.int64)
    rows = [
        _row("diamonds (oracle)", 70, count_diamonds_oracle(T)),
        _row("diamonds (closed form)", 70, diamonds_from_gram(gram_square(S))),
        _row("char poly (x^2+1)(x^4+18x^2+61)^2", PRINTED_PAPER10_POLY, list(p.coeffs)),
        _row("det", 3721, p.constant),
        _row("S + I is skew EW", False, is_skew_ew(S + I)[0]),
        _row("certificate", "parity_block", certify_extremal(T).kind),
    ]
    return _table("paper10", rows)


def spectral_forms() -> dict:
    ew = builtin("ew6")
    drt = delete_vertex(paley(11), 0)
    p_ew = char_poly(seidel(ew))
    p_drt = char_poly(seidel(drt))
    rows = [
        _row("ew6 char poly (x^2+9)(x^2+3)^2", ew_form(1), list(p_ew.coeffs)),
        _row("ew6 form", ("ew_form", 1), (match_spectral_form(p_ew).tag, match_spectral_form(p_ew).k)),
        _row("T(11)-v char poly (x^2+1)(x^2+11)^4", deleted_drt_form(2), list(p_drt.coeffs)),
        _row("T(11)-v form", ("deleted_drt_form", 2),
             (match_spectral_form(p_drt).tag, match_spectral_form(p_drt).k)),
        _row("T(11)-v diamonds", 70, count_diamonds_oracle(drt)),
    ]
    return _table("spectral-forms", rows)


def find_ew_representative(T: Tournament) -> Tournament | None:
    """A switching of ``T`` whose Seidel matrix plus identity is skew EW."""
    n = T.n
    I = np.eye(n, dtype=np.int64)
    for mask in range(1 << (n - 1)):
        U = switch(T, [v for v in range(n - 1) if mask >> v & 1])
        if is_skew_ew(seidel(U) + I)[0]:
            return U
    return None


def census6() -> dict:
    out = search_max(6, classify=True)
    reps = [Tournament.from_bits(6, b) for b in out.classes]
    deleted = delete_vertex(paley(7), 0)
    lineage = [R for R in reps if are_switching_equivalent(deleted, R, up_to_iso=True)]
    ew_reps = [U for U in (find_ew_representative(R) for R in reps) if U is not None]
    rows = [
        _row("max diamonds n=6", 6, out.max_delta),
        _row("classes up to switching and relabelling", 2, len(reps)),
        _row("distinct fingerprints", 2, len(out.fingerprints)),
        _row("classes containing T(7)-v", 1, len(lineage)),
        _row("classes with a skew-EW member", 1, len(ew_reps)),
    ]
    if lineage:
        rows.append(_row("deletion lemma on T(7)-v class", True, lemma_deleted_max_check(lineage[0]).ok))
    if ew_reps:
        rows.append(_row("deletion lemma on EW class", True, lemma_deleted_max_check(ew_reps[0]).ok))
        rows.append(_row("EW class contains two 3-cycles one beating the other", True,
                         are_switching_equivalent(builtin("ew6"), ew_reps[0], up_to_iso=True) is not None))
    if lineage and ew_reps:
        rows.append(_row("the two classes are distinct", True,
                         are_switching_equivalent(lineage[0], ew_reps[0], up_to_iso=True) is None))
    return _table("census6", rows, classes=out.classes)


def census_small(orders=(4, 5, 6, 7, 8)) -> dict:
    expected = {4: 1, 5: 2, 6: 6, 7: 14, 8: 28}
    rows = []
    for n in orders:
        out = search_max(n, classify=(n == 6))
        rows.append(_row(f"max diamonds n={n}", expected[n], out.max_delta))
    return _table("census-small", rows)


def census10_partial(seed: int = DEFAULT_SEED, restarts: int = 30) -> dict:
    """Both known n=10 classes plus a seeded local search; no exhaustive run."""
    drt = delete_vertex(paley(11), 0)
    p10 = builtin("paper10")
    f_drt, f_p10 = fingerprint(drt), fingerprint(p10)
    best, found = local_search(10, restarts=restarts, steps=300, seed=seed)
    forms: dict[str, int] = {}
    polys = set()
    for U in found:
        p = char_poly(seidel(U))
        polys.add(p.coeffs)
        tag = match_spectral_form(p).tag
        forms[tag] = forms.get(tag, 0) + 1
    rows = [
        _row("bound n=10", 70, bound(10).value),
        _row("T(11)-v diamonds", 70, f_drt.delta),
        _row("paper10 diamonds", 70, f_p10.delta),
        _row("the two classes have different char polys", True, f_drt.charpoly != f_p10.charpoly),
        _row("T(11)-v certificate", "parity_block", certify_extremal(drt).kind),
        _row("paper10 certificate", "parity_block", certify_extremal(p10).kind),
        _row("local search reaches the bound", 70, best),
    ]
    return _table("census10-partial", rows, local_search_forms=forms,
                  local_search_charpolys=sorted(list(c) for c in polys))


def section4_lemmas() -> dict:
    rows = []
    for q, n, want in ((3, 5, 2), (7, 9, 42)):
        v = lemma_conference_plus_apex_check(add_dominating_vertex(paley(q)))
        rows.append(_row(f"conference order {q + 1} plus apex: delta at n={n}", want, v.details["oracle"]))
        rows.append(_row(f"conference order {q + 1} plus apex: lemma holds", True, v.ok))
    for name, T in (("ew6", builtin("ew6")), ("T(7)-v", delete_vertex(paley(7), 0))):
        v = lemma_deleted_max_check(T)
        rows.append(_row(f"deletion lemma on {name}", True, v.ok))
        rows.append(_row(f"deletion lemma on {name}: delta(T-v)", [2] * 6, [r["delta"] for r in v.details["rows"]]))
    return _table("section4-lemmas", rows)


def theorem_roundtrip(seed: int = DEFAULT_SEED, qs=(7, 11, 19), trials: int = 5) -> dict:
    rng = np.random.default_rng(seed)
    rows = []
    for q in qs:
        T = paley(q)
        cert = certify_extremal(T)
        rows.append(_row(f"T({q}) certificate", "parity_diagonal_J", cert.kind))
        rows.append(_row(f"T({q}) switched witness doubly regular", True,
                         bool(cert.witness.get("switched_doubly_regular"))))
        rows.append(_row(f"T({q}) witness re-verifies", True, verify_certificate(T, cert)))
        kinds = set()
        for _ in range(trials):
            X = np.flatnonzero(rng.integers(0, 2, size=q)).tolist()
            U = switch(T, X)
            c = certify_extremal(U)
            kinds.add((c.kind, bool(c.witness.get("switched_doubly_regular")), verify_certificate(U, c)))
        rows.append(_row(f"T({q}) under random switchings", [("parity_diagonal_J", True, True)], sorted(kinds)))
    return _table("theorem-roundtrip", rows, seed=seed)


def conjecture5() -> dict:
    r = conjecture_probe(5)
    rows = [_row("max diamonds n=5", 2, r["max_delta"]),
            _row("conjecture refuted at n=5", False, r["refuted"])]
    return _table("conjecture5", rows, probe=r)


def conjecture9(workers: int = 1, checkpoint: str | None = None) -> dict:
    """Long-running: all 2^28 tournaments on 8 vertices."""
    if checkpoint is None:
        ckdir = os.environ.get("DIAMONDLAB_CHECKPOINT_DIR")
        if ckdir:
            checkpoint = str(Path(ckdir) / "search-n9.json")
    r = conjecture_probe(9, workers=workers, checkpoint=checkpoint)
    done = json.loads(Path(checkpoint).read_text())["next"] if checkpoint else None
    rows = [_row("exhaustive run completed", 1 << 28, r["enumerated"]),
            _row("checkpoint covers the full range", 1 << 28, done),
            _row("definite maximum reported", True, isinstance(r["max_delta"], int) and r["max_delta"] >= 0)]
    # the comparison with the conjectured 42 is the finding, not a pass condition
    return _table("conjecture9", rows, probe=r, max_delta=r["max_delta"], conjectured=42,
                  conjecture_holds=r["max_delta"] == 42)


TARGETS: dict[str, Callable[..., dict]] = {
    "oracle-corpus": oracle_corpus,
    "switching": switching_invariance,
    "paley-table": paley_table,
    "census-small": census_small,
    "census6": census6,
    "paper10": paper10,
    "spectral-forms": spectral_forms,
    "theorem-roundtrip": theorem_roundtrip,
    "section4-lemmas": section4_lemmas,
    "census10-partial": census10_partial,
    "conjecture5": conjecture5,
    "conjecture9": conjecture9,
}
OPT_IN = ("conjecture9",)
SEEDED = ("oracle-corpus", "theorem-roundtrip", "census10-partial")


def reproduce(target: str, seed: int | None = None, **kwargs) -> dict:
    if target not in TARGETS:
        raise KeyError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    if seed is not None and target in SEEDED:
        kwargs["seed"] = seed
    t0 = time.perf_counter()
    out = TARGETS[target](**kwargs)
    out["elapsed"] = time.perf_counter() - t0
    return out


def format_table(result: dict) -> str:
    lines = [f"== {result['target']}: {'PASS' if result['pass'] else 'FAIL'}"]
    for r in result["rows"]:
        mark = "ok " if r["pass"] else "BAD"
        lines.append(f"  [{mark}] {r['claim']}: expected {r['expected']}, got {r['actual']}")
    return "\n".join(lines)
