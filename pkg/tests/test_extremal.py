from fractions import Fraction

import numpy as np
import pytest

from diamondlab.constructions import add_dominating_vertex, builtin, delete_vertex, paley
from diamondlab.core import random_tournament, transitive
from diamondlab.counting import count_diamonds_oracle
from diamondlab.extremal import (
    Certificate,
    PreconditionError,
    bound,
    certify_extremal,
    check_property,
    conjecture_probe,
    lemma_conference_plus_apex_check,
    lemma_deleted_max_check,
    verify_certificate,
)
from diamondlab.switching import switch


def test_bound_values():
    # hand-evaluated from the four residue formulas
    assert bound(4).value == Fraction(16 * 3 * 2, 96) == 1
    assert bound(6).value == 6 * 3 * 4 * 8 // 96 == 6
    assert bound(7).value == 7 * 6 * 4 * 8 // 96 == 14
    assert bound(8).value == 64 * 7 * 6 // 96 == 28
    assert bound(10).value == 70
    assert bound(12).value == 144 * 11 * 10 // 96 == 165


def test_one_mod_four():
    b9, b13 = bound(9), bound(13)
    assert (b9.value, b9.conjectured) == (45, 42)
    assert (b13.value, b13.conjectured) == (227, 220)
    assert bound(5).conjectured == 2 and bound(5).value == 2
    assert bound(8).conjectured is None


def test_bound_domain():
    with pytest.raises(ValueError):
        bound(3)


def test_bound_never_exceeded_small():
    rng = np.random.default_rng(0)
    for n in range(4, 12):
        for _ in range(30):
            assert count_diamonds_oracle(random_tournament(n, rng)) <= bound(n).value


@pytest.mark.parametrize("q", [3, 7, 11])
def test_skew_conference_certificate(q):
    T = add_dominating_vertex(paley(q))
    c = certify_extremal(T)
    assert c.kind == "skew_conference" and c.delta == c.bound
    assert verify_certificate(T, c)


@pytest.mark.parametrize("q", [7, 11, 19])
def test_parity_diagonal_certificate(q):
    T = paley(q)
    c = certify_extremal(T)
    assert c.kind == "parity_diagonal_J"
    assert c.witness["switched_doubly_regular"]
    assert verify_certificate(T, c)
    U = switch(T, [0, 2, 5])
    c2 = certify_extremal(U)
    assert c2.kind == "parity_diagonal_J" and verify_certificate(U, c2)


@pytest.mark.parametrize("name", ["ew6", "paper10"])
def test_parity_block_certificate(name):
    T = builtin(name)
    c = certify_extremal(T)
    assert c.kind == "parity_block" and verify_certificate(T, c)
    assert len(c.witness["even"]) == len(c.witness["odd"]) == T.n // 2


def test_deleted_drt_block_certificate():
    T = delete_vertex(paley(11), 4)
    c = certify_extremal(T)
    assert c.kind == "parity_block" and c.delta == 70


def test_no_certificate():
    c = certify_extremal(transitive(8))
    assert c.kind == "none" and c.delta == 0
    assert certify_extremal(transitive(3)).kind == "none"
    # n = 1 mod 4 at the conjectured value: no characterisation
    c9 = certify_extremal(add_dominating_vertex(add_dominating_vertex(paley(7))))
    assert c9.kind == "none"


def test_forged_certificate_rejected():
    T = paley(7)
    c = certify_extremal(T)
    bad = Certificate(c.kind, c.n, c.delta, c.bound, dict(c.witness, signs=[1] + [-1] * 6))
    assert not verify_certificate(T, bad)
    assert not verify_certificate(transitive(8), Certificate("skew_conference", 8, 0, 28))


def test_deletion_lemma():
    for T in (builtin("ew6"), delete_vertex(paley(7), 0), builtin("paper10"),
              delete_vertex(paley(11), 3)):
        v = lemma_deleted_max_check(T)
        assert v.ok, v.details
        assert len(v.details["rows"]) == T.n


def test_deletion_lemma_preconditions():
    with pytest.raises(PreconditionError):
        lemma_deleted_max_check(paley(7))
    with pytest.raises(PreconditionError):
        lemma_deleted_max_check(transitive(6))


def test_conference_plus_apex():
    v5 = lemma_conference_plus_apex_check(add_dominating_vertex(paley(3)))
    v9 = lemma_conference_plus_apex_check(add_dominating_vertex(paley(7)))
    assert v5.ok and v5.details["oracle"] == 2
    assert v9.ok and v9.details["oracle"] == 42
    with pytest.raises(PreconditionError):
        lemma_conference_plus_apex_check(paley(7))


def test_conjecture_probe_five():
    r = conjecture_probe(5)
    assert r["max_delta"] == 2 and r["attained"] and not r["refuted"]
    with pytest.raises(ValueError):
        conjecture_probe(13)


def test_check_property():
    assert check_property(builtin("paper10"), "extremal")["pass"]
    assert not check_property(transitive(6), "extremal")["pass"]
    assert check_property(paley(11), "doubly-regular")["pass"]
    assert check_property(add_dominating_vertex(paley(11)), "skew-conference")["pass"]
    ew = check_property(builtin("ew6"), "ew")
    assert ew["pass"] and ew["partition"] == [[0, 1, 2], [3, 4, 5]]
    assert not check_property(builtin("paper10"), "ew")["pass"]
    assert not check_property(paley(7), "ew")["pass"]
    with pytest.raises(ValueError):
        check_property(paley(7), "pretty")
