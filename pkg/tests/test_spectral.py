import numpy as np
import pytest
from hypothesis import given

from diamondlab.constructions import add_dominating_vertex, builtin, delete_vertex, paley
from diamondlab.core import gram_square, random_tournament, seidel, transitive
from diamondlab.counting import count_diamonds_oracle
from diamondlab.spectral import (
    CharPoly,
    beta_alpha_identity_check,
    char_poly,
    deleted_drt_form,
    ew_form,
    format_poly,
    is_skew_conference,
    is_skew_ew,
    match_spectral_form,
    minor_sum_identity_check,
    poly_mul,
    poly_pow,
    skew_conference_form,
    spectral_summary,
    x2_plus,
)

from .oracles import sympy_charpoly
from .test_core import tournaments


@given(tournaments(max_n=9))
def test_char_poly_matches_sympy(T):
    S = seidel(T)
    assert list(char_poly(S).coeffs) == sympy_charpoly(S)


def test_char_poly_gram_matches_sympy():
    M = gram_square(seidel(random_tournament(8, np.random.default_rng(2))))
    assert list(char_poly(M).coeffs) == sympy_charpoly(M)


def test_truncated():
    S = seidel(random_tournament(12, np.random.default_rng(0)))
    full = char_poly(S)
    part = char_poly(S, terms=4)
    assert part.coeffs == full.coeffs[:5]
    assert not part.complete
    with pytest.raises(ValueError):
        part.constant


def test_big_coefficients_stay_exact():
    # determinant of a skew-conference matrix of order 60 is 59^30 > 2^53
    S = seidel(add_dominating_vertex(paley(59)))
    p = char_poly(S)
    assert p.constant == 59**30
    assert list(p.coeffs) == skew_conference_form(60)


def test_charpoly_helpers():
    p = CharPoly(3, (1, 0, 3, 0))
    assert p.as_ascending() == [0, 3, 0, 1]
    assert p.even_part() == (1, 3)
    assert format_poly([1, 0, -2, 1]) == "x^3 - 2x + 1"
    assert format_poly([0]) == "0"
    assert poly_pow(x2_plus(1), 2) == [1, 0, 2, 0, 1]


@given(tournaments(min_n=4, max_n=10))
def test_identities_hold(T):
    assert minor_sum_identity_check(T).ok
    assert beta_alpha_identity_check(seidel(T)).ok


def test_identity_preconditions():
    with pytest.raises(ValueError):
        minor_sum_identity_check(transitive(3))


def test_skew_conference():
    for q in (3, 7, 11, 19):
        assert is_skew_conference(seidel(add_dominating_vertex(paley(q))))
        assert not is_skew_conference(seidel(paley(q)))
    assert not is_skew_conference(seidel(transitive(8)))


def test_ew6():
    S = seidel(builtin("ew6"))
    ok, part = is_skew_ew(S + np.eye(6, dtype=np.int64))
    assert ok and part == ((0, 1, 2), (3, 4, 5))
    assert list(char_poly(S).coeffs) == ew_form(1)
    assert poly_mul(x2_plus(9), poly_pow(x2_plus(3), 2)) == ew_form(1)


def test_ew_rejections():
    I = np.eye(6, dtype=np.int64)
    assert is_skew_ew(seidel(transitive(6)) + I) == (False, None)
    assert is_skew_ew(seidel(transitive(4)) + np.eye(4, dtype=np.int64)) == (False, None)
    with pytest.raises(ValueError):
        is_skew_ew(np.ones((5, 5)))
    with pytest.raises(ValueError):
        is_skew_ew(seidel(transitive(6)))  # zero diagonal


def test_deleted_drt_forms():
    for q, k in ((7, 1), (11, 2), (19, 4)):
        p = char_poly(seidel(delete_vertex(paley(q), 0)))
        assert list(p.coeffs) == deleted_drt_form(k)
        f = match_spectral_form(p)
        assert (f.tag, f.k) == ("deleted_drt_form", k)


def test_paper10_polynomial():
    # the 10-vertex instance's actual spectrum: (x^2+9)(x^4+18x^2+61)^2, det 9 * 61^2
    S = seidel(builtin("paper10"))
    p = char_poly(S)
    want = poly_mul(x2_plus(9), poly_pow([1, 0, 18, 0, 61], 2))
    assert list(p.coeffs) == want == sympy_charpoly(S)
    assert p.constant == 33489 == 9 * 61**2
    assert match_spectral_form(p).tag == "other"


def test_no_ten_vertex_seidel_matrix_has_alpha2_37():
    # every n x n Seidel matrix has alpha_2 = C(n, 2); (x^2+1)(x^4+18x^2+61)^2 has 37
    printed = poly_mul(x2_plus(1), poly_pow([1, 0, 18, 0, 61], 2))
    assert printed[2] == 37
    for seed in range(20):
        p = char_poly(seidel(random_tournament(10, np.random.default_rng(seed))), terms=2)
        assert p[2] == 45


def test_summary_fields():
    s = spectral_summary(add_dominating_vertex(paley(7)))
    assert s["form"] == "skew_conference_form"
    assert s["det"] == 7**4
    assert s["minor_sum_identity"] and s["beta_alpha_identity"]
    assert s["alpha4"] == 8 * count_diamonds_oracle(add_dominating_vertex(paley(7))) + 70
    small = spectral_summary(transitive(3))
    assert "minor_sum_identity" not in small
