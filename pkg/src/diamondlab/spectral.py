"""Exact characteristic polynomials and structural matrix predicates."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .core import Tournament, gram_square, seidel
from .counting import count_diamonds_oracle


@dataclass(frozen=True)
class CharPoly:
    """Monic ``det(xI - M)``; ``coeffs[h]`` multiplies ``x^(n-h)``.

    A truncated polynomial (``complete=False``) only carries the leading
    coefficients it was asked for.
    """

    n: int
    coeffs: tuple[int, ...]
    complete: bool = True

    def __getitem__(self, h: int) -> int:
        return self.coeffs[h]

    def as_ascending(self) -> list[int]:
        return list(reversed(self.coeffs))

    @property
    def constant(self) -> int:
        if not self.complete:
            raise ValueError("truncated polynomial has no constant term")
        return self.coeffs[self.n]

    def even_part(self) -> tuple[int, ...]:
        """Coefficients of ``q`` with ``P(x) = x^l q(x^2)``, highest first."""
        if self.n % 2 == 0:
            return self.coeffs[0::2]
        return self.coeffs[0:-1:2]

    def __str__(self) -> str:
        return format_poly(self.coeffs)


def format_poly(coeffs) -> str:
    n = len(coeffs) - 1
    terms = []
    for h, c in enumerate(coeffs):
        if c == 0:
            continue
        p = n - h
        mono = "" if p == 0 else ("x" if p == 1 else f"x^{p}")
        mag = abs(c)
        body = mono if mag == 1 and mono else (f"{mag}{mono}" if mono else str(mag))
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def char_poly(M, terms: int | None = None) -> CharPoly:
    """Faddeev-LeVerrier over Python integers.

    ``coeffs[h]`` equals ``(-1)^h`` times the sum of the ``h x h`` principal
    minors.  With ``terms`` set, only ``coeffs[0..terms]`` are computed, which
    costs ``terms`` matrix products instead of ``n``.
    """
    A = np.array(M, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("char_poly needs a square matrix")
    steps = n if terms is None else min(terms, n)
    eye = np.eye(n, dtype=int).astype(object)
    coeffs = [1]
    Mk = np.zeros((n, n), dtype=object)
    for k in range(1, steps + 1):
        Mk = A.dot(Mk) + coeffs[-1] * eye
        tr = int(np.trace(A.dot(Mk)))
        c, r = divmod(-tr, k)
        assert r == 0, f"non-exact division at step {k}"
        coeffs.append(c)
    return CharPoly(n, tuple(coeffs), complete=steps == n)


def poly_mul(p: list[int], q: list[int]) -> list[int]:
    """Product of coefficient lists (highest power first)."""
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_pow(p: list[int], e: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = poly_mul(out, p)
    return out


def x2_plus(c: int) -> list[int]:
    return [1, 0, c]


# identity checks ----------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    ok: bool
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def minor_sum_identity_check(T: Tournament) -> Verdict:
    """Sum of 4x4 principal minors of ``S`` against ``8 delta + C(n, 4)``."""
    if T.n < 4:
        raise ValueError("minor-sum identity needs n >= 4")
    alpha4 = char_poly(seidel(T), terms=4)[4]
    delta = count_diamonds_oracle(T)
    rhs = 8 * delta + comb(T.n, 4)
    return Verdict(alpha4 == rhs, {"alpha4": alpha4, "delta": delta, "rhs": rhs})


def beta_alpha_identity_check(S) -> Verdict:
    """``beta_2 = 2 alpha_4 + alpha_2^2`` and ``alpha_2 = n(n-1)/2``."""
    S = np.asarray(S)
    n = S.shape[0]
    pa = char_poly(S, terms=4)
    pb = char_poly(gram_square(S), terms=2)
    alpha2 = pa[2] if n >= 2 else 0
    alpha4 = pa[4] if n >= 4 else 0
    beta2 = pb[2] if n >= 2 else 0
    ok = beta2 == 2 * alpha4 + alpha2 * alpha2 and alpha2 == n * (n - 1) // 2
    return Verdict(ok, {"alpha2": alpha2, "alpha4": alpha4, "beta2": beta2})


# structural predicates ------------------------------------------------------


def is_skew_conference(S) -> bool:
    S = np.asarray(S, dtype=np.int64)
    n = S.shape[0]
    ok = bool(np.array_equal(S @ S.T, (n - 1) * np.eye(n, dtype=np.int64)))
    if ok and n > 2:
        assert n % 4 == 0, f"skew-conference matrix of order {n} not divisible by 4"
    return ok


def is_skew_ew(B) -> tuple[bool, tuple[tuple[int, ...], tuple[int, ...]] | None]:
    """Test for a skew-type EW matrix; returns ``(verdict, partition)``.

    The partition is read off the rows of ``B B^t``: entries equal to 2 must
    split the indices into two cliques of size ``n/2`` with zeros across.
    """
    B = np.asarray(B, dtype=np.int64)
    n = B.shape[0]
    if B.shape != (n, n):
        raise ValueError("EW test needs a square matrix")
    if n % 2:
        raise ValueError(f"EW matrices have even order, got {n}")
    if not np.all(np.abs(B) == 1):
        raise ValueError("EW test needs a +-1 matrix")
    if n % 4 != 2:
        return False, None
    if not np.array_equal(B + B.T, 2 * np.eye(n, dtype=np.int64)):
        return False, None
    G = B @ B.T
    first = tuple(sorted({0} | {j for j in range(1, n) if G[0, j] == 2}))
    second = tuple(j for j in range(n) if j not in first)
    if len(first) != n // 2:
        return False, None
    side = np.zeros(n, dtype=bool)
    side[list(second)] = True
    same = side[:, None] == side[None, :]
    expected = np.where(same, 2, 0) + (n - 2) * np.eye(n, dtype=np.int64)
    if not (np.array_equal(G, expected) and np.array_equal(B.T @ B, expected)):
        return False, None
    return True, (first, second)


# spectral forms -------------------------------------------------------------


@dataclass(frozen=True)
class SpectralForm:
    tag: str
    k: int | None = None
    factored: str | None = None


def skew_conference_form(n: int) -> list[int]:
    return poly_pow(x2_plus(n - 1), n // 2)


def ew_form(k: int) -> list[int]:
    return poly_mul(x2_plus(8 * k + 1), poly_pow(x2_plus(4 * k - 1), 2 * k))


def deleted_drt_form(k: int) -> list[int]:
    return poly_mul(x2_plus(1), poly_pow(x2_plus(4 * k + 3), 2 * k))


def match_spectral_form(p: CharPoly) -> SpectralForm:
    if not p.complete:
        raise ValueError("spectral form matching needs the full polynomial")
    n = p.n
    coeffs = list(p.coeffs)
    if n % 2 == 0 and coeffs == skew_conference_form(n):
        return SpectralForm("skew_conference_form", None, f"(x^2 + {n - 1})^{n // 2}")
    if n % 4 == 2:
        k = (n - 2) // 4
        if coeffs == ew_form(k):
            return SpectralForm("ew_form", k, f"(x^2 + {8 * k + 1})(x^2 + {4 * k - 1})^{2 * k}")
        if coeffs == deleted_drt_form(k):
            return SpectralForm("deleted_drt_form", k, f"(x^2 + 1)(x^2 + {4 * k + 3})^{2 * k}")
    return SpectralForm("other")


def spectral_summary(T: Tournament) -> dict:
    """Everything the ``spectrum`` command reports."""
    S = seidel(T)
    p = char_poly(S)
    form = match_spectral_form(p)
    out = {
        "n": T.n,
        "coefficients": list(p.coeffs),
        "polynomial": str(p),
        "form": form.tag,
        "form_k": form.k,
        "factored": form.factored,
        "det": p.constant * (-1) ** T.n,
        "beta_alpha_identity": beta_alpha_identity_check(S).ok,
    }
    if T.n >= 4:
        v = minor_sum_identity_check(T)
        out["minor_sum_identity"] = v.ok
        out["alpha4"] = v.details["alpha4"]
    return out
