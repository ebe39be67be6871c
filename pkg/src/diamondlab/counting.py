"""Diamond and 3-cycle counters.

Two independent routes for each quantity: a combinatorial one that looks at
the subtournaments directly, and a closed form in the entries ``m_ij`` of
``S^2``.  All arithmetic is on integers; the closed forms assert that their
final division is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .core import Tournament, gram_square, seidel


class InconsistencyError(ArithmeticError):
    """A closed-form count came out non-integral or negative."""


@dataclass(frozen=True)
class CountReport:
    n: int
    delta: int
    c3: int
    method: str

    def __post_init__(self) -> None:
        assert 0 <= self.delta <= comb(self.n, 4)
        assert 0 <= self.c3 <= comb(self.n, 3)


@lru_cache(maxsize=None)
def _triples(n: int) -> np.ndarray:
    return np.array(list(combinations(range(n), 3)), dtype=np.intp).reshape(-1, 3)


@lru_cache(maxsize=None)
def _quads(n: int) -> np.ndarray:
    return np.array(list(combinations(range(n), 4)), dtype=np.intp).reshape(-1, 4)


def _cyclic_triples(A: np.ndarray) -> np.ndarray:
    """Boolean ``n x n x n`` table: ``(i, j, k)`` spans a 3-cycle."""
    # i->j->k->i or i->k->j->i
    fwd = A[:, :, None] * A[None, :, :] * A.T[:, None, :]
    return (fwd + fwd.transpose(0, 2, 1)).astype(bool)


def count_3cycles_oracle(T: Tournament) -> int:
    """Direct count over all 3-subsets."""
    if T.n < 3:
        return 0
    cyc = _cyclic_triples(T.adjacency)
    t = _triples(T.n)
    return int(cyc[t[:, 0], t[:, 1], t[:, 2]].sum())


def diamond_subsets(T: Tournament) -> list[tuple[int, ...]]:
    """4-subsets inducing exactly one 3-cycle."""
    if T.n < 4:
        return []
    q = _quads(T.n)
    return [tuple(int(x) for x in row) for row in q[_diamond_mask(T)]]


def _diamond_mask(T: Tournament) -> np.ndarray:
    cyc = _cyclic_triples(T.adjacency)
    q = _quads(T.n)
    a, b, c, d = q.T
    cycles = (
        cyc[a, b, c].astype(np.int8)
        + cyc[a, b, d]
        + cyc[a, c, d]
        + cyc[b, c, d]
    )
    return cycles == 1


def count_diamonds_oracle(T: Tournament) -> int:
    """Count 4-subsets whose subtournament has exactly one 3-cycle."""
    if T.n < 4:
        return 0
    return int(_diamond_mask(T).sum())


def count_3cycles_degree(T: Tournament) -> int:
    """``C(n,3) - sum_i C(d+(i), 2)``."""
    return comb(T.n, 3) - sum(comb(d, 2) for d in T.out_degrees)


def _upper_sums(M: np.ndarray) -> tuple[int, int]:
    iu = np.triu_indices(M.shape[0], 1)
    m = M[iu].astype(object)
    return int(m.sum()), int((m * m).sum())


def diamonds_from_gram(M: np.ndarray) -> int:
    """Diamond count from ``S^2``: ``n^2(n-1)(n-2)/96 - sum_{i<j} m_ij^2 / 16``."""
    n = M.shape[0]
    _, sq = _upper_sums(M)
    num = n * n * (n - 1) * (n - 2) - 6 * sq
    q, r = divmod(num, 96)
    if r or q < 0:
        raise InconsistencyError(f"diamond formula gives {num}/96")
    return q


def cycles_from_gram(M: np.ndarray) -> int:
    """3-cycle count from ``S^2``: ``n(n-1)(n-2)/24 + sum_{i<j} m_ij / 4``."""
    n = M.shape[0]
    s, _ = _upper_sums(M)
    num = n * (n - 1) * (n - 2) + 6 * s
    q, r = divmod(num, 24)
    if r or q < 0:
        raise InconsistencyError(f"3-cycle formula gives {num}/24")
    return q


def count_diamonds_spectral(T: Tournament) -> int:
    return diamonds_from_gram(gram_square(seidel(T)))


def count_3cycles_spectral(T: Tournament) -> int:
    return cycles_from_gram(gram_square(seidel(T)))


def count(T: Tournament, method: str = "oracle") -> CountReport:
    if method == "oracle":
        return CountReport(T.n, count_diamonds_oracle(T), count_3cycles_degree(T), method)
    if method == "spectral":
        M = gram_square(seidel(T))
        return CountReport(T.n, diamonds_from_gram(M), cycles_from_gram(M), method)
    raise ValueError(f"unknown method {method!r}")


def diamond_delta_decomposition(T: Tournament, v: int) -> tuple[int, int]:
    """``(delta(T - v), c3(T - v))`` for a vertex ``v`` beating everyone else.

    The two numbers add up to ``delta(T)``.
    """
    others = [u for u in range(T.n) if u != v]
    if any(not T.beats(v, u) for u in others):
        raise ValueError(f"vertex {v} does not dominate all other vertices")
    minor = T.induced(others)
    return count_diamonds_oracle(minor), count_3cycles_degree(minor)


def det_exact(M) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    a = [[int(x) for x in row] for row in np.asarray(M)]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def seidel_det4(T4: Tournament) -> int:
    """Determinant of the Seidel matrix of a 4-tournament: 9 for a diamond, else 1."""
    if T4.n != 4:
        raise ValueError(f"seidel_det4 needs a 4-tournament, got n={T4.n}")
    d = det_exact(seidel(T4))
    assert d in (1, 9), d
    return d


def principal_det4_all(S: np.ndarray) -> np.ndarray:
    """Determinants of every 4x4 principal submatrix of a skew matrix.

    Uses ``det = Pf^2`` with ``Pf = s_ab s_cd - s_ac s_bd + s_ad s_bc``;
    rows follow ``combinations(range(n), 4)``.
    """
    n = S.shape[0]
    if n < 4:
        return np.zeros(0, dtype=np.int64)
    a, b, c, d = _quads(n).T
    pf = S[a, b] * S[c, d] - S[a, c] * S[b, d] + S[a, d] * S[b, c]
    return pf * pf
