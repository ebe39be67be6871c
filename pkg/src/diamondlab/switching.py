"""Switching, diagonal similarity and switching-class fingerprints."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable

import numpy as np

from .core import Tournament, gram_square, seidel
from .counting import diamonds_from_gram
from .spectral import char_poly

MAX_ISO_ORDER = 9


def switch(T: Tournament, X: Iterable[int]) -> Tournament:
    """Reverse every arc between ``X`` and its complement."""
    xmask = 0
    for v in X:
        if not 0 <= v < T.n:
            raise ValueError(f"vertex {v} out of range")
        xmask |= 1 << v
    full = (1 << T.n) - 1
    out = []
    for i, m in enumerate(T.out):
        cross = full & ~xmask if xmask >> i & 1 else xmask & ~(1 << i)
        out.append(m ^ cross)
    return Tournament(T.n, tuple(out))


def sign_vector(n: int, X: Iterable[int]) -> np.ndarray:
    eps = np.ones(n, dtype=np.int64)
    eps[list(X)] = -1
    return eps


def diagonal_similar(S, eps) -> np.ndarray:
    """``D S D`` with ``D = diag(eps)``."""
    S = np.asarray(S, dtype=np.int64)
    eps = np.asarray(eps, dtype=np.int64)
    if not np.all(np.abs(eps) == 1):
        raise ValueError("sign diagonal entries must be +-1")
    return eps[:, None] * S * eps[None, :]


def normalize_dominant(T: Tournament, v: int) -> Tournament:
    """Switch by the in-neighbourhood of ``v`` so that ``v`` beats everyone."""
    return switch(T, T.in_neighbours(v))


def _witness_labelled(S1: np.ndarray, S2: np.ndarray) -> np.ndarray | None:
    # with eps_0 = +1 the first row forces every other sign
    eps = S1[0] * S2[0]
    eps[0] = 1
    if np.array_equal(diagonal_similar(S1, eps), S2):
        return eps
    return None


@lru_cache(maxsize=None)
def _perms(n: int) -> np.ndarray:
    return np.array(list(permutations(range(n))), dtype=np.intp)


@dataclass(frozen=True)
class SwitchWitness:
    """``eps`` and optional relabelling with ``diag(eps) P S1 P^t diag(eps) = S2``.

    ``perm[i]`` is the vertex of ``T2`` that vertex ``i`` of ``T1`` is mapped to.
    """

    eps: tuple[int, ...]
    perm: tuple[int, ...] | None = None

    def switch_set(self) -> list[int]:
        return [i for i, e in enumerate(self.eps) if e < 0]


def are_switching_equivalent(
    T1: Tournament, T2: Tournament, up_to_iso: bool = False
) -> SwitchWitness | None:
    """Find a switching (optionally composed with a relabelling) taking T1 to T2.

    The labelled test is linear in the matrix size because fixing the first
    sign determines the rest.  ``up_to_iso`` tries all ``n!`` relabellings and
    is limited to ``n <= MAX_ISO_ORDER``.
    """
    if T1.n != T2.n:
        raise ValueError("tournaments have different orders")
    S1, S2 = seidel(T1), seidel(T2)
    if not up_to_iso:
        eps = _witness_labelled(S1, S2)
        return None if eps is None else SwitchWitness(tuple(int(e) for e in eps))
    n = T1.n
    if n > MAX_ISO_ORDER:
        raise ValueError(f"relabelling search limited to n <= {MAX_ISO_ORDER}")
    if n == 1:
        return SwitchWitness((1,), (0,))
    # Q = P S1 P^t, i.e. Q[a, b] = S1[inv[a], inv[b]]; iterate over inv directly
    for chunk in np.array_split(_perms(n), max(1, len(_perms(n)) // 20000)):
        Q = S1[chunk[:, :, None], chunk[:, None, :]]
        eps = Q[:, 0, :] * S2[0][None, :]
        eps[:, 0] = 1
        D = eps[:, :, None] * Q * eps[:, None, :]
        hit = np.flatnonzero((D == S2[None]).all(axis=(1, 2)))
        if hit.size:
            inv = chunk[hit[0]]
            perm = np.empty(n, dtype=np.intp)
            perm[inv] = np.arange(n)
            e = eps[hit[0]]
            return SwitchWitness(tuple(int(x) for x in e[perm]), tuple(int(x) for x in perm))
    return None


def apply_witness(T: Tournament, w: SwitchWitness) -> Tournament:
    """Apply ``w`` to ``T``: switch first, then relabel."""
    U = switch(T, w.switch_set())
    return U.relabel(w.perm) if w.perm is not None else U


@dataclass(frozen=True, order=True)
class Fingerprint:
    charpoly: tuple[int, ...]
    abs_gram: tuple[int, ...]
    delta: int

    def as_dict(self) -> dict:
        return {
            "charpoly": list(self.charpoly),
            "abs_gram": list(self.abs_gram),
            "delta": self.delta,
        }


def fingerprint(T: Tournament) -> Fingerprint:
    """Switching- and relabelling-invariant key (necessary, not sufficient)."""
    S = seidel(T)
    M = gram_square(S)
    iu = np.triu_indices(T.n, 1)
    return Fingerprint(
        char_poly(S).coeffs,
        tuple(sorted(int(x) for x in np.abs(M[iu]))),
        diamonds_from_gram(M),
    )
