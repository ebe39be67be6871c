"""Tournaments, Seidel matrices and degree statistics.

A tournament on ``n`` labelled vertices ``0..n-1`` is stored as a tuple of
out-neighbourhood bitmasks.  The canonical external encoding is the
row-major upper-triangle bit string: pairs are listed as
``(0,1), (0,2), ..., (0,n-1), (1,2), ...`` and a ``'1'`` means ``i -> j``
for ``i < j``.  Vertices are 0-indexed here and 1-indexed in anything shown
to humans.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 64


class TournamentError(ValueError):
    """Raised for inputs that do not describe a valid tournament."""


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_list(n: int) -> list[tuple[int, int]]:
    """Pairs ``(i, j)``, ``i < j``, in encoding order."""
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _check_order(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise TournamentError(f"order must be a positive integer, got {n!r}")
    if n > MAX_ORDER:
        raise TournamentError(f"order {n} exceeds the supported maximum {MAX_ORDER}")


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Tournament:
    """Immutable tournament; ``out[i]`` is the bitmask of vertices ``i`` beats."""

    n: int
    out: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_order(self.n)
        if len(self.out) != self.n:
            raise TournamentError(f"expected {self.n} out-masks, got {len(self.out)}")
        full = (1 << self.n) - 1
        for i, mask in enumerate(self.out):
            if mask & ~full or mask >> i & 1:
                raise TournamentError(f"bad out-mask for vertex {i}")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.out[i] >> j & 1) == (self.out[j] >> i & 1):
                    raise TournamentError(f"pair ({i}, {j}) is not oriented exactly once")

    # constructors -----------------------------------------------------

    @classmethod
    def from_bits(cls, n: int, bits: str | Sequence[int]) -> "Tournament":
        _check_order(n)
        if isinstance(bits, str):
            bad = [c for c in bits if c not in "01"]
            if bad:
                raise TournamentError(f"arc bits must be '0'/'1', found {bad[0]!r}")
            bits = [int(c) for c in bits]
        if len(bits) != num_pairs(n):
            raise TournamentError(
                f"n={n} needs {num_pairs(n)} arc bits, got {len(bits)}"
            )
        out = [0] * n
        for (i, j), b in zip(pair_list(n), bits):
            if b:
                out[i] |= 1 << j
            else:
                out[j] |= 1 << i
        return cls(n, tuple(out))

    @classmethod
    def from_index(cls, n: int, index: int) -> "Tournament":
        """Tournament whose k-th arc bit (encoding order) is bit k of ``index``."""
        _check_order(n)
        if not 0 <= index < 1 << num_pairs(n):
            raise TournamentError(f"index {index} out of range for n={n}")
        return cls.from_bits(n, [index >> k & 1 for k in range(num_pairs(n))])

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Tournament":
        """Build from an iterable of arcs ``(u, v)`` meaning ``u -> v``."""
        _check_order(n)
        out = [0] * n
        for u, v in arcs:
            out[u] |= 1 << v
        return cls(n, tuple(out))

    @classmethod
    def from_adjacency(cls, A) -> "Tournament":
        A = np.asarray(A)
        n = A.shape[0]
        if A.shape != (n, n):
            raise TournamentError("adjacency matrix must be square")
        out = tuple(sum(1 << j for j in range(n) if A[i, j]) for i in range(n))
        return cls(n, out)

    @classmethod
    def from_seidel(cls, S) -> "Tournament":
        S = np.asarray(S)
        validate_seidel(S)
        return cls.from_adjacency(S == 1)

    # queries ------------------------------------------------------------

    def beats(self, i: int, j: int) -> bool:
        return bool(self.out[i] >> j & 1)

    def bits(self) -> str:
        return "".join("1" if self.beats(i, j) else "0" for i, j in pair_list(self.n))

    def index(self) -> int:
        return sum(1 << k for k, (i, j) in enumerate(pair_list(self.n)) if self.beats(i, j))

    def out_neighbours(self, v: int) -> frozenset[int]:
        return frozenset(j for j in range(self.n) if self.out[v] >> j & 1)

    def in_neighbours(self, v: int) -> frozenset[int]:
        return frozenset(j for j in range(self.n) if self.out[j] >> v & 1)

    def arcs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(self.n) if self.out[i] >> j & 1]

    @cached_property
    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=np.int64)
        for i, mask in enumerate(self.out):
            for j in range(self.n):
                if mask >> j & 1:
                    A[i, j] = 1
        return _readonly(A)

    @cached_property
    def out_degrees(self) -> tuple[int, ...]:
        return tuple(bin(m).count("1") for m in self.out)

    def induced(self, vertices: Sequence[int]) -> "Tournament":
        """Subtournament on ``vertices`` relabelled ``0..k-1`` in the given order."""
        vs = list(vertices)
        if len(set(vs)) != len(vs):
            raise TournamentError("induced subtournament needs distinct vertices")
        out = tuple(
            sum(1 << b for b, w in enumerate(vs) if self.out[u] >> w & 1) for u in vs
        )
        return Tournament(len(vs), out)

    def relabel(self, perm: Sequence[int]) -> "Tournament":
        """Tournament with vertex ``i`` renamed ``perm[i]``."""
        if sorted(perm) != list(range(self.n)):
            raise TournamentError("relabelling must be a permutation")
        return Tournament.from_arcs(self.n, ((perm[u], perm[v]) for u, v in self.arcs()))

    def __str__(self) -> str:
        return f"Tournament(n={self.n}, bits={self.bits()!r})"


def random_tournament(n: int, rng: np.random.Generator) -> Tournament:
    """Uniformly random labelled tournament."""
    return Tournament.from_bits(n, rng.integers(0, 2, size=num_pairs(n)).tolist())


def transitive(n: int) -> Tournament:
    """The linear order ``0 -> 1 -> ... -> n-1`` (all arc bits set)."""
    return Tournament.from_bits(n, "1" * num_pairs(n))


# Seidel matrix and its square --------------------------------------------


def validate_seidel(S: np.ndarray) -> None:
    S = np.asarray(S)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise TournamentError("Seidel matrix must be square")
    n = S.shape[0]
    if np.any(np.diag(S) != 0):
        raise TournamentError("Seidel matrix must have zero diagonal")
    if not np.array_equal(S, -S.T):
        raise TournamentError("Seidel matrix must be skew-symmetric")
    off = S[~np.eye(n, dtype=bool)]
    if not np.all((off == 1) | (off == -1)):
        raise TournamentError("Seidel matrix off-diagonal entries must be +-1")


def seidel(T: Tournament) -> np.ndarray:
    """``S = A - A^t``; read-only int64 array."""
    A = T.adjacency
    return _readonly(A - A.T)


def gram_square(S: np.ndarray) -> np.ndarray:
    """Exact ``S @ S`` with entries ``m_ij``; every diagonal entry is ``1 - n``."""
    S = np.asarray(S, dtype=np.int64)
    M = S @ S
    n = S.shape[0]
    assert np.all(np.diag(M) == 1 - n)
    return _readonly(M)


@dataclass(frozen=True)
class DegreeProfile:
    """Vertex and pair degree tables of a tournament.

    ``pair_out[i, j]`` is the number of vertices beaten by both ``i`` and ``j``,
    ``pair_in[i, j]`` the number beating both, and ``gamma[i, j]`` the number of
    vertices lying on a directed 2-path between ``i`` and ``j`` in either
    direction.  Diagonals of the pair tables are left at zero.
    """

    n: int
    out_degrees: np.ndarray
    in_degrees: np.ndarray
    pair_out: np.ndarray
    pair_in: np.ndarray
    gamma: np.ndarray


def degree_profile(T: Tournament) -> DegreeProfile:
    A = T.adjacency
    n = T.n
    off = ~np.eye(n, dtype=bool)
    d_out = A.sum(axis=1)
    d_in = A.sum(axis=0)
    pair_out = (A @ A.T) * off
    pair_in = (A.T @ A) * off
    two_paths = A @ A
    gamma = (two_paths + two_paths.T) * off
    return DegreeProfile(
        n,
        _readonly(d_out),
        _readonly(d_in),
        _readonly(pair_out),
        _readonly(pair_in),
        _readonly(gamma),
    )


def m_from_gamma(i: int, j: int, gamma_ij: int, n: int) -> int:
    """Off-diagonal entry of ``S^2`` from the 2-path count of the pair."""
    if i == j:
        raise ValueError("m_from_gamma is defined for i != j only")
    if not 0 <= gamma_ij <= n - 2:
        raise ValueError(f"gamma={gamma_ij} outside [0, {n - 2}]")
    return 2 * gamma_ij - n + 2
