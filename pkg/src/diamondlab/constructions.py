"""Named tournament families and built-in instances."""

from __future__ import annotations

import hashlib
import re
from importlib import resources

import numpy as np

from .core import Tournament, degree_profile, transitive
from .io import loads_seidel

PRIME_LIMIT = 10**6

# sha256 of data/paper10.seidel
PAPER10_SHA256 = "170da5de9866f9f99784c98676b08331fd9a9988079e979d72bd9d35c2da2054"


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def quadratic_residues(q: int) -> frozenset[int]:
    """Nonzero squares modulo the prime ``q``."""
    return frozenset(x * x % q for x in range(1, q))


def paley(q: int) -> Tournament:
    """Paley tournament on Z_q: ``x -> y`` iff ``y - x`` is a nonzero square.

    Only primes ``q = 3 (mod 4)`` are supported.
    """
    if q > PRIME_LIMIT:
        raise ValueError(f"q={q} above the primality-check limit {PRIME_LIMIT}")
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime (prime powers are not supported)")
    if q % 4 != 3:
        raise ValueError(f"q={q} is not 3 mod 4")
    res = quadratic_residues(q)
    assert q - 1 not in res  # -1 must be a non-residue for the arcs to be oriented once
    out = tuple(sum(1 << ((x + r) % q) for r in res) for x in range(q))
    return Tournament(q, out)


def add_dominating_vertex(T: Tournament) -> Tournament:
    """Append vertex ``n`` beating every existing vertex."""
    return Tournament(T.n + 1, T.out + ((1 << T.n) - 1,))


def delete_vertex(T: Tournament, v: int) -> Tournament:
    if T.n < 2:
        raise ValueError("cannot delete a vertex from a 1-vertex tournament")
    if not 0 <= v < T.n:
        raise ValueError(f"vertex {v} out of range")
    return T.induced([u for u in range(T.n) if u != v])


def three_cycle() -> Tournament:
    return Tournament.from_bits(3, "101")


def paper10_seidel() -> np.ndarray:
    raw = resources.files("diamondlab").joinpath("data/paper10.seidel").read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != PAPER10_SHA256:
        raise RuntimeError(f"paper10 data file checksum mismatch: {digest}")
    return loads_seidel(raw.decode())


def ew6() -> Tournament:
    """Two 3-cycles, the first beating every vertex of the second."""
    arcs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    arcs += [(i, j) for i in range(3) for j in range(3, 6)]
    return Tournament.from_arcs(6, arcs)


_PARAM = re.compile(r"^([a-z_*]+?)(?:\(?(\d+)\)?)?$")


def builtin(name: str) -> Tournament:
    """Look up a named instance.

    Names: ``paper10``, ``ew6``, ``cycle3``, ``diamond``, ``transitive(n)``,
    ``paley(q)``, ``paley*(q)`` (Paley plus a dominating vertex).
    """
    key = name.strip().lower()
    if key == "paper10":
        return Tournament.from_seidel(paper10_seidel())
    if key == "ew6":
        return ew6()
    if key == "cycle3":
        return three_cycle()
    if key == "diamond":
        return add_dominating_vertex(three_cycle())
    m = _PARAM.match(key)
    if m and m.group(2) is not None:
        base, k = m.group(1), int(m.group(2))
        if base == "transitive":
            return transitive(k)
        if base == "paley":
            return paley(k)
        if base in ("paley*", "paley_star"):
            return add_dominating_vertex(paley(k))
    raise KeyError(f"unknown builtin {name!r}")


BUILTIN_NAMES = ("paper10", "ew6", "cycle3", "diamond", "transitive(n)", "paley(q)", "paley*(q)")


def is_doubly_regular(T: Tournament) -> bool:
    """Constant out-degree and constant pair out-degree (``n >= 3``)."""
    if T.n < 3:
        return False
    prof = degree_profile(T)
    if len(set(prof.out_degrees.tolist())) != 1:
        return False
    iu = np.triu_indices(T.n, 1)
    values = set(prof.pair_out[iu].tolist())
    if len(values) != 1:
        return False
    h = values.pop()
    assert T.n % 4 == 3 and 4 * h == T.n - 3, (T.n, h)
    return True
