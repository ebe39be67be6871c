"""Exhaustive and local search for tournaments with many diamonds.

Every switching class contains a tournament with a vertex beating all the
others, and for such a tournament ``delta(T) = delta(U) + c3(U)`` where
``U = T - v``.  So the maximum over ``n``-vertex tournaments is the maximum
of ``delta(U) + c3(U)`` over all ``2^C(n-1, 2)`` tournaments ``U`` on
``n - 1`` vertices, which is what :func:`search_max` enumerates.  ``U`` is
indexed by the integer whose bit ``k`` is the ``k``-th arc bit.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from pathlib import Path

import numpy as np

from .constructions import add_dominating_vertex
from .core import Tournament, num_pairs, pair_list
from .switching import MAX_ISO_ORDER, Fingerprint, are_switching_equivalent, fingerprint

log = logging.getLogger(__name__)

MAX_EXHAUSTIVE_ORDER = 9
BLOCK = 1 << 16
CHECKPOINT_EVERY = 1 << 20
CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class _Tables:
    m: int
    shifts: np.ndarray  # (P,)
    degree_weights: np.ndarray  # (P, m)
    degree_offset: np.ndarray  # (m,)
    triple_pairs: np.ndarray  # (T, 3) pair indices ij, ik, jk
    quad_incidence: np.ndarray  # (T, Q) float32, triple t inside quad q


@lru_cache(maxsize=None)
def _tables(m: int) -> _Tables:
    pairs = pair_list(m)
    pos = {p: k for k, p in enumerate(pairs)}
    P = len(pairs)
    W = np.zeros((P, m), dtype=np.int32)
    for k, (i, j) in enumerate(pairs):
        W[k, i] += 1  # bit set: i -> j
        W[k, j] -= 1  # bit clear: j -> i, folded into the offset below
    offset = np.array([i for i in range(m)], dtype=np.int32)  # pairs (j, i) with j < i
    triples = list(combinations(range(m), 3))
    tpairs = np.array(
        [(pos[(i, j)], pos[(i, k)], pos[(j, k)]) for i, j, k in triples], dtype=np.intp
    ).reshape(-1, 3)
    tpos = {t: a for a, t in enumerate(triples)}
    quads = list(combinations(range(m), 4))
    Qm = np.zeros((len(triples), len(quads)), dtype=np.float32)
    for b, q in enumerate(quads):
        for t in combinations(q, 3):
            Qm[tpos[t], b] = 1
    return _Tables(m, np.arange(P, dtype=np.int64), W, offset, tpairs, Qm)


def scores(m: int, indices: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``(delta(U), c3(U))`` for the tournaments ``U`` on ``m`` vertices with these indices."""
    t = _tables(m)
    idx = np.asarray(indices, dtype=np.int64)
    # one contiguous row of bits per pair
    bits = ((idx[None, :] >> t.shifts[:, None]) & 1).astype(np.uint8)
    outdeg = t.degree_weights.T @ bits.astype(np.int32) + t.degree_offset[:, None]
    c3 = comb(m, 3) - (outdeg * (outdeg - 1) // 2).sum(axis=0)
    if m < 4:
        return np.zeros(len(idx), dtype=np.int64), c3.astype(np.int64)
    cyc = np.empty((len(t.triple_pairs), len(idx)), dtype=np.float32)
    for row, (ij, ik, jk) in enumerate(t.triple_pairs):
        # cyclic iff b_ij == b_jk != b_ik
        np.bitwise_and(bits[ij] ^ bits[ik], bits[jk] ^ bits[ik], out=cyc[row], casting="unsafe")
    per_quad = t.quad_incidence.T @ cyc
    delta = (per_quad == 1).sum(axis=0)
    return delta.astype(np.int64), c3.astype(np.int64)


def _scan(m: int, start: int, stop: int) -> tuple[int, list[int]]:
    best = -1
    winners: list[int] = []
    for lo in range(start, stop, BLOCK):
        idx = np.arange(lo, min(lo + BLOCK, stop), dtype=np.int64)
        d, c = scores(m, idx)
        s = d + c
        top = int(s.max())
        if top > best:
            best, winners = top, []
        if top == best:
            winners.extend(int(x) for x in idx[s == top])
    return best, winners


@dataclass
class SearchOutcome:
    n: int
    max_delta: int
    maximizer_count: int
    enumerated: int
    elapsed: float
    fingerprints: list[dict] = field(default_factory=list)
    classes: list[str] | None = None
    resumed_from: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def _load_checkpoint(path: Path, n: int) -> dict | None:
    if not path.exists():
        return None
    state = json.loads(path.read_text())
    if state.get("version") != CHECKPOINT_VERSION or state.get("n") != n:
        raise ValueError(f"checkpoint {path} does not belong to an n={n} search")
    return state


def _save_checkpoint(path: Path, state: dict) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(state))
    os.replace(tmp, path)


def search_max(
    n: int,
    workers: int = 1,
    checkpoint: str | Path | None = None,
    classify: bool | None = None,
) -> SearchOutcome:
    """Maximum diamond count over all ``n``-vertex tournaments.

    Maximizers are reported as sorted fingerprints of their dominated
    extensions.  With ``classify`` (default for ``n <= 8``) they are further
    split into classes up to switching and relabelling; each class is
    represented by the tournament bit string of its first member.
    """
    if not 2 <= n <= MAX_EXHAUSTIVE_ORDER:
        raise ValueError(f"exhaustive search supports 2 <= n <= {MAX_EXHAUSTIVE_ORDER}, got {n}")
    if classify is None:
        classify = n <= 8
    m = n - 1
    total = 1 << num_pairs(m)
    t0 = time.perf_counter()

    ckpath = Path(checkpoint) if checkpoint else None
    state = _load_checkpoint(ckpath, n) if ckpath else None
    if state is None:
        state = {"version": CHECKPOINT_VERSION, "n": n, "next": 0, "best": -1, "winners": []}
    resumed_from = state["next"]
    chunk = max(BLOCK, min(CHECKPOINT_EVERY, total))
    starts = list(range(state["next"], total, chunk))
    jobs = [(m, s, min(s + chunk, total)) for s in starts]

    def merge(result: tuple[int, list[int]], stop: int) -> None:
        best, winners = result
        if best > state["best"]:
            state["best"], state["winners"] = best, []
        if best == state["best"]:
            state["winners"].extend(winners)
        state["next"] = stop
        if ckpath:
            _save_checkpoint(ckpath, state)
        log.info("n=%d: %d/%d enumerated, best so far %d", n, stop, total, state["best"])

    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map preserves job order, so merging and checkpoints stay deterministic
            for job, res in zip(jobs, pool.map(_scan, *zip(*jobs))):
                merge(res, job[2])
    else:
        for job in jobs:
            merge(_scan(*job), job[2])

    winners = sorted(set(state["winners"]))
    prints = batch_fingerprints(m, winners)
    classes = None
    if classify:
        extensions = [add_dominating_vertex(Tournament.from_index(m, w)) for w in winners]
        classes = [T.bits() for T in classify_up_to_switching(extensions)]
    return SearchOutcome(
        n=n,
        max_delta=int(state["best"]),
        maximizer_count=len(winners),
        enumerated=total,
        elapsed=time.perf_counter() - t0,
        fingerprints=[f.as_dict() for f in prints],
        classes=classes,
        resumed_from=resumed_from,
    )


def _extension_seidel(m: int, indices: np.ndarray) -> np.ndarray:
    """Seidel matrices of the dominated extensions, shape ``(B, m+1, m+1)``."""
    n = m + 1
    idx = np.asarray(indices, dtype=np.int64)
    S = np.zeros((len(idx), n, n), dtype=np.int64)
    for k, (i, j) in enumerate(pair_list(m)):
        b = ((idx >> k) & 1) * 2 - 1
        S[:, i, j] = b
        S[:, j, i] = -b
    S[:, m, :m] = 1
    S[:, :m, m] = -1
    return S


def _batch_char_poly(S: np.ndarray) -> np.ndarray:
    # Faddeev-LeVerrier in int64; exact while n <= 12 for +-1 entries
    B, n, _ = S.shape
    assert n <= 12
    eye = np.eye(n, dtype=np.int64)
    coeffs = np.zeros((B, n + 1), dtype=np.int64)
    coeffs[:, 0] = 1
    Mk = np.zeros_like(S)
    for k in range(1, n + 1):
        Mk = S @ Mk + coeffs[:, k - 1, None, None] * eye
        tr = np.trace(S @ Mk, axis1=1, axis2=2)
        assert np.all(tr % k == 0)
        coeffs[:, k] = -tr // k
    return coeffs


def batch_fingerprints(m: int, indices, chunk: int = 1 << 14) -> list[Fingerprint]:
    """Distinct fingerprints of the dominated extensions of the given ``U``, sorted.

    Same values as :func:`fingerprint` on each extension, computed in int64 batches.
    """
    n = m + 1
    iu = np.triu_indices(n, 1)
    keys: set[Fingerprint] = set()
    indices = np.asarray(indices, dtype=np.int64)
    for lo in range(0, len(indices), chunk):
        S = _extension_seidel(m, indices[lo:lo + chunk])
        M = S @ S
        polys = _batch_char_poly(S)
        upper = M[:, iu[0], iu[1]]
        num = n * n * (n - 1) * (n - 2) - 6 * (upper * upper).sum(axis=1)
        assert np.all(num % 96 == 0)
        delta = num // 96
        rows = np.concatenate([polys, np.sort(np.abs(upper), axis=1), delta[:, None]], axis=1)
        for row in np.unique(rows, axis=0).tolist():
            keys.add(Fingerprint(tuple(row[:n + 1]), tuple(row[n + 1:-1]), row[-1]))
    return sorted(keys)


def classify_up_to_switching(tournaments: list[Tournament]) -> list[Tournament]:
    """One representative per class under switching composed with relabelling.

    Fingerprints split the list first; the exact relabelling search only
    runs inside a fingerprint bucket.
    """
    if tournaments and tournaments[0].n > MAX_ISO_ORDER:
        raise ValueError(f"class splitting limited to n <= {MAX_ISO_ORDER}")
    buckets: dict = {}
    for T in tournaments:
        buckets.setdefault(fingerprint(T), []).append(T)
    reps: list[Tournament] = []
    for key in sorted(buckets):
        local: list[Tournament] = []
        for T in buckets[key]:
            if not any(are_switching_equivalent(R, T, up_to_iso=True) for R in local):
                local.append(T)
        reps.extend(local)
    return reps


def local_search(
    n: int, restarts: int = 20, steps: int = 200, seed: int = 0
) -> tuple[int, list[Tournament]]:
    """Randomised hill climbing on ``delta(U) + c3(U)`` with ``U`` on ``n - 1`` vertices.

    Sideways moves are allowed, so plateaus are explored.  Returns the best
    value found and the distinct dominated extensions attaining it.
    """
    m = n - 1
    P = num_pairs(m)
    if m < 1 or P > 62:
        raise ValueError(f"local search supports 2 <= n <= 12, got {n}")
    rng = np.random.default_rng(seed)
    flips = np.left_shift(np.int64(1), np.arange(P, dtype=np.int64))
    best = -1
    found: set[int] = set()
    for _ in range(restarts):
        cur = int(rng.integers(0, 1 << P))
        d, c = scores(m, np.array([cur]))
        val = int(d[0] + c[0])
        for _ in range(steps):
            nbrs = np.int64(cur) ^ flips
            d, c = scores(m, nbrs)
            s = d + c
            top = int(s.max())
            if top < val:
                break
            choices = np.flatnonzero(s == top)
            cur = int(nbrs[rng.choice(choices)])
            val = top
            if val > best:
                best, found = val, set()
            if val == best:
                found.add(cur)
    reps = [add_dominating_vertex(Tournament.from_index(m, i)) for i in sorted(found)]
    return best, reps
