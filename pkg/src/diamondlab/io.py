"""Tournament and Seidel text formats.

Tournament format::

    n
    <n(n-1)/2 characters of 0/1, upper triangle, row-major>

Seidel format: ``n`` lines of ``n`` whitespace-separated values in {-1, 0, 1}.
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .core import Tournament, TournamentError, num_pairs, seidel, validate_seidel


class FormatError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def dumps_tournament(T: Tournament) -> str:
    return f"{T.n}\n{T.bits()}\n"


def loads_tournament(text: str) -> Tournament:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise FormatError("empty input, expected vertex count", 1)
    head = lines[0].strip()
    try:
        n = int(head)
    except ValueError:
        raise FormatError(f"expected vertex count, got {head!r}", 1) from None
    if n < 1:
        raise FormatError(f"vertex count must be positive, got {n}", 1)
    bits = lines[1].strip() if len(lines) > 1 else ""
    if len(lines) > 2:
        raise FormatError("unexpected extra content", 3)
    for col, ch in enumerate(bits, start=1):
        if ch not in "01":
            raise FormatError(f"invalid arc character {ch!r}", 2, col)
    if len(bits) != num_pairs(n):
        raise FormatError(
            f"expected {num_pairs(n)} arc bits for n={n}, got {len(bits)}",
            2,
            len(bits) + 1,
        )
    try:
        return Tournament.from_bits(n, bits)
    except TournamentError as exc:
        raise FormatError(str(exc), 2) from None


def dumps_seidel(S: np.ndarray) -> str:
    return "".join(" ".join(str(int(x)) for x in row) + "\n" for row in np.asarray(S))


def loads_seidel(text: str) -> np.ndarray:
    rows: list[list[int]] = []
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise FormatError("empty input, expected matrix rows", 1)
    for lineno, line in enumerate(lines, start=1):
        row = []
        for m in re.finditer(r"\S+", line):
            tok = m.group()
            if tok not in ("-1", "0", "1", "+1"):
                raise FormatError(f"entry {tok!r} not in {{-1, 0, 1}}", lineno, m.start() + 1)
            row.append(int(tok))
        rows.append(row)
    n = len(rows)
    for lineno, row in enumerate(rows, start=1):
        if len(row) != n:
            raise FormatError(f"expected {n} entries, got {len(row)}", lineno)
    S = np.array(rows, dtype=np.int64)
    for i in range(n):
        if S[i, i] != 0:
            raise FormatError("diagonal entry must be 0", i + 1, i + 1)
        for j in range(i + 1, n):
            if S[i, j] == 0 or S[i, j] != -S[j, i]:
                raise FormatError(
                    f"entry ({i + 1},{j + 1}) breaks skew-symmetric +-1 pattern",
                    j + 1,
                    i + 1,
                )
    validate_seidel(S)
    return S


def _looks_like_tournament(text: str) -> bool:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines) > 2 or len(lines[0].split()) != 1:
        return False
    if len(lines) == 2 and (" " in lines[1] or "-" in lines[1]):
        return False
    if len(lines) == 1:
        return lines[0] == "1"
    return True


def loads(text: str, fmt: str = "auto") -> Tournament:
    """Parse either format; ``fmt`` is ``auto``, ``tournament`` or ``seidel``."""
    if fmt == "auto":
        fmt = "tournament" if _looks_like_tournament(text) else "seidel"
    if fmt == "tournament":
        return loads_tournament(text)
    if fmt == "seidel":
        return Tournament.from_seidel(loads_seidel(text))
    raise ValueError(f"unknown format {fmt!r}")


def read(path: str | Path, fmt: str = "auto") -> Tournament:
    return loads(Path(path).read_text(), fmt)


def write(T: Tournament, path: str | Path, fmt: str = "tournament") -> None:
    text = dumps_tournament(T) if fmt == "tournament" else dumps_seidel(seidel(T))
    Path(path).write_text(text)
