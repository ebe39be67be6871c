"""Slow, obviously-correct reference implementations used only by tests."""

from itertools import combinations

import sympy


def arcs_of(T):
    return {(i, j) for i in range(T.n) for j in range(T.n) if T.beats(i, j)}


def is_cyclic(arcs, a, b, c):
    return ((a, b) in arcs and (b, c) in arcs and (c, a) in arcs) or (
        (b, a) in arcs and (c, b) in arcs and (a, c) in arcs
    )


def naive_c3(T):
    arcs = arcs_of(T)
    return sum(is_cyclic(arcs, *t) for t in combinations(range(T.n), 3))


def naive_diamonds(T):
    arcs = arcs_of(T)
    total = 0
    for q in combinations(range(T.n), 4):
        total += sum(is_cyclic(arcs, *t) for t in combinations(q, 3)) == 1
    return total


def sympy_charpoly(S):
    x = sympy.symbols("x")
    p = sympy.Matrix(S.tolist()).charpoly(x)
    return [int(c) for c in p.all_coeffs()]


def sympy_det(S):
    return int(sympy.Matrix(S.tolist()).det())
