"""Independent brute-force oracles used by the test suite.

These are deliberately written without reference to the library's own
algorithms: separability in the plane is decided by exact angular
ordering, positive combinations by exhaustive subset search, chains by
exhaustive enumeration, and classical root systems by their textbook
coordinate constructions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def separable_2d(vectors) -> bool:
    """Exact test: is there f with f.v > 0 for all v (2-dimensional case)?

    True iff all vectors fit in an open half-plane, decided by pairwise
    cross products: some vector must have every other vector strictly
    within a half-turn counterclockwise of it.
    """
    vs = [v for v in vectors]
    assert all(len(v) == 2 for v in vs)
    if any(v == (0, 0) for v in vs):
        return False

    def cross(a, b):
        return a[0] * b[1] - a[1] * b[0]

    def dot(a, b):
        return a[0] * b[0] + a[1] * b[1]

    for pivot in vs:
        ok = True
        for v in vs:
            c = cross(pivot, v)
            if c < 0 or (c == 0 and dot(pivot, v) < 0):
                ok = False
                break
        if ok:
            return True
    return False


def positive_combination_exists(target, generators, min_independent) -> bool:
    """Exhaustive-subset oracle for strictly positive combinations.

    For every subset S with rational rank >= min_independent, decide by a
    tiny grid-free argument: solve for interior solutions via repeated
    elimination is overkill here, so instead test solvability with all
    coefficients in a dense finite grid of rationals.  To stay exact and
    complete for the small inputs used in tests, the subset check solves
    the linear system when |S| <= dim (unique solution case) and otherwise
    searches coefficients for |S| - rank free generators over a small
    positive grid with the rest solved exactly.
    """
    gens = sorted(set(tuple(g) for g in generators))
    dim = len(target)
    grid = [Fraction(n, d) for n in range(1, 7) for d in (1, 2, 3)]
    for size in range(1, len(gens) + 1):
        for subset in itertools.combinations(gens, size):
            if _rank(subset) < min_independent:
                continue
            if _strict_solution_exists(target, subset, grid):
                return True
    return False


def _rank(vectors):
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [a * inv for a in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _solve_square(vectors, target):
    """Coefficients writing target over an independent list, or None."""
    n = len(vectors)
    dim = len(target)
    rows = [[Fraction(vectors[j][i]) for j in range(n)] + [Fraction(target[i])]
            for i in range(dim)]
    piv_cols = []
    r = 0
    for col in range(n):
        piv = None
        for rr in range(r, dim):
            if rows[rr][col] != 0:
                piv = rr
                break
        if piv is None:
            return None
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [a * inv for a in rows[r]]
        for rr in range(dim):
            if rr != r and rows[rr][col] != 0:
                f = rows[rr][col]
                rows[rr] = [a - f * b for a, b in zip(rows[rr], rows[r])]
        piv_cols.append(col)
        r += 1
    for rr in range(r, dim):
        if rows[rr][n] != 0:
            return None
    coeffs = [Fraction(0)] * n
    for i, col in enumerate(piv_cols):
        coeffs[col] = rows[i][n]
    return coeffs


def _strict_solution_exists(target, subset, grid):
    subset = list(subset)
    rank = _rank(subset)
    if rank == len(subset):
        coeffs = _solve_square(subset, target)
        return coeffs is not None and all(c > 0 for c in coeffs)
    # Dependent subset: fix grid values on the extra generators.
    for free_count in range(1, len(subset)):
        for free_idx in itertools.combinations(range(len(subset)), free_count):
            rest = [subset[i] for i in range(len(subset)) if i not in free_idx]
            if _rank(rest) != len(rest):
                continue
            for values in itertools.product(grid, repeat=free_count):
                residual = list(target)
                for i, v in zip(free_idx, values):
                    residual = [r - v * x for r, x in zip(residual, subset[i])]
                coeffs = _solve_square(rest, residual)
                if coeffs is not None and all(c > 0 for c in coeffs):
                    return True
    return False


def all_simple_sum_chains(root_set, simples, x):
    """Every sequence of simple roots with all prefix sums in the root set
    and total x, by exhaustive depth-first search."""
    chains = []

    def extend(prefix, total):
        if total == x:
            chains.append(tuple(prefix))
            return
        for y in simples:
            nxt = tuple(a + b for a, b in zip(total, y))
            if nxt in root_set and _leq_coordwise(nxt, x):
                prefix.append(y)
                extend(prefix, nxt)
                prefix.pop()

    zero = tuple(0 for _ in x)
    extend([], zero)
    return chains


def _leq_coordwise(a, b):
    return all(x <= y for x, y in zip(a, b))


# Textbook coordinate constructions of the classical families, used as an
# independent oracle for root counts and (via linear equivalence) content.

def classical_roots_e_basis(series, n):
    roots = set()
    if series == "A":
        dim = n + 1
        for i in range(dim):
            for j in range(dim):
                if i != j:
                    v = [0] * dim
                    v[i] = 1
                    v[j] = -1
                    roots.add(tuple(v))
    elif series in ("B", "C", "D", "BC"):
        dim = n
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        v = [0] * dim
                        v[i] = si
                        v[j] = sj
                        roots.add(tuple(v))
        if series in ("B", "BC"):
            for i in range(n):
                for s in (1, -1):
                    v = [0] * dim
                    v[i] = s
                    roots.add(tuple(v))
        if series in ("C", "BC"):
            for i in range(n):
                for s in (2, -2):
                    v = [0] * dim
                    v[i] = s
                    roots.add(tuple(v))
    else:
        raise ValueError(series)
    return roots
