"""Exact rational linear algebra and separation primitives.

Everything in this module works over ``fractions.Fraction`` (or plain
ints, which Fraction arithmetic absorbs).  No floating point is used
anywhere; all feasibility decisions are exact and every answer is either
witnessed or certified.

Vectors are plain tuples.  The separation routines implement the Gordan
alternative with a small two-phase simplex using Bland's rule, so the
output is deterministic: the same input always yields the same witness.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence


class DimensionMismatchError(ValueError):
    """Vectors of different dimensions were mixed in one operation."""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition."""


Vec = tuple


def vec(*coords) -> Vec:
    return tuple(Fraction(c) for c in coords)


def _check_common_dim(vectors) -> int:
    dims = {len(v) for v in vectors}
    if len(dims) > 1:
        raise DimensionMismatchError("vectors have mixed dimensions: %s" % sorted(dims))
    return dims.pop() if dims else 0


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def vdot(u: Vec, v: Vec):
    if len(u) != len(v):
        raise DimensionMismatchError("dot of %d-dim and %d-dim vectors" % (len(u), len(v)))
    return sum(a * b for a, b in zip(u, v))


def is_zero(u: Vec) -> bool:
    return all(a == 0 for a in u)


def primitive(u: Vec) -> tuple:
    """Scale a nonzero rational vector to a primitive integer vector, keeping direction."""
    if is_zero(u):
        raise InvalidArgumentError("zero vector has no primitive form")
    fracs = [Fraction(a) for a in u]
    denom_lcm = 1
    for f in fracs:
        d = f.denominator
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    ints = [int(f * denom_lcm) for f in fracs]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return tuple(a // g for a in ints)


def span_rank(vectors: Iterable[Vec]) -> int:
    """Dimension of the rational span of a finite set of vectors."""
    vectors = list(vectors)
    if not vectors:
        return 0
    dim = _check_common_dim(vectors)
    rows = [[Fraction(a) for a in v] for v in vectors]
    rank = 0
    for col in range(dim):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = 1 / prow[col]
        rows[rank] = [a * inv for a in prow]
        prow = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def are_collinear(u: Vec, v: Vec) -> bool:
    """Whether u = lam*v for some nonzero rational lam.  Zero inputs are rejected."""
    if len(u) != len(v):
        raise DimensionMismatchError("collinearity of mixed dimensions")
    if is_zero(u) or is_zero(v):
        raise InvalidArgumentError("collinearity is undefined for the zero vector")
    lam = None
    for a, b in zip(u, v):
        if b == 0:
            if a != 0:
                return False
        else:
            lam = Fraction(a, b) if not isinstance(a, Fraction) else a / b
            break
    if lam is None:
        return False
    return all(a == lam * b for a, b in zip(u, v))


def solve_linear(basis: Sequence[Vec], target: Vec) -> Optional[tuple]:
    """Solve sum(c_i * basis_i) = target exactly.

    Returns the coefficient tuple if the (possibly rectangular) system is
    consistent and the basis vectors are linearly independent, else None.
    """
    if not basis:
        return () if is_zero(target) else None
    dim = _check_common_dim(list(basis) + [target])
    n = len(basis)
    # Augmented matrix of the column system.
    rows = [[Fraction(basis[j][i]) for j in range(n)] + [Fraction(target[i])] for i in range(dim)]
    piv_cols = []
    r = 0
    for col in range(n):
        pivot = None
        for rr in range(r, dim):
            if rows[rr][col] != 0:
                pivot = rr
                break
        if pivot is None:
            return None  # dependent basis: bail out, callers require independence
        rows[r], rows[pivot] = rows[pivot], rows[r]
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
            return None  # inconsistent
    coeffs = [Fraction(0)] * n
    for i, col in enumerate(piv_cols):
        coeffs[col] = rows[i][n]
    return tuple(coeffs)


# ---------------------------------------------------------------------------
# Exact simplex (min c.x  s.t.  A x = b, x >= 0), Bland's rule.
# ---------------------------------------------------------------------------

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class LPResult:
    def __init__(self, status, x=None, objective=None, duals=None):
        self.status = status
        self.x = x
        self.objective = objective
        self.duals = duals


def _pivot(tab, basis, red, prow, pcol):
    inv = 1 / tab[prow][pcol]
    tab[prow] = [a * inv for a in tab[prow]]
    piv = tab[prow]
    for r in range(len(tab)):
        if r != prow and tab[r][pcol] != 0:
            f = tab[r][pcol]
            tab[r] = [a - f * b for a, b in zip(tab[r], piv)]
    f = red[pcol]
    if f != 0:
        for j in range(len(red)):
            red[j] -= f * piv[j]
    basis[prow] = pcol


def _run_simplex(tab, basis, red, allowed):
    """Bland's rule loop on a tableau whose reduced-cost row is `red`."""
    ncols = len(red) - 1
    while True:
        enter = None
        for j in range(ncols):
            if allowed[j] and red[j] < 0 and j not in basis:
                enter = j
                break
        if enter is None:
            return OPTIMAL
        leave = None
        best = None
        for r in range(len(tab)):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best = ratio
                    leave = r
        if leave is None:
            return UNBOUNDED
        _pivot(tab, basis, red, leave, enter)


def solve_lp(A, b, c) -> LPResult:
    """Exact two-phase simplex for min c.x s.t. A x = b, x >= 0.

    Returns an LPResult.  On INFEASIBLE the `duals` field carries a vector
    y with y.b > 0 and y.A_j <= 0 for every column j (a Farkas certificate,
    taken from the optimal phase-one multipliers).
    """
    m = len(A)
    n = len(A[0]) if m else (len(c) if c else 0)
    rows = [[Fraction(a) for a in row] for row in A]
    rhs = [Fraction(x) for x in b]
    row_sign = [1] * m
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]
            row_sign[i] = -1
    # Tableau columns: n originals, m artificials, then RHS.
    tab = []
    for i in range(m):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(rows[i] + art + [rhs[i]])
    basis = [n + i for i in range(m)]
    # Phase 1 reduced costs: cost 1 on artificials => red_j = -sum of column j.
    red = [Fraction(0)] * (n + m + 1)
    for j in range(n):
        red[j] = -sum(tab[i][j] for i in range(m))
    red[-1] = -sum(rhs)
    allowed = [True] * n + [False] * m  # artificials never (re-)enter
    _run_simplex(tab, basis, red, allowed)
    phase1 = -red[-1]
    if phase1 > 0:
        # Farkas certificate: the phase-one multiplier of row i is
        # 1 - red[artificial_i], flipped back where the row was negated.
        duals = tuple(row_sign[i] * (Fraction(1) - red[n + i]) for i in range(m))
        return LPResult(INFEASIBLE, duals=duals)
    # Drive basic artificials out (or drop redundant rows).
    r = 0
    while r < len(tab):
        if basis[r] >= n:
            pcol = None
            for j in range(n):
                if tab[r][j] != 0 and j not in basis:
                    pcol = j
                    break
            if pcol is None:
                del tab[r]
                del basis[r]
                continue
            _pivot(tab, basis, red, r, pcol)
        r += 1
    m2 = len(tab)
    # Phase 2 reduced costs for the real objective.
    cost = [Fraction(x) for x in c] + [Fraction(0)] * m
    red2 = list(cost) + [Fraction(0)]
    for r in range(m2):
        f = cost[basis[r]]
        if f != 0:
            for j in range(n + m + 1):
                red2[j] -= f * tab[r][j]
    status = _run_simplex(tab, basis, red2, allowed)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = [Fraction(0)] * n
    for r in range(m2):
        if basis[r] < n:
            x[basis[r]] = tab[r][-1]
    obj = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    return LPResult(OPTIMAL, x=tuple(x), objective=obj)


# ---------------------------------------------------------------------------
# Separation
# ---------------------------------------------------------------------------

class Separation:
    """Outcome of an exact strict-separation query.

    Exactly one of `separator` (primitive integer functional with
    separator.v > 0 for every input vector) and `certificate`
    (convex coefficients with sum(y_i v_i) = 0, sum(y_i) = 1, y >= 0,
    proving 0 lies in the convex hull) is set.
    """

    def __init__(self, separator=None, certificate=None):
        self.separator = separator
        self.certificate = certificate

    @property
    def separable(self) -> bool:
        return self.separator is not None


def strict_separation(vectors: Iterable[Vec]) -> Separation:
    vs = sorted(set(tuple(v) for v in vectors))
    if not vs:
        raise InvalidArgumentError("strict separation of an empty set")
    k = _check_common_dim(vs)
    m = len(vs)
    # Gordan system: y >= 0, sum(y_i v_i) = 0, sum(y_i) = 1.
    A = [[vs[i][c] for i in range(m)] for c in range(k)]
    A.append([1] * m)
    b = [0] * k + [1]
    res = solve_lp(A, b, [0] * m)
    if res.status == OPTIMAL:
        y = res.x
        assert all(t >= 0 for t in y) and sum(y) == 1
        assert all(sum(y[i] * vs[i][c] for i in range(m)) == 0 for c in range(k))
        return Separation(certificate=tuple(zip(vs, y)))
    assert res.status == INFEASIBLE
    pi = res.duals
    f = primitive(tuple(-pi[c] for c in range(k)))
    assert all(vdot(f, v) > 0 for v in vs)
    return Separation(separator=f)


def strict_separator(positives: Iterable[Vec]) -> Optional[tuple]:
    """A rational functional strictly positive on every input vector, or None."""
    return strict_separation(positives).separator


_PERTURBATION_MEMO = {}


def _perturbation_data(all_vs):
    """Per root set: the pairwise difference directions and an integer
    direction vector with nonzero pairing against all of them (memoized,
    since callers reuse one root set across many queries)."""
    key = tuple(all_vs)
    cached = _PERTURBATION_MEMO.get(key)
    if cached is not None:
        return cached
    k = len(all_vs[0]) if all_vs else 0
    diffs = set()
    for i in range(len(all_vs)):
        for j in range(i + 1, len(all_vs)):
            u = vsub(all_vs[i], all_vs[j])
            diffs.add(max(u, vneg(u)))
    diffs = sorted(diffs)
    t = 1
    while True:
        d = tuple(t ** e for e in range(k))
        if all(sum(a * b for a, b in zip(d, u)) != 0 for u in diffs):
            break
        t += 1
    _PERTURBATION_MEMO[key] = (diffs, d)
    return diffs, d


def generic_separator(all_roots: Iterable[Vec], positives: Iterable[Vec],
                      strict_hint=None) -> Optional[tuple]:
    """A functional positive on `positives`, negative on the rest, with
    pairwise distinct values on `all_roots`; None when no strict separator
    exists.  Deterministic: a fixed perturbation schedule is applied to the
    canonical strict separator.  `strict_hint`, when given, must already
    separate the positive side strictly and skips the feasibility solve."""
    all_vs = sorted(set(tuple(v) for v in all_roots))
    pos = sorted(set(tuple(v) for v in positives))
    pos_set = set(pos)
    if not set(all_vs) >= pos_set:
        raise InvalidArgumentError("positives must be a subset of all_roots")
    strict_side = sorted(set(pos + [vneg(v) for v in all_vs if v not in pos_set]))
    if strict_hint is not None and all(vdot(strict_hint, v) > 0 for v in strict_side):
        f0 = tuple(strict_hint)
    else:
        f0 = strict_separator(strict_side)
    if f0 is None:
        return None
    diffs, d = _perturbation_data(all_vs)
    # Largest epsilon = p/q keeping strict positivity on every constraint;
    # the candidate q*f0 + p*d is kept in integers for fast exact checks.
    eps_cap = None
    for v in strict_side:
        dv = vdot(d, v)
        if dv < 0:
            bound = Fraction(vdot(f0, v), -dv)
            if eps_cap is None or bound < eps_cap:
                eps_cap = bound
    eps = Fraction(1) if eps_cap is None else eps_cap / 2
    while True:
        p, q = eps.numerator, eps.denominator
        f = tuple(q * a + p * b for a, b in zip(f0, d))
        if all(sum(a * b for a, b in zip(f, u)) != 0 for u in diffs):
            break
        eps /= 2
    f = primitive(f)
    assert all(vdot(f, v) > 0 for v in pos)
    assert all(vdot(f, v) < 0 for v in all_vs if v not in pos_set)
    return f


def positive_combination_witness(target: Vec, generators: Iterable[Vec],
                                 min_independent: int) -> Optional[tuple]:
    """Strictly positive rational coefficients over a subset S of the
    generators with span_rank(S) >= min_independent and sum = target.

    Returns a tuple of (generator, coefficient) pairs or None.  The search
    is exact: a subset works iff the maximal-support solution works, because
    averaging two solutions merges their supports.
    """
    gens = sorted(set(tuple(g) for g in generators))
    if not gens:
        return None
    dim = _check_common_dim(list(gens) + [tuple(target)])
    n = len(gens)
    if min_independent > n:
        return None
    A = [[gens[j][c] for j in range(n)] for c in range(dim)]
    b = list(target)
    res = solve_lp(A, b, [0] * n)
    if res.status != OPTIMAL:
        return None
    x = list(res.x)
    while True:
        support = [j for j in range(n) if x[j] > 0]
        if span_rank([gens[j] for j in support]) >= min_independent:
            coeffs = tuple((gens[j], x[j]) for j in support)
            assert all(c > 0 for _, c in coeffs)
            return coeffs
        zero = [j for j in range(n) if x[j] == 0]
        if not zero:
            return None
        # max t  s.t.  G x = target, t <= sum_{zero} x_j, t <= 1:
        # detects whether any provably-zero coordinate can be made positive.
        nz = len(zero)
        ncols = n + 1 + 2  # x, t, two slacks
        A2 = []
        for c in range(dim):
            A2.append([gens[j][c] for j in range(n)] + [0, 0, 0])
        row_t1 = [(-1 if j in zero else 0) for j in range(n)] + [1, 1, 0]
        row_t2 = [0] * n + [1, 0, 1]
        A2.append(row_t1)
        A2.append(row_t2)
        b2 = b + [0, 1]
        cvec = [0] * n + [-1, 0, 0]
        res2 = solve_lp(A2, b2, cvec)
        assert res2.status == OPTIMAL
        if res2.objective == 0:
            return None  # every zero coordinate is zero in every solution
        x2 = res2.x[:n]
        x = [(a + bb) / 2 for a, bb in zip(x, x2)]
