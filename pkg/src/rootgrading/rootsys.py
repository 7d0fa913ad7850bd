"""Finite root systems in simple-root coordinates.

Roots are integer tuples giving coordinates in the simple-root basis, so
all arithmetic is exact.  Reduced series are generated by reflection
closure from the Cartan matrix; the non-reduced family BC is the union of
the corresponding B-type system with the doubles of its short roots.

Canonical root order, used for every listing in this package: sort by
height (coordinate sum), then by the reversed coordinate tuple.  Under
this order the simple roots come out in index order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .exactlin import span_rank, vadd, vneg, vsub


class UnsupportedTypeError(ValueError):
    """The requested (series, rank) pair is not in the admissible table."""


_E_EDGES = {
    6: [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5)],
    7: [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6)],
    8: [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)],
}

# Root-count formulas per series, used for post-construction sanity checks.
_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
    "BC": lambda n: 2 * n * (n + 1),
}


def admissible(series: str, rank: int) -> bool:
    return {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 2,  # D2 = A1 x A1 kept as the reducible rank-2 surrogate
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
        "BC": rank >= 1,
    }.get(series, False)


def _cartan_and_lengths(series: str, rank: int):
    """Cartan matrix c[i][j] = <alpha_j, alpha_i^vee> and half-lengths d_i."""
    n = rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    d = [Fraction(1)] * n

    def bond(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if series == "A":
        for i in range(n - 1):
            bond(i, i + 1)
    elif series in ("B", "BC"):
        if n == 1:
            d[0] = Fraction(1, 2)
        else:
            for i in range(n - 2):
                bond(i, i + 1)
            # alpha_{n-1} long, alpha_n short
            bond(n - 2, n - 1, cij=-1, cji=-2)
            d[n - 1] = Fraction(1, 2)
    elif series == "C":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 2, n - 1, cij=-2, cji=-1)
        d[n - 1] = Fraction(2)
    elif series == "D":
        if n == 2:
            pass  # two orthogonal A1 nodes
        else:
            for i in range(n - 3):
                bond(i, i + 1)
            bond(n - 3, n - 2)
            bond(n - 3, n - 1)
    elif series == "E":
        for i, j in _E_EDGES[n]:
            bond(i, j)
    elif series == "F":
        bond(0, 1)
        bond(1, 2, cij=-1, cji=-2)
        bond(2, 3)
        d[2] = d[3] = Fraction(1, 2)
    elif series == "G":
        # alpha_1 short, alpha_2 long; highest root 3a1 + 2a2
        bond(0, 1, cij=-3, cji=-1)
        d[1] = Fraction(3)
    return c, d


def canonical_key(coords):
    return (sum(coords), tuple(reversed(coords)))


def height(coords) -> int:
    return sum(coords)


def reflect(coords, i, cartan):
    pairing = sum(cartan[i][j] * coords[j] for j in range(len(coords)))
    out = list(coords)
    out[i] -= pairing
    return tuple(out)


class RootSystem:
    """A finite root system with a distinguished simple system.

    Attributes are computed once at construction and treated as immutable.
    """

    def __init__(self, series: str, rank: int):
        if not admissible(series, rank):
            raise UnsupportedTypeError("no root system of type %s_%d" % (series, rank))
        self.series = series
        self.rank = rank
        base = "B" if series == "BC" else series
        self.cartan, self.lengths = _cartan_and_lengths(series, rank)
        simples = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
        roots = set(simples)
        frontier = list(simples)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(rank):
                    s = reflect(r, i, self.cartan)
                    if s not in roots:
                        roots.add(s)
                        nxt.append(s)
            frontier = nxt
        if series == "BC":
            shorts = [r for r in roots if self._form_raw(r, r) == 1]
            for r in shorts:
                roots.add(tuple(2 * x for x in r))
        self.simple_roots = tuple(simples)
        self.roots = tuple(sorted(roots, key=canonical_key))
        self.root_set = frozenset(self.roots)
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.positive_roots = tuple(r for r in self.roots if all(x >= 0 for x in r))
        for r in self.roots:
            if not (all(x >= 0 for x in r) or all(x <= 0 for x in r)):
                raise AssertionError("mixed-sign root %r in %s_%d" % (r, series, rank))
        if vneg(self.roots[0]) not in self.root_set or len(self.roots) != _COUNT[series](rank):
            raise AssertionError("construction self-check failed for %s_%d" % (series, rank))
        self._chambers = None

    def __repr__(self):
        return "RootSystem(%s, %d)" % (self.series, self.rank)

    @property
    def label(self) -> str:
        return "%s%d" % (self.series, self.rank)

    def _form_raw(self, u, v):
        total = Fraction(0)
        for i in range(self.rank):
            if u[i] == 0:
                continue
            di = self.lengths[i]
            for j in range(self.rank):
                if v[j] != 0:
                    total += u[i] * di * self.cartan[i][j] * v[j]
        return total

    def form(self, u, v) -> Fraction:
        """The Weyl-invariant symmetric form (alpha_i, alpha_j) = d_i c_ij."""
        return self._form_raw(u, v)

    def is_root(self, coords) -> bool:
        return tuple(coords) in self.root_set


@lru_cache(maxsize=None)
def build_root_system(series: str, rank: int) -> RootSystem:
    """Construct (and cache) the root system of the given type."""
    return RootSystem(series, rank)


def irreducible_components(system: RootSystem):
    """Finest partition of the roots into span-orthogonal closed subsystems,
    via connectivity of the non-orthogonality graph."""
    return orthogonality_components(system.roots, system.form)


def orthogonality_components(vectors, form):
    vectors = list(vectors)
    n = len(vectors)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i in range(n):
        for j in range(i + 1, n):
            if form(vectors[i], vectors[j]) != 0:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(vectors[i])
    comps = [tuple(sorted(g, key=canonical_key)) for g in groups.values()]
    return tuple(sorted(comps, key=lambda c: canonical_key(c[0])))


def chain_in_chamber(root_set, base, positive_set, x):
    """A sequence of base elements with every prefix sum a root and total x.

    Peeling always subtracts the canonically greatest feasible base element,
    so the result is unique; the chain lists the peels in reverse, which is
    what keeps all prefix sums inside the root system.
    """
    base_sorted = sorted(base, key=canonical_key)
    base_set = set(base_sorted)
    if x not in positive_set:
        raise ValueError("%r is not a positive root of this chamber" % (x,))
    peels = []
    z = x
    while z not in base_set:
        choice = None
        for y in base_sorted:
            rest = vsub(z, y)
            if rest in root_set:
                choice = y  # keep scanning: the last hit is the greatest
        if choice is None:
            raise AssertionError("no base element peels off %r" % (z,))
        peels.append(choice)
        z = vsub(z, choice)
    chain = (z,) + tuple(reversed(peels))
    total = chain[0]
    for y in chain[1:]:
        total = vadd(total, y)
        assert total in root_set
    assert total == x or len(chain) == 1
    return chain


def simple_sum_chain(system: RootSystem, x):
    """Decompose a positive root as an ordered sum of simple roots with all
    prefix sums roots."""
    if system.series == "BC":
        raise UnsupportedTypeError("chains are defined for reduced systems")
    x = tuple(x)
    if x not in system.root_set or not all(c >= 0 for c in x) or all(c == 0 for c in x):
        raise ValueError("%r is not a positive root of %s" % (x, system.label))
    return chain_in_chamber(system.root_set, system.simple_roots,
                            set(system.positive_roots), x)


class PositiveSystem:
    """One chamber of the Weyl arrangement: a positive system with a
    functional witness that is positive exactly on it."""

    def __init__(self, chamber_id, positive_roots, witness, system):
        self.chamber_id = chamber_id
        self.positive_roots = positive_roots
        self.witness = witness
        self.system = system
        self._simple = None

    @property
    def positive_set(self):
        return frozenset(self.positive_roots)

    def simple_system(self):
        """Indecomposable positives: elements that are not a sum of two
        positives.  For a chamber this is its base."""
        if self._simple is None:
            pos = set(self.positive_roots)
            simple = []
            for p in self.positive_roots:
                if not any(vsub(p, a) in pos for a in pos if a != p):
                    simple.append(p)
            self._simple = tuple(sorted(simple, key=canonical_key))
        return self._simple


class ChamberFamily:
    """All positive systems of a root system, enumerated breadth-first by
    simple reflections from the standard one.  Ids follow discovery order,
    which is deterministic."""

    def __init__(self, system):
        self.system = system
        n = len(system.roots)
        rank = system.rank
        perms = []
        for i in range(rank):
            perm = [system.index[reflect(r, i, system.cartan)] for r in system.roots]
            perms.append(perm)
        std_mask = 0
        for r in system.positive_roots:
            std_mask |= 1 << system.index[r]
        f0 = tuple(1 for _ in range(rank))  # the height functional
        masks = [std_mask]
        witnesses = [f0]
        seen = {std_mask: 0}
        queue = [0]
        qi = 0
        while qi < len(queue):
            cur = queue[qi]
            qi += 1
            mask = masks[cur]
            wit = witnesses[cur]
            for i in range(rank):
                perm = perms[i]
                new_mask = 0
                m = mask
                while m:
                    low = m & -m
                    new_mask |= 1 << perm[low.bit_length() - 1]
                    m ^= low
                if new_mask not in seen:
                    ci = system.cartan[i]
                    fi = wit[i]
                    new_wit = tuple(wit[j] - ci[j] * fi for j in range(rank))
                    seen[new_mask] = len(masks)
                    masks.append(new_mask)
                    witnesses.append(new_wit)
                    queue.append(len(masks) - 1)
        self.masks = masks
        self.witnesses = witnesses
        self._cache = {}

    def __len__(self):
        return len(self.masks)

    def __iter__(self):
        return (self.get(i) for i in range(len(self.masks)))

    def positive_indices(self, chamber_id):
        mask = self.masks[chamber_id]
        out = []
        m = mask
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out

    def get(self, chamber_id) -> PositiveSystem:
        if chamber_id not in self._cache:
            roots = tuple(self.system.roots[i] for i in self.positive_indices(chamber_id))
            self._cache[chamber_id] = PositiveSystem(
                chamber_id, roots, self.witnesses[chamber_id], self.system)
        return self._cache[chamber_id]


def enumerate_positive_systems(system: RootSystem) -> ChamberFamily:
    """All positive systems of the arrangement; count = Weyl group order."""
    if system._chambers is None:
        system._chambers = ChamberFamily(system)
    return system._chambers
