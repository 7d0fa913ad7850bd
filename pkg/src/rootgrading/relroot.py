"""The quotient projection attached to a parabolic datum and the resulting
relative root system, with fibers, heights, components and classification.

Quotient coordinates: one coordinate per Gamma-orbit on J, whose value is
the sum of the root's simple-root coefficients over that orbit.  This
realizes the formal quotient of the ambient root lattice by the sublattice
spanned by the simple roots outside J together with the orbit differences,
entirely in integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from . import rootsys
from .dynkin import ParabolicDatum, act_on_root
from .exactlin import solve_linear, span_rank, vneg, vsub
from .rootsys import (RootSystem, build_root_system, canonical_key,
                      orthogonality_components)


class NotARelativeRootError(ValueError):
    """The queried vector is not an element of the relative root system."""


class ClassificationFailureError(RuntimeError):
    """A relative component matched no catalog system; indicates a bug."""


class Projection:
    """Integer linear map realizing the quotient of the root lattice."""

    def __init__(self, system: RootSystem, datum: ParabolicDatum):
        self.system = system
        self.datum = datum
        self.orbits = datum.orbits_on_J()
        n = system.rank
        k = len(self.orbits)
        self.rank = k
        self.matrix = tuple(tuple(1 if j in orbit else 0 for j in range(n))
                            for orbit in self.orbits)
        kernel = []
        J = set(datum.J)
        for j in range(n):
            if j not in J:
                kernel.append(tuple(1 if t == j else 0 for t in range(n)))
        for orbit in self.orbits:
            base = orbit[0]
            for other in orbit[1:]:
                diff = [0] * n
                diff[base] = 1
                diff[other] = -1
                kernel.append(tuple(diff))
        self.kernel_basis = tuple(kernel)
        assert span_rank(self.kernel_basis) == n - k if kernel else k == n
        self.fibers = {}
        for root in system.roots:
            img = self.apply(root)
            self.fibers.setdefault(img, []).append(root)
        self.fibers = {img: tuple(roots) for img, roots in self.fibers.items()}
        self.zero_fiber = self.fibers.get((0,) * k, ())

    def apply(self, coords):
        return tuple(sum(coords[j] for j in orbit) for orbit in self.orbits)

    def fiber(self, alpha):
        alpha = tuple(alpha)
        if alpha not in self.fibers or all(a == 0 for a in alpha):
            raise NotARelativeRootError("%r is not a relative root here" % (alpha,))
        return self.fibers[alpha]


class RelativeRootSystem:
    """The image of the ambient roots under the projection, minus zero."""

    def __init__(self, projection: Projection):
        self.projection = projection
        self.rank = projection.rank
        zero = (0,) * self.rank
        self.elements = tuple(sorted((img for img in projection.fibers if img != zero),
                                     key=canonical_key))
        self.element_set = frozenset(self.elements)
        self.index = {r: i for i, r in enumerate(self.elements)}
        seen = []
        for j in sorted(projection.datum.J):
            img = projection.apply(self.projection.system.simple_roots[j])
            if img not in seen:
                seen.append(img)
        self.simple_images = tuple(sorted(seen, key=canonical_key))
        self._form = None
        self._components = None
        self._classification = None

    def __len__(self):
        return len(self.elements)

    @property
    def system(self) -> RootSystem:
        return self.projection.system

    def fiber(self, alpha):
        return self.projection.fiber(alpha)

    def height(self, alpha) -> int:
        alpha = tuple(alpha)
        if alpha not in self.element_set:
            raise NotARelativeRootError("%r is not a relative root here" % (alpha,))
        return sum(alpha)

    def quotient_form(self, u, v) -> Fraction:
        """The ambient invariant form transported through the orthogonal
        complement of the projection kernel; well defined on images."""
        if self._form is None:
            self._form = _pushforward_form(self.projection)
        Q = self._form
        return sum(u[i] * Q[i][j] * v[j] for i in range(self.rank)
                   for j in range(self.rank) if u[i] and v[j])

    def components(self):
        if self._components is None:
            self._components = orthogonality_components(self.elements, self.quotient_form)
        return self._components

    def component_of(self, alpha):
        alpha = tuple(alpha)
        for comp in self.components():
            if alpha in comp:
                return comp
        raise NotARelativeRootError("%r is not a relative root here" % (alpha,))

    def lines(self):
        """Collinearity classes, each keyed by its canonically least member."""
        groups = {}
        for r in self.elements:
            key = min((r, vneg(r)), key=canonical_key)
            prim = _primitive_int(key)
            groups.setdefault(prim, set()).add(r)
        return {k: tuple(sorted(v, key=canonical_key)) for k, v in sorted(groups.items())}


def _primitive_int(coords):
    from math import gcd
    g = 0
    for c in coords:
        g = gcd(g, abs(c))
    return tuple(c // g for c in coords)


def _pushforward_form(projection: Projection):
    system = projection.system
    n = system.rank
    k = projection.rank
    K = projection.kernel_basis
    sections = []
    for orbit in projection.orbits:
        j = orbit[0]
        sections.append(tuple(Fraction(1) if t == j else Fraction(0) for t in range(n)))
    if not K:
        proj_sections = sections
    else:
        m = len(K)
        gram = [[system.form(K[a], K[b]) for b in range(m)] for a in range(m)]
        proj_sections = []
        for s in sections:
            rhs = [system.form(K[a], s) for a in range(m)]
            coeffs = _solve_square_fractions(gram, rhs)
            corrected = list(s)
            for a in range(m):
                for t in range(n):
                    corrected[t] -= coeffs[a] * K[a][t]
            proj_sections.append(tuple(corrected))
    return [[system.form(proj_sections[i], proj_sections[j]) for j in range(k)]
            for i in range(k)]


def _solve_square_fractions(M, rhs):
    m = len(M)
    rows = [[Fraction(M[i][j]) for j in range(m)] + [Fraction(rhs[i])] for i in range(m)]
    for col in range(m):
        piv = next(r for r in range(col, m) if rows[r][col] != 0)
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = 1 / rows[col][col]
        rows[col] = [a * inv for a in rows[col]]
        for r in range(m):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][m] for i in range(m)]


def project(system: RootSystem, datum: ParabolicDatum):
    """Apply the quotient map to every root and package the image."""
    proj = Projection(system, datum)
    return proj, RelativeRootSystem(proj)


def fiber(projection: Projection, alpha):
    return projection.fiber(alpha)


def relative_height(relsys: RelativeRootSystem, alpha) -> int:
    return relsys.height(alpha)


def multiple_class(relsys: RelativeRootSystem, alpha):
    """All positive integer multiples of alpha lying in the system."""
    alpha = tuple(alpha)
    if alpha not in relsys.element_set:
        raise NotARelativeRootError("%r is not a relative root here" % (alpha,))
    members = []
    i = 1
    while True:
        cand = tuple(i * a for a in alpha)
        if any(abs(c) > _coord_bound(relsys) for c in cand):
            break
        if cand in relsys.element_set:
            members.append(cand)
        i += 1
    return tuple(members)


def _coord_bound(relsys):
    return max(abs(c) for r in relsys.elements for c in r)


def is_addition_closed(relsys: RelativeRootSystem, subset) -> bool:
    """Whether a+b stays inside the subset whenever it lies in the system."""
    sub = set(tuple(s) for s in subset)
    if not sub <= relsys.element_set:
        raise NotARelativeRootError("subset contains non-roots")
    for a in sub:
        for b in sub:
            c = tuple(x + y for x, y in zip(a, b))
            if c in relsys.element_set and c not in sub:
                return False
    return True


# ---------------------------------------------------------------------------
# Type classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentType:
    component: tuple
    labels: tuple  # all catalog labels matching this component, e.g. ("B2", "C2")

    @property
    def label(self) -> str:
        return "/".join(self.labels)


_CLASSIFY_CANDIDATES = [
    ("A", lambda r: True),
    ("B", lambda r: r >= 2),
    ("C", lambda r: r >= 2),
    ("D", lambda r: r >= 4),  # D3 suppressed: it is the A3 alias
    ("E", lambda r: r in (6, 7, 8)),
    ("F", lambda r: r == 4),
    ("G", lambda r: r == 2),
    ("BC", lambda r: True),
]


def classify_type(relsys: RelativeRootSystem):
    """Match every component against the catalog by exact linear isomorphism
    over simple-image bases; B2 and C2 are reported together."""
    return tuple(ComponentType(comp, _classify_component(comp))
                 for comp in relsys.components())


def _classify_component(component):
    comp = [tuple(r) for r in component]
    rank = span_rank(comp)
    count = len(comp)
    labels = []
    for series, rank_ok in _CLASSIFY_CANDIDATES:
        if not rank_ok(rank) or not rootsys.admissible(series, rank):
            continue
        candidate = build_root_system(series, rank)
        if len(candidate.roots) != count:
            continue
        if _isomorphic(candidate, comp, rank):
            labels.append("%s%d" % (series, rank))
    if not labels:
        raise ClassificationFailureError(
            "component of %d roots, rank %d, matched nothing" % (count, rank))
    return tuple(labels)


def _isomorphic(candidate: RootSystem, component, rank):
    comp_set = set(component)
    base = _indecomposable_positives(component)
    if len(base) != rank:
        return False
    cand_simples = candidate.simple_roots
    for assignment in permutations(base):
        ok = True
        images = []
        for root in candidate.roots:
            coeffs = root  # coordinates in candidate simple basis
            img = tuple(sum(coeffs[i] * assignment[i][t] for i in range(rank))
                        for t in range(len(assignment[0])))
            if img not in comp_set:
                ok = False
                break
            images.append(img)
        if ok and len(set(images)) == len(component):
            return True
    return False


def _indecomposable_positives(component):
    """A base for the component: pick a deterministic generic side and keep
    the positives that are not sums of two positives."""
    comp = sorted(component, key=canonical_key)
    dim = len(comp[0])
    t = 1
    while True:
        f = tuple(Fraction(t) ** e for e in range(dim))
        values = {}
        degenerate = False
        for r in comp:
            val = sum(a * b for a, b in zip(f, r))
            if val == 0 or val in values.values():
                degenerate = True
                break
            values[r] = val
        if not degenerate:
            break
        t += 1
    pos = [r for r in comp if values[r] > 0]
    pos_set = set(pos)
    return tuple(sorted((p for p in pos
                         if not any(vsub(p, a) in pos_set for a in pos_set if a != p)),
                        key=canonical_key))


def classification_label(relsys: RelativeRootSystem) -> str:
    """One deterministic label for the whole system, components joined by 'x'."""
    return " x ".join(ct.label for ct in classify_type(relsys))
