"""Dynkin diagrams, their automorphism groups, and parabolic data (J, Gamma).

Diagram automorphisms are permutations of the simple-root indices; they act
on arbitrary roots by permuting simple-root coordinates.  Gamma is always
supplied by the caller (directly or through a named label) and validated,
never inferred.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .rootsys import RootSystem, UnsupportedTypeError


class DatumInvalidError(ValueError):
    """A (J, Gamma) pair violates invariance or Gamma is not a subgroup."""

    def __init__(self, message, witnesses=()):
        super().__init__(message)
        self.witnesses = tuple(witnesses)


@dataclass(frozen=True)
class DynkinDiagram:
    """Nodes are simple-root indices; bonds carry multiplicity and, when the
    multiplicity exceeds 1, the (long, short) direction."""

    system: RootSystem
    nodes: tuple
    bonds: tuple  # entries (i, j, multiplicity, arrow) with i < j; arrow = (long, short) or None

    def bond_multiplicity(self, i, j):
        for a, b, mult, _ in self.bonds:
            if {a, b} == {i, j}:
                return mult
        return 0


def diagram_of(system: RootSystem) -> DynkinDiagram:
    if system.series == "BC":
        raise UnsupportedTypeError("BC systems arise only as relative systems "
                                   "and have no Dynkin diagram here")
    n = system.rank
    bonds = []
    for i in range(n):
        for j in range(i + 1, n):
            mult = system.cartan[i][j] * system.cartan[j][i]
            if mult == 0:
                continue
            arrow = None
            if mult > 1:
                li = system.lengths[i]
                lj = system.lengths[j]
                arrow = (i, j) if li > lj else (j, i)
            bonds.append((i, j, mult, arrow))
    return DynkinDiagram(system, tuple(range(n)), tuple(bonds))


def automorphism_group(diagram: DynkinDiagram):
    """Every node permutation preserving bond multiplicities and root
    lengths (hence arrows), found by exhaustive search."""
    system = diagram.system
    n = len(diagram.nodes)
    mult = [[0] * n for _ in range(n)]
    for i, j, m, _ in diagram.bonds:
        mult[i][j] = mult[j][i] = m
    elements = []
    for perm in itertools.permutations(range(n)):
        if any(system.lengths[perm[i]] != system.lengths[i] for i in range(n)):
            continue
        if all(mult[perm[i]][perm[j]] == mult[i][j]
               for i in range(n) for j in range(i + 1, n)):
            elements.append(perm)
    return DiagramAutomorphismGroup(diagram, tuple(sorted(elements)))


@dataclass(frozen=True)
class DiagramAutomorphismGroup:
    diagram: DynkinDiagram
    elements: tuple

    @property
    def order(self):
        return len(self.elements)

    def subgroup(self, label: str) -> tuple:
        """Named subgroup: 'trivial', 'flip' (the least nontrivial
        involution) or 'triality' (the cyclic group of the least
        order-3 element)."""
        n = len(self.diagram.nodes)
        identity = tuple(range(n))
        if label == "trivial":
            return (identity,)
        if label == "flip":
            for p in self.elements:
                if p != identity and compose(p, p) == identity:
                    return (identity, p)
            raise DatumInvalidError("diagram has no involution for 'flip'")
        if label == "triality":
            for p in self.elements:
                if p != identity and compose(p, compose(p, p)) == identity and compose(p, p) != identity:
                    return (identity, p, compose(p, p))
            raise DatumInvalidError("diagram has no order-3 automorphism for 'triality'")
        raise DatumInvalidError("unknown automorphism label %r" % label)


def compose(p, q):
    """Permutation composition p after q."""
    return tuple(p[q[i]] for i in range(len(p)))


def invert(p):
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def act_on_root(perm, coords):
    """Linear extension of a node permutation: sends alpha_j to alpha_perm[j]."""
    out = [0] * len(coords)
    for j, c in enumerate(coords):
        out[perm[j]] = c
    return tuple(out)


@dataclass(frozen=True)
class ParabolicDatum:
    system: RootSystem
    J: tuple  # sorted node indices
    gamma: tuple  # permutations, a validated subgroup of Aut(D)

    @property
    def J_set(self):
        return frozenset(self.J)

    def orbits_on_J(self):
        """Gamma-orbits on J, each sorted, listed by least member."""
        remaining = set(self.J)
        orbits = []
        while remaining:
            seed = min(remaining)
            orbit = {p[seed] for p in self.gamma}
            orbits.append(tuple(sorted(orbit)))
            remaining -= orbit
        return tuple(sorted(orbits))


def validate_datum(diagram: DynkinDiagram, J, gamma) -> ParabolicDatum:
    """Check that gamma is a subgroup of Aut(D) and J is gamma-invariant."""
    system = diagram.system
    nodes = set(diagram.nodes)
    J = tuple(sorted(set(J)))
    if not set(J) <= nodes:
        raise DatumInvalidError("J contains non-nodes: %s" % sorted(set(J) - nodes))
    gamma = tuple(sorted(set(tuple(p) for p in gamma)))
    aut = set(automorphism_group(diagram).elements)
    bad = [p for p in gamma if p not in aut]
    if bad:
        raise DatumInvalidError("not diagram automorphisms: %s" % bad, witnesses=bad)
    identity = tuple(range(len(diagram.nodes)))
    if identity not in gamma:
        raise DatumInvalidError("gamma lacks the identity")
    for p in gamma:
        if invert(p) not in gamma:
            raise DatumInvalidError("gamma not closed under inverse at %s" % (p,))
        for q in gamma:
            if compose(p, q) not in gamma:
                raise DatumInvalidError("gamma not closed under composition "
                                        "at %s * %s" % (p, q))
    witnesses = []
    for p in gamma:
        for a in J:
            if p[a] not in J:
                witnesses.append((p, a, p[a]))
    if witnesses:
        raise DatumInvalidError(
            "J is not gamma-invariant: " +
            ", ".join("sigma=%s maps node %d to %d outside J" % w for w in witnesses),
            witnesses=witnesses)
    return ParabolicDatum(system, J, gamma)


def datum_from_labels(system: RootSystem, gamma_label: str, J_spec) -> ParabolicDatum:
    """Build a datum from a named automorphism subgroup and 'all' or an
    explicit node list."""
    diagram = diagram_of(system)
    group = automorphism_group(diagram)
    gamma = group.subgroup(gamma_label)
    J = diagram.nodes if J_spec == "all" else tuple(J_spec)
    return validate_datum(diagram, J, gamma)


def trivial_datum(system: RootSystem) -> ParabolicDatum:
    return datum_from_labels(system, "trivial", "all")
