"""Borel subsets of relative root systems and their cores.

Two independent enumeration strategies are provided and must agree:

* separability: walk every orientation of the root lines and keep the
  strictly separable ones (exact LP per candidate);
* projection: push every ambient positive system through the quotient map,
  keep the images that are Borel subsets, and remember a witnessing
  chamber as the origin.

Cores are computed three independent ways (definitional scan over the
whole family, the sufficient positive-combination criterion, and the
simple-image multiples formula) and cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .exactlin import (are_collinear, generic_separator,
                       positive_combination_witness, primitive, solve_linear,
                       strict_separator, vdot, vneg, vsub)
from .relroot import RelativeRootSystem
from .rootsys import canonical_key, enumerate_positive_systems

SEPARABILITY_LINE_BUDGET = 12


class BudgetExceededError(RuntimeError):
    """Too many root lines for exhaustive sign-pattern search."""


class MissingOriginError(ValueError):
    """The operation needs a Borel subset produced by the projection strategy."""


class InvalidInputError(ValueError):
    """A family failed the completeness recount."""


class OriginSearchError(RuntimeError):
    """No ambient chamber realizes a Borel subset compatibly; this would
    contradict the two-opposite-parabolic-sets argument and means a bug."""


@dataclass(frozen=True)
class OriginContext:
    """Ambient data witnessing a Borel subset as a projected chamber."""

    chamber_id: int
    positive_indices: tuple  # indices into the ambient canonical root list
    base: tuple              # the chamber's simple system D'
    J_prime: tuple           # elements of D' with nonzero image
    simple_images: tuple     # deduplicated images of J', canonically sorted

    def positive_roots(self, system):
        return tuple(system.roots[i] for i in self.positive_indices)


class BorelSubset:
    def __init__(self, relsys, mask, witness, origin, origin_context=None):
        self.relsys = relsys
        self.mask = mask
        self.witness = witness
        self.origin = origin  # "separability-search" or a chamber id
        self.origin_context = origin_context
        self.id = None  # assigned by the family
        self.positive_roots = tuple(relsys.elements[i]
                                    for i in _mask_indices(mask))

    @property
    def positive_set(self):
        return frozenset(self.positive_roots)

    def __contains__(self, root):
        root = tuple(root)
        idx = self.relsys.index.get(root)
        return idx is not None and (self.mask >> idx) & 1


def _mask_indices(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class BorelFamily:
    """The complete family of Borel subsets for one relative system."""

    def __init__(self, relsys, strategy, members):
        self.relsys = relsys
        self.strategy = strategy
        members = sorted(members, key=lambda b: b.mask)
        for i, b in enumerate(members):
            b.id = i
        self.members = tuple(members)
        self.by_mask = {b.mask: b for b in self.members}
        self._line_masks = None
        self._recounted = False
        self.complete = True

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def get(self, borel_id) -> BorelSubset:
        return self.members[borel_id]

    def negation_of(self, b: BorelSubset) -> Optional[BorelSubset]:
        neg_mask = 0
        for i in _mask_indices(b.mask):
            neg_mask |= 1 << self.relsys.index[vneg(self.relsys.elements[i])]
        return self.by_mask.get(neg_mask)

    def line_masks(self):
        """For each relative root index, the bitmask of collinear roots."""
        if self._line_masks is None:
            rel = self.relsys
            masks = []
            for r in rel.elements:
                m = 0
                for i, s in enumerate(rel.elements):
                    if are_collinear(r, s):
                        m |= 1 << i
                masks.append(m)
            self._line_masks = masks
        return self._line_masks

    def recount(self):
        """Structural completeness check: nonzero even size, negation
        closure, distinct members, and every stored witness valid by direct
        evaluation.  Runs once per family; results are cached."""
        if self._recounted:
            return
        if not self.complete:
            raise InvalidInputError("family was not produced by a full enumeration")
        if len(self.members) == 0 or len(self.members) % 2 != 0:
            raise InvalidInputError("family size %d fails the recount" % len(self.members))
        if len(self.by_mask) != len(self.members):
            raise InvalidInputError("duplicate Borel subsets in family")
        rel = self.relsys
        for b in self.members:
            if self.negation_of(b) is None:
                raise InvalidInputError("family not closed under negation")
            for r in rel.elements:
                val = vdot(b.witness, r)
                if (val > 0) != (r in b):
                    raise InvalidInputError("witness of Borel %d is not exact" % b.id)
        self._recounted = True


def enumerate_borel_subsets(relsys: RelativeRootSystem, strategy: str = "auto") -> BorelFamily:
    if strategy == "auto":
        strategy = ("separability"
                    if len(relsys.lines()) <= SEPARABILITY_LINE_BUDGET else "projection")
    if strategy == "separability":
        return _enumerate_by_separability(relsys)
    if strategy == "projection":
        return _enumerate_by_projection(relsys)
    raise ValueError("unknown strategy %r" % strategy)


def _enumerate_by_separability(relsys) -> BorelFamily:
    lines = relsys.lines()
    L = len(lines)
    if L > SEPARABILITY_LINE_BUDGET:
        raise BudgetExceededError(
            "%d root lines exceed the 2^%d sign-pattern budget; "
            "use the projection strategy" % (L, SEPARABILITY_LINE_BUDGET))
    halves = []
    for key, members in sorted(lines.items()):
        plus = tuple(m for m in members if _is_positive_multiple(m, key))
        minus = tuple(m for m in members if m not in plus)
        halves.append((plus, minus))
    members = []
    for pattern in range(1 << L):
        candidate = []
        for bit, (plus, minus) in enumerate(halves):
            candidate.extend(plus if (pattern >> bit) & 1 else minus)
        if strict_separator(candidate) is None:
            continue
        witness = generic_separator(relsys.elements, candidate)
        mask = _mask_of(relsys, candidate)
        members.append(BorelSubset(relsys, mask, witness, "separability-search"))
    return BorelFamily(relsys, "separability", members)


def _is_positive_multiple(root, key):
    ratio = None
    for a, b in zip(root, key):
        if b != 0:
            ratio = a // b if a % b == 0 else None
            break
    return ratio is not None and ratio > 0 and root == tuple(ratio * k for k in key)


def _mask_of(relsys, roots):
    mask = 0
    for r in roots:
        mask |= 1 << relsys.index[tuple(r)]
    return mask


def _enumerate_by_projection(relsys) -> BorelFamily:
    proj = relsys.projection
    system = proj.system
    chambers = enumerate_positive_systems(system)
    rel_index = relsys.index
    # Image of each ambient root index: relative index or None (killed).
    image_of = []
    for root in system.roots:
        img = proj.apply(root)
        image_of.append(rel_index.get(img))
    neg_index = [rel_index[vneg(r)] for r in relsys.elements]
    candidates = {}
    for cid in range(len(chambers)):
        mask = 0
        for i in chambers.positive_indices(cid):
            j = image_of[i]
            if j is not None:
                mask |= 1 << j
        candidates.setdefault(mask, []).append(cid)
    members = []
    for mask in sorted(candidates):
        neg_mask = 0
        for i in _mask_indices(mask):
            neg_mask |= 1 << neg_index[i]
        if mask & neg_mask:
            continue  # contains an opposite pair, cannot be separable
        roots = [relsys.elements[i] for i in _mask_indices(mask)]
        if not _addition_closed_fast(relsys, roots):
            continue  # positivity under any functional forces closure
        context = _try_select_origin(relsys, chambers, candidates[mask])
        if context is None:
            # No compatible chamber: genuine Borel subsets always have one,
            # so a separable candidate here would signal a bug.
            if strict_separator(roots) is not None:
                raise OriginSearchError(
                    "separable projected image without a compatible chamber")
            continue
        hint = _dual_basis_functional(context.simple_images)
        witness = generic_separator(relsys.elements, roots, strict_hint=hint)
        members.append(BorelSubset(relsys, mask, witness, context.chamber_id, context))
    return BorelFamily(relsys, "projection", members)


def _addition_closed_fast(relsys, roots):
    rset = set(roots)
    for a in roots:
        for b in roots:
            c = tuple(x + y for x, y in zip(a, b))
            if c in relsys.element_set and c not in rset:
                return False
    return True


def _dual_basis_functional(simple_images):
    """The functional valued 1 on every simple image: strictly positive on
    all their nonzero nonnegative integer combinations."""
    dim = len(simple_images[0])
    cols = [tuple(img[j] for img in simple_images) for j in range(dim)]
    coeffs = solve_linear(cols, (1,) * len(simple_images))
    return primitive(coeffs) if coeffs is not None else None


def _try_select_origin(relsys, chambers, chamber_ids):
    """First chamber whose base is compatible with the quotient: the
    kernel roots are spanned by the base elements with zero image, the
    deduplicated images of the rest are independent, and they generate the
    whole projected positive set over the nonnegative integers."""
    proj = relsys.projection
    for cid in chamber_ids:
        ps = chambers.get(cid)
        base = ps.simple_system()
        J_prime = tuple(d for d in base if any(proj.apply(d)))
        kernel_base = [d for d in base if d not in J_prime]
        if not _spans_zero_fiber(kernel_base, proj):
            continue
        images = []
        for d in J_prime:
            img = proj.apply(d)
            if img not in images:
                images.append(img)
        images.sort(key=canonical_key)
        if len(images) != relsys.rank:
            continue
        ok = True
        pos_images = sorted({proj.apply(r) for r in ps.positive_roots
                             if any(proj.apply(r))}, key=canonical_key)
        for img in pos_images:
            coeffs = solve_linear(images, img)
            if coeffs is None or any(c < 0 or c.denominator != 1 for c in coeffs):
                ok = False
                break
        if ok:
            idx = tuple(chambers.positive_indices(cid))
            return OriginContext(cid, idx, base, J_prime, tuple(images))
    return None


def _spans_zero_fiber(kernel_base, proj):
    for z in proj.zero_fiber:
        coeffs = solve_linear(kernel_base, z)
        if coeffs is None or any(c.denominator != 1 for c in coeffs):
            return False
    return True


# ---------------------------------------------------------------------------
# Cores
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Core:
    borel_id: int
    members: tuple
    method: str
    complement_decomposition: Optional[tuple] = None  # pairs (root, simple image)


def core_definitional(b: BorelSubset, family: BorelFamily) -> Core:
    """A positive root is in the core iff no Borel subset g makes the
    intersection with b span exactly its line."""
    family.recount()
    rel = b.relsys
    line_masks = family.line_masks()
    members = []
    for i in _mask_indices(b.mask):
        line = line_masks[i]
        isolated = False
        for g in family.members:
            inter = b.mask & g.mask
            if inter and (inter | line) == line:
                isolated = True
                break
        if not isolated:
            members.append(rel.elements[i])
    return Core(b.id, tuple(sorted(members, key=canonical_key)), "definitional")


def core_sufficient(b: BorelSubset):
    """Roots that are strictly positive combinations of at least two
    independent elements of the Borel subset away from their own line;
    each member is returned with its combination."""
    rel = b.relsys
    members = []
    witnesses = {}
    for alpha in b.positive_roots:
        gens = [r for r in b.positive_roots if not are_collinear(r, alpha)]
        if not gens:
            continue
        w = positive_combination_witness(alpha, gens, 2)
        if w is not None:
            members.append(alpha)
            witnesses[alpha] = w
    return Core(b.id, tuple(sorted(members, key=canonical_key)), "sufficient"), witnesses


def core_formula(b: BorelSubset, projection=None) -> Core:
    """Core as the positive set minus all positive multiples of the images
    of the origin chamber's J'."""
    if b.origin_context is None:
        raise MissingOriginError(
            "core_formula needs a projection-strategy Borel subset")
    rel = b.relsys
    simple_images = b.origin_context.simple_images
    members = []
    decomposition = []
    for root in b.positive_roots:
        image = _positive_multiple_of(root, simple_images)
        if image is None:
            members.append(root)
        else:
            decomposition.append((root, image))
    _verify_formula_complement(b, simple_images, decomposition)
    return Core(b.id, tuple(sorted(members, key=canonical_key)), "formula",
                tuple(sorted(decomposition, key=lambda p: canonical_key(p[0]))))


def _positive_multiple_of(root, simple_images):
    for img in simple_images:
        for m in range(1, 1 + max(abs(c) for c in root) + 1):
            if root == tuple(m * c for c in img):
                return img
    return None


def _verify_formula_complement(b, simple_images, decomposition):
    """Replay the explicit functional construction: for each excluded root,
    a functional valued 1 on its simple image and very negative on the
    other images isolates exactly its line inside the Borel subset."""
    rel = b.relsys
    n_roots = len(rel.elements)
    for root, image in decomposition:
        g_values = {}
        for other in simple_images:
            g_values[other] = 1 if other == image else -(n_roots + 1)
        isolated = []
        for r in b.positive_roots:
            coeffs = solve_linear(simple_images, r)
            assert coeffs is not None
            val = sum(c * g_values[img] for c, img in zip(coeffs, simple_images))
            if val > 0:
                isolated.append(r)
        for r in isolated:
            assert are_collinear(r, root), \
                "isolating functional failed for %r" % (root,)


# ---------------------------------------------------------------------------
# Family serialization (for the on-disk cache)
# ---------------------------------------------------------------------------

def family_to_payload(family: BorelFamily) -> dict:
    members = []
    for b in family:
        entry = {
            "mask": b.mask,
            "witness": [int(w) for w in b.witness],
            "origin": b.origin,
        }
        if b.origin_context is not None:
            ctx = b.origin_context
            entry["context"] = {
                "chamber_id": ctx.chamber_id,
                "positive_indices": list(ctx.positive_indices),
                "base": [list(r) for r in ctx.base],
                "J_prime": [list(r) for r in ctx.J_prime],
                "simple_images": [list(r) for r in ctx.simple_images],
            }
        members.append(entry)
    return {"strategy": family.strategy, "members": members}


def family_from_payload(relsys: RelativeRootSystem, payload: dict) -> BorelFamily:
    members = []
    for entry in payload["members"]:
        ctx = None
        if "context" in entry:
            c = entry["context"]
            ctx = OriginContext(
                c["chamber_id"], tuple(c["positive_indices"]),
                tuple(tuple(r) for r in c["base"]),
                tuple(tuple(r) for r in c["J_prime"]),
                tuple(tuple(r) for r in c["simple_images"]))
        origin = entry["origin"]
        members.append(BorelSubset(relsys, entry["mask"], tuple(entry["witness"]),
                                   origin, ctx))
    family = BorelFamily(relsys, payload["strategy"], members)
    family.recount()
    return family


def is_regular(relsys: RelativeRootSystem):
    """Every root lies in a rank-2 irreducible subsystem: checked by the
    pairwise scan, then cross-checked against the component-rank criterion.

    Returns (flag, witness) with the violating root when not regular."""
    result = True
    witness = None
    for alpha in relsys.elements:
        found = False
        for gamma in relsys.elements:
            if are_collinear(gamma, alpha):
                continue
            for beta in relsys.elements:
                if are_collinear(beta, alpha) or are_collinear(beta, gamma):
                    continue
                # gamma = x*alpha + y*beta with both coefficients nonzero?
                coeffs = solve_linear((alpha, beta), gamma)
                if coeffs is not None and all(c != 0 for c in coeffs):
                    found = True
                    break
            if found:
                break
        if not found:
            result = False
            witness = alpha
            break
    by_rank = all(_component_rank(relsys, comp) >= 2 for comp in relsys.components())
    if result != by_rank:
        raise AssertionError("regularity scan disagrees with component ranks")
    return result, witness


def _component_rank(relsys, component):
    from .exactlin import span_rank
    return span_rank(component)
