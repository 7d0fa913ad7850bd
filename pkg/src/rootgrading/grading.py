"""Commutator-support combinatorics and strong-grading certificates.

A certificate records, per Borel subset and per core root gamma, a
descending chain of decompositions k*gamma = beta_k + gamma_k with
gamma_k a simple image of the originating chamber, together with the two
generator families of the bracket-closure argument.  Every generator is
either placed inside the Borel subset away from the line of gamma or
deferred to an already-certified larger multiple of gamma.  Components
folding onto a type-G2 system are delegated, never certified.

The verifier replays all of this by root arithmetic and set membership
alone, recomputing the expected generator sets with an independent
bounded box scan instead of the linear solves used by the generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import borel as borel_mod
from .borel import BorelFamily, MissingOriginError, OriginContext
from .exactlin import (are_collinear, solve_linear, strict_separator, vadd,
                       vdot, vsub)
from .relroot import RelativeRootSystem, _classify_component, project
from .rootsys import canonical_key, chain_in_chamber, irreducible_components

DELEGATION_REASON = ("component folds onto a type-G2 system; its generation "
                     "property is delegated to the established split and "
                     "quasi-split chevalley-group case")


class OppositeMultiplesError(ValueError):
    """The commutator formula hypothesis m*alpha != -k*beta fails."""


class NotDecomposableError(ValueError):
    """The target is a positive multiple of a simple image."""


class InvalidTripleError(ValueError):
    """alpha = beta + gamma with pairwise non-collinear roots is required."""


class G2CaveatError(ValueError):
    """beta - gamma must avoid the system when type-G2 fibers are involved."""


class RegularityError(ValueError):
    """Certification requires a regular relative root system."""


class CertificationFailureError(RuntimeError):
    def __init__(self, message, borel_id=None, gamma=None, k=None, generator=None):
        super().__init__(message)
        self.borel_id = borel_id
        self.gamma = gamma
        self.k = k
        self.generator = generator


# ---------------------------------------------------------------------------
# Commutator support
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CommutatorSupport:
    pair: tuple
    support: tuple  # entries (i, j, i*alpha + j*beta)


def commutator_support(relsys: RelativeRootSystem, alpha, beta,
                       bound: int = 6) -> CommutatorSupport:
    """All (i, j) with i, j >= 1 and i*alpha + j*beta in the system.

    The scan is provably complete: a functional positive on both roots
    bounds the reachable multiples, and the scan is extended past the
    requested bound whenever that escape bound demands it."""
    alpha = tuple(alpha)
    beta = tuple(beta)
    for r in (alpha, beta):
        if r not in relsys.element_set:
            raise InvalidTripleError("%r is not a relative root" % (r,))
    if are_collinear(alpha, beta):
        ratio = _collinear_ratio(alpha, beta)
        if ratio < 0:
            raise OppositeMultiplesError(
                "m*%r = -k*%r for positive m, k" % (alpha, beta))
    f = strict_separator([alpha, beta])
    if f is None:
        raise OppositeMultiplesError(
            "m*%r = -k*%r for positive m, k" % (alpha, beta))
    fmax = max(vdot(f, r) for r in relsys.elements)
    fa, fb = vdot(f, alpha), vdot(f, beta)
    # f(i*a + j*b) = i*fa + j*fb > fmax guarantees escape.
    effective = bound
    while effective * min(fa, fb) + min(fa, fb) <= fmax:
        effective += 1
    support = []
    for i in range(1, effective + 1):
        for j in range(1, effective + 1):
            cand = tuple(i * a + j * b for a, b in zip(alpha, beta))
            if cand in relsys.element_set:
                support.append((i, j, cand))
    return CommutatorSupport((alpha, beta), tuple(sorted(support)))


def _collinear_ratio(u, v) -> Fraction:
    for a, b in zip(u, v):
        if b != 0:
            return Fraction(a, b)
    raise ValueError("zero vector")


@dataclass(frozen=True)
class GradingAxiomsReport:
    pair_results: tuple  # entries (alpha, beta, ok)
    coverage_ok: bool

    @property
    def ok(self):
        return self.coverage_ok and all(r[2] for r in self.pair_results)


def grading_axioms_check(relsys: RelativeRootSystem) -> GradingAxiomsReport:
    """Structural sanity of the bracket relations: for every admissible
    pair the support roots have the form a*alpha + b*beta with a, b >= 1,
    and the positive-multiple classes cover the whole system."""
    from .relroot import multiple_class
    pairs = []
    for alpha in relsys.elements:
        for beta in relsys.elements:
            if are_collinear(alpha, beta) and _collinear_ratio(alpha, beta) < 0:
                continue
            sup = commutator_support(relsys, alpha, beta)
            ok = all(i >= 1 and j >= 1 and
                     root == tuple(i * a + j * b for a, b in zip(alpha, beta))
                     for i, j, root in sup.support)
            pairs.append((alpha, beta, ok))
    covered = set()
    for alpha in relsys.elements:
        covered.update(multiple_class(relsys, alpha))
    coverage_ok = covered == set(relsys.elements)
    return GradingAxiomsReport(tuple(pairs), coverage_ok)


# ---------------------------------------------------------------------------
# Decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decomposition:
    target: tuple
    beta: tuple
    gamma_k: tuple
    preimage: tuple
    chain: tuple
    split_index: int  # 1-based: chain[split_index - 1] is the J' element


def nc_decompose(relsys: RelativeRootSystem, context: OriginContext,
                 alpha, k: int) -> Decomposition:
    """Write k*alpha = beta + gamma_k with gamma_k a simple image, by
    walking a canonical chain of the canonical preimage."""
    proj = relsys.projection
    system = relsys.system
    alpha = tuple(alpha)
    target = tuple(k * a for a in alpha)
    if target not in relsys.element_set:
        raise NotDecomposableError("%r is not a relative root" % (target,))
    if _positive_multiple_of_any(target, context.simple_images):
        raise NotDecomposableError(
            "%r is a positive multiple of a simple image" % (target,))
    chamber_pos = set(context.positive_roots(system))
    preimages = sorted((x for x in proj.fiber(target) if x in chamber_pos),
                       key=canonical_key)
    if not preimages:
        raise CertificationFailureError(
            "empty positive fiber over %r" % (target,), gamma=alpha, k=k)
    x = preimages[0]
    chain = chain_in_chamber(system.root_set, context.base, chamber_pos, x)
    J_prime = set(context.J_prime)
    split = len(chain)
    while split >= 1 and chain[split - 1] not in J_prime:
        split -= 1
    if split == 0:
        raise NotDecomposableError("chain of %r avoids J'" % (x,))
    beta_pre = chain[:split - 1]
    beta = proj.apply(_sum_vectors(beta_pre, len(x))) if beta_pre else (0,) * relsys.rank
    gamma_k = proj.apply(chain[split - 1])
    if all(c == 0 for c in beta):
        raise NotDecomposableError(
            "%r reduces to a single simple image" % (target,))
    assert vadd(beta, gamma_k) == target
    assert not are_collinear(beta, gamma_k)
    assert gamma_k in context.simple_images
    return Decomposition(target, tuple(beta), tuple(gamma_k), x, chain, split)


def _sum_vectors(vectors, dim):
    total = (0,) * dim
    for v in vectors:
        total = vadd(total, v)
    return total


def _positive_multiple_of_any(root, simple_images):
    for img in simple_images:
        bound = max(abs(c) for c in root)
        for m in range(1, bound + 1):
            if root == tuple(m * c for c in img):
                return True
    return False


def abc_generator_sets(relsys: RelativeRootSystem, beta, gamma):
    """The two generator families covering alpha = beta + gamma: the
    nonnegative lattice combinations of (beta, gamma) without (1,1) and of
    (beta - gamma, gamma) without (1,2)."""
    beta = tuple(beta)
    gamma = tuple(gamma)
    for r in (beta, gamma):
        if r not in relsys.element_set:
            raise InvalidTripleError("%r is not a relative root" % (r,))
    alpha = vadd(beta, gamma)
    if alpha not in relsys.element_set:
        raise InvalidTripleError("beta + gamma is not a root")
    if (are_collinear(beta, gamma) or are_collinear(alpha, beta)
            or are_collinear(alpha, gamma)):
        raise InvalidTripleError("alpha, beta, gamma must be pairwise non-collinear")
    if _fibers_meet_ambient_g2(relsys, (alpha, beta, gamma)):
        diff = vsub(beta, gamma)
        if diff in relsys.element_set:
            raise G2CaveatError("beta - gamma lies in the system next to a "
                                "type-G2 component")
    set_a = _lattice_combinations(relsys, beta, gamma, exclude=(1, 1))
    set_b = _lattice_combinations(relsys, vsub(beta, gamma), gamma, exclude=(1, 2))
    return set_a, set_b


def _lattice_combinations(relsys, u, v, exclude):
    """{i*u + j*v in the system : i, j >= 0, (i, j) != exclude} \\ {0},
    found by exact solving per candidate root."""
    out = []
    independent = not _same_line(u, v)
    if independent:
        dim = relsys.rank
        rs_pair = None
        for r in range(dim):
            for s in range(r + 1, dim):
                det = u[r] * v[s] - u[s] * v[r]
                if det != 0:
                    rs_pair = (r, s, det)
                    break
            if rs_pair:
                break
        r, s, det = rs_pair
        for root in relsys.elements:
            inum = root[r] * v[s] - root[s] * v[r]
            jnum = u[r] * root[s] - u[s] * root[r]
            if inum % det or jnum % det:
                continue
            i, j = inum // det, jnum // det
            if i < 0 or j < 0 or (i, j) == exclude:
                continue
            if all(i * u[c] + j * v[c] == root[c] for c in range(dim)):
                out.append(root)
        return tuple(sorted(set(out), key=canonical_key))
    for root in relsys.elements:
        for i, j in _dependent_representations(u, v, root):
            if i.denominator == 1 and j.denominator == 1 and i >= 0 and j >= 0 \
                    and (int(i), int(j)) != exclude:
                out.append(root)
                break
    return tuple(sorted(set(out), key=canonical_key))


def _same_line(u, v):
    try:
        return are_collinear(u, v)
    except Exception:
        return False


def _dependent_representations(u, v, root):
    """All (i, j) in a small range with i*u + j*v = root when u, v are
    collinear (or u = 0)."""
    pairs = []
    for i in range(0, 13):
        residual = vsub(root, tuple(i * c for c in u))
        coeff = solve_linear((v,), residual)
        if coeff is not None:
            pairs.append((Fraction(i), coeff[0]))
    return pairs


def _fibers_meet_ambient_g2(relsys, roots):
    g2_roots = _ambient_g2_roots(relsys)
    if not g2_roots:
        return False
    for r in roots:
        if any(d in g2_roots for d in relsys.fiber(r)):
            return True
    return False


def _ambient_g2_roots(relsys):
    system = relsys.system
    cache = getattr(system, "_g2_roots", None)
    if cache is None:
        roots = set()
        for comp in irreducible_components(system):
            if "G2" in _classify_component(comp):
                roots.update(comp)
        system._g2_roots = cache = frozenset(roots)
    return cache


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorTag:
    root: tuple
    tag: str  # "placed" or "deferred"
    defer_k: Optional[int] = None


@dataclass(frozen=True)
class CoreRootEntry:
    k: int
    decomposition: Decomposition
    generators: tuple  # GeneratorTag, canonically sorted by root


@dataclass(frozen=True)
class CoreRootGroup:
    gamma: tuple
    entries: tuple  # CoreRootEntry, strictly descending k


@dataclass(frozen=True)
class BorelCertificate:
    borel_id: int
    positive_indices: tuple
    origin_chamber: int
    simple_images: tuple
    groups: tuple  # CoreRootGroup per non-delegated core root


@dataclass(frozen=True)
class Delegation:
    component: tuple
    reason: str


@dataclass(frozen=True)
class StrongGradingCertificate:
    fingerprint: str
    relative_roots: tuple
    delegations: tuple
    per_borel: tuple


def system_fingerprint(relsys: RelativeRootSystem) -> str:
    import hashlib
    import json
    payload = {
        "ambient": relsys.system.label,
        "ambient_roots": [list(r) for r in relsys.system.roots],
        "matrix": [list(row) for row in relsys.projection.matrix],
        "relative_roots": [list(r) for r in relsys.elements],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def delegated_components(relsys: RelativeRootSystem):
    """Components whose full-folding preimages meet a type-G2 component of
    the intermediate folded system (the quotient by the same automorphisms
    with every node kept)."""
    system = relsys.system
    datum = relsys.projection.datum
    if set(datum.J) == set(range(system.rank)):
        psi = relsys
    else:
        from .dynkin import ParabolicDatum
        full = ParabolicDatum(system, tuple(range(system.rank)), datum.gamma)
        _, psi = project(system, full)
    g2_psi_roots = set()
    for comp in psi.components():
        if "G2" in _classify_component(comp):
            g2_psi_roots.update(comp)
    delegated = []
    for comp in relsys.components():
        hit = any(psi.projection.apply(delta) in g2_psi_roots
                  for alpha in comp for delta in relsys.fiber(alpha))
        if hit:
            delegated.append(comp)
    return tuple(delegated)


def ks_for(relsys, gamma):
    """All k >= 1 with k*gamma in the system, descending."""
    out = []
    bound = getattr(relsys, "_coord_bound_cache", None)
    if bound is None:
        bound = max(abs(c) for r in relsys.elements for c in r)
        relsys._coord_bound_cache = bound
    k = 1
    while True:
        cand = tuple(k * c for c in gamma)
        if max(abs(c) for c in cand) > bound and k > 1:
            break
        if cand in relsys.element_set:
            out.append(k)
        k += 1
        if k > 2 * bound + 2:
            break
    return tuple(sorted(out, reverse=True))


def certify_strong(relsys: RelativeRootSystem, family: BorelFamily) -> StrongGradingCertificate:
    """Generate the per-Borel, per-core-root decomposition record proving
    the grading strong, delegating type-G2 components."""
    regular, witness = borel_mod.is_regular(relsys)
    if not regular:
        raise RegularityError("system is not regular; witness %r" % (witness,))
    if family.strategy != "projection":
        raise MissingOriginError("certification needs projection origins")
    family.recount()
    delegated = delegated_components(relsys)
    delegated_roots = set()
    for comp in delegated:
        delegated_roots.update(comp)
    delegations = tuple(Delegation(comp, DELEGATION_REASON) for comp in delegated)
    per_borel = []
    for b in family:
        core = borel_mod.core_definitional(b, family)
        groups = []
        for gamma in core.members:
            if gamma in delegated_roots:
                continue
            entries = []
            for k in ks_for(relsys, gamma):
                entries.append(_certify_entry(relsys, family, b, gamma, k))
            groups.append(CoreRootGroup(gamma, tuple(entries)))
        per_borel.append(BorelCertificate(
            b.id, tuple(_mask_indices(b.mask)), b.origin_context.chamber_id,
            b.origin_context.simple_images, tuple(groups)))
    return StrongGradingCertificate(system_fingerprint(relsys), relsys.elements,
                                    delegations, tuple(per_borel))


def _mask_indices(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _certify_entry(relsys, family, b, gamma, k) -> CoreRootEntry:
    dec = nc_decompose(relsys, b.origin_context, gamma, k)
    set_a, set_b = abc_generator_sets(relsys, dec.beta, dec.gamma_k)
    ks = ks_for(relsys, gamma)
    tags = []
    for root in sorted(set(set_a) | set(set_b), key=canonical_key):
        if root in b and not are_collinear(root, gamma):
            tags.append(GeneratorTag(root, "placed"))
            continue
        defer_k = _multiple_of(root, gamma)
        if defer_k is not None and defer_k > k and defer_k in ks:
            tags.append(GeneratorTag(root, "deferred", defer_k))
            continue
        raise CertificationFailureError(
            "generator %r neither placeable nor deferrable" % (root,),
            borel_id=b.id, gamma=gamma, k=k, generator=root)
    return CoreRootEntry(k, dec, tuple(tags))


def _multiple_of(root, gamma):
    """root == m*gamma for a positive integer m, else None."""
    bound = max(abs(c) for c in root) + 1
    for m in range(1, bound + 1):
        if root == tuple(m * c for c in gamma):
            return m
    return None


# ---------------------------------------------------------------------------
# Independent verification
# ---------------------------------------------------------------------------

def verify_certificate(cert: StrongGradingCertificate, relsys: RelativeRootSystem,
                       family: BorelFamily):
    """Replay every claim of a certificate using only root arithmetic and
    set membership.  Returns (True, None) or (False, detail)."""
    try:
        _verify(cert, relsys, family)
    except _VerificationFailure as fail:
        return False, str(fail)
    return True, None


class _VerificationFailure(Exception):
    pass


def _fail(detail, *args):
    raise _VerificationFailure(detail % args if args else detail)


def _verify(cert, relsys, family):
    if cert.fingerprint != system_fingerprint(relsys):
        _fail("fingerprint mismatch")
    if tuple(cert.relative_roots) != relsys.elements:
        _fail("relative root list mismatch")
    if family.strategy != "projection":
        _fail("family lacks projection origins")
    family.recount()
    expected_delegated = delegated_components(relsys)
    got_delegated = tuple(d.component for d in cert.delegations)
    if got_delegated != expected_delegated:
        _fail("delegations do not match the type-G2 components")
    for d in cert.delegations:
        if d.reason != DELEGATION_REASON:
            _fail("delegation record carries a wrong rationale")
    delegated_roots = set()
    for comp in expected_delegated:
        delegated_roots.update(comp)
    if [bc.borel_id for bc in cert.per_borel] != list(range(len(family))):
        _fail("certificate does not cover the Borel family exactly once")
    for bc in cert.per_borel:
        b = family.get(bc.borel_id)
        _verify_borel(cert, relsys, family, bc, b, delegated_roots)


def _verify_borel(cert, relsys, family, bc, b, delegated_roots):
    bid = bc.borel_id
    if tuple(bc.positive_indices) != tuple(_mask_indices(b.mask)):
        _fail("borel %d: stored positive set differs from the enumeration", bid)
    ctx = b.origin_context
    if bc.origin_chamber != ctx.chamber_id:
        _fail("borel %d: origin chamber mismatch", bid)
    if tuple(bc.simple_images) != ctx.simple_images:
        _fail("borel %d: simple images mismatch", bid)
    core = borel_mod.core_definitional(b, family).members
    expected_gammas = [g for g in core if g not in delegated_roots]
    if [g.gamma for g in bc.groups] != expected_gammas:
        _fail("borel %d: core roots not covered exactly", bid)
    system = relsys.system
    chamber_pos = set(ctx.positive_roots(system))
    for group in bc.groups:
        _verify_group(relsys, b, ctx, chamber_pos, group, bid)


def _verify_group(relsys, b, ctx, chamber_pos, group, bid):
    gamma = tuple(group.gamma)
    ks = list(ks_for(relsys, gamma))
    if [e.k for e in group.entries] != ks:
        _fail("borel %d gamma %r: multiples not covered descending", bid, gamma)
    proj = relsys.projection
    system = relsys.system
    for entry in group.entries:
        k = entry.k
        dec = entry.decomposition
        label = "borel %d gamma %r k %d" % (bid, gamma, k)
        if dec.target != tuple(k * c for c in gamma):
            _fail("%s: target is not k*gamma", label)
        if vadd(dec.beta, dec.gamma_k) != dec.target:
            _fail("%s: beta + gamma_k != target", label)
        if dec.beta not in relsys.element_set or dec.gamma_k not in relsys.element_set:
            _fail("%s: decomposition parts are not roots", label)
        if are_collinear(dec.beta, dec.gamma_k):
            _fail("%s: beta collinear with gamma_k", label)
        if dec.gamma_k not in ctx.simple_images:
            _fail("%s: gamma_k is not a simple image", label)
        if dec.beta not in b:
            _fail("%s: beta outside the Borel subset", label)
        if dec.preimage not in chamber_pos or proj.apply(dec.preimage) != dec.target:
            _fail("%s: preimage invalid", label)
        base_set = set(ctx.base)
        total = (0,) * system.rank
        for y in dec.chain:
            if y not in base_set:
                _fail("%s: chain uses a non-base element", label)
            total = vadd(total, y)
            if total not in system.root_set:
                _fail("%s: chain prefix leaves the root system", label)
        if total != dec.preimage:
            _fail("%s: chain does not sum to the preimage", label)
        split = dec.split_index
        if not (1 <= split <= len(dec.chain)):
            _fail("%s: split index out of range", label)
        if dec.chain[split - 1] not in ctx.J_prime:
            _fail("%s: split element outside J'", label)
        if any(any(proj.apply(dec.chain[t])) for t in range(split, len(dec.chain))):
            _fail("%s: chain tail not killed by the projection", label)
        prefix = dec.chain[:split - 1]
        beta_check = (0,) * relsys.rank
        for y in prefix:
            beta_check = vadd(beta_check, proj.apply(y))
        if tuple(beta_check) != dec.beta:
            _fail("%s: beta does not match the chain prefix", label)
        if proj.apply(dec.chain[split - 1]) != dec.gamma_k:
            _fail("%s: gamma_k does not match the split element", label)
        expected = set(_box_scan(relsys, dec.beta, dec.gamma_k, (1, 1)))
        expected |= set(_box_scan(relsys, vsub(dec.beta, dec.gamma_k),
                                  dec.gamma_k, (1, 2)))
        got_roots = [t.root for t in entry.generators]
        if got_roots != sorted(expected, key=canonical_key):
            _fail("%s: generator set differs from the recomputation", label)
        for tag in entry.generators:
            if tag.tag == "placed":
                if tag.defer_k is not None:
                    _fail("%s: placed generator carries a deferral", label)
                if tag.root not in b or are_collinear(tag.root, gamma):
                    _fail("%s: generator %r wrongly placed", label, tag.root)
            elif tag.tag == "deferred":
                if tag.defer_k is None or tag.defer_k <= k or tag.defer_k not in ks:
                    _fail("%s: invalid deferral", label)
                if tag.root != tuple(tag.defer_k * c for c in gamma):
                    _fail("%s: deferred root is not defer_k * gamma", label)
            else:
                _fail("%s: unknown tag %r", label, tag.tag)


def _box_scan(relsys, u, v, exclude):
    """{i*u + j*v in the system : i, j >= 0, (i, j) != exclude} \\ {0} by a
    bounded integer scan over the coordinate box of the system."""
    dim = relsys.rank
    lo = [min(r[c] for r in relsys.elements) for c in range(dim)]
    hi = [max(r[c] for r in relsys.elements) for c in range(dim)]
    out = set()
    i = 0
    while True:
        lower, upper = Fraction(0), None
        feasible = True
        for c in range(dim):
            base = i * u[c]
            if v[c] == 0:
                if not (lo[c] <= base <= hi[c]):
                    feasible = False
                    break
            else:
                a = Fraction(lo[c] - base, v[c])
                bnd = Fraction(hi[c] - base, v[c])
                low, high = min(a, bnd), max(a, bnd)
                lower = max(lower, low)
                upper = high if upper is None else min(upper, high)
        if not feasible or (upper is not None and lower > upper):
            if i > 0:
                break
            i += 1
            continue
        jmax = int(upper) if upper is not None else 2 * max(map(abs, hi + lo)) + 2
        j = max(0, -(-lower.numerator // lower.denominator)) if lower > 0 else 0
        while j <= jmax:
            if (i, j) != exclude:
                cand = tuple(i * u[c] + j * v[c] for c in range(dim))
                if cand in relsys.element_set:
                    out.add(cand)
            j += 1
        i += 1
    return out
