import pytest

from rootgrading import borel as bl
from rootgrading import dynkin as dk
from rootgrading import grading as gr
from rootgrading import relroot as rr
from rootgrading import rootsys as rs


def fold(series, rank, gamma="trivial", J="all"):
    sys = rs.build_root_system(series, rank)
    datum = dk.datum_from_labels(sys, gamma, J)
    return rr.project(sys, datum)


def brute_support(rel, alpha, beta, bound=12):
    out = []
    for i in range(1, bound + 1):
        for j in range(1, bound + 1):
            cand = tuple(i * a + j * b for a, b in zip(alpha, beta))
            if cand in rel.element_set:
                out.append((i, j, cand))
    return tuple(sorted(out))


class TestCommutatorSupport:
    def test_bc2_long_short(self):
        proj, rel = fold("A", 4, "flip")
        sup = gr.commutator_support(rel, (1, 0), (0, 1))
        expected = brute_support(rel, (1, 0), (0, 1))
        assert sup.support == expected
        assert sup.support == (
            (1, 1, (1, 1)),   # e1
            (1, 2, (1, 2)),   # e1 + e2
            (2, 2, (2, 2)),   # 2 e1
        )

    def test_a2_single_bracket(self):
        proj, rel = fold("A", 2)
        sup = gr.commutator_support(rel, (1, 0), (0, 1))
        assert sup.support == ((1, 1, (1, 1)),)

    def test_opposite_multiples_rejected(self):
        proj, rel = fold("A", 2, "flip")
        with pytest.raises(gr.OppositeMultiplesError):
            gr.commutator_support(rel, (1,), (-2,))

    def test_equal_roots_allowed_in_bc1(self):
        proj, rel = fold("A", 2, "flip")
        sup = gr.commutator_support(rel, (1,), (1,))
        assert sup.support == ((1, 1, (2,)),)

    @pytest.mark.parametrize("series,rank,gamma", [
        ("A", 2, "trivial"), ("A", 4, "flip"), ("D", 4, "triality"),
    ])
    def test_symmetry(self, series, rank, gamma):
        proj, rel = fold(series, rank, gamma)
        elements = rel.elements
        for alpha in elements[:6]:
            for beta in elements[:6]:
                try:
                    sup_ab = gr.commutator_support(rel, alpha, beta)
                except gr.OppositeMultiplesError:
                    continue
                sup_ba = gr.commutator_support(rel, beta, alpha)
                roots_ab = {(i, j, r) for i, j, r in sup_ab.support}
                roots_ba = {(j, i, r) for i, j, r in sup_ba.support}
                assert roots_ab == roots_ba


class TestAxiomsCheck:
    @pytest.mark.parametrize("series,rank,gamma", [
        ("A", 2, "trivial"), ("A", 4, "flip"), ("A", 2, "flip"),
    ])
    def test_all_pairs_pass(self, series, rank, gamma):
        proj, rel = fold(series, rank, gamma)
        report = gr.grading_axioms_check(rel)
        assert report.ok
        assert report.coverage_ok


class TestDecompose:
    def standard_context(self, rel):
        fam = bl.enumerate_borel_subsets(rel, "projection")
        std = {r for r in rel.elements if sum(r) > 0}
        for b in fam:
            if b.positive_set == std:
                return fam, b
        raise AssertionError

    def test_a3_flip_height_two(self):
        proj, rel = fold("A", 3, "flip")
        fam, b = self.standard_context(rel)
        dec = gr.nc_decompose(rel, b.origin_context, (1, 1), 1)
        assert dec.preimage == (1, 1, 0)
        assert dec.chain == ((1, 0, 0), (0, 1, 0))
        assert dec.split_index == 2
        assert dec.beta == (1, 0)
        assert dec.gamma_k == (0, 1)

    def test_a3_flip_height_three(self):
        proj, rel = fold("A", 3, "flip")
        fam, b = self.standard_context(rel)
        dec = gr.nc_decompose(rel, b.origin_context, (2, 1), 1)
        assert dec.preimage == (1, 1, 1)
        assert dec.beta == (1, 1)
        assert dec.gamma_k == (1, 0)

    def test_simple_image_rejected(self):
        proj, rel = fold("A", 3, "flip")
        fam, b = self.standard_context(rel)
        with pytest.raises(gr.NotDecomposableError):
            gr.nc_decompose(rel, b.origin_context, (1, 0), 1)

    @pytest.mark.parametrize("series,rank,gamma", [
        ("A", 4, "flip"), ("A", 6, "flip"), ("A", 3, "flip"), ("B", 2, "trivial"),
    ])
    def test_soundness_everywhere(self, series, rank, gamma):
        proj, rel = fold(series, rank, gamma)
        fam = bl.enumerate_borel_subsets(rel, "projection")
        for b in fam:
            images = set(b.origin_context.simple_images)
            for root in b.positive_roots:
                if gr._positive_multiple_of_any(root, b.origin_context.simple_images):
                    continue
                dec = gr.nc_decompose(rel, b.origin_context, root, 1)
                from rootgrading.exactlin import vadd
                assert vadd(dec.beta, dec.gamma_k) == root
                assert dec.gamma_k in images
                from rootgrading.exactlin import are_collinear
                assert not are_collinear(dec.beta, dec.gamma_k)
                assert dec.beta in b.positive_set


class TestAbcSets:
    def test_bc2_sets(self):
        proj, rel = fold("A", 4, "flip")
        set_a, set_b = gr.abc_generator_sets(rel, (1, 0), (0, 1))
        assert set_a == ((1, 0), (0, 1), (0, 2), (1, 2), (2, 2))
        assert set_b == ((1, 0), (0, 1), (0, 2), (1, 2), (2, 2))
        assert (1, 1) not in set_a  # the decomposed root itself is excluded
        assert (1, 1) not in set_b

    def test_a2_sets(self):
        proj, rel = fold("A", 2)
        set_a, set_b = gr.abc_generator_sets(rel, (1, 0), (0, 1))
        assert set_a == ((1, 0), (0, 1))
        assert set_b == ((1, 0), (0, 1))

    def test_collinear_rejected(self):
        proj, rel = fold("A", 2)
        with pytest.raises(gr.InvalidTripleError):
            gr.abc_generator_sets(rel, (1, 0), (1, 0))

    def test_g2_caveat(self):
        proj, rel = fold("G", 2)
        # beta = (1, 1) [a1+a2], gamma = (1, 0): beta - gamma = (0, 1) is a root.
        with pytest.raises(gr.G2CaveatError):
            gr.abc_generator_sets(rel, (1, 1), (1, 0))

    def test_g2_caveat_satisfied_when_difference_outside(self):
        proj, rel = fold("G", 2)
        # beta = (2, 1), gamma = (1, 0): beta - gamma = (1, 1) is a root -> error;
        # beta = (3, 1), gamma = (0, 1): difference (3, 0) is not a root -> fine.
        set_a, set_b = gr.abc_generator_sets(rel, (3, 1), (0, 1))
        assert (3, 2) not in set_a  # (1,1) combination excluded

    def test_sets_exclude_named_indices(self):
        proj, rel = fold("A", 4, "flip")
        for b1 in rel.elements:
            for g in rel.elements:
                try:
                    set_a, set_b = gr.abc_generator_sets(rel, b1, g)
                except (gr.InvalidTripleError, gr.G2CaveatError):
                    continue
                from rootgrading.exactlin import vadd, vsub
                alpha = vadd(b1, g)
                assert alpha not in set_a
                bg2 = vadd(vsub(b1, g), vadd(g, g))
                assert bg2 == vadd(b1, g)
                assert alpha not in set_b


def make_certified(series, rank, gamma="flip"):
    proj, rel = fold(series, rank, gamma)
    fam = bl.enumerate_borel_subsets(rel, "projection")
    cert = gr.certify_strong(rel, fam)
    return rel, fam, cert


class TestCertify:
    def test_bc2_certificate_valid(self):
        rel, fam, cert = make_certified("A", 4)
        assert len(cert.per_borel) == 8
        assert cert.delegations == ()
        for bc in cert.per_borel:
            assert len(bc.groups) == 3  # three core roots per Borel subset
        ok, detail = gr.verify_certificate(cert, rel, fam)
        assert ok, detail

    def test_c2_certificate_valid(self):
        rel, fam, cert = make_certified("A", 3)
        ok, detail = gr.verify_certificate(cert, rel, fam)
        assert ok, detail

    def test_bc1_not_regular(self):
        proj, rel = fold("A", 2, "flip")
        fam = bl.enumerate_borel_subsets(rel, "projection")
        with pytest.raises(gr.RegularityError):
            gr.certify_strong(rel, fam)

    def test_d4_triality_delegates_everything(self):
        rel, fam, cert = make_certified("D", 4, "triality")
        assert len(cert.delegations) == 1
        assert set(cert.delegations[0].component) == set(rel.elements)
        for bc in cert.per_borel:
            assert bc.groups == ()
        ok, detail = gr.verify_certificate(cert, rel, fam)
        assert ok, detail

    def test_g2_identity_delegates(self):
        rel, fam, cert = make_certified("G", 2, "trivial")
        assert len(cert.delegations) == 1
        ok, detail = gr.verify_certificate(cert, rel, fam)
        assert ok, detail

    def test_deferred_references_resolve(self):
        rel, fam, cert = make_certified("A", 4)
        deferred_seen = 0
        for bc in cert.per_borel:
            for group in bc.groups:
                ks = [e.k for e in group.entries]
                assert ks == sorted(ks, reverse=True)
                for e in group.entries:
                    for t in e.generators:
                        if t.tag == "deferred":
                            deferred_seen += 1
                            assert t.defer_k > e.k
                            assert t.defer_k in ks
        assert deferred_seen > 0  # BC2 genuinely exercises the deferral path

    def test_needs_projection_family(self):
        proj, rel = fold("A", 4, "flip")
        fam = bl.enumerate_borel_subsets(rel, "separability")
        with pytest.raises(bl.MissingOriginError):
            gr.certify_strong(rel, fam)

    def test_verify_rejects_wrong_system(self):
        rel, fam, cert = make_certified("A", 4)
        proj2, rel2 = fold("A", 3, "flip")
        fam2 = bl.enumerate_borel_subsets(rel2, "projection")
        ok, detail = gr.verify_certificate(cert, rel2, fam2)
        assert not ok and "fingerprint" in detail
