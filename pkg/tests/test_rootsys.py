import pytest

from rootgrading import exactlin as ex
from rootgrading import rootsys as rs
from _oracles import all_simple_sum_chains, classical_roots_e_basis, separable_2d


def build(series, rank):
    return rs.build_root_system(series, rank)


class TestBuild:
    @pytest.mark.parametrize("series,rank,count", [
        ("A", 1, 2), ("A", 2, 6), ("A", 3, 12), ("A", 4, 20), ("A", 6, 42),
        ("B", 2, 8), ("B", 3, 18), ("C", 2, 8), ("C", 3, 18),
        ("D", 2, 4), ("D", 3, 12), ("D", 4, 24),
        ("E", 6, 72), ("F", 4, 48), ("G", 2, 12),
        ("BC", 1, 4), ("BC", 2, 12), ("BC", 3, 24),
    ])
    def test_root_counts(self, series, rank, count):
        assert len(build(series, rank).roots) == count

    @pytest.mark.parametrize("series,rank", [
        ("A", 3), ("B", 3), ("C", 3), ("D", 4), ("BC", 2),
    ])
    def test_counts_match_e_basis_construction(self, series, rank):
        expected = classical_roots_e_basis(series, rank)
        assert len(build(series, rank).roots) == len(expected)

    def test_bc1_is_alpha_and_double(self):
        sys = build("BC", 1)
        assert set(sys.roots) == {(1,), (-1,), (2,), (-2,)}

    def test_inadmissible(self):
        for series, rank in [("A", 0), ("E", 5), ("F", 3), ("G", 3), ("H", 2), ("D", 1)]:
            with pytest.raises(rs.UnsupportedTypeError):
                build(series, rank)

    @pytest.mark.parametrize("series,rank", [
        ("A", 2), ("B", 2), ("G", 2), ("D", 4), ("F", 4), ("BC", 2), ("E", 6),
    ])
    def test_root_system_axioms(self, series, rank):
        sys = build(series, rank)
        zero = (0,) * rank
        assert zero not in sys.root_set
        for r in sys.roots:
            assert ex.vneg(r) in sys.root_set
        assert ex.span_rank(sys.roots) == rank
        for r in sys.roots:
            assert all(c >= 0 for c in r) or all(c <= 0 for c in r)

    def test_positive_negative_split(self):
        sys = build("B", 2)
        negs = {ex.vneg(r) for r in sys.positive_roots}
        assert set(sys.roots) == set(sys.positive_roots) | negs
        assert not set(sys.positive_roots) & negs

    def test_b2_specific_roots(self):
        # alpha1 = e1-e2 long, alpha2 = e2 short: e1 = a1+a2, e1+e2 = a1+2a2
        sys = build("B", 2)
        assert set(sys.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}

    def test_g2_highest_root(self):
        sys = build("G", 2)
        assert (3, 2) in sys.root_set
        assert max(sys.roots, key=rs.canonical_key) == (3, 2)


class TestComponents:
    def test_a2_irreducible(self):
        assert len(rs.irreducible_components(build("A", 2))) == 1

    def test_d2_splits(self):
        comps = rs.irreducible_components(build("D", 2))
        assert len(comps) == 2
        assert sorted(len(c) for c in comps) == [2, 2]

    def test_bc2_irreducible(self):
        assert len(rs.irreducible_components(build("BC", 2))) == 1


class TestChains:
    def test_simple_root_chain(self):
        sys = build("A", 2)
        assert rs.simple_sum_chain(sys, (1, 0)) == ((1, 0),)

    def test_a2_canonical_chain(self):
        sys = build("A", 2)
        assert rs.simple_sum_chain(sys, (1, 1)) == ((1, 0), (0, 1))

    def test_b2_canonical_chain(self):
        sys = build("B", 2)
        chain = rs.simple_sum_chain(sys, (1, 2))
        valid = all_simple_sum_chains(sys.root_set, sys.simple_roots, (1, 2))
        assert chain in valid
        assert chain == ((1, 0), (0, 1), (0, 1))

    @pytest.mark.parametrize("series,rank", [("A", 3), ("B", 3), ("D", 4), ("G", 2), ("F", 4)])
    def test_every_positive_root_has_valid_chain(self, series, rank):
        sys = build(series, rank)
        for x in sys.positive_roots:
            chain = rs.simple_sum_chain(sys, x)
            total = (0,) * rank
            for y in chain:
                assert y in sys.simple_roots
                total = ex.vadd(total, y)
                assert total in sys.root_set
            assert total == x

    def test_chain_rejects_negative(self):
        sys = build("A", 2)
        with pytest.raises(ValueError):
            rs.simple_sum_chain(sys, (-1, 0))


class TestChambers:
    @pytest.mark.parametrize("series,rank,count", [
        ("A", 2, 6), ("B", 2, 8), ("G", 2, 12), ("BC", 1, 2),
        ("A", 3, 24), ("B", 3, 48), ("BC", 2, 8), ("D", 4, 192),
    ])
    def test_chamber_counts(self, series, rank, count):
        assert len(rs.enumerate_positive_systems(build(series, rank))) == count

    @pytest.mark.parametrize("series", ["A", "B", "G"])
    def test_counts_match_separability_oracle(self, series):
        # Rank-2 case: count sign patterns on root lines that are separable.
        sys = build(series, 2)
        lines = {}
        for r in sys.roots:
            key = min(r, ex.vneg(r))
            lines.setdefault(key, set()).add(r)
        import itertools
        n_sep = 0
        for signs in itertools.product((1, -1), repeat=len(lines)):
            chosen = []
            for s, (key, members) in zip(signs, sorted(lines.items())):
                pos_half = [m for m in members if m in (key, tuple(2 * x for x in key))]
                neg_half = [m for m in members if m not in pos_half]
                chosen.extend(pos_half if s > 0 else neg_half)
            if separable_2d(chosen):
                n_sep += 1
        assert len(rs.enumerate_positive_systems(sys)) == n_sep

    def test_witness_positive_exactly_on_chamber(self):
        sys = build("B", 2)
        fam = rs.enumerate_positive_systems(sys)
        seen = set()
        for ps in fam:
            pos = ps.positive_set
            assert pos not in seen
            seen.add(pos)
            for r in sys.roots:
                val = ex.vdot(ps.witness, r)
                assert (val > 0) == (r in pos)

    def test_standard_chamber_is_id_zero(self):
        sys = build("A", 2)
        fam = rs.enumerate_positive_systems(sys)
        assert fam.get(0).positive_set == frozenset(sys.positive_roots)

    def test_simple_system_of_standard_chamber(self):
        sys = build("B", 3)
        fam = rs.enumerate_positive_systems(sys)
        assert fam.get(0).simple_system() == sys.simple_roots

    def test_bc1_chambers(self):
        sys = build("BC", 1)
        fam = rs.enumerate_positive_systems(sys)
        sets = {ps.positive_set for ps in fam}
        assert sets == {frozenset({(1,), (2,)}), frozenset({(-1,), (-2,)})}

    def test_deterministic_ids(self):
        a = rs.ChamberFamily(build("B", 2))
        b = rs.ChamberFamily(build("B", 2))
        assert a.masks == b.masks
        assert a.witnesses == b.witnesses
