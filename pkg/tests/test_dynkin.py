import pytest

from rootgrading import dynkin as dk
from rootgrading import rootsys as rs


def diagram(series, rank):
    return dk.diagram_of(rs.build_root_system(series, rank))


class TestDiagram:
    def test_a3_path(self):
        d = diagram("A", 3)
        assert d.nodes == (0, 1, 2)
        assert {(i, j) for i, j, m, _ in d.bonds} == {(0, 1), (1, 2)}
        assert all(m == 1 for _, _, m, _ in d.bonds)

    def test_b2_double_bond_arrow(self):
        d = diagram("B", 2)
        assert len(d.bonds) == 1
        i, j, mult, arrow = d.bonds[0]
        assert mult == 2
        assert arrow == (0, 1)  # alpha1 long -> alpha2 short

    def test_f4_middle_double_bond(self):
        d = diagram("F", 4)
        mults = {(i, j): m for i, j, m, _ in d.bonds}
        assert mults == {(0, 1): 1, (1, 2): 2, (2, 3): 1}
        arrow = [a for i, j, m, a in d.bonds if m == 2][0]
        assert arrow == (1, 2)

    def test_g2_triple_bond(self):
        d = diagram("G", 2)
        assert d.bonds[0][2] == 3
        assert d.bonds[0][3] == (1, 0)  # alpha2 long -> alpha1 short

    def test_bc_has_no_diagram(self):
        with pytest.raises(rs.UnsupportedTypeError):
            diagram("BC", 2)


class TestAutomorphisms:
    @pytest.mark.parametrize("series,rank,order", [
        ("A", 1, 1), ("A", 2, 2), ("A", 3, 2), ("A", 4, 2),
        ("B", 2, 1), ("B", 3, 1), ("C", 3, 1),
        ("D", 4, 6), ("D", 5, 2),
        ("E", 6, 2), ("F", 4, 1), ("G", 2, 1),
    ])
    def test_classical_orders(self, series, rank, order):
        assert dk.automorphism_group(diagram(series, rank)).order == order

    @pytest.mark.parametrize("series,rank", [("A", 3), ("D", 4), ("E", 6)])
    def test_automorphisms_permute_roots(self, series, rank):
        sys = rs.build_root_system(series, rank)
        group = dk.automorphism_group(dk.diagram_of(sys))
        for perm in group.elements:
            image = {dk.act_on_root(perm, r) for r in sys.roots}
            assert image == set(sys.roots)

    def test_flip_subgroup_a3(self):
        group = dk.automorphism_group(diagram("A", 3))
        flip = group.subgroup("flip")
        assert len(flip) == 2
        assert (2, 1, 0) in flip

    def test_flip_unavailable_on_a1(self):
        group = dk.automorphism_group(diagram("A", 1))
        with pytest.raises(dk.DatumInvalidError):
            group.subgroup("flip")

    def test_triality_subgroup_d4(self):
        group = dk.automorphism_group(diagram("D", 4))
        tri = group.subgroup("triality")
        assert len(tri) == 3
        # The outer nodes 0, 2, 3 are cycled; the branch node 1 is fixed.
        for p in tri:
            assert p[1] == 1


class TestDatum:
    def test_a3_flip_symmetric_J_valid(self):
        d = diagram("A", 3)
        gamma = dk.automorphism_group(d).subgroup("flip")
        datum = dk.validate_datum(d, (0, 2), gamma)
        assert datum.J == (0, 2)
        assert datum.orbits_on_J() == ((0, 2),)

    def test_a3_flip_asymmetric_J_invalid(self):
        d = diagram("A", 3)
        gamma = dk.automorphism_group(d).subgroup("flip")
        with pytest.raises(dk.DatumInvalidError) as err:
            dk.validate_datum(d, (0,), gamma)
        assert any(w[1] == 0 and w[2] == 2 for w in err.value.witnesses)

    def test_trivial_gamma_any_J(self):
        d = diagram("A", 2)
        datum = dk.validate_datum(d, (0,), (dk.automorphism_group(d).subgroup("trivial")))
        assert datum.J == (0,)

    def test_non_subgroup_rejected(self):
        d = diagram("A", 3)
        with pytest.raises(dk.DatumInvalidError):
            dk.validate_datum(d, (0, 1, 2), ((2, 1, 0),))  # missing identity

    def test_orbit_structure_a4_flip(self):
        datum = dk.datum_from_labels(rs.build_root_system("A", 4), "flip", "all")
        assert datum.orbits_on_J() == ((0, 3), (1, 2))

    def test_d4_triality_orbits(self):
        datum = dk.datum_from_labels(rs.build_root_system("D", 4), "triality", "all")
        assert datum.orbits_on_J() == ((0, 2, 3), (1,))
