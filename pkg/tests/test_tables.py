import pytest

from coincide.abelian import TRIVIAL, Z, FgAbelianGroup, parse_group
from coincide.tables import (
    TWO_TORSION_STEMS,
    TableError,
    ehp_forces_suspension_injectivity,
    load_tables,
)
from coincide.trilogic import Tri

Z2 = FgAbelianGroup(0, (2,))
Z24 = FgAbelianGroup(0, (24,))


class TestSphereLookups:
    def test_cited_values(self, tables):
        assert tables.pi_sphere(11, 6) == Z
        assert tables.pi_sphere(10, 5) == Z2
        assert tables.pi_sphere(7, 4) == parse_group("Z + Z/12")
        assert tables.pi_sphere(10, 6) == TRIVIAL
        assert tables.pi_sphere(8, 4).order() == 4
        assert tables.pi_sphere(7, 3) == Z2
        assert tables.pi_sphere(6, 3).order() == 12

    def test_range_rules(self, tables):
        assert tables.pi_sphere(3, 7) == TRIVIAL  # m < n
        assert tables.pi_sphere(5, 5) == Z  # m = n
        for m in range(3, 12):
            assert tables.pi_sphere(m - 1, 1) == TRIVIAL  # circle target
        assert tables.pi_sphere(40, 2) is None  # outside coverage

    def test_stable_range_falls_back_to_stems(self, tables):
        # pi_{25}(S^{22}) is stable and not an explicit entry
        assert tables.pi_sphere(25, 22) == Z24


class TestStems:
    def test_cited_values(self, tables):
        assert tables.pi_stable(3) == Z24
        assert tables.pi_stable(4) == TRIVIAL
        assert tables.pi_stable(2) == Z2
        assert tables.pi_stable(0) == Z
        assert tables.pi_stable(-2) == TRIVIAL
        assert tables.pi_stable(18) is None

    def test_two_torsion_flags(self, tables):
        assert tables.stem_is_2_torsion(1) is Tri.YES
        # derived oracle: Z/24 contains an element of order 24 > 2
        orders = {e.order() for e in Z24.elements()}
        assert max(orders) == 24
        assert tables.stem_is_2_torsion(3) is Tri.NO
        assert tables.stem_is_2_torsion(100) is Tri.UNKNOWN
        for k in TWO_TORSION_STEMS:
            assert tables.stem_is_2_torsion(k) is Tri.YES

    def test_declared_set_matches_table(self, tables):
        for k in range(0, 18):
            stem = tables.pi_stable(k)
            assert (stem.exponent() <= 2) == (k in TWO_TORSION_STEMS)


class TestStiefel:
    def test_cited_values(self, tables):
        assert tables.pi_stiefel(10, 7, 2) == TRIVIAL
        assert tables.pi_stiefel(7, 5, 2) == parse_group("Z + Z/2")
        assert tables.pi_stiefel(8, 5, 2) == Z2
        assert tables.pi_stiefel(6, 5, 2) == Z2
        assert tables.pi_stiefel(9, 6, 2) is None

    def test_preconditions(self, tables):
        with pytest.raises(ValueError):
            tables.pi_stiefel(5, 2, 3)


class TestSuspension:
    def test_e_injectivity(self, tables):
        assert tables.suspension_E_injective(8, 4) is Tri.YES
        assert tables.suspension_E_injective(7, 4) is Tri.YES
        assert tables.suspension_E_injective(11, 6) is Tri.NO
        for n in range(2, 9):
            assert tables.suspension_E_injective(n + 2, n) is Tri.YES
        assert tables.suspension_E_injective(4, 4) is Tri.YES  # m = n
        # trivial source
        assert tables.suspension_E_injective(12, 7) is Tri.YES

    def test_e_never_no_on_trivial_source(self, tables):
        for m in range(2, 20):
            for n in range(2, min(m, 12) + 1):
                source = tables.pi_sphere(m - 1, n - 1)
                if source is not None and source.is_trivial:
                    assert tables.suspension_E_injective(m, n) is not Tri.NO

    def test_einf_injectivity(self, tables):
        assert tables.suspension_Einf_injective(8, 4) is Tri.NO
        assert tables.suspension_Einf_injective(7, 4) is Tri.YES
        for n in (4, 6, 8):
            assert tables.suspension_Einf_injective(n + 3, n) is Tri.YES
        for n in (5, 6, 7, 8):
            assert tables.suspension_Einf_injective(2 * n - 3, n) is Tri.YES

    def test_e_trivial_derivation(self, tables):
        # finite source into a torsion-free target dies
        assert tables.suspension_E_trivial(11, 6) is Tri.YES
        assert tables.suspension_E_trivial(8, 4) is Tri.UNKNOWN


class TestEhpCount:
    def test_counting_lemma(self):
        assert ehp_forces_suspension_injectivity(2, 4, 2)
        assert not ehp_forces_suspension_injectivity(2, 2, 2)
        assert not ehp_forces_suspension_injectivity(0, 4, 2)

    def test_loader_reports_the_derivation(self, tables):
        notes = " ".join(tables.integrity_notes)
        assert "orders 2,4,2,12" in notes
        assert "pi_8(S^4)" in notes
        assert "not injective" in notes  # the stable suspension at (8, 4)


GOOD_LINES = """
STEM 0 GROUP Z SRC "Toda 1962"
STEM 1 GROUP Z/2 SRC "Toda 1962"
PI 4 3 GROUP Z/2 SRC "Toda 1962"
"""


class TestLoaderValidation:
    def test_minimal_file_loads(self):
        # incomplete tables fail the mandatory cross-checks
        with pytest.raises(TableError, match="EHP check"):
            load_tables(GOOD_LINES)

    def test_uncited_records_rejected(self):
        with pytest.raises(TableError, match="SRC"):
            load_tables("STEM 0 GROUP Z")

    def test_unknown_kind_rejected(self):
        with pytest.raises(TableError, match="unknown record kind"):
            load_tables('FOO 1 2 GROUP Z SRC "x"')

    def test_bad_group_literal_rejected(self):
        with pytest.raises(TableError, match="group literal"):
            load_tables('STEM 0 GROUP Q SRC "x"')

    def test_duplicate_records_rejected(self):
        text = 'STEM 0 GROUP Z SRC "x"\nSTEM 0 GROUP Z SRC "y"'
        with pytest.raises(TableError, match="duplicate"):
            load_tables(text)

    def test_stability_cross_check(self, tables):
        # corrupt one stable-range entry and reload
        lines = []
        from importlib import resources

        text = (
            resources.files("coincide")
            .joinpath("data/homotopy_tables.txt")
            .read_text(encoding="utf-8")
        )
        for line in text.splitlines():
            if line.startswith("PI 8 5 "):
                line = 'PI 8 5 GROUP Z/23 SRC "corrupted"'
            lines.append(line)
        with pytest.raises(TableError, match="stable-range entry"):
            load_tables("\n".join(lines))

    def test_ehp_orders_cross_check(self, tables):
        from importlib import resources

        text = (
            resources.files("coincide")
            .joinpath("data/homotopy_tables.txt")
            .read_text(encoding="utf-8")
        )
        # removing the E 8 4 record breaks the mandated consistency
        lines = [l for l in text.splitlines() if not l.startswith("E 8 4 ")]
        with pytest.raises(TableError, match="counting forces"):
            load_tables("\n".join(lines))

    def test_einf_84_record_required(self, tables):
        from importlib import resources

        text = (
            resources.files("coincide")
            .joinpath("data/homotopy_tables.txt")
            .read_text(encoding="utf-8")
        )
        lines = [l for l in text.splitlines() if not l.startswith("EINF 8 4 ")]
        with pytest.raises(TableError, match="must be recorded"):
            load_tables("\n".join(lines))

    def test_noninjective_record_with_trivial_source_rejected(self, tables):
        from importlib import resources

        text = (
            resources.files("coincide")
            .joinpath("data/homotopy_tables.txt")
            .read_text(encoding="utf-8")
        )
        text += '\nE 12 7 noninj SRC "wrong"'
        with pytest.raises(TableError, match="trivial source"):
            load_tables(text)


class TestStabilityConsistencyExhaustive:
    def test_every_stable_entry_matches_stem(self, tables):
        for (m, n), (group, _src) in tables.sphere.items():
            if m <= 2 * n - 2:
                stem = tables.pi_stable(m - n)
                assert stem is not None and group == stem, (m, n)
