import csv
import io
import math

import numpy as np
import pytest

from eprlab.stabilizer import (
    HARDY_CONTEXTS,
    HardyTable,
    hardy_table,
    reports_to_csv_text,
    reports_to_text,
    uw_commutator_norm,
    verify_bell_relations,
    verify_ghz_relations,
    verify_sigma_xy_observable,
)
from eprlab.states import GoldsteinParams

INV_SQRT3 = 1.0 / math.sqrt(3.0)


def hardy_witness_closed_form(a, b, c):
    """|<beta1-perp, beta2-perp | psi>|^2 = |abc|^2 / ((|a|^2+|b|^2)(|a|^2+|c|^2)).

    Derived by expanding the overlap of the state with the orthogonal beta
    directions; serves as the independent oracle for the witness cell.
    """
    n1 = abs(a) ** 2 + abs(b) ** 2
    n2 = abs(a) ** 2 + abs(c) ** 2
    return abs(a * b * c) ** 2 / (n1 * n2)


class TestGhzRelations:
    def test_four_reports_in_order(self):
        reports = verify_ghz_relations()
        assert [r.label for r in reports] == ["xyy", "yxy", "yyx", "xxx"]
        assert [r.expected for r in reports] == [1.0, 1.0, 1.0, -1.0]

    def test_measured_values(self):
        reports = verify_ghz_relations()
        assert reports[0].measured == pytest.approx(1.0, abs=1e-12)
        assert reports[3].measured == pytest.approx(-1.0, abs=1e-12)

    def test_all_pass_with_tiny_residuals(self):
        for r in verify_ghz_relations():
            assert r.passed
            assert r.residual <= 1e-12

    def test_deterministic_across_runs(self):
        assert verify_ghz_relations() == verify_ghz_relations()
        assert verify_bell_relations() == verify_bell_relations()


class TestBellRelations:
    def test_eigenvalues(self):
        reports = verify_bell_relations()
        by_label = {r.label: r for r in reports}
        assert by_label["xx"].measured == pytest.approx(-1.0, abs=1e-12)
        assert by_label["yy"].measured == pytest.approx(1.0, abs=1e-12)

    def test_commutation_row(self):
        # oracle: direct 4x4 commutator of literal Pauli products
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        xx = np.kron(sx, sx)
        yy = np.kron(sy, sy)
        assert np.abs(xx @ yy - yy @ xx).max() == 0.0
        comm_report = verify_bell_relations()[-1]
        assert comm_report.label == "comm(xx,yy)"
        assert comm_report.measured == pytest.approx(0.0, abs=1e-14)
        assert comm_report.passed

    def test_all_pass(self):
        assert all(r.passed for r in verify_bell_relations())


class TestSigmaXyObservable:
    def test_matrix_entries(self):
        # oracle: literal 2x2 multiplication
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        m = -1j * sx @ sy
        assert m[0, 0] == pytest.approx(1.0, abs=1e-14)
        assert m[0, 1] == pytest.approx(0.0, abs=1e-14)
        assert m[1, 1] == pytest.approx(-1.0, abs=1e-14)
        assert np.abs(m - m.conj().T).max() <= 1e-14

    def test_report_passes(self):
        report = verify_sigma_xy_observable()
        assert report.passed
        assert report.residual <= 1e-14


class TestHardyTable:
    def test_product_state_has_vacuous_witness(self):
        table = hardy_table(GoldsteinParams(1, 0, 0))
        assert table.ww[0, 0] == pytest.approx(0.0, abs=1e-12)

    def test_symmetric_zero_identities(self):
        table = hardy_table(GoldsteinParams(1, 1, 1))
        assert table.uu[1, 1] == pytest.approx(0.0, abs=1e-12)
        assert table.wu[0, 0] == pytest.approx(0.0, abs=1e-12)
        assert table.uw[0, 0] == pytest.approx(0.0, abs=1e-12)

    def test_symmetric_witness_value(self):
        table = hardy_table(GoldsteinParams(1, 1, 1))
        expected = hardy_witness_closed_form(INV_SQRT3, INV_SQRT3, INV_SQRT3)
        assert expected == pytest.approx(1.0 / 12.0, abs=1e-15)
        assert table.ww[0, 0] == pytest.approx(expected, abs=1e-12)

    def test_distributions_sum_to_one(self):
        table = hardy_table(GoldsteinParams(0.2, 0.5, 0.9))
        for label in HARDY_CONTEXTS:
            assert table.context(label).sum() == pytest.approx(1.0, abs=1e-12)

    def test_witness_matches_closed_form_on_random_params(self):
        rng = np.random.default_rng(31)
        for _ in range(25):
            a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
            p = GoldsteinParams(a, b, c)
            table = hardy_table(p)
            expected = hardy_witness_closed_form(p.a, p.b, p.c)
            assert table.ww[0, 0] == pytest.approx(expected, abs=1e-12)

    def test_invalid_table_rejected(self):
        good = hardy_table(GoldsteinParams(1, 1, 1))
        with pytest.raises(ValueError, match="sums to"):
            HardyTable(
                params=good.params,
                uu=np.full((2, 2), 0.3),
                wu=good.wu,
                uw=good.uw,
                ww=good.ww,
            )

    def test_rows_cover_all_cells(self):
        table = hardy_table(GoldsteinParams(1, 1, 1))
        rows = list(table.rows())
        assert len(rows) == 16
        assert {r[0] for r in rows} == set(HARDY_CONTEXTS)


class TestGridProperties:
    def test_zero_identities_and_witness_boundary_on_20_cube(self):
        values = np.linspace(0.0, 1.0, 20)
        for a in values:
            for b in values:
                for c in values:
                    if a == b == c == 0.0:
                        continue
                    if a == 0.0 and (b == 0.0 or c == 0.0):
                        continue  # beta vector undefined: outside the domain
                    p = GoldsteinParams(a, b, c)
                    table = hardy_table(p)
                    assert table.uu[1, 1] <= 1e-12
                    assert table.wu[0, 0] <= 1e-12
                    assert table.uw[0, 0] <= 1e-12
                    witness = table.ww[0, 0]
                    if abs(p.a * p.b * p.c) > 1e-6:
                        assert witness > 1e-10
                    else:
                        assert witness <= 1e-10


class TestUwCommutatorNorm:
    def test_zero_when_b_vanishes(self):
        assert uw_commutator_norm(GoldsteinParams(1, 0, 0), 1) == pytest.approx(0.0, abs=1e-14)

    def test_zero_when_a_vanishes(self):
        p = GoldsteinParams(0, 1 / math.sqrt(2), 1 / math.sqrt(2))
        assert uw_commutator_norm(p, 1) == pytest.approx(0.0, abs=1e-14)

    def test_symmetric_point_equals_half(self):
        norm = uw_commutator_norm(GoldsteinParams(1, 1, 1), 1)
        # oracle: |a||b| / (|a|^2 + |b|^2) with a = b = 1/sqrt(3)
        closed = (INV_SQRT3 * INV_SQRT3) / (INV_SQRT3**2 + INV_SQRT3**2)
        assert closed == pytest.approx(0.5, abs=1e-15)
        assert norm == pytest.approx(closed, abs=1e-12)

    def test_closed_form_on_random_params(self):
        rng = np.random.default_rng(32)
        for _ in range(25):
            a, b, c = rng.normal(size=3) + 1j * rng.normal(size=3)
            p = GoldsteinParams(a, b, c)
            for i, x in ((1, p.b), (2, p.c)):
                closed = abs(p.a) * abs(x) / (abs(p.a) ** 2 + abs(x) ** 2)
                assert uw_commutator_norm(p, i) == pytest.approx(closed, abs=1e-12)

    def test_zero_iff_product_zero(self):
        cases = [
            (GoldsteinParams(1, 0, 1), 1, True),
            (GoldsteinParams(1, 1, 0), 2, True),
            (GoldsteinParams(1, 1, 0), 1, False),
        ]
        for p, i, expect_zero in cases:
            assert (uw_commutator_norm(p, i) <= 1e-12) == expect_zero

    def test_invalid_index(self):
        with pytest.raises(ValueError, match="particle index"):
            uw_commutator_norm(GoldsteinParams(1, 1, 1), 3)


class TestSerialization:
    def test_text_table(self):
        text = reports_to_text(verify_ghz_relations())
        lines = text.splitlines()
        assert len(lines) == 5
        assert "xxx" in text and "pass" in text

    def test_csv_round_trip(self):
        reports = verify_ghz_relations()
        parsed = list(csv.DictReader(io.StringIO(reports_to_csv_text(reports))))
        assert len(parsed) == 4
        for row, report in zip(parsed, reports):
            assert row["label"] == report.label
            assert float(row["expected"]) == report.expected
            assert float(row["measured"]) == pytest.approx(report.measured, rel=1e-11)
            assert int(row["pass"]) == int(report.passed)
