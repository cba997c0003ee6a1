"""Trace identities, the volume cocycle, and the thirty pairing values."""

from __future__ import annotations

import random

import pytest

from ncgeo.scalars import HALF, LAMBDA, MU, ONE, ZERO, lambda_pow, mu_pow
from ncgeo.torus import TorusElement, U1, U2, u1, u2
from ncgeo.crossed import CrossedElement, PROJECTION_NAMES, make_projection
from ncgeo.pairing import (
    COLUMNS,
    COLUMN_COCYCLES,
    ConnesTwoCocycle,
    NotAProjection,
    Trace,
    TwistedTrace,
    build_table,
    connes_torus_cocycle,
    evaluate,
    pair,
    table_value,
    text_value,
    twisted_trace_property_check,
    twisted_weight,
)


def random_torus(rng, radius=2, size=2):
    out = TorusElement()
    for _ in range(size):
        n = rng.randint(-radius, radius)
        m = rng.randint(-radius, radius)
        c = mu_pow(rng.randint(-2, 2)) * rng.choice([1, -1, 2])
        out = out + TorusElement.monomial(n, m, c)
    return out


def random_crossed(rng):
    return CrossedElement(random_torus(rng), random_torus(rng))


class TestTwistedWeight:
    def test_seed_normalization(self):
        for i in (0, 1):
            for j in (0, 1):
                assert twisted_weight(i, j, i, j) == ONE

    def test_off_class_zero(self):
        assert twisted_weight(1, 0, 0, 0) == ZERO
        assert twisted_weight(0, 0, 1, 1) == ZERO

    def test_spot_phases(self):
        assert twisted_weight(1, 1, 1, -1) == LAMBDA
        assert twisted_weight(0, 1, 2, 1) == lambda_pow(-1)
        assert twisted_weight(1, 0, 3, 2) == lambda_pow(-3)

    def test_trace_forced_relation(self):
        # w(n-2p, m-2q) = lambda^(qn + pm - 2pq) w(n,m) on each parity class
        for i in (0, 1):
            for j in (0, 1):
                for n in range(i - 4, 5, 2):
                    for m in range(j - 4, 5, 2):
                        for p, q in ((1, 0), (0, 1), (1, 1), (-1, 2)):
                            lhs = twisted_weight(i, j, n - 2 * p, m - 2 * q)
                            rhs = lambda_pow(q * n + p * m - 2 * p * q) * twisted_weight(
                                i, j, n, m
                            )
                            assert lhs == rhs


class TestTraceIdentity:
    def test_random_pairs(self):
        rng = random.Random(3)
        for _ in range(25):
            x, y = random_crossed(rng), random_crossed(rng)
            for i in (0, 1):
                for j in (0, 1):
                    assert twisted_trace_property_check(i, j, x, y)

    def test_monomial_anchor(self):
        x = CrossedElement(U1, None)
        y = CrossedElement(None, u1(-1))
        assert twisted_trace_property_check(1, 0, x, y)

    def test_corrupted_table_detected(self):
        # the transposed phase profile satisfies the kernel recurrences of
        # make_D but not the trace identity; this pair witnesses the failure
        bad = lambda n, m: lambda_pow((n * m) // 2) if (n % 2, m % 2) == (1, 0) else ZERO
        x = CrossedElement(u2(2), None)
        y = CrossedElement(None, u1(1) * u2(2))
        assert twisted_trace_property_check(1, 0, x, y)
        assert not twisted_trace_property_check(1, 0, x, y, weight=bad)


class TestEvaluate:
    def test_trace_on_identity(self):
        assert evaluate(Trace(), [CrossedElement.one()]) == ONE

    def test_twisted_trace_on_projections(self):
        assert evaluate(TwistedTrace(0, 0), [make_projection("p")]) == HALF
        assert evaluate(TwistedTrace(1, 0), [make_projection("q0")]) == -HALF
        assert evaluate(TwistedTrace(0, 1), [make_projection("q1")]) == -HALF
        assert evaluate(TwistedTrace(1, 1), [make_projection("r")]) == -(MU * HALF)

    def test_arity_checks(self):
        e = make_projection("p")
        with pytest.raises(ValueError):
            evaluate(Trace(), [e, e])
        with pytest.raises(ValueError):
            evaluate(ConnesTwoCocycle(), [e])

    def test_parity_validation(self):
        with pytest.raises(ValueError):
            TwistedTrace(2, 0)

    def test_pair_rejects_non_projection(self):
        bad = CrossedElement(U1, None)
        with pytest.raises(NotAProjection) as exc:
            pair(bad, Trace())
        assert not exc.value.check.idempotency_defect.is_zero()


class TestConnesCocycle:
    def test_volume_anchor(self):
        a = u2(-1) * u1(-1)
        assert connes_torus_cocycle(a, U1, U2) == ONE

    def test_cyclic_on_torus(self):
        rng = random.Random(11)
        for _ in range(20):
            a, b, c = (random_torus(rng) for _ in range(3))
            assert connes_torus_cocycle(a, b, c) == connes_torus_cocycle(c, a, b)

    def test_hochschild_cocycle(self):
        rng = random.Random(13)
        for _ in range(15):
            a0, a1, a2, a3 = (random_torus(rng) for _ in range(4))
            b = (
                connes_torus_cocycle(a0 * a1, a2, a3)
                - connes_torus_cocycle(a0, a1 * a2, a3)
                + connes_torus_cocycle(a0, a1, a2 * a3)
                - connes_torus_cocycle(a3 * a0, a1, a2)
            )
            assert b == ZERO

    def test_flip_invariance(self):
        rng = random.Random(17)
        for _ in range(15):
            a, b, c = (random_torus(rng) for _ in range(3))
            assert connes_torus_cocycle(a.sigma(), b.sigma(), c.sigma()) == (
                connes_torus_cocycle(a, b, c)
            )

    def test_crossed_extension_cyclic(self):
        rng = random.Random(19)
        phi = ConnesTwoCocycle()
        for _ in range(10):
            x0, x1, x2 = (random_crossed(rng) for _ in range(3))
            assert evaluate(phi, [x0, x1, x2]) == evaluate(phi, [x2, x0, x1])

    def test_projection_column_zero(self):
        phi = ConnesTwoCocycle()
        for name in PROJECTION_NAMES:
            assert pair(make_projection(name), phi) == ZERO

    def test_normalization_scales(self):
        phi = ConnesTwoCocycle(normalization=HALF)
        assert pair(make_projection("r"), phi) == ZERO


class TestTraceInvariance:
    def test_unitary_conjugation(self):
        for name in PROJECTION_NAMES:
            e = make_projection(name)
            for n, m in ((1, 0), (0, 1), (2, -1)):
                u = CrossedElement(TorusElement.monomial(n, m), None)
                conj = u * e * u.star()
                assert pair(conj, Trace()) == pair(e, Trace())


class TestPairingTable:
    def test_all_thirty_match_itemized_values(self):
        table = build_table()
        for row in table.rows:
            for col in table.cols:
                assert table.value(row, col) == text_value(row, col)
                assert table.agrees_text(row, col)

    def test_summary_table_disagreements_flagged(self):
        table = build_table()
        off = {
            (row, col)
            for row in table.rows
            for col in table.cols
            if not table.agrees_table(row, col)
        }
        assert off == {
            ("p", "S_D11"),
            ("p", "S_D00"),
            ("q0", "S_D01"),
            ("q0", "S_D10"),
            ("q1", "S_D00"),
            ("q1", "S_D01"),
            ("r", "S_D10"),
            ("r", "S_D11"),
        }

    def test_discrepancy_records(self):
        table = build_table()
        recs = table.discrepancies()
        assert len(recs) == 8
        r_rec = [d for d in recs if d["row"] == "r" and d["col"] == "S_D11"][0]
        assert r_rec["computed"] == "-u/2"
        assert r_rec["table"] == "0"
        rr = [d for d in recs if d["row"] == "r" and d["col"] == "S_D10"][0]
        assert rr["table"] == "-u^2/2"

    def test_row_values(self):
        table = build_table()
        assert [str(table.value("one", c)) for c in COLUMNS] == ["1", "0", "0", "0", "0", "0"]
        assert [str(table.value("q0", c)) for c in COLUMNS] == ["1/2", "0", "0", "0", "-1/2", "0"]

    def test_formats(self):
        table = build_table()
        data = table.to_json()
        assert data["rows"] == list(PROJECTION_NAMES)
        assert len(data["cells"]) == 30
        assert {"row", "col", "value", "agrees_text", "agrees_table"} <= set(data["cells"][0])
        csv = table.to_csv()
        lines = csv.strip().split("\n")
        assert len(lines) == 6
        assert lines[0] == "projection," + ",".join(COLUMNS)
        text = table.to_text(annotate=True)
        assert "note:" in text
        assert "q_1" in text

    def test_deterministic(self):
        assert build_table().to_json() == build_table().to_json()
