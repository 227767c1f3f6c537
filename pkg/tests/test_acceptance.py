"""Acceptance gate: nine end-to-end criteria, one pass/fail line each.

Run with ``pytest -v tests/test_acceptance.py`` to see one line per
criterion.  Every criterion is exact (integer/rational arithmetic or
frozen golden data); there are no tolerances.
"""

from __future__ import annotations

import random

import numpy as np
import pytest

from stardyn.certify import (
    Cascade,
    arc,
    cover_digraph,
    find_cascade,
    find_genscramble,
    first_witness,
    image_of_arc,
    periodicity_report,
    self_loop_only_lengths,
    closed_walk_lengths,
    subtree_of_arc,
    verify_genscramble,
)
from stardyn.orders import baldwin_le, forced_periods, nod_le, sharkovskii_le
from stardyn.patterns import enumerate_patterns, parse_pattern
from stardyn.plmap import UncountablePeriodicSet, periodic_points, realize
from stardyn.survey import classify_all, filter_result
from support import EX1, EX2, random_pattern

P1 = parse_pattern(EX1)
P2 = parse_pattern(EX2)


def test_criterion_1_example1_digraph_exact():
    g = cover_digraph(P1)
    assert tuple(b.label for b in g.vertices) == ("[0,1]", "[1,3]", "[0,2]", "[0,4]")
    assert set(g.edge_labels()) == {
        ("[0,1]", "[0,1]"),
        ("[0,1]", "[0,2]"),
        ("[0,2]", "[1,3]"),
        ("[1,3]", "[0,2]"),
        ("[1,3]", "[0,4]"),
        ("[0,4]", "[0,1]"),
    }
    assert len(list(g.edges())) == 6


def test_criterion_2_example1_periodicity_exact():
    report = periodicity_report(P1, p_max=10)
    assert set(report.absent) == {3}
    assert set(report.present) == {1, 2, 4, 5, 6, 7, 8, 9, 10}
    # absence is verified by exhausting the oracle, not by sampling
    assert periodic_points(realize(P1), 3) == []


def test_criterion_3_example2_digraph_walks_periodicity_chaos():
    g = cover_digraph(P2)
    assert set(g.edge_labels()) == {
        ("[0,1]", "[0,1]"),
        ("[0,1]", "[0,2]"),
        ("[0,2]", "[1,3]"),
        ("[1,3]", "[0,2]"),
        ("[1,3]", "[0,4]"),
        ("[0,4]", "[1,3]"),
        ("[0,4]", "[3,5]"),
        ("[3,5]", "[0,4]"),
    }
    odd_walks = {q for q in closed_walk_lengths(g, 9) if q % 2 == 1}
    assert odd_walks == {1, 3, 5, 7, 9}
    assert odd_walks <= self_loop_only_lengths(g, 9)
    report = periodicity_report(P2, p_max=10, max_iterate=2)
    assert set(report.present) == {1, 2, 4, 6, 8, 10}
    cert = report.chaos
    assert cert is not None
    assert (cert.iterate, cert.u, cert.v) == (2, 0, 2)
    assert verify_genscramble(P2, cert)


def test_criterion_4_one_point_per_branch_sweep():
    for n in range(2, 6):
        result = classify_all(n, n + 1, 10)
        assert result.records, f"no classes at n={n}"
        for rec in result.records:
            assert rec.center_theorem
            assert rec.periods_present == tuple(range(1, 11))
            assert rec.chaos_iterate is not None


def test_criterion_5_orbit_size_n_plus_2_sweep():
    three_absent_somewhere = False
    for n in (3, 4):
        result = classify_all(n, n + 2, 10)
        assert result.records, f"no classes at n={n}"
        for rec in result.records:
            present = set(rec.periods_present)
            assert set(range(1, 11)) - {3} <= present
            assert rec.chaos_iterate is not None
            if 3 not in present:
                three_absent_somewhere = True
    assert three_absent_somewhere


def test_criterion_6_class_count_reconciliation():
    result = filter_result(classify_all(3, 6, 10), "theorem1-inapplicable")
    counts = {
        "raw": result.counts.raw,
        "branch": result.counts.branch_classes,
        "digraph": result.counts.digraph_classes,
    }
    # counts at all three equivalence levels, compared with the quoted 24;
    # no convention reproduces it, and the discrepancy is on record
    assert counts == {"raw": 180, "branch": 30, "digraph": 30}
    assert 24 not in counts.values()
    # the criterion's dynamical claims hold regardless
    for rec in result.records:
        assert rec.tail == "evens-plus-one" or rec.tail.startswith("cofinite-from-")
        assert rec.chaos_iterate is not None and rec.chaos_iterate <= 2


def test_criterion_7_order_facts():
    assert {m for m in range(1, 101) if sharkovskii_le(m, 4)} == {1, 2, 4}
    assert nod_le(3, 2, 3) is False

    # the interval order is a total order on [1, 200]
    size = 200
    le = np.zeros((size + 1, size + 1), dtype=bool)
    for m in range(1, size + 1):
        for k in range(1, size + 1):
            le[m, k] = sharkovskii_le(m, k)
    assert all(le[m, m] for m in range(1, size + 1))
    both = le & le.T
    assert not (both & ~np.eye(size + 1, dtype=bool)).any()  # antisymmetry
    assert (le | le.T)[1:, 1:].all()  # totality
    reach = (le.astype(np.int64) @ le.astype(np.int64)) > 0
    assert not (reach & ~le).any()  # transitivity

    # each t-od order (t <= 4) is a partial order on [1, 100]
    for t in (2, 3, 4):
        size = 100
        le = np.zeros((size + 1, size + 1), dtype=bool)
        for m in range(1, size + 1):
            for k in range(1, size + 1):
                le[m, k] = baldwin_le(t, m, k)
        assert all(le[m, m] for m in range(1, size + 1))
        both = le & le.T
        assert not (both & ~np.eye(size + 1, dtype=bool)).any()
        reach = (le.astype(np.int64) @ le.astype(np.int64)) > 0
        assert not (reach & ~le).any()


def test_criterion_8_cross_validation_suite():
    rng = random.Random(8118)
    p_max = 8
    for _ in range(200):
        p = random_pattern(rng, rng.randint(1, 4), rng.randint(2, 8))
        g = cover_digraph(p)
        m = realize(p)
        # combinatorial edges match exact image containment
        for i, v in enumerate(g.vertices):
            img = image_of_arc(m, arc(v.inner, v.outer, p))
            for j, w in enumerate(g.vertices):
                assert g.has_edge(i, j) == img.contains(
                    subtree_of_arc(m, arc(w.inner, w.outer, p))
                )
        # cascade claims are confirmed by the oracle
        cascade = find_cascade(g)
        if cascade is not None:
            assert isinstance(cascade, Cascade)
            for q in range(cascade.m, p_max + 1):
                assert first_witness(m, q) is not None, (p.to_text(), q)
        # chaos certificates replay
        cert = find_genscramble(p, max_iterate=2)
        if cert is not None:
            assert verify_genscramble(p, cert)
        # the forcing baseline is sound
        report = periodicity_report(p, p_max=p_max)
        assert forced_periods(1, p.k, p_max) <= set(report.present)


def test_criterion_9_fixed_point_always_exists():
    checked = 0
    for n in (1, 2, 3):
        for k in range(2, 7):
            for p in enumerate_patterns(n, k):
                m = realize(p)
                try:
                    points = periodic_points(m, 1)
                    assert points, p.to_text()
                except UncountablePeriodicSet:
                    pass  # a whole interval of fixed points certainly is nonempty
                checked += 1
    assert checked > 100
