"""Tests for the classification survey, reference checks, and tables."""

from __future__ import annotations

import json

import pytest

from stardyn.orders import forced_periods
from stardyn.patterns import canonicalize, parse_pattern
from stardyn.survey import (
    REFERENCE_FACTS,
    SURVEY_FILTERS,
    TABLE_COLUMNS,
    classify_all,
    emit_table,
    filter_result,
    parse_table,
    survey_to_json,
    tail_tag,
    verify_paper,
)
from support import EX1, EX2


@pytest.fixture(scope="module")
def survey_3_4():
    return classify_all(3, 4, 10)


@pytest.fixture(scope="module")
def survey_3_5():
    return classify_all(3, 5, 10)


@pytest.fixture(scope="module")
def survey_3_6():
    return classify_all(3, 6, 10)


# ---------------------------------------------------------------------------
# tail_tag
# ---------------------------------------------------------------------------


def test_tail_tag_evens_plus_one():
    assert tail_tag({1, 2, 4, 6, 8, 10}, 10) == "evens-plus-one"


def test_tail_tag_cofinite_with_gap():
    assert tail_tag({1, 2, 4, 5, 6, 7, 8, 9, 10}, 10) == "cofinite-from-4"


def test_tail_tag_full_range_is_cofinite_from_one():
    assert tail_tag(set(range(1, 11)), 10) == "cofinite-from-1"


def test_tail_tag_other_when_top_period_missing():
    assert tail_tag({1, 2, 5, 7}, 10) == "other"


def test_tail_tag_evens_checked_before_cofinite():
    # {1} + evens contains the top period, so the cofinite rule would also
    # fire (vacuously at m = P_max); the distinctive shape must win.
    assert tail_tag({1, 2, 4, 6, 8, 10}, 10) != "cofinite-from-10"


# ---------------------------------------------------------------------------
# classify_all
# ---------------------------------------------------------------------------


def test_one_point_per_branch_single_class(survey_3_4):
    assert survey_3_4.counts.branch_classes == 1
    assert survey_3_4.counts.digraph_classes == 1
    assert survey_3_4.counts.raw == 6  # 3! relabelings, trivial stabilizer
    (rec,) = survey_3_4.records
    assert rec.center_theorem
    assert not rec.nplus2
    assert rec.periods_present == tuple(range(1, 11))
    assert rec.tail == "cofinite-from-1"
    assert rec.chaos_iterate == 1
    assert rec.class_size == 6


def test_counts_for_five_points_on_three_branches(survey_3_5):
    assert survey_3_5.counts.branch_classes == 12
    assert survey_3_5.counts.digraph_classes == 12
    assert survey_3_5.counts.raw == 72


def test_center_theorem_flag_matches_branch_membership(survey_3_5):
    for rec in survey_3_5.records:
        same_branch = rec.pattern.branch_of(3) == rec.pattern.branch_of(1)
        assert rec.center_theorem == (not same_branch)


def test_nplus2_flag_complements_center_theorem_at_k_equals_n_plus_2(survey_3_5):
    for rec in survey_3_5.records:
        assert rec.nplus2 == (not rec.center_theorem)


def test_two_points_two_branches(survey_3_4):
    res = classify_all(2, 3, 10)
    assert res.counts.raw == 2
    assert res.counts.branch_classes == 1
    assert res.counts.digraph_classes == 1


def test_raw_count_is_sum_of_class_sizes(survey_3_6):
    assert survey_3_6.counts.raw == sum(r.class_size for r in survey_3_6.records)
    assert survey_3_6.counts.raw == 720
    assert survey_3_6.counts.branch_classes == 120


def test_branch_class_ids_are_enumeration_order(survey_3_6):
    assert [r.branch_class for r in survey_3_6.records] == list(range(120))


def test_digraph_ids_contiguous_and_first_occurrence_ordered(survey_3_6):
    seen: list[int] = []
    for r in survey_3_6.records:
        if r.digraph_class not in seen:
            assert r.digraph_class == len(seen)
            seen.append(r.digraph_class)
    assert len(seen) == survey_3_6.counts.digraph_classes


def test_records_carry_canonical_patterns(survey_3_6):
    for r in survey_3_6.records:
        assert canonicalize(r.pattern) == r.pattern


def test_present_set_contains_forced_baseline(survey_3_6):
    for r in survey_3_6.records:
        assert forced_periods(1, r.pattern.k, 10) <= set(r.periods_present)


def test_summary_consistent_with_report(survey_3_5):
    for r in survey_3_5.records:
        assert set(r.periods_present) == set(r.report.present)
        chaos = r.report.chaos
        assert r.chaos_iterate == (chaos.iterate if chaos is not None else None)


def test_parallel_jobs_match_serial(survey_3_5):
    par = classify_all(3, 5, 10, jobs=3)
    assert par.counts == survey_3_5.counts
    assert emit_table(par.records, "json") == emit_table(survey_3_5.records, "json")


def test_classify_deterministic_bytes(survey_3_5):
    again = classify_all(3, 5, 10)
    assert emit_table(again.records, "json") == emit_table(survey_3_5.records, "json")
    assert emit_table(again.records, "csv") == emit_table(survey_3_5.records, "csv")


# ---------------------------------------------------------------------------
# the filtered (3, 6) campaign
# ---------------------------------------------------------------------------


def test_filtered_counts_all_levels(survey_3_6):
    sub = filter_result(survey_3_6, "theorem1-inapplicable")
    assert sub.counts.branch_classes == 30
    assert sub.counts.digraph_classes == 30
    assert sub.counts.raw == 180


def test_filter_spellings_agree(survey_3_6):
    a = filter_result(survey_3_6, SURVEY_FILTERS[0])
    b = filter_result(survey_3_6, SURVEY_FILTERS[1])
    assert a == b


def test_filter_unknown_name_rejected(survey_3_6):
    with pytest.raises(ValueError, match="unknown survey filter"):
        filter_result(survey_3_6, "nosuch")


def test_filtered_classes_have_tame_tails_and_early_chaos(survey_3_6):
    sub = filter_result(survey_3_6, "theorem1-inapplicable")
    for r in sub.records:
        assert r.tail == "evens-plus-one" or r.tail.startswith("cofinite-from-")
        assert r.chaos_iterate is not None and r.chaos_iterate <= 2


def test_six_point_example_class_is_evens_plus_one(survey_3_6):
    target = canonicalize(parse_pattern(EX2))
    matches = [r for r in survey_3_6.records if r.pattern == target]
    assert len(matches) == 1
    rec = matches[0]
    assert not rec.center_theorem
    assert rec.tail == "evens-plus-one"
    assert rec.periods_present == (1, 2, 4, 6, 8, 10)
    assert rec.chaos_iterate == 2


def test_five_point_example_class_summary(survey_3_5):
    target = canonicalize(parse_pattern(EX1))
    matches = [r for r in survey_3_5.records if r.pattern == target]
    assert len(matches) == 1
    rec = matches[0]
    assert rec.periods_present == (1, 2, 4, 5, 6, 7, 8, 9, 10)
    assert rec.tail == "cofinite-from-4"
    assert rec.nplus2 and not rec.center_theorem


# ---------------------------------------------------------------------------
# tables
# ---------------------------------------------------------------------------


def test_table_columns_golden():
    assert TABLE_COLUMNS == (
        "pattern",
        "branch_class",
        "digraph_class",
        "center_theorem",
        "nplus2",
        "periods_present",
        "tail",
        "chaos_iterate",
    )


def test_table_roundtrip_json_equals_csv(survey_3_5):
    rows_json = parse_table(emit_table(survey_3_5.records, "json"), "json")
    rows_csv = parse_table(emit_table(survey_3_5.records, "csv"), "csv")
    assert rows_json == rows_csv
    assert len(rows_json) == 12


def test_table_csv_shape(survey_3_4):
    text = emit_table(survey_3_4.records, "csv")
    lines = text.splitlines()
    assert lines[0] == ",".join(TABLE_COLUMNS)
    assert len(lines) == 2
    cells = lines[1].split(",")
    assert cells[0] == "n=3 k=4; b1: 1; b2: 2; b3: 3"
    assert cells[3] == "true"
    assert cells[5] == "1 2 3 4 5 6 7 8 9 10"


def test_table_unknown_format_rejected(survey_3_4):
    with pytest.raises(ValueError, match="unknown table format"):
        emit_table(survey_3_4.records, "xml")
    with pytest.raises(ValueError, match="unknown table format"):
        parse_table("", "xml")


def test_table_missing_chaos_roundtrips_as_none(survey_3_6):
    # build a row set that includes a chaotic and (if any) a non-chaotic class
    rows = parse_table(emit_table(survey_3_6.records, "csv"), "csv")
    for row, rec in zip(rows, survey_3_6.records):
        assert row[7] == rec.chaos_iterate


def test_survey_json_payload(survey_3_5):
    payload = survey_to_json(survey_3_5)
    assert payload["counts"] == {"raw": 72, "branch_classes": 12, "digraph_classes": 12}
    assert payload["columns"] == list(TABLE_COLUMNS)
    assert len(payload["rows"]) == 12
    text = json.dumps(payload, indent=2, sort_keys=True)
    assert json.dumps(survey_to_json(classify_all(3, 5, 10)), indent=2, sort_keys=True) == text


# ---------------------------------------------------------------------------
# reference-fact verification
# ---------------------------------------------------------------------------


def test_reference_checks_all_pass():
    rep = verify_paper()
    assert rep.all_passed
    names = [c.name for c in rep.checks]
    assert names == [
        "example1-digraph",
        "example1-periodicity",
        "example1-cascade",
        "example2-digraph",
        "example2-odd-closed-walks",
        "example2-periodicity",
        "example2-chaos",
        "example2-successor-modulus",
        "interval-order-below-four",
        "one-point-per-branch-sweep",
        "orbit-size-n-plus-2-sweep",
        "class-count-reconciliation",
    ]


def test_reference_report_rerun_is_byte_identical():
    a = json.dumps(verify_paper().to_json(), indent=2, sort_keys=True)
    b = json.dumps(verify_paper().to_json(), indent=2, sort_keys=True)
    assert a == b


def test_corrupted_digraph_golden_fails_with_diff(monkeypatch):
    edges = set(REFERENCE_FACTS["example1_edges"])
    removed = ("[0,4]", "[0,1]")
    edges.discard(removed)
    monkeypatch.setitem(REFERENCE_FACTS, "example1_edges", frozenset(edges))
    rep = verify_paper()
    assert not rep.all_passed
    bad = {c.name: c for c in rep.checks if not c.passed}
    assert set(bad) == {"example1-digraph"}
    assert "unexpected edges" in bad["example1-digraph"].detail
    assert "[0,4]" in bad["example1-digraph"].detail


def test_corrupted_period_golden_fails(monkeypatch):
    monkeypatch.setitem(REFERENCE_FACTS, "example2_present", (1, 2, 3, 4, 6, 8, 10))
    rep = verify_paper()
    bad = [c.name for c in rep.checks if not c.passed]
    assert bad == ["example2-periodicity"]


def test_class_count_check_documents_convention():
    rep = verify_paper()
    (check,) = [c for c in rep.checks if c.name == "class-count-reconciliation"]
    assert check.passed
    assert "branch 30" in check.detail
    assert "digraph 30" in check.detail
    assert "raw 180" in check.detail
    assert "24" in check.detail
