"""Campaign runners: dispatch, determinism, and the reproduction names."""

import json

import pytest

from scx.campaigns import (
    REPRODUCE_NAMES,
    SUITES,
    complete_multipartite_complex,
    run_matroid_basics,
    run_reproduce,
    run_suite,
)
from scx.reports import report_from_json


def test_every_suite_token_passes_at_small_counts():
    for name in sorted(SUITES):
        rep = run_suite(name, seed=0, trials=3)
        assert rep.records, name
        assert rep.passed, name
        doc = json.loads(rep.to_json())
        assert doc["suite"] == name
        assert doc["passed"] is True


def test_suite_json_is_byte_identical_across_reruns():
    for name in ("fp", "hodge", "duality", "matroid-hall"):
        a = run_suite(name, seed=4, trials=3).to_json()
        b = run_suite(name, seed=4, trials=3).to_json()
        assert a == b
        assert "wall" not in a


def test_report_json_round_trips_byte_for_byte():
    for name in ("fp", "duality", "matroid-hall"):
        text = run_suite(name, seed=2, trials=3).to_json()
        assert report_from_json(text).to_json() == text


def test_report_from_json_rejects_inconsistent_documents():
    text = run_suite("countdeg", trials=2).to_json()
    doc = json.loads(text)
    doc["passed"] = False
    with pytest.raises(ValueError, match="inconsistent"):
        report_from_json(json.dumps(doc))
    with pytest.raises(ValueError, match="needs 'suite'"):
        report_from_json("{}")


def test_suite_seed_changes_the_records():
    a = run_suite("fp", seed=0, trials=3).to_json()
    b = run_suite("fp", seed=1, trials=3).to_json()
    assert a != b


def test_run_suite_rejects_unknown_token():
    with pytest.raises(ValueError, match="unknown suite"):
        run_suite("nonsense")


def test_run_suite_drops_inapplicable_knobs():
    # The complement-identity family is exact, so it takes no slack
    # tolerance; passing one through the dispatcher must be harmless.
    rep = run_suite("yi", trials=2, tol=-5.0)
    assert rep.passed


def test_trials_override_lands_in_params():
    rep = run_suite("countdeg", trials=2)
    assert rep.params["trials"] == 2


def test_hodge_suite_reports_both_record_kinds():
    rep = run_suite("hodge", trials=2)
    kinds = {r.check for r in rep.records}
    assert "laplacian_assembly" in kinds
    assert "hodge_betti" in kinds


def test_matroid_basics_cross_checks_definitions():
    rep = run_matroid_basics(trials=5)
    kinds = {r.check for r in rep.records}
    assert kinds == {"fractional_dominates_integer", "gp_definitions_agree"}
    assert rep.passed


def test_complete_multipartite_shape():
    x = complete_multipartite_complex(3, 2)
    assert x.n == 6
    assert len(x.missing_faces) == 3
    with pytest.raises(ValueError):
        complete_multipartite_complex(1, 3)


def test_reproduce_names_all_pass():
    for name in REPRODUCE_NAMES:
        rep = run_reproduce(name)
        assert rep.passed, name
        assert rep.suite == f"reproduce-{name}"


def test_reproduce_rpartite_betti_values():
    rep = run_reproduce("rpartite")
    betti = [r.lhs for r in rep.records if r.check == "rpartite_betti"]
    assert betti == [4, 1, 1]
    gaps = [r.lhs for r in rep.records if r.check == "rpartite_gap"]
    assert gaps == [3.0, 4.0, 6.0]


def test_reproduce_sharpness_states_not_applicable():
    rep = run_reproduce("ag23-sharpness")
    notes = [r.note for r in rep.records]
    assert any(n.startswith("not applicable") for n in notes)
    betti_rec = [r for r in rep.records if r.check == "sharp_betti"][0]
    assert betti_rec.lhs == 1


def test_reproduce_stretch_budget_refuses_with_sizes():
    with pytest.raises(ValueError, match="3838380"):
        run_reproduce("pg33", stretch=True)


def test_reproduce_unknown_name():
    with pytest.raises(ValueError, match="unknown reproduction"):
        run_reproduce("everything")
