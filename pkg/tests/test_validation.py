"""Self-check suite behaviour: pass/fail accounting, skips, report format."""

import re

import pytest

from sqramsey.models import ValidateRequest
from sqramsey.validation import render_report, run_validation


@pytest.fixture(scope="module")
def default_response():
    return run_validation(ValidateRequest())


class TestDefaultRun:
    def test_everything_passes(self, default_response):
        assert default_response.passed is True
        assert default_response.n_failed == 0
        assert default_response.n_skipped == 0
        assert default_response.n_passed == len(default_response.checks)

    def test_counts_are_consistent(self, default_response):
        tally = {"PASS": 0, "FAIL": 0, "SKIP": 0}
        for check in default_response.checks:
            tally[check.result] += 1
        assert tally["PASS"] == default_response.n_passed
        assert tally["FAIL"] == default_response.n_failed
        assert tally["SKIP"] == default_response.n_skipped

    def test_covers_every_documented_family(self, default_response):
        names = {check.name.split("[")[0] for check in default_response.checks}
        assert names >= {
            "truncation_deficit",
            "state_norm",
            "separability",
            "odd_photon_mass",
            "parity_value",
            "splitter_unitarity",
            "number_conservation",
            "mean_photon",
            "moment_identity",
            "pe_flatness",
            "pe_value",
            "pee_value",
            "pee_first_harmonic",
            "pee_fringe_form",
            "coherent_pe_value",
            "coherent_pee_value",
            "coherent_first_harmonic",
            "coherent_second_harmonic",
            "fringe_identity_random",
            "coherent_expansion_identity",
            "visibility_bounds",
            "visibility_monotonic",
            "visibility_reference",
            "visibility_extraction",
            "fringe_count_squeezed",
            "fringe_spacing_squeezed",
            "fringe_count_coherent",
            "fringe_spacing_coherent",
            "envelope_global_peak",
            "envelope_peak_location",
            "oracle_squeeze",
            "oracle_splitter",
            "oracle_identity",
        }

    def test_every_r_value_gets_its_own_deficit_check(self, default_response):
        deficits = [c.name for c in default_response.checks if c.name.startswith("truncation_deficit")]
        assert deficits == [
            "truncation_deficit[r=0.1]",
            "truncation_deficit[r=0.3]",
            "truncation_deficit[r=0.8]",
        ]


class TestInadequateCutoff:
    def test_deficit_failure_skips_dependents(self):
        response = run_validation(ValidateRequest(r_values=[0.8], cutoff=4))
        assert response.passed is False
        deficit = next(c for c in response.checks if c.name.startswith("truncation_deficit"))
        assert deficit.result == "FAIL"
        skipped = [c for c in response.checks if c.result == "SKIP"]
        assert len(skipped) == 13
        assert all(c.reason == "cutoff-inadequate" for c in skipped)
        # the shared checks (coherent, identities, oracle...) still run
        assert response.n_passed > 0


class TestToleranceOverrides:
    def test_exact_name_override_forces_a_failure(self):
        response = run_validation(
            ValidateRequest(r_values=[0.3], tolerances={"pe_value[r=0.3]": 1e-300})
        )
        target = next(c for c in response.checks if c.name == "pe_value[r=0.3]")
        assert target.result == "FAIL"
        assert target.tolerance == 1e-300
        assert response.passed is False

    def test_base_name_override_applies_to_every_instance(self):
        response = run_validation(
            ValidateRequest(r_values=[0.1, 0.3], tolerances={"mean_photon": 1e-300})
        )
        hits = [c for c in response.checks if c.name.startswith("mean_photon")]
        assert len(hits) == 4  # two modes x two r values
        assert all(c.result == "FAIL" for c in hits)

    def test_loosening_a_tolerance_turns_fail_into_pass(self):
        response = run_validation(
            ValidateRequest(r_values=[0.8], cutoff=4, tolerances={"truncation_deficit": 1.0})
        )
        deficit = next(c for c in response.checks if c.name.startswith("truncation_deficit"))
        assert deficit.result == "PASS"
        assert response.n_skipped == 0


class TestReport:
    def test_one_line_per_check_plus_summary(self, default_response):
        report = render_report(default_response)
        lines = report.strip().splitlines()
        assert lines[0].startswith("#")
        body = lines[1:-1]
        assert len(body) == len(default_response.checks)
        pattern = re.compile(
            r"^check=\S+ measured=\S+ tolerance=\S+ result=(PASS|FAIL)$"
        )
        assert all(pattern.match(line) for line in body)
        assert lines[-1] == (
            f"summary: passed={default_response.n_passed} "
            f"failed={default_response.n_failed} "
            f"skipped={default_response.n_skipped} overall=PASS"
        )

    def test_skip_lines_carry_the_reason(self):
        response = run_validation(ValidateRequest(r_values=[0.8], cutoff=4))
        report = render_report(response)
        assert "result=SKIP reason=cutoff-inadequate" in report
        assert report.strip().endswith("overall=FAIL")

    def test_report_is_deterministic(self, default_response):
        again = run_validation(ValidateRequest())
        assert render_report(again) == render_report(default_response)
