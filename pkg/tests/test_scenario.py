import json

import pytest
from pydantic import ValidationError

from src.core.exceptions import UsageError
from src.core.scenario import (
    EXIT_CHECK_FAILED,
    EXIT_INVALID,
    EXIT_OK,
    DiscrepancyRecord,
    Evidence,
    discrepancy_report,
    emit_csv,
    run_scenario,
)
from src.main import main
from src.schemas.scenario import OrbitPayload, Scenario

SMALL_EXAMPLE2 = {
    "schema_version": 1,
    "name": "example2-small",
    "task": "example2",
    "example2": {"grid": {"x_lo": 0.0, "x_hi": 0.4, "nx": 21, "t_lo": 0.0, "t_hi": 1.0, "nt": 5}},
}


def _write(path, document) -> str:
    path.write_text(json.dumps(document), encoding="utf-8")
    return str(path)


def test_emit_csv_layout(tmp_path):
    path = tmp_path / "table.csv"

    count = emit_csv([{"a": 1, "b": 0.1}, {"a": 2, "b": True}], path)

    assert count == 0
    assert path.read_bytes() == b"a,b\n1,0.10000000000000001\n2,true\n"


def test_emit_csv_is_byte_stable(tmp_path):
    table = [{"x": i / 7, "y": float(i) ** 0.5} for i in range(5)]

    emit_csv(table, tmp_path / "first.csv")
    emit_csv(table, tmp_path / "second.csv")

    assert (tmp_path / "first.csv").read_bytes() == (tmp_path / "second.csv").read_bytes()


def test_emit_csv_counts_non_finite_cells(tmp_path):
    path = tmp_path / "bad.csv"

    count = emit_csv([{"v": float("nan")}, {"v": float("inf")}, {"v": 1.0}], path)

    assert count == 2
    assert path.read_text().splitlines() == ["v", "nan", "inf", "1"]


def test_emit_csv_needs_a_rectangular_table(tmp_path):
    with pytest.raises(UsageError):
        emit_csv([{"a": 1}, {"b": 2}], tmp_path / "ragged.csv")


def test_emit_csv_empty_table_keeps_the_header(tmp_path):
    path = tmp_path / "empty.csv"

    emit_csv([], path, columns=("check", "passed"))

    assert path.read_text() == "check,passed\n"


def _record(equation: str, value: float, family: str) -> DiscrepancyRecord:
    return DiscrepancyRecord(equation, "printed form", "corrected form", (Evidence("max |r|", value),), (family,))


def test_discrepancy_report_orders_and_merges():
    report = discrepancy_report([_record("82", 1.0, "example2"), _record("62", 0.5, "a"), _record("62", 0.7, "b")])

    assert [row["equation"] for row in report.rows] == ["62", "62", "82"]
    assert report.rows[0]["families"] == "a;b"
    assert report.text.startswith("(62) printed:")
    assert report.text.count("evidence:") == 3


def test_empty_discrepancy_report():
    assert discrepancy_report([]).text == "no discrepancies recorded\n"


def test_discrepancy_needs_evidence():
    with pytest.raises(ValueError):
        DiscrepancyRecord("50", "a", "b", ())


def test_task_payload_is_required():
    with pytest.raises(ValidationError, match="steady"):
        Scenario(name="missing", task="steady")


def test_orbit_payload_has_defaults():
    scenario = Scenario(name="orbit", task="orbit")

    assert isinstance(scenario.payload, OrbitPayload)
    assert scenario.payload.epsilon == 0.1


def test_scenario_name_is_a_path_component():
    with pytest.raises(ValidationError):
        Scenario(name="../escape", task="orbit")


def test_invalid_parameters_exit_with_validation_status(tmp_path):
    config = _write(tmp_path / "bad.json", {"name": "bad", "task": "orbit", "params": {"alpha": 1.2}})

    outcome = run_scenario(config, tmp_path / "out")

    assert outcome.status == EXIT_INVALID
    assert "alpha" in outcome.message
    assert not (tmp_path / "out" / "bad").exists()


def test_example2_scenario_writes_artifacts(tmp_path):
    config = _write(tmp_path / "example2.json", SMALL_EXAMPLE2)

    outcome = run_scenario(config, tmp_path / "out")

    assert outcome.status == EXIT_OK, outcome.message
    assert all(check.passed for check in outcome.checks)
    assert [record.equation for record in outcome.records] == ["82"]
    target = tmp_path / "out" / "example2-small"
    for name in ("surface.csv", "residual.csv", "checks.csv", "discrepancies.csv", "discrepancies.txt", "summary.txt", "scenario.json"):
        assert (target / name).is_file(), name
    assert "(82) printed:" in (target / "discrepancies.txt").read_text()


def test_family_scenario_records_the_stiffness_correction(tmp_path):
    scenario = Scenario.model_validate(
        {
            "name": "family68-stiff",
            "task": "family",
            "params": {"k": 0.1, "lambda_star": 2.0, "kappa": 0.0, "D1": 0.1, "D2": 0.1},
            "family": {
                "solution": {"tag": "family68", "variant": "both", "params": {"u2": 0.1, "w1": 1.0}},
                "grid": {"nx": 11, "nt": 5},
            },
        }
    )

    outcome = run_scenario(scenario, tmp_path)

    assert outcome.status == EXIT_OK, outcome.message
    assert [record.equation for record in outcome.records] == ["62"]


def test_bessel_family_scenario_quotes_the_closed_form(tmp_path):
    scenario = Scenario.model_validate(
        {
            "name": "family72-bessel",
            "task": "family",
            "params": {"k": 1.0, "lambda_star": 1.0, "S1": 0.5, "D1": 1.0, "D2": 1.0},
            "family": {
                "solution": {
                    "tag": "family72",
                    "variant": "both",
                    "mode": "bessel",
                    "params": {"u0": 1.0, "u1": 1.0, "p1": 2.0, "theta1": 0.2, "v1": 2.0, "A11": 1.0, "A12": 0.5, "A21": 0.0, "A22": 0.0},
                },
                "grid": {"x_lo": 0.0, "x_hi": 1.0, "nx": 11, "t_lo": 0.0, "t_hi": 1.0, "nt": 4},
            },
        }
    )

    outcome = run_scenario(scenario, tmp_path)

    assert outcome.status == EXIT_OK, outcome.message
    assert sorted(record.equation for record in outcome.records) == ["66", "74"]
    text = (tmp_path / "family72-bessel" / "discrepancies.txt").read_text(encoding="utf-8")
    assert "(74) printed:   Z_ν(|B|(x + x₀)) without a power factor\n" in text
    assert "     corrected: (x + x₀)^{(1−χ)/2} Z_ν(|B|(x + x₀)); identical at χ = 1\n" in text
    assert "B√" not in text


def test_flux_record_carries_the_printed_operator_residual(tmp_path):
    scenario = Scenario.model_validate(
        {
            "name": "family72-flux",
            "task": "family",
            "params": {"k": 0.1, "lambda_star": 1.0, "D1": 0.1, "D2": 0.1},
            "family": {
                "solution": {
                    "tag": "family72",
                    "variant": "both",
                    "params": {"theta1": 0.2, "p1": 0.1, "rho1": 0.1, "v1": 0.3, "v2": 0.5, "A12": 0.5},
                },
                "grid": {"nx": 21, "nt": 10},
            },
        }
    )

    outcome = run_scenario(scenario, tmp_path)

    assert outcome.status == EXIT_OK, outcome.message
    flux = next(record for record in outcome.records if record.equation == "66")
    assert flux.evidence[0].description.startswith("printed flux operator max |r")
    assert flux.evidence[0].value > 1e-3
    assert flux.evidence[1].value <= 1e-8


def test_converge_checks_every_measured_field(tmp_path):
    scenario = Scenario.model_validate(
        {
            "name": "converge-coarse",
            "task": "converge",
            "params": {"k": 0.1, "lambda_star": 1.0, "D1": 0.1, "D2": 0.1},
            "converge": {
                "reference": {
                    "tag": "family68",
                    "params": {"u1": 0.1, "u2": 0.05, "w1": 1.0, "w2": 0.5, "f": {"kind": "sine", "amplitude": 0.1}},
                },
                "nx_list": [11, 21, 41],
                "nt": 50,
                "order_range": [3.0, 4.0],
            },
        }
    )

    outcome = run_scenario(scenario, tmp_path)

    assert outcome.status == EXIT_CHECK_FAILED
    orders = {check.name: check for check in outcome.checks if check.name.startswith("ibvp order")}
    assert {"ibvp order c1", "ibvp order c2"} <= set(orders)
    assert set(orders) <= {"ibvp order u", "ibvp order c1", "ibvp order c2", "ibvp order pressure"}
    assert not orders["ibvp order c1"].passed


def test_family_params_are_validated():
    with pytest.raises(ValidationError):
        Scenario.model_validate(
            {"name": "f", "task": "family", "family": {"solution": {"tag": "family72", "params": {"u1": 0.0}}}}
        )


def test_task_must_match_the_document(tmp_path):
    outcome = run_scenario(Scenario(name="orbit", task="orbit"), tmp_path, task="example1")

    assert outcome.status == EXIT_INVALID
    assert "orbit" in outcome.message


def test_command_line_exit_codes(tmp_path):
    config = _write(tmp_path / "example2.json", SMALL_EXAMPLE2)
    bad = _write(tmp_path / "bad.json", {"name": "bad", "task": "example2", "params": {"k": -1.0}})
    out = str(tmp_path / "out")

    assert main(["example2", "--config", config, "--out-dir", out]) == 0
    assert main(["example2", "--config", bad, "--out-dir", out]) == 1
    assert main(["orbit", "--config", config, "--out-dir", out]) == 1


def test_scenario_round_trip():
    scenario = Scenario.model_validate(SMALL_EXAMPLE2 | {"params": {"kappa": 2.5, "alpha": 0.3}, "seed": 7})

    assert Scenario.model_validate_json(scenario.model_dump_json()) == scenario


def test_example1_scenario_adjudicates_the_taylor_sign(tmp_path):
    scenario = Scenario(name="example1", task="example1", example1={"points": 11})

    outcome = run_scenario(scenario, tmp_path, parallel=True)

    assert outcome.status == EXIT_OK, outcome.message
    assert [record.equation for record in outcome.records] == ["50"]
    lines = (tmp_path / "example1" / "example1_summary.csv").read_text().splitlines()
    assert len(lines) == 1 + 8
