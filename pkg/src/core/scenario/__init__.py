from src.core.scenario.discrepancy import (
    DiscrepancyRecord,
    DiscrepancyReport,
    Evidence,
    discrepancy_report,
)
from src.core.scenario.output import emit_csv, write_text
from src.core.scenario.runner import (
    EXIT_CHECK_FAILED,
    EXIT_INVALID,
    EXIT_OK,
    Check,
    RunOutcome,
    build_solution,
    load_scenario,
    run_scenario,
)

__all__ = [
    "DiscrepancyRecord",
    "DiscrepancyReport",
    "Evidence",
    "discrepancy_report",
    "emit_csv",
    "write_text",
    "EXIT_CHECK_FAILED",
    "EXIT_INVALID",
    "EXIT_OK",
    "Check",
    "RunOutcome",
    "build_solution",
    "load_scenario",
    "run_scenario",
]
