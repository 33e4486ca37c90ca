"""
시나리오 실행기

작업별 handler 가 표, 검사, 불일치 기록을 TaskResult 로 돌려주고
run_scenario 가 이를 <out>/<scenario name>/ 아래에 원자적으로 쓴다.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Iterable, TypeVar

import numpy as np
from pydantic import ValidationError

from src.config import OUTPUT_DIR
from src.core.exceptions import PorolabError, ScenarioError
from src.core.families import (
    ConcentrationMode,
    example2_solution,
    family68_build,
    family72_build,
    family75_build,
    family78_build,
)
from src.core.families.solution import FieldSolution
from src.core.model import (
    ModelParams,
    PressureKind,
    from_effective,
    random_jet,
    residual_original,
    residual_starred,
    to_effective,
)
from src.core.model.enums import Variant
from src.core.scenario.discrepancy import (
    REPORT_COLUMNS,
    DiscrepancyRecord,
    discrepancy_report,
    family_records,
    taylor_record,
)
from src.core.scenario.output import emit_csv, write_text
from src.core.solver import (
    BoundaryCondition,
    BoundaryConditions,
    BoundaryKind,
    DerivativeSource,
    Grid,
    ResidualReport,
    manufactured_study,
    residual_refinement,
    residual_scan,
    solve_ibvp,
)
from src.core.steady import (
    TaylorOrderStudy,
    Tissue,
    displacement_linear,
    displacement_quadrature,
    displacement_taylor,
    example1_scenario,
    steady_profiles,
    steady_solution,
    taylor_order_study,
)
from src.core.steady.example1 import LENGTH
from src.core.symmetry import orbit_matrix
from src.schemas.enums import FamilyTag, Task
from src.schemas.scenario import BoundarySpec, FamilySpec, Scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_CHECK_FAILED = 2

EXACT_RESIDUAL = 1e-8
ROUND_TRIP_TOL = 1e-12
PRINTED_DISPLACEMENT = {0.0: 0.135, 100.0: 0.161, -50.0: 0.123}

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class Check:
    """수용 검사 하나 (실패가 하나라도 있으면 종료 코드 2)"""

    name: str
    passed: bool
    value: float
    bound: str

    def as_row(self) -> dict[str, object]:
        return {"check": self.name, "passed": self.passed, "value": self.value, "bound": self.bound}


@dataclass
class TaskResult:
    tables: dict[str, list[dict[str, object]]] = field(default_factory=dict)
    checks: list[Check] = field(default_factory=list)
    records: list[DiscrepancyRecord] = field(default_factory=list)
    summaries: list[str] = field(default_factory=list)

    def extend(self, name: str, rows: list[dict[str, object]]) -> None:
        self.tables.setdefault(name, []).extend(rows)

    def check(self, name: str, value: float, passed: bool, bound: str) -> None:
        self.checks.append(Check(name, bool(passed), float(value), bound))


@dataclass(frozen=True)
class RunOutcome:
    status: int
    artifacts: tuple[Path, ...] = ()
    checks: tuple[Check, ...] = ()
    records: tuple[DiscrepancyRecord, ...] = ()
    message: str = ""


def _map(fn: Callable[[T], R], items: Iterable[T], parallel: bool) -> list[R]:
    """순서를 보존하는 map. parallel 이면 독립 sweep 점을 스레드로 나눈다."""
    items = list(items)
    if parallel and len(items) > 1:
        with ThreadPoolExecutor() as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


def build_solution(spec: FamilySpec, mp: ModelParams, variant: Variant) -> FieldSolution:
    """FamilySpec 이 가리키는 해를 만듭니다 (example2 는 자체 파라미터를 쓴다)."""
    fp = spec.family_params()
    match spec.tag:
        case FamilyTag.FAMILY68:
            return family68_build(mp, fp, variant)
        case FamilyTag.FAMILY72:
            return family72_build(mp, fp, mode=spec.mode, span=spec.span, variant=variant)
        case FamilyTag.FAMILY75:
            return family75_build(mp, fp, variant)
        case FamilyTag.FAMILY78:
            return family78_build(mp, fp, span=spec.span, t_span=spec.t_span, variant=variant)
        case FamilyTag.EXAMPLE2:
            return example2_solution(variant, fp)[0]
        case FamilyTag.STEADY:
            return steady_solution(mp, fp)
    raise ScenarioError(f"unknown solution tag {spec.tag}")


def surface_rows(sol: FieldSolution, grid: Grid, every: int = 1) -> list[dict[str, object]]:
    """격자 위 필드 값 (t, x, u, rho, p_star, theta_F, c1, c2, p)"""
    T, X = grid.mesh()
    T, X = T[::every], X[::every]
    jet = sol.as_effective().jet(T, X)
    columns = {
        "t": T,
        "x": X,
        "u": jet.u,
        "rho": jet.rho,
        "p_star": jet.pressure,
        "theta_F": jet.theta_F,
        "c1": jet.c1,
        "c2": jet.c2,
        "p": sol.pressure(T, X),
    }
    flat = {name: np.broadcast_to(values, T.shape).ravel() for name, values in columns.items()}
    return [
        {"solution": sol.label, **{name: float(values[n]) for name, values in flat.items()}}
        for n in range(T.size)
    ]


def residual_rows(report: ResidualReport) -> list[dict[str, object]]:
    step = report.h if report.h is not None else float("nan")
    return [{"solution": report.label, "source": report.source.value, "h": step, **row} for row in report.rows()]


def _check_exact(result: TaskResult, report: ResidualReport) -> None:
    value = report.max_linf
    result.check(f"residual {report.label}", value, value <= EXACT_RESIDUAL, f"<= {EXACT_RESIDUAL:g}")


def _steady(sc: Scenario, parallel: bool) -> TaskResult:
    payload, result = sc.payload, TaskResult()
    sp = payload.profile
    kappas = payload.kappas or (sc.params.kappa,)
    x = np.linspace(*payload.x_span, payload.points)
    grid = Grid(x_lo=payload.x_span[0], x_hi=payload.x_span[1], nx=payload.points, t_lo=0.0, t_hi=1.0, nt=1)

    def point(kappa: float):
        mp = sc.params.model_copy(update={"kappa": kappa})
        profiles = steady_profiles(mp, sp)
        U = displacement_quadrature(mp, sp, x)
        columns = {
            "x": x,
            "U": U,
            "X_initial": x - U,
            "P": profiles.P(x),
            "P_star": profiles.Pstar(x),
            "C1": profiles.C1(x),
            "C2": profiles.C2(x),
            "G": profiles.G(x),
        }
        rows = [{"kappa": kappa, **{k: float(v[i]) for k, v in columns.items()}} for i in range(len(x))]
        return rows, residual_scan(steady_solution(mp, sp), grid, mp)

    for rows, report in _map(point, kappas, parallel):
        result.extend("steady", rows)
        result.extend("residual", residual_rows(report))
        _check_exact(result, report)

    positive = sorted({k for k in kappas if k > 0}, reverse=True)
    if len(positive) >= 3:
        study = taylor_order_study(sc.params, sp, tuple(positive), payload.taylor_x)
        result.extend("steady_taylor", _taylor_rows(study))
        result.records.extend(taylor_record(study))
    return result


def _taylor_rows(study: TaylorOrderStudy) -> list[dict[str, object]]:
    return [
        {
            "x": study.x,
            "kappa": kappa,
            "U_quadrature": exact,
            "error_corrected": corrected,
            "error_as_printed": printed,
            "slope_corrected": study.slope_corrected,
            "slope_as_printed": study.slope_as_printed,
        }
        for kappa, exact, corrected, printed in zip(
            study.kappas, study.exact, study.error_corrected, study.error_as_printed
        )
    ]


def _family(sc: Scenario, parallel: bool) -> TaskResult:
    payload, result = sc.payload, TaskResult()
    spec, grid = payload.solution, payload.grid

    def run(variant: Variant):
        sol = build_solution(spec, sc.params, variant)
        return sol, residual_scan(sol, grid, sol.params)

    variants = spec.variants()
    outcomes = dict(zip(variants, _map(run, variants, parallel)))
    for variant, (sol, report) in outcomes.items():
        result.extend("surface", surface_rows(sol, grid))
        result.extend("residual", residual_rows(report))
        result.summaries.append(report.summary())
        if variant == Variant.CORRECTED:
            _check_exact(result, report)
    if len(outcomes) == 2:
        (printed, printed_report), (_, corrected_report) = outcomes[Variant.AS_PRINTED], outcomes[Variant.CORRECTED]
        bessel = spec.mode == ConcentrationMode.BESSEL
        flux_report = None
        if spec.tag == FamilyTag.FAMILY72:
            flux = family72_build(sc.params, spec.family_params(), span=spec.span, printed_flux=True)
            flux_report = residual_scan(flux, grid, flux.params)
            result.extend("residual", residual_rows(flux_report))
            result.summaries.append(flux_report.summary())
        result.records.extend(
            family_records(spec.tag, printed, printed_report, corrected_report, bessel, flux_report)
        )
    return result


def jet_self_check(mp: ModelParams, n: int, seed: int) -> tuple[float, float]:
    """무작위 jet 에서 (p ↔ p* 왕복 상대오차, residual_original 과 residual_starred∘to_effective 의 상대차)"""
    rng = np.random.default_rng(seed)
    jet = random_jet(rng, PressureKind.HYDROSTATIC, size=n)
    effective = to_effective(jet, mp)
    back = from_effective(effective, mp)

    def relative(a, b) -> float:
        return float(np.max(np.abs(np.asarray(a) - np.asarray(b)) / np.maximum(1.0, np.abs(b))))

    round_trip = max(
        relative(back.pressure, jet.pressure),
        relative(back.pressure_x, jet.pressure_x),
        relative(back.pressure_xx, jet.pressure_xx),
    )
    original = residual_original(jet, mp).as_tuple()
    starred = residual_starred(effective, mp).as_tuple()
    identity = max(relative(a, b) for a, b in zip(starred, original))
    return round_trip, identity


def _residual(sc: Scenario, parallel: bool) -> TaskResult:
    payload, result = sc.payload, TaskResult()
    spec, grid = payload.solution, payload.grid

    def run(variant: Variant) -> ResidualReport:
        sol = build_solution(spec, sc.params, variant)
        if payload.refinement:
            return residual_refinement(sol, grid, sol.params, payload.refinement)
        return residual_scan(sol, grid, sol.params, payload.source, payload.h)

    variants = spec.variants()
    for variant, report in zip(variants, _map(run, variants, parallel)):
        result.extend("residual", residual_rows(report))
        result.summaries.append(report.summary())
        if variant != Variant.CORRECTED:
            continue
        if payload.refinement:
            for name, orders in zip(("r1", "r2", "r3", "r4", "r5", "r6"), report.orders):
                if orders:
                    result.check(f"fd order {report.label} {name}", min(orders), min(orders) >= 1.8, ">= 1.8")
        elif payload.source == DerivativeSource.ANALYTIC:
            _check_exact(result, report)

    if payload.random_jets:
        round_trip, identity = jet_self_check(sc.params, payload.random_jets, sc.seed)
        result.extend(
            "consistency",
            [
                {"quantity": "p_roundtrip", "jets": payload.random_jets, "seed": sc.seed, "relative": round_trip},
                {"quantity": "residual_identity", "jets": payload.random_jets, "seed": sc.seed, "relative": identity},
            ],
        )
        result.check("p <-> p* round trip", round_trip, round_trip <= ROUND_TRIP_TOL, f"<= {ROUND_TRIP_TOL:g}")
        result.check("original vs starred residual", identity, identity <= ROUND_TRIP_TOL, f"<= {ROUND_TRIP_TOL:g}")
    return result


def _condition(spec: BoundarySpec) -> BoundaryCondition:
    if spec.kind == BoundaryKind.NEUMANN:
        return BoundaryCondition.neumann(lambda t: spec.value(t))
    if spec.kind == BoundaryKind.FREE:
        return BoundaryCondition()
    return BoundaryCondition.dirichlet(lambda t: spec.value(t), lambda t: spec.value(t, 1))


def _reference(spec: FamilySpec, mp: ModelParams) -> FieldSolution:
    return build_solution(spec, mp, spec.variants()[-1])


def _solve(sc: Scenario, parallel: bool) -> TaskResult:
    payload, result = sc.payload, TaskResult()
    grid = payload.grid
    reference = _reference(payload.reference, sc.params)
    mp = reference.params
    bc = BoundaryConditions.from_solution(reference, grid.x_lo, grid.x_hi)
    overrides = {name: (_condition(left), _condition(right)) for name, (left, right) in payload.boundary.items()}
    bc = replace(bc, **overrides)
    sol = solve_ibvp(mp, reference, bc, grid)
    result.extend("solution", surface_rows(sol, grid, payload.output_every))

    t = np.full(grid.nx, grid.t_hi)
    got, want = sol.values(t, grid.x), reference.as_effective().values(t, grid.x)
    result.extend(
        "solve_error",
        [
            {"field": name, "t": grid.t_hi, "linf": float(np.max(np.abs(got[name] - want[name])))}
            for name in ("u", "rho", "theta_F", "c1", "c2", "pressure")
        ],
    )
    return result


def _converge(sc: Scenario, parallel: bool) -> TaskResult:
    payload, result = sc.payload, TaskResult()
    reference = _reference(payload.reference, sc.params)
    study = manufactured_study(
        reference, reference.params, payload.nx_list, payload.x_span, payload.t_span, payload.nt
    )
    result.extend("converge", study.rows())
    lo, hi = payload.order_range
    # ρ, θ_F are first-order upwinded and not measured
    for name in ("u", "c1", "c2", "pressure"):
        orders = study.orders[name]
        if orders is None:
            logger.info("ibvp order %s: field is exact to rounding, skipped", name)
            continue
        result.check(f"ibvp order {name}", min(orders), all(lo <= q <= hi for q in orders), f"in [{lo:g}, {hi:g}]")
    return result


def _orbit(sc: Scenario, parallel: bool) -> TaskResult:
    payload, result = sc.payload, TaskResult()
    cases = orbit_matrix(payload.epsilon, payload.grid)
    result.extend("orbit", [case.as_row() for case in cases])
    for case in cases:
        name = f"orbit row {case.row} {case.result.tag.value}"
        result.check(name, case.result.transformed_max, case.agrees, "pass" if case.expected_pass else "fail")
        if case.predicted_delta is not None:
            gap = abs(case.result.max_delta - case.predicted_delta) / case.predicted_delta
            result.check(f"{name} delta", gap, gap <= 1e-6, "relative <= 1e-06")
    return result


def _example1(sc: Scenario, parallel: bool) -> TaskResult:
    payload, result = sc.payload, TaskResult()
    points = [(Tissue(tissue), kappa) for tissue in payload.tissues for kappa in payload.kappas]
    x = np.linspace(0.0, LENGTH, payload.points)

    def curve(item: tuple[Tissue, float]) -> dict[str, np.ndarray]:
        tissue, kappa = item
        mp, sp = example1_scenario(tissue, kappa)
        quadrature = displacement_quadrature(mp, sp, x)
        return {
            "x": x,
            "U_linear": np.asarray(displacement_linear(mp, sp)(x)),
            "U_taylor_printed": displacement_taylor(mp, sp, x, Variant.AS_PRINTED),
            "U_taylor_corrected": displacement_taylor(mp, sp, x, Variant.CORRECTED),
            "U_quadrature": quadrature,
            "X_initial": x - quadrature,
        }

    at_end: dict[tuple[Tissue, float], float] = {}
    for (tissue, kappa), columns in zip(points, _map(curve, points, parallel)):
        rows = [
            {"tissue": tissue.value, "kappa": kappa, **{k: float(v[i]) for k, v in columns.items()}}
            for i in range(len(x))
        ]
        result.extend("example1", rows)
        result.extend("example1_summary", [{k: v for k, v in rows[-1].items() if k != "X_initial"}])
        at_end[(tissue, kappa)] = float(columns["U_taylor_printed"][-1])
        increasing = bool(np.all(np.diff(columns["X_initial"]) > 0))
        result.check(f"x - U increasing {tissue.value} kappa={kappa:g}", float(increasing), increasing, "true")

    for kappa, printed in PRINTED_DISPLACEMENT.items():
        if (Tissue.HEALTHY, kappa) in at_end:
            gap = abs(at_end[(Tissue.HEALTHY, kappa)] - printed)
            result.check(f"U(1) healthy kappa={kappa:g} vs {printed}", gap, gap <= 1e-3, "<= 0.001")
    if (Tissue.TUMOUR, 0.0) in at_end and (Tissue.TUMOUR, 100.0) in at_end:
        shift = abs(at_end[(Tissue.TUMOUR, 100.0)] - at_end[(Tissue.TUMOUR, 0.0)])
        result.check("U(1) tumour kappa shift", shift, shift <= 1e-4, "<= 0.0001")

    study = taylor_order_study(*example1_scenario(Tissue.HEALTHY, 0.0), payload.taylor_kappas, payload.taylor_x)
    result.extend("example1_taylor", _taylor_rows(study))
    result.check("taylor order corrected", study.slope_corrected, abs(study.slope_corrected - 2.0) <= 0.2, "2 +- 0.2")
    result.check("taylor order as_printed", study.slope_as_printed, abs(study.slope_as_printed - 1.0) <= 0.2, "1 +- 0.2")
    result.records.extend(taylor_record(study))
    return result


def _example2(sc: Scenario, parallel: bool) -> TaskResult:
    payload, result = sc.payload, TaskResult()
    fig, grid = payload.fig, payload.grid
    for name, (given, derived) in fig.constraint_checks().items():
        gap = abs(given - derived)
        result.check(f"example2 constraint {name}", gap, gap <= 1e-12, "<= 1e-12")

    def run(variant: Variant):
        sol, _ = example2_solution(variant, fig)
        return sol, residual_scan(sol, grid, sol.params)

    variants = FamilySpec(tag=FamilyTag.EXAMPLE2, variant=payload.variant).variants()
    outcomes = dict(zip(variants, _map(run, variants, parallel)))
    times = grid.t
    for variant, (sol, report) in outcomes.items():
        result.extend("surface", surface_rows(sol, grid))
        result.extend("residual", residual_rows(report))
        result.summaries.append(report.summary())
        flux = float(np.max(np.abs(sol.jet(times, np.zeros_like(times)).c1_x)))
        result.check(f"no-flux c1_x(t, 0) {variant.value}", flux, flux <= 1e-12, "<= 1e-12")
        u_end = float(sol.jet(1.0, fig.L).u)
        if variant == Variant.CORRECTED:
            _check_exact(result, report)
            expected = fig.u1 * (fig.L + fig.x0)
        else:
            expected = fig.u1 * fig.L
            r3 = report.linf[2]
            predicted = 2.0 * fig.theta1 * abs(fig.u1) * fig.x0 / (grid.x_lo + fig.x0) ** 3
            result.check("as_printed r3 linf", r3, abs(r3 - predicted) <= 1e-3, f"{predicted:g} +- 0.001")
            x_max = report.argmax[2][1]
            result.check("as_printed r3 location", x_max, math.isclose(x_max, grid.x_lo), f"x = {grid.x_lo:g}")
        gap = abs(u_end - expected)
        result.check(f"u(1, {fig.L:g}) {variant.value}", u_end, gap <= 1e-12, f"{expected:g}")

    if len(outcomes) == 2:
        (printed, printed_report), (_, corrected_report) = outcomes[Variant.AS_PRINTED], outcomes[Variant.CORRECTED]
        result.records.extend(family_records(FamilyTag.EXAMPLE2, printed, printed_report, corrected_report))
    return result


HANDLERS: dict[Task, Callable[[Scenario, bool], TaskResult]] = {
    Task.STEADY: _steady,
    Task.FAMILY: _family,
    Task.RESIDUAL: _residual,
    Task.SOLVE: _solve,
    Task.ORBIT: _orbit,
    Task.EXAMPLE1: _example1,
    Task.EXAMPLE2: _example2,
    Task.CONVERGE: _converge,
}


def load_scenario(path: Path | str) -> Scenario:
    """JSON 시나리오 문서를 읽고 검증합니다.

    Raises:
        ScenarioError: 파일을 읽을 수 없음
        pydantic.ValidationError: 스키마 위반 (필드명 포함)
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario {path}: {exc}") from exc
    return Scenario.model_validate_json(text)


def write_artifacts(sc: Scenario, result: TaskResult, target: Path) -> tuple[Path, ...]:
    """표, 검사, 불일치 보고서, 요약을 target 아래에 씁니다."""
    artifacts, flagged = [], []
    for name in sorted(result.tables):
        path = target / f"{name}.csv"
        non_finite = emit_csv(result.tables[name], path)
        if non_finite:
            flagged.append(f"{path.name}: {non_finite} non-finite value(s)")
        artifacts.append(path)

    checks = [check.as_row() for check in result.checks]
    artifacts.append(target / "checks.csv")
    emit_csv(checks, artifacts[-1], columns=("check", "passed", "value", "bound"))

    report = discrepancy_report(result.records)
    artifacts.append(target / "discrepancies.csv")
    emit_csv(report.rows, artifacts[-1], columns=REPORT_COLUMNS)
    artifacts.append(write_text(report.text, target / "discrepancies.txt"))

    failed = [check for check in result.checks if not check.passed]
    lines = [f"scenario {sc.name}: task {sc.task.value}, seed {sc.seed}"]
    lines.append(f"checks: {len(result.checks) - len(failed)}/{len(result.checks)} passed")
    lines.extend(f"FAILED {check.name}: {check.value:.6g} (expected {check.bound})" for check in failed)
    lines.extend(flagged)
    lines.extend(result.summaries)
    artifacts.append(write_text("\n".join(lines) + "\n", target / "summary.txt"))
    artifacts.append(write_text(sc.model_dump_json(indent=2) + "\n", target / "scenario.json"))
    return tuple(artifacts)


def run_scenario(
    config: Path | str | Scenario,
    out_dir: Path | str | None = None,
    seed: int | None = None,
    parallel: bool = False,
    task: Task | str | None = None,
) -> RunOutcome:
    """시나리오를 실행하고 산출물을 씁니다.

    Args:
        config: 시나리오 JSON 경로 또는 검증된 Scenario
        out_dir: 출력 루트 (기본값 POROLAB_OUTPUT_DIR). 산출물은 <out_dir>/<name>/ 에 쓰인다.
        seed: 시나리오 seed 덮어쓰기
        parallel: 독립 sweep 점을 병렬로 실행
        task: 주어지면 시나리오의 task 와 같아야 한다

    Returns:
        RunOutcome. status 는 0 (성공), 1 (검증·입력·계산 오류), 2 (수용 검사 실패).
    """
    try:
        scenario = config if isinstance(config, Scenario) else load_scenario(config)
        if task is not None and Task(task) != scenario.task:
            raise ScenarioError(f"scenario {scenario.name} declares task '{scenario.task.value}', not '{Task(task).value}'")
        if seed is not None:
            scenario = scenario.model_copy(update={"seed": seed})
        logger.info("running scenario %s (%s)", scenario.name, scenario.task.value)
        result = HANDLERS[scenario.task](scenario, parallel)
        artifacts = write_artifacts(scenario, result, Path(out_dir or OUTPUT_DIR) / scenario.name)
    except ValidationError as exc:
        logger.error("invalid scenario: %s", exc)
        return RunOutcome(EXIT_INVALID, message=str(exc))
    except (PorolabError, ValueError) as exc:
        logger.error("scenario failed: %s", exc)
        return RunOutcome(EXIT_INVALID, message=str(exc))

    failed = [check for check in result.checks if not check.passed]
    for check in failed:
        logger.warning("check failed: %s = %.6g (expected %s)", check.name, check.value, check.bound)
    status = EXIT_CHECK_FAILED if failed else EXIT_OK
    logger.info("scenario %s finished with status %d (%d artifacts)", scenario.name, status, len(artifacts))
    return RunOutcome(status, artifacts, tuple(result.checks), tuple(result.records))
