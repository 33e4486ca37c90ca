"""
인쇄된 식과 잔차로 보정한 식 사이의 불일치 기록
"""

import logging
import re
from dataclasses import dataclass

from src.core.families.solution import FieldSolution
from src.core.solver import ResidualReport
from src.core.steady import TaylorOrderStudy
from src.schemas.enums import FamilyTag

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ("equation", "printed", "corrected", "evidence", "value", "families")


@dataclass(frozen=True)
class Evidence:
    """기계적으로 확인한 근거 하나 (잔차 크기, 차수 등)"""

    description: str
    value: float


@dataclass(frozen=True)
class DiscrepancyRecord:
    equation: str
    printed: str
    corrected: str
    evidence: tuple[Evidence, ...]
    families: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.evidence:
            raise ValueError(f"discrepancy record for ({self.equation}) carries no evidence")

    @property
    def sort_key(self) -> tuple[int, str]:
        match = re.match(r"\d+", self.equation)
        return (int(match.group()) if match else 10**6, self.equation)


@dataclass(frozen=True)
class DiscrepancyReport:
    text: str
    rows: list[dict[str, object]]


def discrepancy_report(records: list[DiscrepancyRecord]) -> DiscrepancyReport:
    """식 번호 순으로 정렬한 사람용 텍스트와 CSV 행 (같은 식의 중복 기록은 하나로 합친다)"""
    merged: dict[str, DiscrepancyRecord] = {}
    for record in records:
        seen = merged.get(record.equation)
        if seen is None:
            merged[record.equation] = record
            continue
        merged[record.equation] = DiscrepancyRecord(
            seen.equation,
            seen.printed,
            seen.corrected,
            seen.evidence + tuple(e for e in record.evidence if e not in seen.evidence),
            tuple(dict.fromkeys(seen.families + record.families)),
        )

    ordered = sorted(merged.values(), key=lambda r: r.sort_key)
    lines, rows = [], []
    for record in ordered:
        lines.append(f"({record.equation}) printed:   {record.printed}")
        lines.append(f"{'':{len(record.equation) + 2}} corrected: {record.corrected}")
        for item in record.evidence:
            lines.append(f"{'':{len(record.equation) + 2}} evidence:  {item.description} = {item.value:.6g}")
            rows.append(
                {
                    "equation": record.equation,
                    "printed": record.printed,
                    "corrected": record.corrected,
                    "evidence": item.description,
                    "value": item.value,
                    "families": ";".join(record.families),
                }
            )
    text = "\n".join(lines) + "\n" if lines else "no discrepancies recorded\n"
    return DiscrepancyReport(text, rows)


# family → (equation, printed, corrected)
_FAMILY_LEDGER = {
    FamilyTag.FAMILY68: (
        "62",
        "solute equations without the θ_F factor; momentum reduction φ₂φ̈₁ = 2u₂ − φ₃",
        "θ_F⁰ divides the drift terms of E_i; momentum reads φ₂φ̈₁ = 2λ*u₂ − φ₃",
    ),
    FamilyTag.FAMILY72: (
        "72",
        "c₂ carries e^{−v₁t}",
        "c₂ carries e^{−v₂t} as the ansatz requires",
    ),
    FamilyTag.FAMILY75: (
        "75",
        "c₂ carries e^{−v₁t}",
        "c₂ carries e^{−v₂t} as the ansatz requires",
    ),
    FamilyTag.FAMILY78: (
        "78",
        "density slope p₁/v₂, modes evaluated at x",
        "density slope (p₁ − 2λ*u₂)/v², modes evaluated at ω = x − vt",
    ),
    FamilyTag.EXAMPLE2: (
        "82",
        "u = u₁tx (u(t, 0) = 0)",
        "u = u₁t(x + x₀); the as-printed u leaves an r₃ residual 8/(x + x₀)³",
    ),
}
_BESSEL_LEDGER = (
    "74",
    "Z_ν(|B|(x + x₀)) without a power factor",
    "(x + x₀)^{(1−χ)/2} Z_ν(|B|(x + x₀)); identical at χ = 1",
)
_DERIVATIVE_LEDGER = (
    "66",
    "kSᵢ(φφ₃)′ in the fourth and fifth reduced equations",
    "kSᵢ(φφ₃′)′, the form the concentration mode ODE is built from",
)

_EXACT = 1e-8


def _worst(label: str, report: ResidualReport) -> Evidence:
    worst = max(range(len(report.linf)), key=lambda i: report.linf[i])
    t, x = report.argmax[worst]
    return Evidence(f"{label} max |r{worst + 1}| at (t={t:.4g}, x={x:.4g})", report.linf[worst])


def family_records(
    tag: FamilyTag,
    printed: FieldSolution,
    printed_report: ResidualReport,
    corrected_report: ResidualReport,
    bessel: bool = False,
    flux_report: ResidualReport | None = None,
) -> list[DiscrepancyRecord]:
    """as_printed 가 잔차 검사에서 떨어지고 corrected 가 통과하면 해당 식의 기록을 만듭니다.

    Args:
        tag: family 태그
        printed: as_printed 해
        printed_report: as_printed 잔차
        corrected_report: corrected 잔차
        bessel: family72 의 c₁ 이 Bessel 닫힌형인지
        flux_report: 인쇄된 플럭스 연산자 kSᵢ(φφ₃)′ 로 만든 family72 모드의 잔차 (있으면 (66) 기록 판정)

    Returns:
        확인된 기록 목록 (없으면 빈 목록)
    """
    if tag not in _FAMILY_LEDGER:
        return []
    corrected_exact = corrected_report.max_linf <= _EXACT
    records = []
    if printed_report.max_linf > _EXACT and corrected_exact:
        evidence = (_worst("as_printed", printed_report), Evidence("corrected max |r|", corrected_report.max_linf))
        equation, before, after = _BESSEL_LEDGER if bessel else _FAMILY_LEDGER[tag]
        records.append(DiscrepancyRecord(equation, before, after, evidence, (tag.value,)))
    else:
        logger.debug("%s: variants agree within %.0e, no discrepancy", printed.label, _EXACT)
    if tag == FamilyTag.FAMILY72 and flux_report is not None and flux_report.max_linf > _EXACT and corrected_exact:
        equation, before, after = _DERIVATIVE_LEDGER
        evidence = (_worst("printed flux operator", flux_report), Evidence("corrected max |r|", corrected_report.max_linf))
        records.append(DiscrepancyRecord(equation, before, after, evidence, (tag.value,)))
    for record in records:
        logger.info("discrepancy (%s) confirmed on %s", record.equation, printed.label)
    return records


def taylor_record(study: TaylorOrderStudy, threshold: float = 1.5) -> list[DiscrepancyRecord]:
    """as_printed 의 κ-차수가 1 근처이고 corrected 가 2 근처이면 Taylor 부호 기록"""
    if not (study.slope_as_printed < threshold <= study.slope_corrected):
        return []
    record = DiscrepancyRecord(
        "50",
        "U ≈ U₀ + (1/λ*)∫G + (κ/λ*³)∫G²",
        "U ≈ U₀ + (1/λ*)∫G − (κ/λ*³)∫G²",
        (
            Evidence(f"as_printed κ-order of |U_quad − U_taylor| at x={study.x:g}", study.slope_as_printed),
            Evidence(f"corrected κ-order of |U_quad − U_taylor| at x={study.x:g}", study.slope_corrected),
        ),
        ("steady",),
    )
    logger.info("discrepancy (50) confirmed: orders %.3f vs %.3f", study.slope_as_printed, study.slope_corrected)
    return [record]
