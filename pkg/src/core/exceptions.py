"""
porolab 공통 예외 계층
"""


class PorolabError(Exception):
    """모든 porolab 오류의 기반 클래스"""


class UsageError(PorolabError):
    """잘못된 압력 변수(p / p*) 또는 잘못된 호출 순서"""


class BranchError(PorolabError, ValueError):
    """선택한 해의 분기(branch)가 파라미터와 맞지 않음"""


class DomainError(PorolabError, ValueError):
    """평가 영역 밖이거나 특이점을 포함하는 영역"""

    def __init__(self, message: str, location: float | None = None):
        super().__init__(message)
        self.location = location


class InversionError(PorolabError, ValueError):
    """x - U(x) = X 역변환 실패"""


class RangeError(PorolabError, ValueError):
    """특수함수 지원 범위(envelope) 밖의 인자"""


class SingularityError(PorolabError, ValueError):
    """특이점에서의 평가 (예: Y, K at x=0, ODE 선도계수 0)"""

    def __init__(self, message: str, location: float | None = None):
        super().__init__(message)
        self.location = location


class AccuracyError(PorolabError):
    """요청한 허용오차를 예산(budget) 안에서 달성하지 못함"""


class BracketError(PorolabError, ValueError):
    """구간 양 끝에서 부호 변화가 없음"""


class ComplexOrderError(PorolabError, ValueError):
    """Bessel 차수 ν 가 복소수가 되는 경우 (지원하지 않음)"""


class ConfigurationError(PorolabError, ValueError):
    """솔버 설정 오류 (예: 안정성 조건 위반)"""


class DivergenceError(PorolabError):
    """시간 적분 중 NaN/Inf 발생"""

    def __init__(self, message: str, step: int):
        super().__init__(message)
        self.step = step


class ApplicabilityError(PorolabError):
    """현재 파라미터에서 허용되지 않는 대칭 생성자"""


class OrderUndefinedError(PorolabError, ValueError):
    """오차가 0 이라 수렴 차수를 정의할 수 없음"""


class ScenarioError(PorolabError):
    """시나리오 설정/실행 오류"""
