"""기본 도메인 예외."""


class DomainException(Exception):
    """도메인 레이어의 기본 예외."""

    def __init__(self, message: str, code: str = "DOMAIN_ERROR", retryable: bool = False):
        self.message = message
        self.code = code
        self.retryable = retryable
        super().__init__(self.message)


# ============================================
# 4xxx: 입력/설정 오류 (재시도 불가)
# ============================================

class InvalidInputError(DomainException):
    """입력 행렬이나 파라미터가 유효하지 않을 때 발생합니다. (VL_4001)"""

    def __init__(self, message: str = "유효하지 않은 입력입니다"):
        super().__init__(message, code="VL_4001", retryable=False)


class DimensionMismatchError(DomainException):
    """행렬/벡터 차원이 일치하지 않을 때 발생합니다. (VL_4002)"""

    def __init__(self, message: str = "차원이 일치하지 않습니다"):
        super().__init__(message, code="VL_4002", retryable=False)


class InvalidConfigError(DomainException):
    """실험 설정이나 CLI 인자가 잘못되었을 때 발생합니다. (VL_4003)"""

    def __init__(self, message: str = "잘못된 실험 설정입니다"):
        super().__init__(message, code="VL_4003", retryable=False)


class ResourceNotFoundError(DomainException):
    """입력 파일을 찾을 수 없을 때 발생합니다. (VL_4004)"""

    def __init__(self, message: str = "입력 파일을 찾을 수 없습니다"):
        super().__init__(message, code="VL_4004", retryable=False)


# ============================================
# 5xxx: 수치 오류
# ============================================

class NumericalDegeneracyError(DomainException):
    """수치적으로 퇴화된 상황(불량 조건 변환 등)에서 발생합니다. (VL_5001)"""

    def __init__(self, message: str = "수치적 퇴화가 감지되었습니다"):
        super().__init__(message, code="VL_5001", retryable=False)


class EstimationError(DomainException):
    """최소제곱 추정이 실패했을 때 발생합니다. (VL_5002)"""

    def __init__(self, message: str = "시스템 추정 중 오류가 발생했습니다", original_error: Exception = None):
        super().__init__(message, code="VL_5002", retryable=False)
        self.original_error = original_error


class InsufficientSamplesError(DomainException):
    """기각 샘플링이 시도 한도 안에 필요한 표본을 채우지 못했을 때 발생합니다. (VL_5003)"""

    def __init__(self, message: str = "요청한 표본 수를 채우지 못했습니다"):
        super().__init__(message, code="VL_5003", retryable=True)


# ============================================
# 에러 코드 → CLI 종료 코드 매핑
# ============================================

ERROR_CODE_TO_EXIT_CODE = {
    "VL_4001": 2,  # INVALID_INPUT
    "VL_4002": 2,  # DIMENSION_MISMATCH
    "VL_4003": 2,  # INVALID_CONFIG
    "VL_4004": 2,  # RESOURCE_NOT_FOUND
    "VL_5001": 3,  # NUMERICAL_DEGENERACY
    "VL_5002": 3,  # ESTIMATION_ERROR
    "VL_5003": 3,  # INSUFFICIENT_SAMPLES
}


def get_exit_code(error_code: str) -> int:
    """에러 코드를 CLI 종료 코드로 변환합니다."""
    return ERROR_CODE_TO_EXIT_CODE.get(error_code, 1)
