"""애플리케이션 설정."""
from functools import lru_cache

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    애플리케이션 설정.

    환경 변수 관리를 위해 pydantic-settings를 사용합니다 (접두사 VISILIN_).
    """

    # 수치 허용오차
    rank_rtol: float = 1e-10  # 크릴로프 / 가제어 행렬 SVD 상대 임계값
    pbh_eps: float = 1e-6  # d_PBH > eps 이면 식별가능
    density_tau: float = 1e-12
    lstsq_rcond: float = 1e-10
    consistency_tol: float = 1e-8

    # 추정기
    stlsq_threshold: float = 0.05
    stlsq_iterations: int = 8

    # 시뮬레이션
    euler_dt: float = 1.0
    horizon: int = 80
    gramian_horizon_steps: int = 10
    gramian_dt: float = 0.1

    # 앙상블
    rho_target: float = 0.95
    hurwitz_margin: float = 0.05
    max_sampling_attempts: int = 10000

    # 실행
    base_seed: int = 12345
    workers: int = 1
    output_dir: str = "results"

    # 로깅
    log_level: str = "INFO"
    log_format: str = "json"  # json 또는 text

    # 환경
    environment: str = "production"  # development, staging, production

    class Config:
        env_prefix = "VISILIN_"
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = False


@lru_cache()
def get_settings() -> Settings:
    """
    캐시된 설정 인스턴스를 가져옵니다.

    Returns:
        Settings 인스턴스
    """
    return Settings()
