"""visilin 명령행 인자 정의."""
import argparse

from ...infrastructure.estimation import ESTIMATOR_METHODS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="visilin",
        description="단일 실험 (x0, u) 에서 LTI 시스템의 식별가능한 부분을 분석합니다.",
    )
    parser.add_argument("--log-level", default=None, help="로그 레벨 (기본값: 설정의 log_level)")
    parser.add_argument("--log-format", choices=["json", "text"], default=None, help="로그 형식")

    commands = parser.add_subparsers(dest="command", required=True)

    margins = commands.add_parser("margins", help="식별가능성 마진 보고서를 출력합니다")
    margins.add_argument("--system", required=True, help="시스템 JSON ({\"A\", \"B\", ...})")
    margins.add_argument("--x0", default=None, help="초기 상태 JSON (없으면 시스템 파일의 x0)")
    margins.add_argument("--refine", action="store_true", help="고유값 주변 복소 탐색으로 d_PBH를 다듬습니다")
    margins.add_argument("--out", default=None, help="결과 JSON 경로 (없으면 stdout)")

    visible = commands.add_parser("visible", help="가시 부분공간 V(x0) 를 출력합니다")
    visible.add_argument("--system", required=True)
    visible.add_argument("--x0", default=None)
    visible.add_argument("--out", default=None)

    consistent = commands.add_parser("consistent", help="실험 일관 집합의 원소를 뽑습니다")
    consistent.add_argument("--system", required=True)
    consistent.add_argument("--x0", default=None)
    consistent.add_argument("--samples", type=int, default=10)
    consistent.add_argument("--seed", type=int, default=None)
    consistent.add_argument("--scale", type=float, default=1.0, help="Θ, Ψ 성분의 표준편차")
    consistent.add_argument("--out", default=None)

    fit = commands.add_parser("fit", help="궤적으로부터 (A_d, B_d) 를 추정합니다")
    fit.add_argument("--method", choices=ESTIMATOR_METHODS, default="dmdc")
    fit.add_argument("--traj", required=True, help="t,x0,...,x{n-1} 헤더의 궤적 CSV")
    fit.add_argument("--inputs", required=True, help="u0,...,u{m-1} 헤더의 입력 CSV")
    fit.add_argument("--out", default=None)

    run = commands.add_parser("run", help="RunConfig 실험을 실행하고 CSV를 저장합니다")
    run.add_argument("--config", required=True, help="RunConfig JSON")
    run.add_argument("--out", default=None, help="출력 디렉토리")
    run.add_argument("--workers", type=int, default=None)
    run.add_argument("--seed", type=int, default=None)

    return parser
