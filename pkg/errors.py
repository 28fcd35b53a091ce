# errors.py
# ---------------------------------------------
# 프로젝트 공통 예외 계층
#  - 구조 오류(테이블 차원/범위, 파싱) → CLI 종료코드 2
#  - 공리 위반은 예외가 아니라 Report(FAIL)로 돌려준다
#  - InvariantViolation: 정리(theorem)로 보장된 성질이 깨졌을 때 → 종료코드 1
# ---------------------------------------------

from __future__ import annotations

from typing import Optional, Tuple


class MLAError(Exception):
    """Base class for every error raised by this package."""


# 1 구조 오류: n×n 이 아닌 테이블, 범위를 벗어난 인덱스, 길이가 맞지 않는 map 등
class StructureError(MLAError, ValueError):
    pass


# 2 파싱 오류: 줄/열 위치를 함께 보관 (1-based)
class ParseError(StructureError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        self.reason = message
        super().__init__(f"line {line}, column {column}: {message}")


# 3 아이디얼/부분대수 전제 위반 (닫힘 실패 witness 포함)
class NotAnIdealError(MLAError, ValueError):
    def __init__(self, message: str, witness: Optional[Tuple[int, ...]] = None):
        self.witness = witness
        super().__init__(message)


class NotASubalgebraError(MLAError, ValueError):
    def __init__(self, message: str, witness: Optional[Tuple[int, ...]] = None):
        self.witness = witness
        super().__init__(message)


# 4 열거 한도 초과: 조용히 자르지 않고 명시적으로 거부
class EnumerationBoundError(MLAError):
    def __init__(self, what: str, order: int, bound: int):
        self.order = order
        self.bound = bound
        super().__init__(f"{what}: order {order} exceeds enumeration bound {bound} (MLA_MAX_ORDER)")


# 5 확장/구성 전제 위반 (construct_* 계열)
class ConstructionError(MLAError, ValueError):
    pass


# 6 증명된 성질이 계산에서 깨짐 → 구현 버그이거나 수학적 반례. 절대 삼키지 않는다.
class InvariantViolation(MLAError, AssertionError):
    def __init__(self, message: str, witness: Optional[Tuple[int, ...]] = None):
        self.witness = witness
        super().__init__(message)
