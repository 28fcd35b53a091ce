# common_utils.py
# ---------------------------------------------
# 프로젝트 전반에서 쓰이는 공통 유틸 함수 모음
#  - 비트셋(파이썬 int) 도우미: popcount / 순회 / 생성
#  - 원소 집합 표시 포맷 "{1, b^2}"
#  - 안전한 int 변환, "i,j,k" 삼중쌍 파싱
#  - UTC ISO 시각 (카탈로그 로그용)
# ---------------------------------------------

from __future__ import annotations

from datetime import datetime, timezone
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

# ==============
# [도우미 함수] - 시간변환, 안전한 캐스팅
# ==============

# 1 현재 UTC 시간 ISO 포맷 반환 (마이크로초 제거)
def utc_now_iso() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


# 2 안전한 int 변환
# 예: ' 12 ' -> 12, 'x' -> default
def safe_int(x, default: Optional[int] = None) -> Optional[int]:
    try:
        if x is None:
            return default
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, (int, np.integer)):
            return int(x)
        s = str(x).strip()
        if s == "" or s.lower() in ("nan", "none", "null"):
            return default
        return int(s)
    except Exception:
        return default


# 3 "i,j,k" → (i, j, k). 형식이 틀리면 None
def parse_index_tuple(text: str, size: int = 3) -> Optional[Tuple[int, ...]]:
    parts = [p for p in str(text).replace(" ", "").split(",") if p != ""]
    if len(parts) != size:
        return None
    values = [safe_int(p) for p in parts]
    if any(v is None or v < 0 for v in values):
        return None
    return tuple(values)  # type: ignore[arg-type]


# 4 "0,2,5" 같은 인덱스 목록 파싱 (개수 제한 없음)
def parse_index_list(text: str) -> Optional[List[int]]:
    parts = [p for p in str(text).replace(" ", "").split(",") if p != ""]
    values = [safe_int(p) for p in parts]
    if any(v is None or v < 0 for v in values):
        return None
    return values  # type: ignore[return-value]


# ==============
# [비트셋] - 원소 i ∈ S ⇔ (bits >> i) & 1
# ==============

def popcount(bits: int) -> int:
    return bin(bits).count("1")


# 낮은 인덱스부터 순회
def iter_bits(bits: int) -> Iterator[int]:
    i = 0
    while bits:
        if bits & 1:
            yield i
        bits >>= 1
        i += 1


def bits_from(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        bits |= 1 << int(i)
    return bits


def bits_to_mask(bits: int, n: int) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    for i in iter_bits(bits):
        mask[i] = True
    return mask


def mask_to_bits(mask: np.ndarray) -> int:
    return bits_from(np.flatnonzero(mask))


# 정렬 키: (크기, 사전식 원소 목록)
def bits_sort_key(bits: int) -> Tuple[int, Tuple[int, ...]]:
    return popcount(bits), tuple(iter_bits(bits))


# 5 원소 집합 표시
# 예: format_elements(["1","b","b^2"], 0b101) -> "{1, b^2}"
def format_elements(labels: Sequence[str], bits: int) -> str:
    return "{" + ", ".join(labels[i] for i in iter_bits(bits)) + "}"
