from __future__ import annotations
#!/usr/bin/env python3
"""Central configuration helpers: enumeration bounds and logging level.

Values come from three layers, later layers win:
  1. defaults in MANAGED_RUNTIME_KEYS
  2. the project's ``.env`` file (or the file named by ``MLA_ENV_FILE``)
  3. the process environment (e.g. ``MLA_MAX_ORDER=16 python mla_cli.py ...``)
"""

import logging
import os
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict

from dotenv import dotenv_values

log = logging.getLogger("CONFIG")

ENV_FILE_PATH = Path(__file__).resolve().parent / ".env"
_SETTINGS_LOCK = threading.Lock()

MANAGED_RUNTIME_KEYS: Dict[str, Dict[str, Any]] = {
    # 부분대수 격자 / Frattini / structure_report 한도
    "MLA_MAX_ORDER": {"type": "int", "default": 24},
    # enumerate_stars 한도
    "MLA_STAR_MAX_ORDER": {"type": "int", "default": 12},
    # build_catalog 한도
    "MLA_CATALOG_MAX_ORDER": {"type": "int", "default": 12},
    # non_generators 직접 정의 교차검증 한도 (2^n 부분집합)
    "MLA_DIRECT_NONGEN_MAX": {"type": "int", "default": 8},
    "LOG_LEVEL": {"type": "str", "default": "INFO"},
}


@dataclass
class ConfigData:
    values: Dict[str, Any]
    source: str  # "defaults", "env_file", "env_file+environ", "environ"


def _env_file_path() -> Path:
    override = os.getenv("MLA_ENV_FILE")
    return Path(override) if override else ENV_FILE_PATH


def _cast_runtime_value(key: str, value: Any) -> Any:
    meta = MANAGED_RUNTIME_KEYS.get(key)
    if not meta:
        return value
    kind = meta.get("type")
    try:
        if kind == "bool":
            if isinstance(value, bool):
                return value
            return str(value).strip().lower() in {"1", "true", "yes", "on"}
        if kind == "int":
            cast = int(str(value).strip())
            if cast < 1:
                raise ValueError("bound must be positive")
            return cast
        return str(value).strip()
    except Exception:
        log.warning("설정값 %s=%r 해석 실패, 기본값 %r 사용", key, value, meta.get("default"))
        return meta.get("default")


def _read_env_file() -> Dict[str, str]:
    path = _env_file_path()
    if not path.exists():
        return {}
    with _SETTINGS_LOCK:
        raw = dotenv_values(path)
    return {k: str(v) for k, v in raw.items() if v is not None}


def load_config() -> ConfigData:
    file_values = _read_env_file()
    values: Dict[str, Any] = {}
    sources = set()
    for key, meta in MANAGED_RUNTIME_KEYS.items():
        raw: Any = meta.get("default")
        if key in file_values:
            raw = file_values[key]
            sources.add("env_file")
        env_raw = os.getenv(key)
        if env_raw is not None and env_raw != "":
            raw = env_raw
            sources.add("environ")
        values[key] = _cast_runtime_value(key, raw)
    source = "+".join(s for s in ("env_file", "environ") if s in sources) or "defaults"
    return ConfigData(values=values, source=source)


def get_setting(key: str) -> Any:
    if key not in MANAGED_RUNTIME_KEYS:
        raise KeyError(f"unmanaged setting: {key}")
    return load_config().values[key]


def max_order() -> int:
    return int(get_setting("MLA_MAX_ORDER"))


# MLA_MAX_ORDER 는 전체 상한: 개별 한도는 그 값을 넘지 못한다
def star_max_order() -> int:
    values = load_config().values
    return min(int(values["MLA_STAR_MAX_ORDER"]), int(values["MLA_MAX_ORDER"]))


def catalog_max_order() -> int:
    values = load_config().values
    return min(int(values["MLA_CATALOG_MAX_ORDER"]), int(values["MLA_MAX_ORDER"]))


def direct_nongen_max() -> int:
    return int(get_setting("MLA_DIRECT_NONGEN_MAX"))


def log_level() -> str:
    return str(get_setting("LOG_LEVEL")).upper()
