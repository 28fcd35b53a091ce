import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

import fixtures  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def _isolated_settings(monkeypatch, tmp_path):
    # 테스트마다 .env 를 비운 상태로 시작
    monkeypatch.setenv("MLA_ENV_FILE", str(tmp_path / "missing.env"))
    for key in ("MLA_MAX_ORDER", "MLA_STAR_MAX_ORDER", "MLA_CATALOG_MAX_ORDER", "MLA_DIRECT_NONGEN_MAX"):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def v4a():
    return fixtures.v4a()


@pytest.fixture
def d4b():
    return fixtures.d4b()


@pytest.fixture
def s3c():
    return fixtures.s3c()


@pytest.fixture
def comm_d4():
    return fixtures.comm_d4()


@pytest.fixture(scope="session")
def seeds():
    return fixtures.seed_extensions()
