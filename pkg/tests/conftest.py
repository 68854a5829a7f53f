"""
Shared pytest fixtures for all tests.
"""
import pytest
import sys
from pathlib import Path

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from services import corpus  # noqa: E402
from services.diagram import parse_pd  # noqa: E402

HOPF_PD = "X+(1,3,2,4) X+(3,1,4,2)"
TREFOIL_PD = "X+(1,5,2,4) X+(3,1,4,6) X+(5,3,6,2)"


@pytest.fixture(autouse=True)
def quiet_env(monkeypatch):
    """No progress bars and no leftover env overrides."""
    monkeypatch.setenv("LINKINV_PROGRESS", "0")
    for name in ("LINKINV_TRUNCATION", "LINKINV_SEED", "LINKINV_TRIALS", "LINKINV_WORKERS",
                 "LINKINV_LEIBNIZ_BOUND", "LINKINV_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def hopf_pd() -> str:
    return HOPF_PD


@pytest.fixture
def trefoil_pd() -> str:
    return TREFOIL_PD


@pytest.fixture
def hopf():
    """Positive Hopf link parsed from PD text."""
    return parse_pd(HOPF_PD)


@pytest.fixture
def trefoil():
    return parse_pd(TREFOIL_PD)


@pytest.fixture
def figure8():
    return corpus.figure8()


@pytest.fixture
def borromean():
    return corpus.borromean()


@pytest.fixture
def whitehead1():
    return corpus.whitehead(1)
