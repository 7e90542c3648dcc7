"""Shared fixtures: precision contexts, weights and the Gamma oracle for t = 0"""
import pytest
from mpmath import mp

from opk.config import reset_config_instance
from opk.models import Family, PrecisionContext, WeightParams


@pytest.fixture
def ctx():
    return PrecisionContext(256)


@pytest.fixture
def airy(ctx):
    """WeightParams factory for the Airy family at 256 bits"""
    def make(t, lam):
        return WeightParams(t, lam, Family.AIRY, ctx)
    return make


@pytest.fixture
def freud(ctx):
    def make(t, lam):
        return WeightParams(t, lam, Family.FREUD6, ctx)
    return make


def gamma_moment(lam, k=0):
    """μ_k(0;λ) = 3^((λ+k−2)/3) Γ((λ+k+1)/3)"""
    with mp.workprec(300):
        a = mp.mpf(lam) + k
        return mp.power(3, (a - 2) / 3) * mp.gamma((a + 1) / 3)


@pytest.fixture
def gamma_oracle():
    return gamma_moment


def rel(a, b):
    with mp.workprec(300):
        return abs(a - b) / abs(b)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Every test gets its own config file and no OPK_BITS"""
    monkeypatch.setenv("OPK_CONFIG", str(tmp_path / "config.json"))
    monkeypatch.delenv("OPK_BITS", raising=False)
    reset_config_instance()
    yield
    reset_config_instance()
