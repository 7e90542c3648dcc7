import json

import pytest

from opk.config import Config, get_config
from opk.errors import ConfigError


@pytest.fixture
def cfg(tmp_path):
    return Config(str(tmp_path / "opk.json"))


def test_defaults(cfg):
    assert cfg.bits == 256
    assert cfg.jobs == 1
    assert cfg.format == "csv"
    assert cfg.digits is None
    assert cfg.richardson_levels == 4


def test_set_persists_and_coerces(cfg):
    cfg.set("bits", "384")
    assert cfg.bits == 384
    stored = json.loads(cfg.config_path.read_text())
    assert stored["bits"] == 384
    assert Config(str(cfg.config_path)).bits == 384


@pytest.mark.parametrize("key,value", [
    ("bits", "32"),
    ("bits", "many"),
    ("jobs", "0"),
    ("format", "xml"),
    ("nope", "1"),
])
def test_rejected_values(cfg, key, value):
    with pytest.raises(ConfigError):
        cfg.set(key, value)


def test_digits_can_be_cleared(cfg):
    cfg.set("digits", "20")
    assert cfg.digits == 20
    cfg.set("digits", "auto")
    assert cfg.digits is None


def test_reset(cfg):
    cfg.set("n_max", "20")
    cfg.reset()
    assert cfg.n_max == 10


def test_corrupt_file_falls_back(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert Config(str(path)).bits == 256


def test_unknown_stored_keys_ignored(tmp_path):
    path = tmp_path / "old.json"
    path.write_text(json.dumps({"max_retries": 3, "jobs": 4}))
    cfg = Config(str(path))
    assert cfg.jobs == 4
    assert "max_retries" not in cfg.get_all()


def test_env_bits_override(cfg, monkeypatch):
    monkeypatch.setenv("OPK_BITS", "512")
    assert cfg.bits == 512
    assert cfg.bits_from_env


def test_env_bits_must_be_valid(cfg, monkeypatch):
    monkeypatch.setenv("OPK_BITS", "12")
    with pytest.raises(ConfigError):
        cfg.bits


def test_env_config_path(tmp_path):
    # conftest points OPK_CONFIG at a per-test file
    assert get_config().config_path.parent == tmp_path
