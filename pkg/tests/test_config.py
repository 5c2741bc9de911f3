# tests/test_config.py

import pytest
import tomli

from homfin.core.config_manager import ConfigManager
from homfin.core.exceptions import ConfigError
from homfin.core.models import JobConfig


@pytest.fixture
def clean_env(monkeypatch):
    for var in ("HOMFIN_DEGREE_BOUND", "HOMFIN_HOM_BOUND", "HOMFIN_FIELD", "HOMFIN_WORKERS"):
        monkeypatch.delenv(var, raising=False)
    return monkeypatch


def test_default_config_is_created(tmp_path, clean_env):
    path = tmp_path / "nested" / "config.toml"
    manager = ConfigManager(path)
    assert path.exists()
    with open(path, "rb") as f:
        assert tomli.load(f) == ConfigManager.defaults()
    assert manager.get_engine_setting("degree_bound") == 8


def test_config_dir_from_environment(config_dir):
    manager = ConfigManager()
    assert manager.config_path == config_dir / "config.toml"
    assert manager.get_engine_setting("degree_bound") == 6
    assert manager.get_logging_setting("log_level_console") == "CRITICAL"


def test_missing_keys_fall_back_to_defaults(tmp_path, clean_env):
    path = tmp_path / "config.toml"
    path.write_text("[engine]\nhom_bound = 2\n", encoding="utf-8")
    manager = ConfigManager(path)
    assert manager.get_engine_setting("hom_bound") == 2
    assert manager.get_engine_setting("field") == "Q"
    assert manager.get_config_as_dict()["verify"]["level"] == "fast"


def test_environment_overrides_the_file(config_dir, monkeypatch):
    monkeypatch.setenv("HOMFIN_DEGREE_BOUND", "10")
    monkeypatch.setenv("HOMFIN_FIELD", "GF(5)")
    manager = ConfigManager()
    assert manager.get_engine_setting("degree_bound") == 10
    assert manager.effective()["engine"]["field"] == "GF(5)"
    assert manager.config["engine"]["degree_bound"] == 6


def test_bad_environment_value_raises(config_dir, monkeypatch):
    monkeypatch.setenv("HOMFIN_WORKERS", "many")
    with pytest.raises(ConfigError, match="HOMFIN_WORKERS"):
        ConfigManager().get_engine_setting("workers")


def test_invalid_toml_raises(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text("[engine\ndegree_bound = ", encoding="utf-8")
    with pytest.raises(ConfigError, match="Invalid TOML"):
        ConfigManager(path)


def test_update_and_save(tmp_path, clean_env):
    path = tmp_path / "config.toml"
    manager = ConfigManager(path)
    manager.update_setting("engine", "hom_bound", 7)
    manager.save_config()
    assert ConfigManager(path).get_engine_setting("hom_bound") == 7


# -----------------------------------------------------------------------------
# Job Settings
# -----------------------------------------------------------------------------

def test_job_config_defaults():
    job = JobConfig(command="resolve")
    assert job.degree_bound == 8
    assert job.side == "left"
    assert job.output_format == "table"


@pytest.mark.parametrize("overrides", [
    {"degree_bound": 1},
    {"hom_bound": -1},
    {"workers": 0},
    {"field": "GF(4)"},
    {"side": "sideways"},
])
def test_job_config_rejects_bad_values(overrides):
    with pytest.raises(ValueError):
        JobConfig(command="resolve", **overrides)
