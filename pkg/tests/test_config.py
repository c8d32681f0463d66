"""
Tests for the configuration layer.
"""

import pytest

import config


def test_default_grids_present():
    grids = config.load_default_config()
    for key in ("theorem_grid", "fs_grid", "lemma_grid", "shift_grid", "algebra_grid"):
        assert key in grids
    assert all({"ell", "level", "max_degree"} <= set(entry) for entry in grids["theorem_grid"])


def test_caps_are_validated(monkeypatch):
    config.validate_resource_caps()
    monkeypatch.setattr(config, "MAX_PARTITIONS", -1)
    with pytest.raises(ValueError, match="MAX_PARTITIONS"):
        config.validate_resource_caps()


def test_ensure_directories(monkeypatch, tmp_path):
    monkeypatch.setattr(config, "OUTPUT_DIR", str(tmp_path / "reports"))
    config.ensure_directories(tmp_path / "runs" / "grid")
    assert (tmp_path / "reports").is_dir()
    assert (tmp_path / "runs" / "grid").is_dir()
