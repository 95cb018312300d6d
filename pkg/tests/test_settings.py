import pytest

import gcwsnet.config.settings as settings_mod
from gcwsnet.config import Settings, get_settings
from gcwsnet.config.settings import _safe_int


@pytest.mark.parametrize(
    "raw,expected",
    [(None, 7), ("3", 3), ("0", 1), ("-5", 1), ("many", 7)],
)
def test_safe_int(raw, expected):
    assert _safe_int(raw, 7) == expected


def test_defaults(monkeypatch):
    for var in ("GCWSNET_ENV", "GCWSNET_LOG_LEVEL", "GCWSNET_WORKERS", "GCWSNET_HASH_CHUNK"):
        monkeypatch.delenv(var, raising=False)
    s = Settings.from_env()
    assert s == Settings()
    assert (s.environment, s.log_level, s.workers, s.hash_chunk) == (
        "production",
        "WARNING",
        1,
        4096,
    )


def test_from_env(monkeypatch):
    monkeypatch.setenv("GCWSNET_ENV", "test")
    monkeypatch.setenv("GCWSNET_LOG_LEVEL", " debug ")
    monkeypatch.setenv("GCWSNET_WORKERS", "4")
    monkeypatch.setenv("GCWSNET_HASH_CHUNK", "128")
    s = Settings.from_env()
    assert s.environment == "test"
    assert s.log_level == "DEBUG"
    assert s.workers == 4
    assert s.hash_chunk == 128


def test_unknown_log_level_falls_back(monkeypatch):
    monkeypatch.setenv("GCWSNET_LOG_LEVEL", "chatty")
    assert Settings.from_env().log_level == "WARNING"


def test_get_settings_is_cached(monkeypatch):
    monkeypatch.setattr(settings_mod, "_settings", None)
    first = get_settings()
    monkeypatch.setenv("GCWSNET_WORKERS", "9")
    assert get_settings() is first
