import logging

from nilgeo import display
from nilgeo.settings import Settings, configure_logging, console, load_settings


def test_defaults(monkeypatch):
    monkeypatch.delenv("NILGEO_THREADS", raising=False)
    monkeypatch.delenv("NILGEO_LOG_LEVEL", raising=False)
    assert load_settings() == Settings()


def test_environment(monkeypatch):
    monkeypatch.setenv("NILGEO_THREADS", "4")
    monkeypatch.setenv("NILGEO_LOG_LEVEL", "debug")
    settings = load_settings()
    assert settings.threads == 4
    assert settings.log_level == "debug"


def test_invalid_environment_falls_back(monkeypatch):
    monkeypatch.setenv("NILGEO_THREADS", "0")
    assert load_settings().threads == 1
    monkeypatch.setenv("NILGEO_THREADS", "many")
    assert load_settings().threads == 1


def test_configure_logging(monkeypatch):
    monkeypatch.setenv("NILGEO_LOG_LEVEL", "info")
    configure_logging()
    assert logging.getLogger().level == logging.INFO
    configure_logging("error")
    assert logging.getLogger().level == logging.ERROR


def test_unknown_level_falls_back():
    configure_logging("chatty")
    assert logging.getLogger().level == logging.WARNING


def test_logging_and_failures_share_one_console(capsys):
    configure_logging("INFO")
    (handler,) = logging.getLogger().handlers
    assert handler.console is console
    assert display.error_console is console
    display.failure("no compatible J")
    assert "no compatible J" in capsys.readouterr().err
