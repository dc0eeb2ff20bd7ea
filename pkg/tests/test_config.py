from pytest import fixture, raises

from gradarg.config import Settings, load_settings
from gradarg.errors import SchemaError


@fixture(autouse=True)
def clean_env(monkeypatch):
    for name in Settings.model_fields:
        monkeypatch.delenv(f"GRADARG_{name.upper()}", raising=False)


def test_defaults():
    settings = load_settings(dotenv=False)
    assert settings == Settings()
    assert settings.log_level == "WARNING"
    assert settings.restarts == 16


def test_environment(monkeypatch):
    monkeypatch.setenv("GRADARG_RESTARTS", "48")
    monkeypatch.setenv("GRADARG_DAMPING", "0.5")
    monkeypatch.setenv("GRADARG_LOG_LEVEL", " debug ")
    monkeypatch.setenv("GRADARG_SEED", "")
    settings = load_settings(dotenv=False)
    assert settings.restarts == 48
    assert settings.damping == 0.5
    assert settings.log_level == "DEBUG"
    assert settings.seed == 0


def test_bad_values(monkeypatch):
    monkeypatch.setenv("GRADARG_DAMPING", "1.5")
    with raises(SchemaError, match="GRADARG_DAMPING"):
        load_settings(dotenv=False)
    monkeypatch.setenv("GRADARG_DAMPING", "0.5")
    monkeypatch.setenv("GRADARG_LOG_LEVEL", "chatty")
    with raises(SchemaError, match="GRADARG_LOG_LEVEL"):
        load_settings(dotenv=False)


def test_solve_options():
    opts = Settings(tol=1e-6, max_iters=50, damping=0.25, restarts=3, seed=9, dedupe_tol=1e-4).solve_options()
    assert (opts.tol, opts.max_iters, opts.damping, opts.restarts, opts.rng_seed, opts.dedupe_tol) == (
        1e-6,
        50,
        0.25,
        3,
        9,
        1e-4,
    )
