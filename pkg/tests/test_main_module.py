"""Tests for __main__.py module entrypoint."""


def test_main_module_entrypoint() -> None:
    """Test that __main__ module has correct structure."""
    import decompforge.__main__

    assert hasattr(decompforge.__main__, "app")


def test_main_module_execution() -> None:
    """Test __main__ module exposes the Typer app used by the console script."""
    from decompforge.__main__ import app
    from decompforge.cli import app as cli_app

    assert callable(app)
    assert app is cli_app
