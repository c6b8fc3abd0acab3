"""Bundled miniature example logs."""

from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent


def fixture_path(name: str) -> Path:
    """Path of a bundled file, e.g. ``fixture_path("order-mini.xmlocel")``."""
    path = DATA_DIR / name
    if not path.is_file():
        raise FileNotFoundError(f"no bundled file named {name!r}")
    return path
