"""Turn-based cooperative kitchen game with agent chefs and analysis tools."""

from importlib import resources

__version__ = "0.1.0"


def default_layout_text() -> str:
    """Text of the shipped kitchen map."""
    return resources.files("hybs.data").joinpath("default.map").read_text(encoding="utf-8")
