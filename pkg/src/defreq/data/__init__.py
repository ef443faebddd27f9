"""Bundled corpus files."""

from importlib.resources import files
from pathlib import Path


def path(name: str) -> Path:
    return Path(str(files(__name__).joinpath(name)))
