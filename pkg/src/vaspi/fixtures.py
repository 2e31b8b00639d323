"""Access to the deployment model shipped with the package."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .model import BdnModel, parse_model


def deployment_fixture_path() -> Path:
    """Filesystem path of the shipped deployment model document."""
    return Path(str(resources.files("vaspi").joinpath("data/deployment.bdn.json")))


def load_deployment_model() -> BdnModel:
    return parse_model(deployment_fixture_path().read_text(encoding="utf-8"))
