"""Location of bundled data files (override with THZ_SAGA_DATA)."""

import os
from pathlib import Path

ENV_VAR = "THZ_SAGA_DATA"


def data_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


def bundled_path(*parts: str) -> Path:
    return data_dir().joinpath(*parts)
