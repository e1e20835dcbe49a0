"""Service configuration: defaults, then a key=value file, then env vars."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional

from .errors import FileFormatError

_ENV_KEYS = {
    "PORT": "port",
    "INDEX_DIR": "index_dir",
    "PAGE_IMAGE_DIR": "page_image_dir",
    "CORS_ORIGIN": "cors_origin",
}


@dataclass(frozen=True)
class ServiceConfig:
    port: int = 8000
    index_dir: Optional[str] = None
    page_image_dir: Optional[str] = None
    cors_origin: Optional[str] = None


def _parse_config_file(path: Path) -> dict:
    values = {}
    for lineno, raw in enumerate(path.read_text("utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or key not in _ENV_KEYS.values():
            raise FileFormatError(f"bad config line: {raw!r}",
                                  path=str(path), line=lineno)
        values[key] = value.strip()
    return values


def load_config(path=None, env: Optional[Mapping[str, str]] = None) -> ServiceConfig:
    env = os.environ if env is None else env
    values: dict = {}
    if path is not None:
        values.update(_parse_config_file(Path(path)))
    for env_key, field_name in _ENV_KEYS.items():
        if env_key in env:
            values[field_name] = env[env_key]
    if "port" in values:
        try:
            values["port"] = int(values["port"])
        except ValueError:
            raise FileFormatError(f"port must be an integer, got {values['port']!r}",
                                  path=str(path) if path else None) from None
    return ServiceConfig(**values)
