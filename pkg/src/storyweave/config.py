"""Application configuration with precedence: CLI flags > environment >
config file > built-in defaults (8 roots, 4 subs, full mode, ratio 2.0).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path

import yaml

from .gateway import DEFAULT_FIXTURES_DIR


@dataclass(frozen=True)
class AppConfig:
    host: str = "127.0.0.1"
    port: int = 8700
    mode: str = "full"
    root_count: int = 8
    sub_count: int = 4
    max_length_ratio: float = 2.0
    provider_kind: str = "mock"
    provider_endpoint: str = ""
    provider_model: str = ""
    provider_api_key_env: str = ""
    provider_timeout: float = 60.0
    provider_seed: int = 0
    fixtures_dir: str = str(DEFAULT_FIXTURES_DIR)
    strict_fixtures: bool = True
    data_dir: str = ""
    bearer_token: str = ""


_ENV_MAP = {
    "PROVIDER_KIND": "provider_kind",
    "PROVIDER_ENDPOINT": "provider_endpoint",
    "PROVIDER_MODEL": "provider_model",
    "PROVIDER_API_KEY_ENV": "provider_api_key_env",
    "STORYWEAVE_HOST": "host",
    "STORYWEAVE_PORT": "port",
    "STORYWEAVE_MODE": "mode",
    "STORYWEAVE_ROOT_COUNT": "root_count",
    "STORYWEAVE_SUB_COUNT": "sub_count",
    "STORYWEAVE_FIXTURES_DIR": "fixtures_dir",
    "STORYWEAVE_DATA_DIR": "data_dir",
    "STORYWEAVE_TOKEN": "bearer_token",
}

_FIELD_TYPES = {f.name: f.type for f in fields(AppConfig)}


def _coerce(name: str, value):
    target = _FIELD_TYPES[name]
    if target in (int, "int"):
        return int(value)
    if target in (float, "float"):
        return float(value)
    if target in (bool, "bool"):
        if isinstance(value, str):
            return value.lower() in ("1", "true", "yes", "on")
        return bool(value)
    return str(value)


def load_config(
    config_file: str | Path | None = None,
    env: dict[str, str] | None = None,
    overrides: dict | None = None,
) -> AppConfig:
    config = AppConfig()

    if config_file:
        data = yaml.safe_load(Path(config_file).read_text("utf-8")) or {}
        if not isinstance(data, dict):
            raise ValueError("config file must contain a mapping")
        known = {k: _coerce(k, v) for k, v in data.items() if k in _FIELD_TYPES}
        config = replace(config, **known)

    env = env if env is not None else dict(os.environ)
    env_values = {
        field_name: _coerce(field_name, env[var])
        for var, field_name in _ENV_MAP.items()
        if var in env
    }
    if "PROVIDER_TIMEOUT_MS" in env:
        env_values["provider_timeout"] = float(env["PROVIDER_TIMEOUT_MS"]) / 1000.0
    config = replace(config, **env_values)

    if overrides:
        known = {
            k: _coerce(k, v)
            for k, v in overrides.items()
            if k in _FIELD_TYPES and v is not None
        }
        config = replace(config, **known)
    return config
