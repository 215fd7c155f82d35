"""
Configuration loading for the hypergraph polynomial toolkit.
YAML file first, then HGPOLY_* environment variables (a .env file is honoured),
then explicit overrides from the command line.
"""
import logging
import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "config/config.yaml"
ENV_PREFIX = "HGPOLY_"


@dataclass(frozen=True)
class Limits:
    """Size limits and work budgets; exceeding any of them is an error"""
    dp_max_n: int = 20
    independence_max_n: int = 25
    coloring_budget: int = 10 ** 8
    matching_max_nodes: int = 10 ** 7
    canonical_max_n: int = 12
    canonical_max_labelings: int = 5 * 10 ** 7
    runiform_count_max_n: int = 16
    general_count_max_n: int = 10
    witness_max_labeled: int = 10 ** 8
    chi_product_max_n: int = 500
    binomial_product_max_n: int = 2000
    stirling_report_max_n: int = 300
    ratio_max_n: int = 10 ** 6


@dataclass(frozen=True)
class CensusSettings:
    full_universe_bits: int = 20
    max_stratum_labeled: int = 2_500_000
    max_universe: int = 63
    max_permutation_n: int = 8


@dataclass(frozen=True)
class ProcessingSettings:
    jobs: int = 1
    seed: int = 0


@dataclass(frozen=True)
class PathSettings:
    reports: str = "./data/reports"
    checkpoints: str = "./data/checkpoints"


@dataclass(frozen=True)
class LoggingSettings:
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file: str = "hgpoly.log"


@dataclass(frozen=True)
class Settings:
    limits: Limits = field(default_factory=Limits)
    census: CensusSettings = field(default_factory=CensusSettings)
    processing: ProcessingSettings = field(default_factory=ProcessingSettings)
    paths: PathSettings = field(default_factory=PathSettings)
    database_url: str = "sqlite:///data/hgpoly.db"
    logging: LoggingSettings = field(default_factory=LoggingSettings)

    def with_limits(self, **overrides) -> "Settings":
        """Copy with some limits replaced; None values are ignored"""
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if not overrides:
            return self
        return replace(self, limits=replace(self.limits, **overrides))

    def with_census(self, **overrides) -> "Settings":
        overrides = {k: v for k, v in overrides.items() if v is not None}
        if not overrides:
            return self
        return replace(self, census=replace(self.census, **overrides))


def _load_yaml(config_path: str) -> Dict[str, Any]:
    """Load configuration from YAML file"""
    try:
        with open(config_path, 'r') as file:
            return yaml.safe_load(file) or {}
    except FileNotFoundError:
        logger.error(f"Config file not found: {config_path}")
        raise
    except yaml.YAMLError as e:
        logger.error(f"Error parsing config file: {e}")
        raise


def _section(cls, raw: Optional[Dict[str, Any]], env_group: str):
    """Build one settings section from YAML values and HGPOLY_* variables"""
    values = dict(raw or {})
    for f in fields(cls):
        env_name = f"{ENV_PREFIX}{f.name.upper()}"
        if env_name in os.environ:
            values[f.name] = os.environ[env_name]
        elif f"{ENV_PREFIX}{env_group}_{f.name.upper()}" in os.environ:
            values[f.name] = os.environ[f"{ENV_PREFIX}{env_group}_{f.name.upper()}"]
    known = {f.name: f for f in fields(cls)}
    unknown = set(values) - set(known)
    if unknown:
        logger.warning(f"Ignoring unknown {env_group.lower()} settings: {sorted(unknown)}")
    kwargs = {}
    for name, value in values.items():
        if name not in known:
            continue
        default = known[name].default
        kwargs[name] = type(default)(value) if not isinstance(default, str) else str(value)
    return cls(**kwargs)


def load_settings(config_path: str = DEFAULT_CONFIG_PATH) -> Settings:
    """Read the YAML file and apply environment overrides"""
    load_dotenv()
    if config_path == DEFAULT_CONFIG_PATH and not os.path.exists(config_path):
        # Running outside the repository root: built-in defaults
        logger.debug(f"{config_path} not found, using built-in defaults")
        raw = {}
    else:
        raw = _load_yaml(config_path)
    database = raw.get('database') or {}
    return Settings(
        limits=_section(Limits, raw.get('limits'), 'LIMITS'),
        census=_section(CensusSettings, raw.get('census'), 'CENSUS'),
        processing=_section(ProcessingSettings, raw.get('processing'), 'PROCESSING'),
        paths=_section(PathSettings, raw.get('paths'), 'PATHS'),
        database_url=os.environ.get(f"{ENV_PREFIX}DATABASE_URL", database.get('url', Settings.database_url)),
        logging=_section(LoggingSettings, raw.get('logging'), 'LOGGING'),
    )


# Global settings instance
_settings: Optional[Settings] = None


def get_settings(config_path: str = DEFAULT_CONFIG_PATH) -> Settings:
    """Get global settings instance"""
    global _settings
    if _settings is None:
        _settings = load_settings(config_path)
    return _settings


def set_settings(settings: Settings) -> Settings:
    """Install settings built elsewhere (CLI overrides, tests)"""
    global _settings
    _settings = settings
    return settings


def reset_settings():
    global _settings
    _settings = None
