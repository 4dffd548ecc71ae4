"""
Configuration management for the painleve_strip package
"""

import os
import json
import logging
import yaml
from pathlib import Path
from typing import Dict, Any, Optional
from dataclasses import dataclass, asdict, fields

from .exceptions import ConfigurationError

logger = logging.getLogger(__name__)

@dataclass
class SolverConfig:
    """Configuration for the Nyström and series solvers"""
    n_quad: int = 64
    tol_res: float = 1e-8
    tol_res_large_theta: float = 1e-6
    large_theta: float = 2.0
    split_order: int = 4
    cond_limit: float = 1e12
    check_factor: int = 3

    def tolerance_for(self, theta: float) -> float:
        """Residual tolerance appropriate for the boundary-layer width 1/θ"""
        return self.tol_res if theta <= self.large_theta else self.tol_res_large_theta

    def quadrature_order(self, theta: float) -> int:
        """Node count growing with θ so edge layers stay resolved"""
        return max(self.n_quad, 16 * int(theta + 0.999) + 32)

@dataclass
class SpheroidalConfig:
    """Configuration for the spheroidal eigenbasis"""
    n_trunc: int = 64
    n_modes: int = 24
    coeff_decay: float = 1e-12
    max_n_trunc: int = 512
    fit_xi_min: float = 1e-3
    fit_xi_max: float = 1e-1

@dataclass
class PainleveConfig:
    """Configuration for the Painlevé III connection problem"""
    theta0_pos: float = 1e-3
    theta0_neg: float = 1e-4
    theta_end: float = 10.0
    bvp_tol: float = 1e-11
    max_nodes: int = 200000
    ivp_rtol: float = 1e-12

    def anchor_for(self, nu: float) -> float:
        """Default anchor point; the ν<0 expansion needs a smaller θ₀"""
        return self.theta0_pos if nu > 0 else self.theta0_neg

@dataclass
class OutputConfig:
    """Configuration for CLI tables"""
    format: str = "csv"
    precision: int = 17
    schema_version: str = "1.0"
    workers: int = 1

@dataclass
class LoggingConfig:
    """Configuration for logging"""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    file_path: Optional[str] = None

@dataclass
class StripConfig:
    """Main configuration class"""
    solver: SolverConfig = None
    spheroidal: SpheroidalConfig = None
    painleve: PainleveConfig = None
    output: OutputConfig = None
    logging: LoggingConfig = None

    def __post_init__(self):
        if self.solver is None:
            self.solver = SolverConfig()
        if self.spheroidal is None:
            self.spheroidal = SpheroidalConfig()
        if self.painleve is None:
            self.painleve = PainleveConfig()
        if self.output is None:
            self.output = OutputConfig()
        if self.logging is None:
            self.logging = LoggingConfig()

_SECTIONS = {
    "solver": SolverConfig,
    "spheroidal": SpheroidalConfig,
    "painleve": PainleveConfig,
    "output": OutputConfig,
    "logging": LoggingConfig,
}

class ConfigManager:
    """Configuration manager for the painleve_strip package"""

    DEFAULT_CONFIG_PATHS = [
        "painleve_strip.yaml",
        "painleve_strip.json",
        "~/.painleve_strip/config.yaml",
        "~/.painleve_strip/config.json",
    ]

    ENV_PREFIX = "PAINLEVE_STRIP_"

    def __init__(self, config_path: Optional[str] = None):
        self.config_path = config_path
        self.config = self._load_config()

    @classmethod
    def from_config(cls, config: StripConfig) -> "ConfigManager":
        """Wrap an existing configuration without touching the filesystem"""
        manager = cls.__new__(cls)
        manager.config_path = None
        manager.config = config
        return manager

    def _load_config(self) -> StripConfig:
        """Load configuration from file or create default"""
        if self.config_path:
            path = Path(self.config_path).expanduser()
            if not path.exists():
                raise ConfigurationError(f"Configuration file not found: {path}")
            return self._load_config_file(path)

        for candidate in self.DEFAULT_CONFIG_PATHS:
            expanded_path = Path(candidate).expanduser()
            if expanded_path.exists():
                try:
                    return self._load_config_file(expanded_path)
                except ConfigurationError as e:
                    logger.warning(f"Failed to load config from {expanded_path}: {e}")
                    continue

        return StripConfig()

    def _load_config_file(self, path: Path) -> StripConfig:
        """Load configuration from a specific file"""
        try:
            with open(path, "r") as f:
                if path.suffix.lower() in [".yaml", ".yml"]:
                    data = yaml.safe_load(f) or {}
                else:
                    data = json.load(f)
        except (OSError, yaml.YAMLError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"Cannot read {path}: {e}") from e

        logger.debug(f"Loaded configuration from {path}")
        return self._parse_config_data(data)

    def _parse_config_data(self, data: Dict[str, Any]) -> StripConfig:
        """Parse configuration data into config objects"""
        if not isinstance(data, dict):
            raise ConfigurationError("Configuration root must be a mapping")

        config = StripConfig()
        for section, section_cls in _SECTIONS.items():
            if section not in data:
                continue
            known = {f.name for f in fields(section_cls)}
            unknown = set(data[section]) - known
            if unknown:
                raise ConfigurationError(f"Unknown keys in '{section}': {sorted(unknown)}")
            setattr(config, section, section_cls(**data[section]))

        return config

    def save_config(self, path: Optional[str] = None):
        """Save current configuration to file"""
        if not path:
            path = self.config_path or "painleve_strip.yaml"

        path = Path(path).expanduser()
        path.parent.mkdir(parents=True, exist_ok=True)

        with open(path, "w") as f:
            yaml.dump(asdict(self.config), f, default_flow_style=False, indent=2)

    def update_from_env(self):
        """Update configuration from environment variables"""
        if os.getenv(f"{self.ENV_PREFIX}N_QUAD"):
            self.config.solver.n_quad = int(os.getenv(f"{self.ENV_PREFIX}N_QUAD"))
        if os.getenv(f"{self.ENV_PREFIX}TOL_RES"):
            self.config.solver.tol_res = float(os.getenv(f"{self.ENV_PREFIX}TOL_RES"))
        if os.getenv(f"{self.ENV_PREFIX}N_MODES"):
            self.config.spheroidal.n_modes = int(os.getenv(f"{self.ENV_PREFIX}N_MODES"))
        if os.getenv(f"{self.ENV_PREFIX}BVP_TOL"):
            self.config.painleve.bvp_tol = float(os.getenv(f"{self.ENV_PREFIX}BVP_TOL"))
        if os.getenv(f"{self.ENV_PREFIX}WORKERS"):
            self.config.output.workers = int(os.getenv(f"{self.ENV_PREFIX}WORKERS"))

        # Logging
        if os.getenv(f"{self.ENV_PREFIX}LOG_LEVEL"):
            self.config.logging.level = os.getenv(f"{self.ENV_PREFIX}LOG_LEVEL")

# Global configuration instance
_config_manager: Optional[ConfigManager] = None

def get_config() -> StripConfig:
    """Get the process-wide configuration, loading it on first use"""
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager()
        _config_manager.update_from_env()
    return _config_manager.config

def set_config(manager: ConfigManager):
    """Install a configuration manager (used by the CLI for --config)"""
    global _config_manager
    _config_manager = manager

def reset_config():
    """Reset configuration (useful for testing)"""
    global _config_manager
    _config_manager = None
