#!/usr/bin/env python3
"""
Configuration loader for fanoscan
Loads defaults and reference fixtures from config.yaml
"""

import os
from fractions import Fraction
from typing import Any, Dict, List

import yaml


class Config:
    """Configuration manager for the application"""

    _instance = None
    _config: Dict[str, Any] = {}

    def __new__(cls):
        """Singleton pattern to ensure only one config instance"""
        if cls._instance is None:
            cls._instance = super(Config, cls).__new__(cls)
            cls._instance._load_config()
        return cls._instance

    def _load_config(self) -> None:
        """Load configuration from config.yaml"""
        config_path = os.path.join(
            os.path.dirname(os.path.dirname(__file__)),
            'config.yaml'
        )

        if not os.path.exists(config_path):
            raise FileNotFoundError(
                f"Config file not found at {config_path}. "
                "config.yaml ships in the project root; restore it from version control."
            )

        with open(config_path, 'r') as f:
            self._config = yaml.safe_load(f) or {}

    def get(self, key_path: str, default: Any = None) -> Any:
        """
        Get a config value using dot notation
        Example: config.get('search.qmin')
        """
        keys = key_path.split('.')
        value = self._config

        for key in keys:
            if isinstance(value, dict):
                value = value.get(key)
                if value is None:
                    return default
            else:
                return default

        return value

    # Convenience properties for commonly used settings
    @property
    def default_bound(self) -> Fraction:
        """Slope coefficient b used when --bound is omitted"""
        return Fraction(str(self.get('search.bound', '4')))

    @property
    def default_qmin(self) -> int:
        return int(self.get('search.qmin', 61))

    @property
    def default_chi(self) -> int:
        return int(self.get('search.chi', 1))

    @property
    def default_workers(self) -> int:
        return int(self.get('search.workers', 1))

    @property
    def non_gorenstein_qmin(self) -> int:
        return int(self.get('non_gorenstein.qmin', 33))

    @property
    def non_gorenstein_bound(self) -> Fraction:
        return Fraction(str(self.get('non_gorenstein.bound', '4')))

    @property
    def kawakita_subsets(self) -> List[List[int]]:
        """Multisets one of which R_X contains when X is non-Gorenstein at a crepant center"""
        return [list(entry) for entry in self.get('non_gorenstein.required_subsets', [])]

    @property
    def log_level(self) -> str:
        return str(self.get('logging.level', 'WARNING'))

    @property
    def log_format(self) -> str:
        return str(self.get('logging.format', '%(levelname)s: %(message)s'))


# Singleton instance
config = Config()
