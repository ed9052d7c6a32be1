"""
Configuration loading.

Defaults live here; config/cohomology_config.json (or the file named by
--config / QCOH_CONFIG) is merged on top with deep_update.
"""

import copy
import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from core.log import get_logger

logger = get_logger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parents[1]
DEFAULT_CONFIG_FILE = PROJECT_ROOT / "config" / "cohomology_config.json"

DEFAULT_CONFIG: Dict[str, Any] = {
    "catalog": {
        "2": {"p": 2, "modulus": [0, 1]},
        "3": {"p": 3, "modulus": [0, 1]},
        "4": {"p": 2, "modulus": [1, 1, 1]},
        "5": {"p": 5, "modulus": [0, 1]},
        "7": {"p": 7, "modulus": [0, 1]},
        "8": {"p": 2, "modulus": [1, 0, 1, 1]},
        "9": {"p": 3, "modulus": [1, 0, 1]},
        "9b": {"p": 3, "modulus": [2, 1, 1]},
        "11": {"p": 11, "modulus": [0, 1]},
        "13": {"p": 13, "modulus": [0, 1]},
        "16": {"p": 2, "modulus": [1, 1, 0, 0, 1]},
        "25": {"p": 5, "modulus": [3, 0, 1]},
        "27": {"p": 3, "modulus": [1, 2, 0, 1]},
    },
    "linalg": {
        "dense_column_limit": 10000,
    },
    "sweep": {
        "fields": ["3", "4", "5", "7", "8", "9"],
        "jobs": 1,
    },
    "output": {
        "format": "json",
        "indent": 2,
    },
    "logging": {
        "level": "WARNING",
    },
    "theme": {
        "info": "cyan",
        "success": "bold green",
        "warning": "bold yellow",
        "error": "bold red",
    },
}


def deep_update(base_dict: dict, update_dict: dict) -> dict:
    """Recursively merge update_dict into base_dict (in place) and return it"""
    for key, value in update_dict.items():
        if key in base_dict and isinstance(base_dict[key], dict) and isinstance(value, dict):
            deep_update(base_dict[key], value)
        else:
            base_dict[key] = value
    return base_dict


def resolve_config_path(path: Optional[str] = None) -> Path:
    """Explicit path, then $QCOH_CONFIG, then the bundled file"""
    load_dotenv()
    if path:
        return Path(path).expanduser()
    env_path = os.getenv("QCOH_CONFIG")
    if env_path:
        return Path(env_path).expanduser()
    return DEFAULT_CONFIG_FILE


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """Load configuration, falling back to defaults on unreadable files"""
    config = copy.deepcopy(DEFAULT_CONFIG)
    config_file = resolve_config_path(path)

    if config_file.exists():
        try:
            with open(config_file, "r") as f:
                user_config = json.load(f)
            if isinstance(user_config, dict):
                deep_update(config, user_config)
            else:
                logger.warning("Ignoring config %s: top level is not an object", config_file)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning("Error loading config %s: %s", config_file, e)
    elif path:
        logger.warning("Config file not found: %s", config_file)

    env_level = os.getenv("QCOH_LOG_LEVEL")
    if env_level:
        config["logging"]["level"] = env_level.upper()

    return config


def catalog_entry(config: Dict[str, Any], key) -> Dict[str, Any]:
    """Look up a catalog field by its key ("4", "9b", 16 ...)"""
    catalog = config.get("catalog", {})
    entry = catalog.get(str(key))
    if entry is None:
        raise KeyError(f"no catalog field for q={key}; known: {', '.join(sorted(catalog, key=_catalog_sort_key))}")
    return entry


def _catalog_sort_key(key: str):
    digits = "".join(ch for ch in key if ch.isdigit())
    return (int(digits) if digits else 0, key)
