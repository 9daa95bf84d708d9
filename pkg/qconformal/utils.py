from typing import Any, Dict, List
import random
import logging

import yaml

logger = logging.getLogger(__name__)


def derived_rng(seed: int, label: str) -> random.Random:
    """one generator per consumer, all derived from the root seed."""
    return random.Random(f'{seed}:{label}')


def remove_comment(line: str) -> str:
    index = line.find('#')
    if index >= 0:
        line = line[:index]
    return line.strip()


def read_config(path: str) -> Dict[str, Any]:
    with open(path, 'r') as config_file:
        config = yaml.safe_load(config_file) or {}
    if not isinstance(config, dict):
        raise ValueError(f'config file {path} must hold a mapping')
    return {key.replace('-', '_'): value for key, value in config.items()}


def read_seed_lines(path: str) -> List[str]:
    """one JSON tensor seed per non-empty line; '#' starts a comment."""
    with open(path, 'r') as seed_file:
        lines = [remove_comment(line) for line in seed_file]
    return [line for line in lines if line]
