import copy
import os
import yaml
from pathlib import Path

XDG_CONFIG_HOME = Path(os.environ.get('XDG_CONFIG_HOME', Path.home() / '.config'))
APP_CONFIG_DIR = XDG_CONFIG_HOME / 'markovmono'
CONFIG_FILE = APP_CONFIG_DIR / 'config.yaml'

DIGITS_ENV = 'MARKOVMONO_DIGITS'

DEFAULT_CONFIG = {
    'digits': 30,
    'guard_digits': 10,
    'workers': 1,
    'audit': True,
    'cache_file': None,
    'bounds': {
        'qmax': 40,
        'identity_qmax': 60,
        'oracle_qmax': 25,
        'midpoint_qmax': 30,
        'recurrence_qmax': 15,
        'recurrence_nmax': 8,
        'nmax': 30,
        'corpus_size': 200,
        'search_cap': 10000,
        't_cap': 60,
        'shift_t': 5,
    },
    'tolerances': {
        'limit_relative': '1e-6',
    },
    'slopes': {
        'tail': ['-1', '-6/5', '-2'],
        'increasing': ['-1', '-9/8', '-1/2', '0', '1/3'],
        'decreasing': ['-2', '-5/4', '-3/2'],
        'mixed': ['-6/5'],
    },
}


def ensure_config_dir():
    APP_CONFIG_DIR.mkdir(parents=True, exist_ok=True)


def _merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config():
    """Defaults overlaid with the user's config.yaml (if any) and the digits env override."""
    config = copy.deepcopy(DEFAULT_CONFIG)
    if CONFIG_FILE.exists():
        with open(CONFIG_FILE, 'r') as f:
            config = _merge(config, yaml.safe_load(f))
    env_digits = os.environ.get(DIGITS_ENV)
    if env_digits:
        config['digits'] = int(env_digits)
    return config


def save_config(config):
    ensure_config_dir()
    with open(CONFIG_FILE, 'w') as f:
        yaml.safe_dump(config, f)


def default_digits(config=None):
    config = config if config is not None else load_config()
    return int(config.get('digits', DEFAULT_CONFIG['digits']))
