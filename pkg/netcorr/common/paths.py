"""Canonical filesystem locations used by netcorr."""

from pathlib import Path

HOME = Path.home()

# Run defaults (k, tolerance, scan ranges) live outside the repo by convention.
CONFIG_DIR = HOME / ".config" / "netcorr"

DEFAULT_CONFIG_PATH = CONFIG_DIR / "netcorr.yaml"
