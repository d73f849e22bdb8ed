"""Shared helpers used across netcorr commands.

Submodules:
  - logging: ``setup_logging``: one standard log format, stderr only
  - paths:   ``CONFIG_DIR`` and ``DEFAULT_CONFIG_PATH``: where run defaults live
"""
