"""
Copyright © 2026 The golayft developers.
"""
from importlib_metadata import metadata as _metadata

version = _metadata("golayft")["version"]
