"""
Copyright © 2026 The golayft developers.
"""
from . import formats, save
