"""Constructive pancyclicity tools for graphs whose connectivity exceeds their independence number."""

from __future__ import annotations

__version__ = "0.1.0"
