"""Verification engine for candidate solutions to open mathematical problems."""

__version__ = "0.1.0"
