"""Logging, error handling, subword and text I/O helpers."""
