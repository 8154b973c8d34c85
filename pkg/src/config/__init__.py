"""Configuration objects loaded from the environment and CLI flags."""
