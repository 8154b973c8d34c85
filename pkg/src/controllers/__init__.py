"""Subcommand controllers: one module per CLI command."""
