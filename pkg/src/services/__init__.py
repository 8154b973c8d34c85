"""Service package: edit operations, decoding, constraint extraction and evaluation."""
