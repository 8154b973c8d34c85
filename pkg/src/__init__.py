"""Lexically constrained Levenshtein Transformer decoding toolkit."""
