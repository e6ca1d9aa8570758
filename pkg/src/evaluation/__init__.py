"""Confusion matrices and token-/entity-level scores."""
