"""Annotated corpus data model, ingestion, validation and splitting."""
