"""Vocabulary, sparse/dense encodings, embeddings and feature selection."""
