"""Rule-based Arabic normalization, tokenization, light stemming and n-grams."""
