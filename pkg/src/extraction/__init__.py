"""Entity spans, event templates and event reports."""
