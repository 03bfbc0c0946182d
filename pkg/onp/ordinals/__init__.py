"""Ordinal representations, the field-element view, parsing and printing."""
