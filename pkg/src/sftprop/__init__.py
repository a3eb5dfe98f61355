"""Traced props of matrices, shift-equivalence search and subshift invariants."""
