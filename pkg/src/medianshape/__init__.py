"""Median shapes of integer chains on simplicial complexes via exact linear programming."""
