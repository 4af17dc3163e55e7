"""Gadget constructions, polynomial reductions, and exhaustive certification
for restricted 3-SAT and NAE-3-SAT variants."""

__version__ = "0.1.0"
