"""Exact bookkeeping for Hodge diamonds, canonical classes, Koszul cohomology
and Grothendieck groups of varieties built from standard constructions."""

__version__ = "0.1.0"
