"""Exact arithmetic for hom-associative algebras, their Ore extensions and hom-modules."""

__version__ = "1.0"
