"""Hom-groups, Hom-rings and Hom-modules: tables, tree rewriting and verifiers."""

__version__ = "0.1.0"
