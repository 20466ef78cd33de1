"""Root-system combinatorics for the L^p-cohomology vanishing strip of
admissible simple real Lie groups."""

__version__ = "0.1.0"
