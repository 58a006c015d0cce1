"""Higher Segal conditions: cyclic polytopes, orientals, triangulations and a Segal checker."""

__version__ = "0.1.0"
