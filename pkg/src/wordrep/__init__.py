"""Word-representability of graphs through semi-transitive orientations."""

__version__ = "0.1.0"
