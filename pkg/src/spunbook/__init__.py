"""Open books, spun embeddings of 3-manifolds, and their obstructions."""

__version__ = "0.1.0"
