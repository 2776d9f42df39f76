"""Count, enumerate, and verify lines on smooth surfaces in projective 3-space."""

__version__ = "0.1.0"
