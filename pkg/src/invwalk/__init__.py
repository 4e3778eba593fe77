"""Expected number of inversions after random adjacent transpositions."""

__version__ = "0.1.0"
