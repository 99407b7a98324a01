"""Plane-graph toolkit for (1,0,0)-colorings of planar graphs without 4- and 6-cycles."""

__version__ = "0.1.0"
