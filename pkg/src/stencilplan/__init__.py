"""Overlap-aware stencil planning for multi-column e-beam writers."""

__version__ = "0.1.0"
