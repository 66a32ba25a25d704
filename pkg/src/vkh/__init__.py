"""Virtual Khovanov homology of virtual link diagrams."""

__version__ = "0.1.0"
