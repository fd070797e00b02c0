"""Hybrid explicit/implicit MPC motion-cueing toolkit."""

__version__ = "0.1.0"
