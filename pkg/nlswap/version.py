"""Package version."""

__version__ = '0.1.0'
"""Current version of nlswap."""
