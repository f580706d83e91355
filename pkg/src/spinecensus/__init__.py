"""Census engine for low-complexity closed and cusped 3-manifolds."""

__version__ = "0.1.0"
