"""Search-guided local vertex colouring (BFC / DFC) with WL baselines."""

__version__ = "0.1.0"
