"""Exact arithmetic for the metaplectic double cover of Sp(2n) over completions of Q."""

__version__ = "0.1.0"
