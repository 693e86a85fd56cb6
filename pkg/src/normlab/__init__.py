"""Exhaustive verification of normal-basis and hyperplane/unit facts over finite fields."""

__version__ = "0.1.0"
