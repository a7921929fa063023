"""Open-world task planning with commonsense knowledge patches."""

__version__ = "0.1.0"
