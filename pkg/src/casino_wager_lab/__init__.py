"""Casino Wager Lab - simulate and exactly analyze casino wager processes."""

__version__ = "0.1.0"
