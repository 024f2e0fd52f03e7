"""CSS surface codes from Paley graphs and voltage-graph lifts."""

__version__ = "0.1.0"
