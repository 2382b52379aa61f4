"""Hall algebras of valued quivers, modified quantum groups and Lusztig symmetries."""

__version__ = "0.1.0"
