"""Boolean constraint systems as linear programs and quantum states."""

__version__ = "0.1.0"
