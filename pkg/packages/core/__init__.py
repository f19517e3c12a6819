"""Core package - state algebra, channel evolution, reconstruction and probe models."""
