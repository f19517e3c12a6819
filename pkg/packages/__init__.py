"""cavity-recon - thermal cavity evolution and quasiprobability reconstruction."""

__version__ = "0.1.0"
