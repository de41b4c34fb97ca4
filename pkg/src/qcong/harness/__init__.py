"""Configuration, sweeps, logging and the command line."""
