"""Suites, reports, lattice cache and command-line entry point."""
