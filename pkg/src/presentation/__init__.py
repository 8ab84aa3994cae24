"""Presentation layer - External interfaces (command line)."""
