"""Infrastructure layer - External services and implementations."""
