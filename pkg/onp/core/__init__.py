"""Core plumbing: errors and cached factories."""
