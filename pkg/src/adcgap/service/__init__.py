"""HTTP service exposing the analytics operations."""

from .app import create_app

__all__ = ["create_app"]
