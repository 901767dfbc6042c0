"""HTTP service exposing the library as JSON endpoints."""

from .app import create_app

__all__ = ["create_app"]
