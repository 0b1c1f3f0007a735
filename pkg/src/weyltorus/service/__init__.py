"""HTTP service around the core package: pydantic schemas, pure handlers,
and the FastAPI app.  The CLI calls the handlers in-process by default and
over HTTP when pointed at a running server.
"""
from .app import app, create_app

__all__ = ["app", "create_app"]
