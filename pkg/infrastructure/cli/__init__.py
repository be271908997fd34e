from infrastructure.cli.app import app

__all__ = ["app"]
