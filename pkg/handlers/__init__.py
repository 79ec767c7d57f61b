from .commands import register_handlers

__all__ = ["register_handlers"]
