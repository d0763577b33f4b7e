from .session import IllegalLifecycle, NotIdle, SessionError, SimSession

__all__ = ["IllegalLifecycle", "NotIdle", "SessionError", "SimSession"]
