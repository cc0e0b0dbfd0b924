"""
Error tracking for wavelab.
Integrates Sentry so that failed sweeps on shared machines are reported.
"""

import os

import sentry_sdk
from sentry_sdk.integrations.logging import LoggingIntegration

from .logging_config import app_logger

_initialized = False


def init_sentry() -> bool:
    """Initialize Sentry error tracking when a DSN is configured."""
    global _initialized

    sentry_dsn = os.getenv("WAVELAB_SENTRY_DSN")
    environment = os.getenv("WAVELAB_ENVIRONMENT", "development")

    if not sentry_dsn:
        app_logger.debug("WAVELAB_SENTRY_DSN not configured, error tracking disabled")
        return False

    sentry_sdk.init(
        dsn=sentry_dsn,
        environment=environment,
        integrations=[LoggingIntegration(level=None, event_level=None)],
        traces_sample_rate=0.0,
        release=os.getenv("WAVELAB_RELEASE", "1.0.0"),
        before_send=before_send,
    )
    _initialized = True

    app_logger.info(f"Sentry error tracking initialized ({environment})")
    return True


def before_send(event, hint):
    """Tag events before sending to Sentry."""
    event.setdefault("tags", {})
    event["tags"]["service"] = "wavelab"
    return event


def capture_exception(exc, **kwargs):
    """Capture an exception with additional context."""
    if not _initialized:
        return
    with sentry_sdk.configure_scope() as scope:
        for key, value in kwargs.items():
            scope.set_tag(key, value)

        sentry_sdk.capture_exception(exc)
