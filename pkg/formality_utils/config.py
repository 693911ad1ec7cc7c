"""
Runtime settings. Defaults can be overridden with environment variables
prefixed with ``FORMALITY_UTILS_``; command line flags override both.
"""
import logging
import os
from dataclasses import dataclass, replace

from .exceptions import ImproperlyConfigured

ENV_PREFIX = 'FORMALITY_UTILS_'


@dataclass(frozen=True)
class Settings:
    max_arity: int = 6
    max_p: int = 6
    workers: int = 1
    archive_url: str = None
    log_level: str = 'WARNING'

    def __post_init__(self):
        if self.max_arity < 2:
            raise ImproperlyConfigured(
                f'max_arity must be at least 2, got {self.max_arity}.'
            )
        if self.max_p < 1:
            raise ImproperlyConfigured(
                f'max_p must be at least 1, got {self.max_p}.'
            )
        if self.workers < 1:
            raise ImproperlyConfigured(
                f'workers must be at least 1, got {self.workers}.'
            )
        if not isinstance(logging.getLevelName(self.log_level), int):
            raise ImproperlyConfigured(
                f"'{self.log_level}' is not a logging level name."
            )

    def override(self, **values):
        """
        Return a copy with every non-``None`` value in ``values`` applied.
        """
        values = {key: value for key, value in values.items() if value is not None}
        return replace(self, **values)


def _int_from_env(environ, name, default):
    raw = environ.get(ENV_PREFIX + name)
    if raw is None or raw == '':
        return default
    try:
        return int(raw)
    except ValueError:
        raise ImproperlyConfigured(
            f"{ENV_PREFIX}{name} must be an integer, got '{raw}'."
        )


def get_settings(environ=None):
    """
    Build :class:`Settings` from defaults and the environment.

    :param environ: mapping to read variables from, defaults to ``os.environ``
    """
    if environ is None:
        environ = os.environ
    defaults = Settings()
    return Settings(
        max_arity=_int_from_env(environ, 'MAX_ARITY', defaults.max_arity),
        max_p=_int_from_env(environ, 'MAX_P', defaults.max_p),
        workers=_int_from_env(environ, 'WORKERS', defaults.workers),
        archive_url=environ.get(ENV_PREFIX + 'ARCHIVE') or None,
        log_level=(
            environ.get(ENV_PREFIX + 'LOG_LEVEL') or defaults.log_level
        ).upper(),
    )
