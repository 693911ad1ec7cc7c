from .scalar import ScalarType  # noqa
