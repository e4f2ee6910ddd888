"""Exception types shared across the package."""


class GenerationError(RuntimeError):
    """Random code generation exhausted its retry budget."""


class CapacityError(RuntimeError):
    """An exhaustive computation exceeds its enumeration budget."""


class InsufficientDataError(ValueError):
    """A fit was requested with fewer usable points than the model needs."""


class CsvSchemaError(ValueError):
    """A CSV input does not conform to the documented schema."""
