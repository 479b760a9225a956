"""Exception types shared across the package."""


class CapExceeded(RuntimeError):
    """A configured resource cap (rays, candidate tuples, points) was hit."""


class NotPointed(ValueError):
    """The inequality system does not define a pointed cone."""


class NotFullDimensional(ValueError):
    """The cone has empty interior."""
