"""Exception types shared across the package."""


class FpszError(Exception):
    """Base class for all library errors."""


class EnumerationCapExceeded(FpszError):
    """A word enumeration would produce more words than the configured cap."""

    def __init__(self, requested: int, cap: int):
        super().__init__(f"enumeration of {requested} words exceeds cap {cap}")
        self.requested = requested
        self.cap = cap


class OrderUnsupported(FpszError):
    """A moment of higher order than the law supports was requested."""

    def __init__(self, law_name: str, order: int, max_order: int | None = None):
        msg = f"law {law_name!r} does not support moment order {order}"
        if max_order is not None:
            msg += f" (table ends at order {max_order})"
        super().__init__(msg)
        self.law_name = law_name
        self.order = order


class InvalidMoments(FpszError):
    """An explicit moment table failed validation (normalization or PSD)."""


class DegenerateAt(FpszError):
    """Gram-Schmidt hit a nonpositive pivot: an algebraic relation exists.

    `where` is the 1-variable order q or the multivariate word at which the
    pivot degenerated.
    """

    def __init__(self, where, detail: str = ""):
        msg = f"degenerate Gram pivot at {where}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.where = where


class DegenerateLaw(FpszError):
    """A law with finite support where an infinite norm sequence is needed."""


class QuadratureFailure(FpszError):
    """Adaptive quadrature did not stabilize under node doubling."""


class NotClassG(FpszError):
    """A weight failed the Szego integrability test."""


class ConfigError(FpszError):
    """Malformed configuration file or incompatible backend/law combination."""
