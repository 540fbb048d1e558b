"""Exception and warning types shared by all skeinlab modules."""


class SkeinError(Exception):
    """Base class for all skeinlab errors."""


class DivisionByZero(SkeinError):
    """Inversion of the zero scalar."""


class FieldMismatch(SkeinError):
    """Arithmetic between scalars of different fields."""


class BackendMismatch(SkeinError):
    """Operation mixing objects of different category backends."""


class UnsupportedForBackend(SkeinError):
    """Operation not available for the loaded backend."""


class SchemaError(SkeinError):
    """Category or morphism file does not match the expected JSON schema."""


class AxiomError(SkeinError):
    """Category data failed an axiom check on load.

    The first failing axiom name is stored in ``axiom``.
    """

    def __init__(self, axiom, detail=""):
        self.axiom = axiom
        self.detail = detail
        msg = axiom if not detail else f"{axiom}: {detail}"
        super().__init__(msg)


class InvertibilityCheckFailed(SkeinError):
    """The computed distinguished object failed its invertibility check."""


class DiagramSyntaxError(SkeinError):
    """Ribbon DSL parse error, with source position."""

    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class TypeMismatch(SkeinError):
    """Ribbon DSL slot bookkeeping failure, naming the offending layer."""

    def __init__(self, message, layer=None):
        self.layer = layer
        if layer is not None:
            message = f"layer {layer}: {message}"
        super().__init__(message)


class UnknownCoupon(SkeinError):
    """Diagram references a coupon name with no supplied morphism."""


class SlotError(SkeinError):
    """Invalid sewing slots passed to glue."""


class DimensionCapExceeded(SkeinError):
    """An intermediate tensor product exceeded SKEINLAB_MAX_DIM."""


class NonProjectiveLabel(UserWarning):
    """Ball skein requested with a label not flagged projective."""
