"""Exception types shared across the package."""


class WeberhexError(ValueError):
    """Base class for domain errors raised by this package."""


class DuplicateElements(WeberhexError):
    pass


class NotLinear(WeberhexError):
    pass


class WrongKind(WeberhexError):
    pass


class NotInHexad(WeberhexError):
    pass


class DegenerateForm(WeberhexError):
    pass


class ZeroLambda(WeberhexError):
    pass


class NotDegenerate(WeberhexError):
    pass


class NoRationalSquareRoots(WeberhexError):
    pass


class NotUnique(WeberhexError):
    pass


class DegeneratePentagon(WeberhexError):
    pass


class NotTangent(WeberhexError):
    pass
