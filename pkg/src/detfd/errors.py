"""Exception types shared by the codecs and the verification harness."""


class DetFdError(Exception):
    """Base class for protocol-level errors raised by this package."""


class ModelViolationError(DetFdError):
    """An observation is inconsistent with the channel model or the codebook."""


class AmbiguityError(DetFdError):
    """The received frame admits more than one valid decode; refusing to guess."""
