"""Exception hierarchy for the recognition pipeline."""


class NumSignError(Exception):
    """Base class for every error raised by numsign."""


class DecodeError(NumSignError):
    pass


class MalformedHeader(DecodeError):
    pass


class UnsupportedBitDepth(DecodeError):
    pass


class TruncatedPixelData(DecodeError):
    pass


class ImageTooSmall(NumSignError):
    pass


class EmptyRegion(NumSignError):
    pass


class PalmError(NumSignError):
    """Palm detection failed; the frame cannot be modelled."""


class NoHand(PalmError):
    pass


class DegeneratePalm(PalmError):
    pass


class ShapeOutOfFrame(NumSignError):
    pass


class ConfigError(NumSignError):
    pass


class VocabularyError(NumSignError):
    pass


class ManifestParseError(NumSignError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
