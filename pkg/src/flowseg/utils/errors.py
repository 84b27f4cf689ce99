"""
Custom exceptions for flowseg.

Notes
-----
Hierarchy of exceptions:
- FlowsegError (base)
    - ConfigError
    - DataError
        - FlowFormatError
            - BadMagic
            - TruncatedFile
            - NonFinite
            - DimensionOverflow
        - MaskFormatError
            - BadHeader
        - DimensionMismatch
        - EmptySequence
        - InvalidField
        - FileOperationError
    - EstimationError
        - TooFewPairs
        - DegenerateSample
        - NoValidHypothesis
        - TooFewSamples
        - DegenerateHomography
            - NonInvertibleComposition
        - FrameFailed
        - IntervalMismatch

Exit codes follow the command line contract: 1 for usage or
configuration problems, 2 for problems with the data itself.
"""

EXIT_CONFIG = 1
EXIT_DATA = 2


class FlowsegError(Exception):
    """
    Base exception for flowseg.

    Parameters
    ----------
    message : str
        Error message
    exit_code : int, optional
        Exit code to use when this error occurs, by default 1
    """

    def __init__(self, message: str, exit_code: int = EXIT_CONFIG):
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


class ConfigError(FlowsegError):
    """Invalid run configuration or scene script."""

    pass


# Data related errors
class DataError(FlowsegError):
    """Base class for errors caused by input data."""

    def __init__(self, message: str, exit_code: int = EXIT_DATA):
        super().__init__(message, exit_code)


class FlowFormatError(DataError):
    """Malformed flow file."""

    pass


class BadMagic(FlowFormatError):
    """Flow file does not start with the 202021.25 tag."""

    pass


class TruncatedFile(FlowFormatError):
    """File holds fewer bytes than its header promises."""

    pass


class NonFinite(FlowFormatError):
    """NaN or Inf found in field data."""

    pass


class DimensionOverflow(FlowFormatError):
    """Width or height outside (0, 2**15]."""

    pass


class MaskFormatError(DataError):
    """Malformed mask file."""

    pass


class BadHeader(MaskFormatError):
    """Mask file header is not a binary PGM with maxval 255."""

    pass


class DimensionMismatch(DataError):
    """Two grids that must align have different sizes."""

    pass


class EmptySequence(DataError):
    """An aggregate was requested over zero frames."""

    pass


class InvalidField(DataError):
    """A field violates the preconditions of an operation."""

    pass


class FileOperationError(DataError):
    """Errors during file operations."""

    pass


# Estimation related errors
class EstimationError(FlowsegError):
    """Base class for numerical estimation failures."""

    def __init__(self, message: str, exit_code: int = EXIT_DATA):
        super().__init__(message, exit_code)


class TooFewPairs(EstimationError):
    """Fewer than four correspondences for a homography solve."""

    pass


class DegenerateSample(EstimationError):
    """Collinear source points or a rank-deficient linear system."""

    pass


class NoValidHypothesis(EstimationError):
    """Every RANSAC round was degenerate."""

    pass


class TooFewSamples(EstimationError):
    """Fewer than two samples for a vanishing point."""

    pass


class DegenerateHomography(EstimationError):
    """Bottom-right element too close to zero to normalize."""

    pass


class NonInvertibleComposition(DegenerateHomography):
    """A product of homographies cannot be normalized."""

    pass


class FrameFailed(EstimationError):
    """Detection could not produce a background model for a frame."""

    pass


class IntervalMismatch(EstimationError):
    """Flow interval differs from the configured interval."""

    def __init__(self, message: str):
        super().__init__(message, exit_code=EXIT_CONFIG)
