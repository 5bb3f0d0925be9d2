"""Exception types raised across the package.

Validation-style errors (bad inputs, bad config) derive from
``ValidationError`` so the CLI can map them to exit code 2; everything
else derives from ``VsrError`` and maps to exit code 1.
"""


class VsrError(Exception):
    pass


class ValidationError(VsrError):
    pass


# raster
class UnknownMagic(ValidationError):
    pass


class TruncatedPayload(ValidationError):
    pass


class ZeroDimension(ValidationError):
    pass


class EmptyComponent(ValidationError):
    pass


class LayoutMismatch(ValidationError):
    pass


# geometry
class EmptyPointSet(ValidationError):
    pass


# graph
class NoComponents(ValidationError):
    pass


# autodiff
class ShapeMismatch(ValidationError):
    pass


class ZeroNormHead(VsrError):
    pass


class LabelOutOfRange(ValidationError):
    pass


class MissingGradient(VsrError):
    pass


# germ
class DimsMismatch(ValidationError):
    pass


class EmptyDataset(ValidationError):
    pass


class UnlabeledEdge(ValidationError):
    pass


# cmm
class EmptyCluster(ValidationError):
    pass


class UntrainedModel(VsrError):
    pass


class UnsupportedDims(ValidationError):
    pass


class EmptyGtForeground(ValidationError):
    pass


# metrics
class EmptyMask(ValidationError):
    pass


class TooSmall(ValidationError):
    pass


class NoValidPath(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


# synth
class MaskTooSmall(ValidationError):
    pass


class DegenerateConfig(ValidationError):
    pass


# cli
class UnknownSubcommand(ValidationError):
    pass


class ConfigError(ValidationError):
    pass
