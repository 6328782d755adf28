"""Exception hierarchy for the engine.

Every raisable condition named in the operation contracts has its own class so
callers (and the CLI) can map failures to exit codes and report entries without
string matching.
"""


class GeometryError(Exception):
    """Base class for all engine errors."""


# numeric core
class DomainError(GeometryError):
    """sqrt/log/fractional power of a non-positive (or non-real) argument."""


class DivisionByZero(GeometryError):
    """Division by a jet whose value is below the hard zero threshold."""


class SingularMatrix(GeometryError):
    """A small linear solve hit a pivot below threshold."""


# expression language
class ExprError(GeometryError):
    pass


class ExprSyntaxError(ExprError):
    def __init__(self, message, line, column, expected=()):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
        self.expected = tuple(expected)


class UnknownFunction(ExprError):
    pass


class UnboundVariable(ExprError):
    pass


# tensor engine
class SingularMetric(GeometryError):
    """|det g| at or below 1e-10; curvature is refused, never regularized."""


class UnsupportedSignature(GeometryError):
    pass


class TargetOutsideChart(GeometryError):
    pass


# structures
class NotParacomplex(GeometryError):
    pass


class NotIsometric(GeometryError):
    pass


# line space
class PoleOfChart(GeometryError):
    pass


class OutsideHemisphere(GeometryError):
    pass


class DegenerateLine(GeometryError):
    pass


class HorizontalLine(GeometryError):
    pass


# geodesic spaces of space forms
class ChartDegeneracy(GeometryError):
    pass


class NormalizationImpossible(GeometryError):
    pass


class FrameDegeneracy(GeometryError):
    pass


# plane fields
class IndefinitePlane(GeometryError):
    pass


class DegenerateSpan(GeometryError):
    pass


# PDE residual systems
class CoincidentPlanes(GeometryError):
    pass


class DegenerateStructure(GeometryError):
    pass


class PolarDegeneracy(GeometryError):
    pass


# topology / quadrature
class GridTooCoarse(GeometryError):
    pass


# orchestration
class UnknownSuite(GeometryError):
    pass


class ConfigError(GeometryError):
    pass
