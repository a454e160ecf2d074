# -*- coding: utf-8 -*-
from __future__ import unicode_literals


class OptimalDiffusionError(Exception):
    pass


class InputError(OptimalDiffusionError, ValueError):
    """Bad parameters, intervals, supports, grids or input files."""


class NumericalError(OptimalDiffusionError, ArithmeticError):
    """A numerical kernel could not deliver the requested accuracy."""


class VerificationError(OptimalDiffusionError, AssertionError):
    pass


# input errors

class InvalidInterval(InputError):
    pass


class SeriesDivergence(InputError):
    pass


class PoleAtC(InputError):
    pass


class NonPositiveValues(InputError):
    pass


class OutOfSupport(InputError):
    pass


class MomentDivergence(InputError):
    pass


class SupportMismatch(InputError):
    pass


class BadWeights(InputError):
    pass


class ParamOutOfRange(InputError):
    pass


class DegenerateDistribution(InputError):
    pass


class GridTooCoarse(InputError):
    pass


class ZeroDenominator(InputError):
    pass


class BeyondDiscreteSpectrum(InputError):
    pass


class ConfigurationError(InputError):
    pass


class SpecFileError(InputError):
    pass


# numerical errors

class NumericalFailure(NumericalError):
    pass


class NonConvergence(NumericalFailure):
    pass


class ConvergenceFailure(NumericalFailure):
    pass


class NotNormalized(NumericalError):
    pass


class UnstableStep(NumericalError):
    pass


class BoundaryViolation(NumericalError):
    pass


class NonFiniteState(NumericalError):
    pass


class InsufficientDecay(NumericalError):
    pass


# verification errors

class RowMismatch(VerificationError):

    def __init__(self, name, deviations):
        self.name = name
        self.deviations = deviations
        super(RowMismatch, self).__init__(
            "Row '%s' does not match the optimal process: %s" % (
                name,
                ', '.join('%s=%.3g' % (k, v) for k, v in sorted(deviations.items()))
            )
        )
