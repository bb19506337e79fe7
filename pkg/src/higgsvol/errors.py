"""Exception hierarchy shared by all modules.

Every computational failure raises a subclass of ComputationError so the CLI
can map it to exit code 1 and report the error name.
"""


class ComputationError(Exception):
    """Base class for all expected computational failures."""


class ZeroDenominator(ComputationError):
    """A rational expression was built or specialized with a zero denominator."""


class PoleAtOrigin(ComputationError):
    """Taylor expansion requested at a point where the denominator vanishes."""


class HigherOrderPole(ComputationError):
    """residue_chain met a pole of multiplicity >= 2; the simple-pole formula
    does not apply and we refuse to guess."""


class NonzeroConstantTerm(ComputationError):
    """Plethystic Exp requires a series with vanishing constant term."""


class ConstantTermNotOne(ComputationError):
    """Plethystic Log requires a series with constant term 1."""


class NotLaurentInZ(ComputationError):
    """A series coefficient that must be a Laurent polynomial in z still has a
    z-dependent denominator after reduction."""


class InvalidNumerator(ComputationError):
    """Zeta numerator coefficients violate the degree or functional-equation
    symmetry constraints."""


class SingularCurve(ComputationError):
    """The Weierstrass discriminant vanishes."""


class FieldTooLarge(ComputationError):
    """Point counting refused: q exceeds the brute-force bound."""


class LimitExceeded(ComputationError):
    """The symmetrized-kernel variable limit was exceeded."""


class StabilizationFailure(ComputationError):
    """Results for shift parameters e and e+1 disagree."""


class DenominatorVanishes(ComputationError):
    """Evaluation at a concrete curve killed a denominator."""


class PrecisionExhausted(ComputationError):
    """Numeric Weil-number evaluation did not stabilize under doubled
    precision."""
