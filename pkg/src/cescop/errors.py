"""Exception types shared across the package."""


class CescopError(Exception):
    """Base class for all package errors."""


class NonIntegrableOscillation(CescopError):
    """Adaptive quadrature failed to converge within the panel budget."""


class SpecInvalid(CescopError):
    """A space descriptor violates its weight-class precondition."""


class DegenerateOperator(CescopError):
    """A weight transform is identically zero or infinite on the window."""


class DivergentRepresentation(CescopError):
    """The representation integral of a fundamental function diverges."""


class ZeroMass(CescopError):
    """Dyadic cover requested for a function with zero total integral."""


class NoWitness(CescopError):
    """No almost-geometric witness could be found for a sequence."""


class EmptyFamily(CescopError):
    """Brute-force search invoked with no usable candidates."""


class UnsupportedRegime(CescopError):
    """No closed-form characterization covers the given exponents."""


class ConfigError(CescopError):
    """CLI configuration failed schema validation."""
