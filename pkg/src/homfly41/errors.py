"""Exception hierarchy shared by every module.

Each class carries a short ``code`` string so that sweep rows can record
failures in a machine-readable way.
"""


class Homfly41Error(Exception):
    code = "error"


class InvalidArgument(Homfly41Error, ValueError):
    code = "invalid-argument"


class OutsideDomain(Homfly41Error, ValueError):
    code = "outside-domain"


class OutsideRange(Homfly41Error, ValueError):
    code = "outside-range"


class OnBranchCut(Homfly41Error, ValueError):
    code = "on-branch-cut"


class DegenerateDegree(Homfly41Error, ValueError):
    code = "degenerate-degree"


class DegenerateT(Homfly41Error, ValueError):
    code = "degenerate-T"


class SingularRatio(Homfly41Error, ZeroDivisionError):
    code = "singular-ratio"


class SingularArgument(Homfly41Error, ZeroDivisionError):
    code = "singular-argument"


class SingularPrefactor(Homfly41Error, ZeroDivisionError):
    code = "singular-prefactor"


class UndefinedDomain(Homfly41Error, ValueError):
    code = "undefined-domain"


class AmbiguousRoot(Homfly41Error, ArithmeticError):
    code = "ambiguous-root"


class UnstableDifferentiation(Homfly41Error, ArithmeticError):
    code = "unstable-differentiation"


class SingularSample(Homfly41Error, ArithmeticError):
    code = "singular-sample"

    def __init__(self, location):
        super().__init__(f"non-finite integrand value at {location!r}")
        self.location = location


class NoConvergence(Homfly41Error, ArithmeticError):
    code = "no-convergence"

    def __init__(self, estimate, error, message="quadrature tolerance not met"):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error
