"""Exception hierarchy.

The CLI maps the three families to exit codes: contract/parse problems (2),
numerical failures (3), certification failures (4).
"""


class ProjMonoError(Exception):
    pass


class ContractError(ProjMonoError, ValueError):
    """Caller violated a precondition."""


class ParseError(ContractError):
    def __init__(self, message, line=1, column=1, text=None):
        self.line = line
        self.column = column
        self.text = text
        super().__init__(f"line {line}, column {column}: {message}")


class DimensionMismatch(ContractError):
    pass


class CenterOnX(ContractError):
    pass


class PointNotOnX(ContractError):
    pass


class NotTransitive(ContractError):
    pass


class NotTangent(ContractError):
    pass


class PointNotOnLines(ContractError):
    pass


class NumericalFailure(ProjMonoError):
    def __init__(self, message, **diagnostics):
        self.diagnostics = diagnostics
        super().__init__(message)


class NonConvergence(NumericalFailure):
    pass


class PathTrackingFailure(NumericalFailure):
    pass


class AmbiguousMatching(NumericalFailure):
    pass


class OverlappingBranchPoints(NumericalFailure):
    pass


class DegenerateSection(NumericalFailure):
    pass


class DiscriminantIdenticallyZero(NumericalFailure):
    pass


class DegenerateChart(NumericalFailure):
    pass


class IdenticallyZeroDeterminant(NumericalFailure):
    pass


class CertificationFailure(ProjMonoError):
    def __init__(self, message, **diagnostics):
        self.diagnostics = diagnostics
        super().__init__(message)


class CertificationMismatch(CertificationFailure):
    pass


class ProductNotIdentity(CertificationFailure):
    pass
