"""Exception hierarchy.

Every error carries a short ``kind`` slug (used by the CLI in its
``ERR <code> <kind>:`` line) and, where the failure has one, a ``witness``.
"""


class SepcompError(Exception):
    kind = "error"
    exit_code = 4

    def __init__(self, message="", witness=None):
        super().__init__(message)
        self.witness = witness


# group-core

class GroupError(SepcompError, ValueError):
    kind = "group"


class InvalidOrder(GroupError):
    kind = "invalid-order"


class NotAssociative(GroupError):
    kind = "not-associative"


class NoIdentity(GroupError):
    kind = "no-identity"


class NoInverse(GroupError):
    kind = "no-inverse"


class NotAHomomorphism(GroupError):
    kind = "not-a-homomorphism"


class DomainMismatch(GroupError):
    kind = "domain-mismatch"


class NotInvertible(GroupError):
    kind = "not-invertible"


# function-group

class InvalidDomain(SepcompError, ValueError):
    kind = "invalid-domain"


class TooLarge(SepcompError):
    kind = "too-large"


class SearchBoundExceeded(SepcompError):
    kind = "search-bound-exceeded"


# hom-analysis

class HypothesisFailed(SepcompError):
    """A precondition of a representation theorem does not hold."""

    kind = "hypothesis-failed"
    exit_code = 2

    def __init__(self, predicate, message="", witness=None):
        super().__init__(message or f"hypothesis '{predicate}' fails", witness)
        self.predicate = predicate


class InconsistentImages(SepcompError, ValueError):
    kind = "inconsistent-images"


class NotInTarget(SepcompError, ValueError):
    kind = "not-in-target"


class NullHomomorphism(HypothesisFailed):
    kind = "null-homomorphism"

    def __init__(self, message="", witness=None):
        super().__init__("non_null", message or "homomorphism is null", witness)


class NotWeaklySeparating(HypothesisFailed):
    kind = "not-weakly-separating"

    def __init__(self, message="", witness=None):
        super().__init__("weakly_separating", message, witness)


class NotBiseparating(HypothesisFailed):
    kind = "not-biseparating"

    def __init__(self, message="", witness=None):
        super().__init__("biseparating", message, witness)


class NotBijective(HypothesisFailed):
    kind = "not-bijective"

    def __init__(self, message="", witness=None):
        super().__init__("bijective", message, witness)


class NonSingletonSupport(HypothesisFailed):
    kind = "non-singleton-support"

    def __init__(self, y, report, message=""):
        super().__init__(
            "singleton_support",
            message or f"point {y} has no singleton minimum support",
            witness=(y, report),
        )
        self.y = y
        self.report = report


class NotWellDefined(HypothesisFailed):
    kind = "not-well-defined"

    def __init__(self, message="", witness=None):
        super().__init__("well_defined_weight", message, witness)


class RepresentationMismatch(SepcompError):
    """A verified representation disagrees with the homomorphism it came from."""

    kind = "representation-mismatch"


# code-equiv

class NotPrime(SepcompError, ValueError):
    kind = "not-prime"


class RankDeficient(SepcompError, ValueError):
    kind = "rank-deficient"


class NotIsometry(HypothesisFailed):
    kind = "not-isometry"

    def __init__(self, message="", witness=None):
        super().__init__("hamming_isometry", message, witness)


# io-cli

class ParseError(SepcompError, ValueError):
    kind = "parse-error"

    def __init__(self, message, path="<input>", line=0, column=0):
        super().__init__(f"{path}:{line}:{column}: {message}")
        self.path = path
        self.line = line
        self.column = column


class DanglingReference(SepcompError, KeyError):
    kind = "dangling-reference"

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class DuplicateName(SepcompError, ValueError):
    kind = "duplicate-name"
