"""Exception hierarchy. Every error carries a short machine-readable code."""


class CarterError(Exception):
    code = "error"


class NotPrime(CarterError, ValueError):
    code = "not_prime"


class FieldTooLarge(CarterError, ValueError):
    code = "field_too_large"


class DivisionByZero(CarterError, ZeroDivisionError):
    code = "division_by_zero"


class MixedFields(CarterError, ValueError):
    code = "mixed_fields"


class InvalidPermutation(CarterError, ValueError):
    code = "invalid_permutation"


class NotASubgroup(CarterError, ValueError):
    code = "not_a_subgroup"


class NotSolvable(CarterError, ValueError):
    code = "not_solvable"


class ElementNotInGroup(CarterError, ValueError):
    code = "element_not_in_group"


class TooLarge(CarterError, ValueError):
    code = "too_large"


class NotNormal(CarterError, ValueError):
    code = "not_normal"


class IndexTooLarge(CarterError, ValueError):
    code = "index_too_large"


class PreconditionViolated(CarterError, ValueError):
    code = "precondition_violated"


class BadParameters(CarterError, ValueError):
    code = "bad_parameters"


class NotStabilized(CarterError, ValueError):
    code = "not_stabilized"


class BadLabel(CarterError, ValueError):
    code = "bad_label"


class ZeroParameter(CarterError, ValueError):
    code = "zero_parameter"


class NotATorusElement(CarterError, ValueError):
    code = "not_a_torus_element"


class ESyl2Fails(CarterError, ValueError):
    code = "esyl2_fails"


class UnrecognizedFactor(CarterError, ValueError):
    code = "unrecognized_factor"


class AmbiguousDescriptor(CarterError, ValueError):
    code = "ambiguous_descriptor"


class OutOfRange(CarterError, ValueError):
    code = "out_of_range"


class ParseError(CarterError, ValueError):
    code = "parse_error"

    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownCommand(CarterError, ValueError):
    code = "unknown_command"
