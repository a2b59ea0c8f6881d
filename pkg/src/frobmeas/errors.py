"""Exception hierarchy shared by every layer of the engine."""


class EngineError(Exception):
    """Base class for all errors raised by frobmeas."""


# scalar layer
class FieldError(EngineError):
    pass


class DivisionByZero(FieldError, ZeroDivisionError):
    pass


class ContextMismatch(FieldError):
    pass


class FieldMismatch(ContextMismatch):
    pass


class EmbedUndefined(FieldError):
    pass


# omega / frobenius layer
class UnknownOp(EngineError, KeyError):
    pass


class DimensionMismatch(EngineError, ValueError):
    pass


class SignatureMismatch(EngineError):
    pass


class NotAGroup(EngineError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class FrobeniusAxiomError(EngineError):
    def __init__(self, violations):
        self.violations = list(violations)
        head = ", ".join(str(v) for v in self.violations[:3])
        super().__init__(f"Frobenius axioms fail: {head}")


class NotAFrobeniusMorphism(EngineError):
    pass


# Groebner layer
class CapExceeded(EngineError):
    """Requested truncation degree is above the hard cap."""


class ResourceLimit(EngineError):
    """Relation store or enumeration grew past its configured limit."""


class DegreeOverflow(EngineError):
    pass


class NotFinite(EngineError):
    """Operation needs a finite-dimensional quotient."""


class InfiniteQuotient(NotFinite):
    pass


class InfiniteCodomain(NotFinite):
    pass


# comeasuring layer
class RelationNotKilled(EngineError):
    def __init__(self, message, relations=()):
        super().__init__(message)
        self.relations = list(relations)


class BudgetExceeded(ResourceLimit):
    pass


# cli
class SpecParseError(EngineError):
    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


class UnknownCommand(EngineError):
    pass
