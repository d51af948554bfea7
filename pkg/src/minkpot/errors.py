"""Exception types shared across the package."""


class MinkpotError(Exception):
    pass


class DivisionByZero(MinkpotError, ZeroDivisionError):
    pass


class DomainError(MinkpotError, ValueError):
    pass


class OutOfDomain(MinkpotError, ValueError):
    pass


class UnknownClass(MinkpotError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown class"


class EmptyClass(MinkpotError):
    pass


class ParamConstraint(MinkpotError, ValueError):
    pass


class ArityMismatch(MinkpotError, ValueError):
    pass


class SlotRelationViolation(MinkpotError, ValueError):
    pass


class InsufficientPoints(MinkpotError, ValueError):
    pass


class DomainTooThin(MinkpotError, RuntimeError):
    pass


class NotMarkedEmpty(MinkpotError, ValueError):
    pass
