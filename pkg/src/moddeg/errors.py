"""Exception hierarchy shared by all moddeg modules."""


class ModdegError(Exception):
    """Base class for every error raised by this package."""


# field tower construction / arithmetic

class NotMonic(ModdegError, ValueError):
    pass


class NotIrreducible(ModdegError, ValueError):
    pass


class UnsupportedDegree(ModdegError, ValueError):
    pass


class AutomorphismInvalid(ModdegError, ValueError):
    pass


class NotSeparable(ModdegError, ValueError):
    pass


class IdempotentCheckFailed(ModdegError, RuntimeError):
    """The separability idempotent failed one of its defining checks.

    This signals an implementation bug, not bad input.
    """


class TowerMismatch(ModdegError, TypeError):
    pass


class DivisionByZero(ModdegError, ZeroDivisionError):
    pass


class IndexOutOfRange(ModdegError, IndexError):
    pass


# linear algebra

class ShapeMismatch(ModdegError, ValueError):
    pass


# algebras

class NotAssociative(ModdegError, ValueError):
    pass


class UnitLawFails(ModdegError, ValueError):
    pass


class CyclicQuiver(ModdegError, ValueError):
    pass


class UnsupportedVarCount(ModdegError, ValueError):
    pass


class FieldMismatch(ModdegError, TypeError):
    pass


class NotExtensionAlgebra(ModdegError, TypeError):
    pass


# modules

class RelationViolated(ModdegError, ValueError):
    pass


class UnitNotIdentity(ModdegError, ValueError):
    pass


class AlgebraMismatch(ModdegError, TypeError):
    pass


class MorphismUnverified(ModdegError, ValueError):
    pass


class WrongCharacteristic(ModdegError, ValueError):
    pass


class NotMorphism(ModdegError, ValueError):
    pass


# orders / searches

class DimMismatch(ModdegError, ValueError):
    pass


class BudgetExceeded(ModdegError, RuntimeError):
    pass


class NotNormal(ModdegError, ValueError):
    pass


class AssemblyNotInvertible(ModdegError, RuntimeError):
    """The Galois decomposition block map failed to invert (bug signal)."""


# documents / cli

class DocumentError(ModdegError, ValueError):
    pass


class CorpusMissing(ModdegError, FileNotFoundError):
    pass
