"""Exception hierarchy shared by every module.

All domain errors derive from :class:`ArborealError`, which is a ``ValueError``
so callers that only care about bad input can catch the builtin.  The command
line maps these to exit code 2 and reports ``reason`` (the class name).
"""


class ArborealError(ValueError):
    @property
    def reason(self) -> str:
        return type(self).__name__

    def record(self) -> dict:
        return {"error": self.reason, "reason": self.reason, "message": str(self)}


class OutOfRange(ArborealError):
    pass


class ShapeMismatch(ArborealError):
    pass


class NotTreeRespecting(ArborealError):
    pass


class TooLarge(ArborealError):
    pass


class NotPCF(ArborealError):
    pass


class IrrationalCritical(ArborealError):
    pass


class UncoveredCase(ArborealError):
    """Raised by the overgroup classifier for parameter ranges it does not cover.

    ``flags`` carries the machine-readable notes and ``candidate`` the
    parameters a consistent reading would give, if any.
    """

    def __init__(self, message, flags=(), candidate=None):
        super().__init__(message)
        self.flags = list(flags)
        self.candidate = candidate

    def record(self) -> dict:
        rec = super().record()
        rec["flags"] = self.flags
        if self.candidate is not None:
            rec["candidate"] = self.candidate
        return rec


class DegreeOverflow(ArborealError):
    pass


class OddParity(ArborealError):
    pass


class AllPositive(ArborealError):
    pass


class NoWitness(ArborealError):
    pass
