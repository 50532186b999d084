"""Exception hierarchy. Every error carries a machine-readable ``code``."""


class PreorderError(ValueError):
    code = "invalid-input"


class DimensionMismatch(PreorderError):
    code = "dimension-mismatch"


class GroupMismatch(PreorderError):
    code = "group-mismatch"


class FieldMismatch(PreorderError):
    code = "field-mismatch"


class NotUnimodular(PreorderError):
    code = "not-unimodular"


class PreconditionFailed(PreorderError):
    code = "precondition-failed"


class CapExceeded(PreorderError):
    code = "cap-exceeded"
