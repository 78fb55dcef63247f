"""Error hierarchy.  Every domain error carries a stable ``code`` for JSON output."""


class QuiverError(Exception):
    code = "QuiverError"

    def __init__(self, message: str = "", **detail):
        super().__init__(message or self.code)
        self.detail = detail

    def to_json(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        out.update({k: v for k, v in self.detail.items() if _jsonable(v)})
        return out


def _jsonable(v) -> bool:
    return isinstance(v, (str, int, float, bool, list, dict, type(None)))


def _make(name: str, doc: str):
    cls = type(name, (QuiverError,), {"code": name, "__doc__": doc})
    return cls


DuplicatePair = _make("DuplicatePair", "Two arrow records for the same unordered pair.")
DuplicateVertex = _make("DuplicateVertex", "A vertex name occurs twice.")
NonPositiveWeight = _make("NonPositiveWeight", "Arrow weight is not a positive integer.")
FrozenFrozenArrow = _make("FrozenFrozenArrow", "Arrow between two frozen vertices.")
SelfArrow = _make("SelfArrow", "Arrow from a vertex to itself.")
UnknownVertex = _make("UnknownVertex", "Vertex name not present in the quiver.")
NotMutable = _make("NotMutable", "Operation needs a mutable vertex.")
NotFrozen = _make("NotFrozen", "Operation needs a frozen vertex.")
HasFrozen = _make("HasFrozen", "Operation needs a quiver without frozen vertices.")
NoFrozen = _make("NoFrozen", "Operation needs at least one frozen vertex.")
TooManyFrozen = _make("TooManyFrozen", "Forks are defined with at most one frozen vertex.")
BadVertexSet = _make("BadVertexSet", "Vertex set of the wrong size or with repeats.")
WrongRank = _make("WrongRank", "Operation is defined only at a specific rank.")
OutOfRange = _make("OutOfRange", "Index beyond the end of the word.")
EmptyPeriod = _make("EmptyPeriod", "Eventually periodic word with empty period.")
NotAFork = _make("NotAFork", "Quiver is not a fork.")
GenerationExhausted = _make("GenerationExhausted", "Generator ran out of retries.")
UnknownProperty = _make("UnknownProperty", "No property registered under this id.")
BadFormat = _make("BadFormat", "Malformed quiver or word input.")


class BudgetExhausted(QuiverError):
    """A search hit its node budget.  ``partial`` holds whatever was computed."""

    code = "BudgetExhausted"

    def __init__(self, message: str = "", partial=None, **detail):
        super().__init__(message, **detail)
        self.partial = partial
