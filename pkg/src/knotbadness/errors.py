"""Exception hierarchy shared by every module of the toolkit."""


class KnotError(Exception):
    """Base class; ``code`` is the machine-readable name used by the CLI."""

    code = "KnotError"

    def to_json(self):
        return {"error": self.code, "message": str(self)}


class MalformedCode(KnotError):
    code = "MalformedCode"


class Disconnected(KnotError):
    code = "Disconnected"


class NonPlanarEmbedding(KnotError):
    code = "NonPlanarEmbedding"


class NotAKnot(KnotError):
    code = "NotAKnot"

    def __init__(self, message, components=None):
        super().__init__(message)
        self.components = components

    def to_json(self):
        out = super().to_json()
        if self.components is not None:
            out["components"] = self.components
        return out


class AmbiguousMarking(KnotError):
    code = "AmbiguousMarking"


class NoBadEdge(KnotError):
    code = "NoBadEdge"


class InvalidTable(KnotError):
    code = "InvalidTable"


class EnumerationBudgetExceeded(KnotError):
    code = "EnumerationBudgetExceeded"

    def __init__(self, state_count, budget):
        super().__init__(f"{state_count} Kauffman states exceed the budget of {budget}")
        self.state_count = state_count
        self.budget = budget

    def to_json(self):
        out = super().to_json()
        out.update(stateCount=self.state_count, budget=self.budget)
        return out


class NormalizationBug(KnotError):
    code = "NormalizationBug"
