class GradargError(Exception):
    """Raised when an operation cannot be carried out on its inputs."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class SchemaError(GradargError):
    """Input does not match the expected shape (bad file, undeclared atom, unknown individual)."""


class UsageError(GradargError):
    """An operation was called with arguments outside its contract."""


class UnsupportedShapeError(GradargError):
    """The graph has a feature the requested semantics does not cover."""


class CyclicGraphError(GradargError):
    """Raised by acyclic-only evaluation when the dependency graph has a cycle."""

    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__(f"dependency cycle: {' -> '.join([*cycle, cycle[0]])}")
