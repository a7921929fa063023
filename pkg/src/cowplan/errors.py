"""Exception hierarchy shared across the package."""

from __future__ import annotations


class CowplanError(Exception):
    """Base class for all package errors."""


class PddlParseError(CowplanError):
    """Syntax or validation error in PDDL text, with source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, col {column}: {message}" if line else message)


class ModelError(CowplanError):
    """A domain/problem/patch value violates a structural invariant."""


class PreconditionViolation(CowplanError):
    """apply() was called with an action whose precondition does not hold."""


class SearchBudgetExceeded(CowplanError):
    """The planner ran out of node expansions before deciding solvability."""


class DepthLimitExceeded(CowplanError):
    """Breadth-first search hit its depth limit with states still open."""


class OracleError(CowplanError):
    """Base class for oracle backend failures."""


class ScriptedKbMiss(OracleError):
    """Prompt not found in the scripted knowledge base (refuse policy)."""


class UnparseableAnswer(OracleError):
    """Backend answer was neither yes/no nor a listed object."""


class BackendRequestError(OracleError):
    """The remote completion request failed after all retries."""


class UnmappableSituation(CowplanError):
    """No situation fact unifies with the infeasible action's arguments."""


class SelectionError(CowplanError):
    """Plan selection returned an object that matches no candidate plan."""


class PatchBudgetExceeded(CowplanError):
    """The controller hit its per-trial knowledge-patch cap."""


class ExecutionFailure(CowplanError):
    """A plan step was not applicable in the simulated world."""


class ConfigError(CowplanError):
    """Invalid configuration, manifest, or data file."""


class MissingLabelError(CowplanError):
    """Adjudication found no ground-truth entry for a resolution key."""

    def __init__(self, task: str, category: str, resolution: str):
        self.key = (task, category, resolution)
        super().__init__(
            f"no ground-truth label for task={task!r} category={category!r} "
            f"resolution={resolution!r}"
        )
