"""Exception hierarchy shared by every decision procedure."""


class DataWordsError(Exception):
    """Base class for all library errors."""


class AlphabetError(DataWordsError):
    """Unknown or duplicate symbol, or two alphabets that should agree do not."""


class AutomatonError(DataWordsError):
    """Malformed transition system or automaton."""


class FormulaError(DataWordsError):
    """Bad Presburger atom or missing variable assignment."""


class ConstraintError(DataWordsError):
    """Malformed data constraint."""


class FragmentError(DataWordsError):
    """Formula outside the fragment an operation accepts."""


class LtlSyntaxError(DataWordsError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class WitnessError(DataWordsError):
    """Witness recipe inconsistent with its own counts or words."""


class PreconditionError(DataWordsError):
    """Input violates an operation's documented precondition."""


class SchemaError(DataWordsError):
    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer or "/"
        self.reason = message


class SearchBudgetExceeded(DataWordsError):
    """Partition search gave up after the configured number of attempts."""


class SolverError(DataWordsError):
    """The LP backend stopped without a solution or a proof of infeasibility."""
