"""Exception types shared across the package.

The CLI maps each of these to a distinct exit code.
"""


class ValidationError(ValueError):
    """Bad arguments. ``code`` is a short machine-readable tag."""

    def __init__(self, message, code="invalid-argument"):
        super().__init__(message)
        self.code = code


class BudgetExceeded(RuntimeError):
    """An enumeration would touch more elements than the configured budget."""

    def __init__(self, required, budget):
        super().__init__(f"enumeration needs {required} elements, budget is {budget}")
        self.required = required
        self.budget = budget


class NotClosed(ValueError):
    """Reduction was asked to run on a form whose differential is nonzero."""
