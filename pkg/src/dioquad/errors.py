"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class DegenerateError(ValueError):
    """Input is well formed but mathematically degenerate."""


class SingularCurveError(DegenerateError):
    pass


class DegenerateParameters(DegenerateError):
    """A family parameter choice makes a named factor vanish."""

    def __init__(self, family, factor, params=None):
        self.family = family
        self.factor = factor
        self.params = dict(params or {})
        shown = ", ".join(f"{k}={v}" for k, v in self.params.items())
        super().__init__(f"{family}: degenerate parameters ({shown}): {factor} = 0")


class NotOnCurveError(ValueError):
    pass


class NotDiophantineError(ValueError):
    pass


class ParseError(ValueError):
    """Malformed textual input; carries 1-based line and column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
