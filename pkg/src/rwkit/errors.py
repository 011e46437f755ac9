class RwkitError(Exception):
    """Base class for every error raised by rwkit."""


class InputError(RwkitError, ValueError):
    """A caller passed an argument outside an operation's precondition."""


class ResourceError(RwkitError):
    """A configured size or enumeration guard was exceeded."""


class ParseError(RwkitError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column
