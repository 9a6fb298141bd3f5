"""Shared exception types. The CLI maps these to exit code 2."""


class GapVirError(Exception):
    pass


class ScalarParseError(GapVirError):
    pass


class NotRealError(GapVirError):
    pass


class ConfigError(GapVirError):
    pass


class UnsupportedInvolutionError(GapVirError):
    pass


class GramIntegrityError(GapVirError):
    pass
