"""Exception hierarchy shared by all modules.

DomainError covers physics/numerics violations (CLI exit code 1);
ConfigError covers usage and configuration problems (CLI exit code 2).
"""


class DomainError(ValueError):
    """A parameter or result is outside its physical domain."""


class EmptyBinError(DomainError):
    """A coincidence bin holds no counts; statistics are undefined."""


class DropDetectedError(DomainError):
    """A correlation drop was detected, so no speed bound can be quoted."""


class ConfigError(Exception):
    """Bad configuration file, argument combination, or file layout."""


class UnitError(ConfigError):
    """A unit-suffixed value could not be parsed."""
