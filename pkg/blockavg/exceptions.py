# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause


class BlockAverageError(Exception):
    pass


class DomainError(BlockAverageError, ValueError):
    """An argument lies outside the admissible domain of the operation"""

    pass


class UndefinedPointError(DomainError):
    """The requested point is not covered by any limit statement"""

    pass


class PreconditionError(BlockAverageError, ValueError):
    pass


class UnsupportedModeError(BlockAverageError):
    pass


class ConfigurationError(BlockAverageError):
    pass


class UnknownSuiteError(ConfigurationError):
    pass


class ResourceCapError(BlockAverageError):
    """A configured memory or time budget would be exceeded"""

    pass


class InvariantError(BlockAverageError):
    """A running simulation left its state space"""

    pass
