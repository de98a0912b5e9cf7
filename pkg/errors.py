#!/usr/bin/env python3
"""
Error taxonomy for modp-langlands.

Every domain failure is a ValueError subclass carrying the CLI exit code it
maps to. Division by zero stays the builtin ZeroDivisionError.
"""

from __future__ import annotations


class ModpError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class DomainError(ModpError, ValueError):
    """Input outside the domain of an operation (exit code 2)."""

    exit_code = 2


class FieldMismatch(DomainError):
    pass


class InsufficientPrecision(DomainError):
    pass


class NotAUnit(DomainError):
    pass


class InsufficientDigits(DomainError):
    pass


class EmptyWindow(DomainError):
    pass


class WindowMiss(DomainError):
    pass


class ReducibleInduction(DomainError):
    pass


class InconsistentProfile(DomainError):
    pass


class DepthExhausted(DomainError):
    pass


class LevelExhausted(DomainError):
    pass


class LevelMismatch(DomainError):
    pass


class NotInImage(DomainError):
    pass


class OutOfTableRange(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class BudgetError(DomainError):
    pass


class ParseError(DomainError):
    pass


class UndeterminedValuation(ModpError):
    """A table branch depends on data the input does not determine (exit code 3)."""

    exit_code = 3
