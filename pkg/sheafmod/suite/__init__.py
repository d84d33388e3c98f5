"""The seeded verification battery behind ``suite run``."""

from sheafmod.suite.engine import SuiteEngine, guarded

__all__ = ["SuiteEngine", "guarded"]
