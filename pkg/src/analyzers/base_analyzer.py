"""
Defines the base class for all analyzers.

This module provides an abstract base class (ABC) that sets the common interface
for the analysis workflows behind the command-line subcommands. Each analyzer
reads its own kind of input and writes its own artifacts, but must conform to
the `run` method signature defined here.
"""

import abc

class BaseAnalyzer(abc.ABC):
    """
    Abstract Base Class for all analyzers.

    Each analyzer is initialized with a logger and an issue tracker; per-edge
    and per-curve problems go to the tracker so a run can finish and report them.
    """

    def __init__(self, logger, tracker):
        """
        Initializes the analyzer with a logger and an issue tracker.

        Args:
            logger: An instance of a logger for logging messages.
            tracker: An instance of IssueTracker to track skipped edges and other issues.
        """
        self.logger = logger
        self.tracker = tracker

    @abc.abstractmethod
    def run(self, source, output_path: str):
        """
        Performs the analysis.

        Args:
            source: What to analyse (a file path, a curve, or an experiment configuration).
            output_path: Where the artifacts go (a file or a directory, per analyzer).

        Raises:
            NotImplementedError: If the subclass does not implement this method.
        """
        raise NotImplementedError("Each analyzer must implement the 'run' method.")
