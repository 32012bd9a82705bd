"""
Logging utility for the discrete curvature toolkit.
This module provides configurable logging for the analyzers and the command-line interface.
"""

import logging
import os
from datetime import datetime

class AnalysisLogger:
    """Handles logging for curve analysis and convergence runs."""

    def __init__(self,
                 logger_name="curvature",
                 log_level=logging.INFO,
                 log_to_file=True,
                 log_dir="logs",
                 log_file_path=None,
                 console_format='%(levelname)s: %(message)s',
                 file_format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'):
        """
        Initialize the logger.

        Args:
            logger_name: Name for the logger instance. Library modules log through
                children of this name, so the package name catches all of them.
            log_level: The logging level (e.g., logging.INFO, logging.DEBUG).
            log_to_file: Whether to save logs to a file.
            log_dir: Directory to store log files if log_file_path is not specified.
            log_file_path: Specific path for the log file. Overrides log_dir and timestamped name.
            console_format: Format string for console handler.
            file_format: Format string for file handler.
        """
        if isinstance(log_level, str):
            log_level = getattr(logging, log_level.upper(), logging.INFO)

        self.logger = logging.getLogger(logger_name)
        self.logger.setLevel(log_level)
        self.logger.handlers = []  # Clear existing handlers to avoid duplicates
        self.logger.propagate = False

        console_handler = logging.StreamHandler()
        console_handler.setLevel(log_level)
        console_handler.setFormatter(logging.Formatter(console_format))
        self.logger.addHandler(console_handler)

        if log_to_file or log_file_path is not None:
            actual_log_file_path = log_file_path
            if actual_log_file_path:
                log_file_dir = os.path.dirname(actual_log_file_path)
                if log_file_dir:
                    os.makedirs(log_file_dir, exist_ok=True)
            else:
                os.makedirs(log_dir, exist_ok=True)
                timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
                actual_log_file_path = os.path.join(log_dir, f"{logger_name}_{timestamp}.log")

            file_handler = logging.FileHandler(actual_log_file_path)
            file_handler.setLevel(log_level)
            file_handler.setFormatter(logging.Formatter(file_format))
            self.logger.addHandler(file_handler)

            self.logger.info(f"Logging to file: {actual_log_file_path}")


class EdgeLogAdapter(logging.LoggerAdapter):
    """Prefixes every message with the record id of an edge, e.g. "[helix:edge12]"."""

    def process(self, msg, kwargs):
        return f"[{self.extra['edge_id']}] {msg}", kwargs


def edge_logger(logger, edge_id):
    """Logger adapter for the messages about one edge (or curve)."""
    return EdgeLogAdapter(logger, {"edge_id": edge_id})
