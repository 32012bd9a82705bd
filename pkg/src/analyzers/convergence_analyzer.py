"""
Runs the convergence experiment over the registry curves and writes the
convergence table, the JSON report and the log-log plots.
"""

from .base_analyzer import BaseAnalyzer
from .. import convergence
from .. import report_writer
from ..logging_util import edge_logger


class ConvergenceAnalyzer(BaseAnalyzer):
    """
    Analyzer for the convergence experiment.
    """

    def run(self, source, output_path: str):
        """
        Run the experiment and write its artifacts.

        Args:
            source: An ExperimentConfig.
            output_path: Output directory; defaults to the configured one.

        Returns:
            ConvergenceReport with the written artifact paths.
        """
        config = source
        output_dir = output_path or config.output_dir
        self.logger.info(
            f"Starting convergence run: {len(config.curves)} curves, {len(config.levels)} levels, "
            f"quantities {', '.join(config.quantities)}")
        if config.low_confidence:
            self.logger.warning(
                f"only {len(config.levels)} levels requested; rates are marked low confidence")

        report = convergence.run(config, self.tracker)
        self.log_rates(report)
        if config.formats:
            report_writer.write_report(report, output_dir, config.formats)
            self.logger.info(f"Convergence artifacts saved to: {output_dir}")
        return report

    def log_rates(self, report):
        """Log every fitted rate next to its reference rate."""
        for name, result in report.curves.items():
            if result.failure:
                edge_logger(self.logger, name).error(f"failed: {result.failure}")
                continue
            for q, series in result.series.items():
                if series.fit.exact:
                    self.logger.info(f"{name:>14} {q:>6}: exact at machine precision")
                    continue
                if series.fit.slope is None:
                    self.logger.info(f"{name:>14} {q:>6}: no rate ({series.fit.note})")
                    continue
                line = f"{name:>14} {q:>6}: rate {series.fit.slope:.4f}"
                if series.reference_rate is not None:
                    line += f" (reference {series.reference_rate:.4f}, deviation {series.deviation:+.4f})"
                self.logger.info(line)
            for q, note in result.notes.items():
                self.logger.debug(f"{name:>14} {q:>6}: {note}")
