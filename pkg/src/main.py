"""
Main entry point for the discrete curvature toolkit.

This module provides a command-line interface with two commands: `analyze`
computes the per-edge invariants of one polygonal curve, and `converge` runs
the convergence experiment over the registry curves.
"""

import os
import argparse
import logging
import sys
from datetime import datetime

from .config import CurveRegistryConfig, ExitCode, ExperimentDefaults, IssueCategory, ToleranceConfig
from .convergence import ALL_QUANTITIES, ExperimentConfig, parse_levels, parse_list
from .curve_io import write_curve_file
from .errors import ArtifactWriteError, ConfigError, CurveFormatError, GeometryError
from .logging_util import AnalysisLogger
from .smooth_reference import get_curve, sample_full
from .validation_report import IssueTracker
from .analyzers.polyline_analyzer import PolylineAnalyzer
from .analyzers.convergence_analyzer import ConvergenceAnalyzer

# Library modules log to children of the package logger
PACKAGE_LOGGER = __name__.split(".")[0]


def _add_common_arguments(parser):
    parser.add_argument(
        '--log-level',
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        default='INFO',
        help='Set the logging level.'
    )
    parser.add_argument(
        '--log-dir',
        default='logs',
        help='Directory to save log files.'
    )
    parser.add_argument(
        '--no-log-file',
        action='store_true',
        help='Log to the console only.'
    )
    parser.add_argument(
        '--report-dir',
        default='reports',
        help='Directory to save the issue report.'
    )


def build_parser():
    parser = argparse.ArgumentParser(description="Discrete curvature and torsion of polygonal curves")
    subparsers = parser.add_subparsers(dest="command", required=True, help="Available commands")

    # --- Analyze Command ---
    parser_analyze = subparsers.add_parser("analyze", help="Per-edge invariants of one polygonal curve")
    parser_analyze.add_argument(
        "curve_file",
        nargs="?",
        help="Path to a polyline file (first line 'open' or 'closed', then one vertex per line)."
    )
    parser_analyze.add_argument(
        "--sample",
        choices=CurveRegistryConfig.CURVE_NAMES,
        help="Analyse a registry curve sampled at --epsilon instead of a file."
    )
    parser_analyze.add_argument(
        "--epsilon",
        type=float,
        default=ExperimentDefaults.BASE_EPSILON,
        help="Sampling step for --sample (vertices are 2*eps apart in the parameter)."
    )
    parser_analyze.add_argument(
        "--closed",
        action="store_true",
        help="Treat the sampled registry curve as closed."
    )
    parser_analyze.add_argument(
        "--export-sample",
        help="Also write the sampled polyline to this path."
    )
    parser_analyze.add_argument(
        "--output", "-o",
        help="Path for the per-edge table. If omitted, it's saved next to the input file."
    )
    parser_analyze.add_argument(
        "--format",
        choices=["csv", "json"],
        default="csv",
        help="Format of the per-edge table."
    )
    parser_analyze.add_argument(
        "--strict",
        action="store_true",
        help="Abort on the first singular edge instead of skipping it."
    )
    parser_analyze.add_argument(
        "--arclength-tol",
        type=float,
        default=ToleranceConfig.ARCLENGTH,
        help="Tolerance of the arclength criterion."
    )
    _add_common_arguments(parser_analyze)

    # --- Converge Command ---
    parser_converge = subparsers.add_parser("converge", help="Convergence experiment on the registry curves")
    parser_converge.add_argument(
        "--curves",
        default=",".join(CurveRegistryConfig.CURVE_NAMES),
        help="Comma-separated registry curves."
    )
    parser_converge.add_argument(
        "--levels",
        default=f"{ExperimentDefaults.LEVELS[0]}..{ExperimentDefaults.LEVELS[-1]}",
        help="Levels as A..B or a comma list; write --levels=-3..-15 for a negative start."
    )
    parser_converge.add_argument(
        "--quantities",
        default=",".join(ExperimentDefaults.QUANTITIES),
        help=f"Comma-separated quantities out of {', '.join(ALL_QUANTITIES)}."
    )
    parser_converge.add_argument(
        "--out",
        default=ExperimentDefaults.OUTPUT_DIR,
        help="Directory for the convergence table, report and plots."
    )
    parser_converge.add_argument(
        "--format",
        default=",".join(ExperimentDefaults.FORMATS),
        help="Comma-separated artifact formats out of csv, json, svg."
    )
    parser_converge.add_argument(
        "--vertex-spacing",
        type=float,
        default=ExperimentDefaults.VERTEX_SPACING,
        help="Parameter distance between consecutive vertices, in units of eps."
    )
    parser_converge.add_argument(
        "--list-curves",
        action="store_true",
        help="Print the registry curves with their parameters and exit."
    )
    _add_common_arguments(parser_converge)
    return parser


def list_curves():
    """Print the registry curves with their parameters."""
    for name in CurveRegistryConfig.CURVE_NAMES:
        curve = get_curve(name)
        parameters = ", ".join(f"{k}={v:g}" for k, v in curve.parameters.items()) or "-"
        kind = "planar" if curve.planar else "space"
        print(f"{name:<14} {kind:<7} {parameters}")


def _default_analysis_path(args, curve_name):
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    if args.curve_file:
        directory = os.path.dirname(args.curve_file)
        base_name = os.path.splitext(os.path.basename(args.curve_file))[0]
    else:
        directory = ExperimentDefaults.OUTPUT_DIR
        base_name = f"{curve_name}_eps{args.epsilon:g}"
    return os.path.join(directory, f"{base_name}_edges_{timestamp}.{args.format}")


def run_analyze(args, logger, tracker):
    """Returns the exit code of the analyze command."""
    if bool(args.curve_file) == bool(args.sample):
        raise ConfigError("give either a curve file or --sample CURVE")

    if args.sample:
        curve = sample_full(get_curve(args.sample), args.epsilon, closed=args.closed)
        logger.info(f"Sampled {args.sample} at eps={args.epsilon:g}: {len(curve)} vertices")
        if args.export_sample:
            write_curve_file(curve, args.export_sample, comment=f"{args.sample} sampled at eps={args.epsilon:g}")
            logger.info(f"Sample saved to: {args.export_sample}")
        source = curve
    else:
        if not os.path.exists(args.curve_file):
            raise ConfigError(f"Input file not found: {args.curve_file}")
        source = args.curve_file

    output_path = args.output or _default_analysis_path(args, args.sample)
    analyzer = PolylineAnalyzer(logger, tracker, strict=args.strict, fmt=args.format,
                                arclength_tol=args.arclength_tol)
    analyzer.run(source, output_path)
    return ExitCode.SUCCESS


def run_converge(args, logger, tracker):
    """Returns the exit code of the converge command."""
    if args.list_curves:
        list_curves()
        return ExitCode.SUCCESS

    config = ExperimentConfig(
        curves=parse_list(args.curves, CurveRegistryConfig.CURVE_NAMES, "curves"),
        levels=parse_levels(args.levels),
        quantities=parse_list(args.quantities, ALL_QUANTITIES, "quantities"),
        output_dir=args.out,
        formats=parse_list(args.format, ExperimentDefaults.FORMATS, "formats"),
        vertex_spacing=args.vertex_spacing,
    )
    report = ConvergenceAnalyzer(logger, tracker).run(config, args.out)
    if report.singular_curves:
        logger.error(f"Aborted by a numerical singularity: {', '.join(report.singular_curves)}")
        return ExitCode.SINGULARITY
    if report.failed_curves:
        return ExitCode.CONFIG_ERROR
    return ExitCode.SUCCESS


COMMANDS = {
    "analyze": run_analyze,
    "converge": run_converge,
}


def main(argv=None):
    """
    Main function to parse arguments and run the selected command.

    Returns:
        The process exit code.
    """
    args = build_parser().parse_args(argv)

    # --- Initialization ---
    log_level_val = getattr(logging, args.log_level.upper(), logging.INFO)
    logger = AnalysisLogger(
        logger_name=PACKAGE_LOGGER,
        log_level=log_level_val,
        log_dir=args.log_dir,
        log_to_file=not args.no_log_file
    ).logger

    tracker = IssueTracker()

    try:
        exit_code = COMMANDS[args.command](args, logger, tracker)
    except (ConfigError, CurveFormatError) as e:
        logger.error(str(e))
        exit_code = ExitCode.CONFIG_ERROR
    except GeometryError as e:
        logger.error(f"Aborted by a numerical singularity: {e}")
        exit_code = ExitCode.SINGULARITY
    except ArtifactWriteError as e:
        logger.error(str(e))
        tracker.add_issue(None, "error", IssueCategory.FILE_WRITE, "output", str(e))
        exit_code = ExitCode.UNEXPECTED
    except Exception as e:
        logger.error(f"An unexpected error occurred: {e}", exc_info=True)
        return ExitCode.UNEXPECTED

    # --- Reporting ---
    if tracker.total_records or tracker.issues:
        tracker.print_summary()
        csv_report = tracker.save_issues_to_csv(args.report_dir)
        if csv_report:
            logger.info(f"Issue report saved to: {csv_report}")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
