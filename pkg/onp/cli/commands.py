"""Command-line interface: eval, tables, verify and repl subcommands.

Library errors map to exit codes through `OnpError.exit_code`:
2 for syntax and malformed input, 3 for out-of-range values, 4 when a
resource cap is hit. `verify` exits 1 when a gating suite fails.
"""
import argparse
import logging
import sys
from typing import List, Optional

from onp import __version__
from onp.arithmetic.context import Context
from onp.config.settings import Settings, settings as default_settings
from onp.core.dependencies import get_context
from onp.core.errors import ExpressionSyntaxError, OnpError
from onp.ordinals.notation import FIELD, ORDINAL, STYLE_CNF, STYLE_P_EXPANSION, format_ordinal, parse
from onp.structure.alpha_store import alpha_store

logger = logging.getLogger(__name__)

STYLES = {"cnf": STYLE_CNF, "p": STYLE_P_EXPANSION, STYLE_P_EXPANSION: STYLE_P_EXPANSION}


def _settings_for(args: argparse.Namespace) -> Settings:
    """Global settings with this invocation's --cap-* and --cache overrides applied."""
    overrides = {}
    for flag, name in (
        ("cap_degree", "degree_cap"),
        ("cap_scan", "alpha_scan_cap"),
        ("cap_genetic", "genetic_cap"),
        ("cap_mex", "mex_enumeration_cap"),
        ("cap_tower", "tower_axis_cap"),
        ("cache", "alpha_cache_path"),
        ("verify_cache", "verify_alpha_cache"),
        ("seed", "random_seed"),
        ("samples", "sample_count"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[name] = value
    return default_settings.model_copy(update=overrides)


def _make_context(p: int, settings: Settings, load_cache: bool = True) -> Context:
    ctx = get_context(p, settings)
    if load_cache and settings.alpha_cache_path:
        alpha_store.load(settings.alpha_cache_path, ctx)
    return ctx


def _context(args: argparse.Namespace, load_cache: bool = True) -> Context:
    return _make_context(args.prime, _settings_for(args), load_cache)


def cmd_eval(args: argparse.Namespace) -> int:
    ctx = _context(args)
    value = parse(args.expression, ctx, mode=args.mode)
    print(format_ordinal(value, STYLES[args.style]))
    return 0


def cmd_tables(args: argparse.Namespace) -> int:
    from onp.cli.tables import TableService, render_text

    if args.umax < 2:
        raise argparse.ArgumentTypeError("--umax must be at least 2")
    service = TableService(_context(args, load_cache=False))
    document = service.document(args.umax)
    if args.format == "json":
        print(document.model_dump_json(indent=2))
    else:
        print(render_text(document))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    from onp.oracle.verification import VerificationService, suite_names

    suites = suite_names(args.suites)
    service = VerificationService(_context(args))
    report = service.run_all(suites, cap=args.cap)
    if args.format == "json":
        print(report.model_dump_json(indent=2))
    else:
        for result in report.results:
            status = "PASS" if result.passed else "FAIL"
            if not result.gating:
                status = "REPORT"
            print(f"[{status}] {result.suite} (p={result.p}): {result.checked} checks in {result.elapsed_seconds}s")
            for key, value in result.stats.items():
                print(f"    {key}: {value}")
            for failure in result.failures:
                print(f"    ! {failure}")
        print("passed" if report.passed else "FAILED")
    return 0 if report.passed else 1


def cmd_repl(args: argparse.Namespace) -> int:
    from onp.cli.repl import ReplSession

    settings = _settings_for(args)
    session = ReplSession(lambda p: _make_context(p, settings), args.prime, STYLES[args.style])
    return session.run()


def _add_cache(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--cache", help="alpha cache file (tables JSON)")
    parser.add_argument(
        "--verify-cache", action="store_true", default=None, help="Re-run the power tests behind each cached row"
    )


def _add_caps(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("resource caps")
    group.add_argument("--cap-degree", type=int, help="Frobenius iterations allowed in degree()")
    group.add_argument("--cap-scan", type=int, help="Candidates tried per alpha_u search")
    group.add_argument("--cap-genetic", type=int, help="Bound for genetic On_2 evaluation")
    group.add_argument("--cap-mex", type=int, help="Largest MEX set enumerated (a*b)")
    group.add_argument("--cap-tower", type=int, help="Largest tower table axis")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="onp", description="Exact arithmetic in On_p below [w^w^w]")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--log-level", default=None, help="Logging level (default from ONP_LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="Evaluate an expression")
    p_eval.add_argument("-p", "--prime", type=int, required=True)
    p_eval.add_argument("expression")
    p_eval.add_argument("--style", choices=sorted(STYLES), default="cnf")
    p_eval.add_argument("--mode", choices=(FIELD, ORDINAL), default=FIELD)
    _add_cache(p_eval)
    _add_caps(p_eval)
    p_eval.set_defaults(handler=cmd_eval)

    p_tables = sub.add_parser("tables", help="Tabulate alpha_u for primes u <= umax")
    p_tables.add_argument("-p", "--prime", type=int, required=True)
    p_tables.add_argument("--umax", type=int, default=43)
    p_tables.add_argument("--format", choices=("text", "json"), default="text")
    _add_cache(p_tables)
    _add_caps(p_tables)
    p_tables.set_defaults(handler=cmd_tables)

    p_verify = sub.add_parser("verify", help="Run verification suites")
    p_verify.add_argument("-p", "--prime", type=int, required=True)
    p_verify.add_argument("suites", nargs="+", help="Suite names, or 'all'")
    p_verify.add_argument("--cap", type=int, help="Size parameter passed to each suite")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--samples", type=int)
    _add_cache(p_verify)
    _add_caps(p_verify)
    p_verify.set_defaults(handler=cmd_verify)

    p_repl = sub.add_parser("repl", help="Interactive evaluator")
    p_repl.add_argument("-p", "--prime", type=int, default=2)
    p_repl.add_argument("--style", choices=sorted(STYLES), default="cnf")
    _add_cache(p_repl)
    _add_caps(p_repl)
    p_repl.set_defaults(handler=cmd_repl)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.log_level:
        logging.getLogger().setLevel(args.log_level.upper())
    try:
        return args.handler(args)
    except ExpressionSyntaxError as e:
        print(e.describe(), file=sys.stderr)
        return e.exit_code
    except OnpError as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        print(f"error: {e.message}", file=sys.stderr)
        return e.exit_code
    except argparse.ArgumentTypeError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 130
