import argparse
import json
import logging
import sys
import time
from typing import Any, Dict, List, Optional

import numpy as np
from pydantic import ValidationError
from pydantic_core import to_jsonable_python

from src.crud.fixtures import input_digests, write_report
from src.routers import gadget, groups, isometry, reduction, verify
from src.schemas.report import RunReport
from src.utils.config import Config, configure_logging
from src.utils.errors import ColorGroupError, InvariantViolation, MalformedInput

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_INVARIANT, EXIT_MALFORMED = 0, 1, 2

ROUTERS = (groups, reduction, isometry, gadget, verify)


def _run_flags(suppress: bool) -> argparse.ArgumentParser:
    """Flags accepted before or after the subcommand; only the top level carries defaults."""
    parser = argparse.ArgumentParser(add_help=False)
    default = (lambda value: argparse.SUPPRESS) if suppress else (lambda value: value)
    parser.add_argument("--seed", type=int, default=default(Config.RUN["seed"]))
    parser.add_argument("--max-order", type=int, default=default(Config.LIMITS["max_order"]),
                        help="refuse input groups above this order")
    parser.add_argument("--out", default=default(None), help="write the report here instead of stdout")
    parser.add_argument("--parallel", type=int, default=default(Config.RUN["parallel"]),
                        help="worker threads for the reduction pipeline")
    parser.add_argument("--log-level", default=default(Config.RUN["log_level"]),
                        choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--record-time", action="store_true", default=default(False),
                        help="include wall time in the report")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colorgroup",
        description="Group, color and bilinear-map isomorphism toolkit.",
        parents=[_run_flags(suppress=False)],
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    parents = [_run_flags(suppress=True)]
    for router in ROUTERS:
        router.register(subparsers, parents=parents)
    return parser


def _plain(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    return repr(value)


def _command_name(args) -> str:
    action = getattr(args, "action", None)
    return f"{args.command} {action}" if action else args.command


def _apply_run_flags(args) -> None:
    if args.seed < 0:
        raise MalformedInput(f"--seed must be non-negative, got {args.seed}")
    if args.parallel < 1:
        raise MalformedInput(f"--parallel must be at least 1, got {args.parallel}")
    Config.RUN["seed"] = args.seed
    Config.RUN["parallel"] = args.parallel
    Config.RUN["log_level"] = args.log_level
    Config.LIMITS["max_order"] = args.max_order
    configure_logging(args.log_level)


def main(argv: Optional[List[str]] = None) -> int:
    saved = dict(Config.RUN), dict(Config.LIMITS)
    try:
        return _run(build_parser().parse_args(argv))
    finally:
        Config.RUN.update(saved[0])
        Config.LIMITS.update(saved[1])


def _run(args) -> int:
    command = _command_name(args)
    outputs: Dict[str, Any] = {}
    inputs: Dict[str, str] = {}
    code = EXIT_OK
    started = time.perf_counter()
    try:
        _apply_run_flags(args)
        inputs = input_digests(**{name: getattr(args, name, None) for name in args.input_files})
        outputs = args.handler(args)
    except InvariantViolation as e:
        logger.error(f"{command}: invariant violated: {e}")
        witness = to_jsonable_python(e.witness, fallback=_plain)
        outputs = {"error": type(e).__name__, "message": str(e), "witness": witness}
        code = EXIT_INVARIANT
    except (MalformedInput, ValidationError, json.JSONDecodeError, FileNotFoundError) as e:
        logger.error(f"{command}: malformed input: {e}")
        outputs = {"error": type(e).__name__, "message": str(e)}
        code = EXIT_MALFORMED
    except ColorGroupError as e:
        logger.error(f"{command}: {e}")
        outputs = {"error": type(e).__name__, "message": str(e)}
        code = EXIT_INVARIANT

    report = RunReport(
        command=command,
        inputs=inputs,
        seed=args.seed,
        outputs=to_jsonable_python(outputs, fallback=_plain),
        wall_time=round(time.perf_counter() - started, 6) if args.record_time else None,
    )
    text = write_report(report, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
