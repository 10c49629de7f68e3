import inspect
import logging
from typing import Any, Dict

from src.schemas.report import SuiteReport
from src.services.verification import SUITES, run_suite
from src.utils.config import Config
from src.utils.errors import InvariantViolation, MalformedInput

logger = logging.getLogger(__name__)


def _options(pairs) -> Dict[str, int]:
    options = {}
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep:
            raise MalformedInput(f"suite option {pair!r} is not KEY=VALUE")
        try:
            options[key.replace("-", "_")] = int(value)
        except ValueError:
            raise MalformedInput(f"suite option {key} needs an integer, got {value!r}")
    return options


def verify(args) -> Dict[str, Any]:
    options = _options(args.option)
    accepted = set(inspect.signature(SUITES[args.suite]).parameters) - {"seed", "entries"}
    unknown = sorted(set(options) - accepted)
    if unknown:
        raise MalformedInput(f"suite {args.suite} takes {sorted(accepted)}, not {unknown}")
    result = run_suite(args.suite, Config.RUN["seed"], **options)
    report = SuiteReport.from_domain(result).model_dump()
    if not result.passed:
        raise InvariantViolation(f"suite {args.suite}: {len(result.failures)} failed checks", witness=report)
    return report


def register(subparsers, parents=()) -> None:
    p = subparsers.add_parser("verify", parents=parents, help="run a seeded oracle verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--option", action="append", metavar="KEY=VALUE",
                   help="integer keyword passed to the suite, e.g. instances=20")
    p.set_defaults(handler=verify, input_files=())
