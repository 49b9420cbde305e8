import argparse
import logging

from pydantic import ValidationError

from ..display import failure
from ..errors import ConstraintError, DocumentError, InvalidStructureError, NilgeoError, UnknownEntryError
from .compute import ComputeParams, compute
from .list_entries import ListParams, list_entries
from .show import ShowParams, show
from .solve import SolveParams, solve
from .verify import VerifyParams, verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

command_map = {
    "list": (ListParams, list_entries),
    "show": (ShowParams, show),
    "verify": (VerifyParams, verify),
    "compute": (ComputeParams, compute),
    "solve": (SolveParams, solve),
}
icons = {
    "list": "📜",
    "show": "🔎",
    "verify": "🧪",
    "compute": "🧮",
    "solve": "🎯",
}


def _validation_message(e: ValidationError) -> str:
    first = e.errors()[0]
    where = ".".join(str(part) for part in first["loc"])
    return f"{where}: {first['msg']}" if where else first["msg"]


def execute_command(args: argparse.Namespace) -> int:
    """Validate parsed arguments into the command's params model, run it, map errors to exit codes."""
    name = args.command
    if name not in command_map:
        failure(f"Unknown command: {name}")
        return EXIT_USAGE
    model, handler = command_map[name]
    options = {k: v for k, v in vars(args).items() if k in model.model_fields}
    icon = icons.get(name, "❌")
    try:
        params = model(**options)
    except ValidationError as e:
        failure(f"{name}: {_validation_message(e)}", icon)
        return EXIT_USAGE

    try:
        return handler(params)
    except InvalidStructureError as e:
        failure(f"invalid structure, violated invariant {e.invariant}: {e.detail}", icon)
        return EXIT_USAGE
    except (UnknownEntryError, ConstraintError, DocumentError) as e:
        failure(str(e), icon)
        return EXIT_USAGE
    except OSError as e:
        failure(f"I/O error: {e}", icon)
        return EXIT_IO
    except (NilgeoError, ValueError) as e:
        failure(f"{name}: {e}", icon)
        return EXIT_USAGE
    except Exception:
        logger.exception("%s failed", name)
        return EXIT_FAILED
