import logging
from pathlib import Path
from typing import Optional, Type, TypeVar

from pydantic import BaseModel

from src.models.group import FiniteGroup
from src.schemas.group import GroupFile
from src.schemas.report import RunReport
from src.utils.config import Config
from src.utils.errors import OrderOutOfRange
from src.utils.hash import get_file_digest

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def load_json(path: Path, schema: Type[M]) -> M:
    """Parse one JSON object from disk into the given schema."""
    text = Path(path).read_text(encoding="utf-8")
    logger.debug(f"loading {schema.__name__} from {path}")
    return schema.model_validate_json(text)


def save_json(path: Path, model: BaseModel) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.debug(f"wrote {type(model).__name__} to {path}")
    return path


def input_digests(**paths: Optional[Path]) -> dict:
    return {name: get_file_digest(p) for name, p in paths.items() if p is not None}


def write_report(report: RunReport, out: Optional[Path] = None) -> str:
    """Write the report to `out`, or return it for stdout."""
    text = report.to_json() + "\n"
    if out is not None:
        out = Path(out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
        logger.info(f"report written to {out}")
    return text


def load_group(path: Path) -> FiniteGroup:
    """A Cayley-table file, refused above the configured max order."""
    group_file = load_json(path, GroupFile)
    bound = Config.limit("max_order")
    if len(group_file.table) > bound:
        raise OrderOutOfRange(f"{path} holds a group of order {len(group_file.table)} > max order {bound}")
    G = group_file.to_domain()
    if not G.name:
        G.name = Path(path).stem
    return G
