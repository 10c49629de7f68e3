import logging
from pathlib import Path
from typing import List, Sequence

from src.crud.fixtures import load_json, save_json
from src.models.corpus import CorpusEntry
from src.schemas.group import GroupFile
from src.services.corpus import corpus_tags
from src.utils.errors import MalformedInput

logger = logging.getLogger(__name__)


def _file_name(name: str) -> str:
    safe = "".join(c if c.isalnum() or c in "_^-" else "_" for c in name)
    return safe.strip("_") + ".json"


def export_corpus(entries: Sequence[CorpusEntry], directory: Path) -> List[Path]:
    """One Cayley-table file per entry."""
    directory = Path(directory)
    paths = [save_json(directory / _file_name(e.name), GroupFile.from_domain(e.group)) for e in entries]
    logger.info(f"exported {len(paths)} groups to {directory}")
    return paths


def load_corpus(directory: Path) -> List[CorpusEntry]:
    entries = []
    for path in sorted(Path(directory).glob("*.json")):
        G = load_json(path, GroupFile).to_domain()
        entries.append(CorpusEntry(G.name or path.stem, G, corpus_tags(G)))
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise MalformedInput(f"duplicate group names in {directory}")
    return entries
