import hashlib
from pathlib import Path


def get_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def get_file_digest(path: Path) -> str:
    return get_digest(Path(path).read_bytes())
