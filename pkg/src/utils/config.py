import os
import logging
from dotenv import load_dotenv

load_dotenv()

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class Config:
    LIMITS = {
        "max_order": int(os.getenv("COLORGROUP_MAX_ORDER", 2000)),
        "cayley_bound": int(os.getenv("COLORGROUP_CAYLEY_BOUND", 2000)),
        "domain_bound": int(os.getenv("COLORGROUP_DOMAIN_BOUND", 100000)),
        "assoc_exhaustive_limit": int(os.getenv("COLORGROUP_ASSOC_EXHAUSTIVE_LIMIT", 256)),
        "assoc_samples": int(os.getenv("COLORGROUP_ASSOC_SAMPLES", 1000000)),
        "subcoset_exhaustive_limit": int(os.getenv("COLORGROUP_SUBCOSET_EXHAUSTIVE_LIMIT", 10000)),
    }

    RUN = {
        "parallel": int(os.getenv("COLORGROUP_PARALLEL", 4)),
        "seed": int(os.getenv("COLORGROUP_SEED", 0)),
        "log_level": os.getenv("COLORGROUP_LOG_LEVEL", "INFO"),
    }

    @classmethod
    def limit(cls, key: str) -> int:
        return cls.LIMITS[key]


def configure_logging(level: str = None) -> None:
    """Install the single stderr handler used by every module logger."""
    root = logging.getLogger()
    root.setLevel((level or Config.RUN["log_level"]).upper())
    if any(getattr(h, "_colorgroup", False) for h in root.handlers):
        return
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler._colorgroup = True
    root.addHandler(handler)
