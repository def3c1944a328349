import os
from pathlib import Path
from dataclasses import dataclass, field


def get_path_from_env(env_var: str, default: Path) -> Path:
    """Get a path from environment variable or use default."""
    env_value = os.environ.get(env_var)
    if env_value:
        return Path(env_value)
    return default


def get_default_corpus_path() -> Path:
    """The corpus ships next to the packages, in corpus/."""
    return Path(__file__).resolve().parent.parent / "corpus"


@dataclass
class Paths:
    # Base path - can be overridden via environment variable
    corpus_path: Path = field(default_factory=lambda: get_path_from_env(
        "GHCALC_CORPUS_PATH",
        get_default_corpus_path()
    ))

    def __post_init__(self):
        """Initialize derived paths after base paths are set."""
        self.specs = self.corpus_path / "specs"
        self.reference_examples = self.corpus_path / "reference_examples.yaml"


PATHS = Paths()
