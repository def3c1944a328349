from pathlib import Path
from typing import Dict, List, Optional

import yaml

from config.paths import PATHS
from functions.ivf import IvfSpec
from functions.parser import parse


class CorpusError(ValueError):
    """Raised when a corpus file is missing or malformed."""


def spec_names(specs_dir: Optional[Path] = None) -> List[str]:
    specs_dir = specs_dir or PATHS.specs
    return sorted(p.stem for p in specs_dir.glob("*.ivf"))


def get_spec_source(spec_name: str, specs_dir: Optional[Path] = None) -> str:
    specs_dir = specs_dir or PATHS.specs
    path = specs_dir / f"{spec_name}.ivf"
    if not path.exists():
        raise CorpusError(f"No spec named '{spec_name}' in {specs_dir} (have: {', '.join(spec_names(specs_dir))})")
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def get_spec(spec_name: str, specs_dir: Optional[Path] = None) -> IvfSpec:
    return parse(get_spec_source(spec_name, specs_dir))


def load_cases(path: Optional[Path] = None) -> List[Dict]:
    """Replay cases from a YAML corpus; each case has a name, a kind and an expected value."""
    path = Path(path) if path else PATHS.reference_examples
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError as e:
        raise CorpusError(f"Corpus file not found: {path}") from e
    except yaml.YAMLError as e:
        raise CorpusError(f"Corpus file {path} is not valid YAML: {e}") from e

    cases = (data or {}).get("cases")
    if not isinstance(cases, list):
        raise CorpusError(f"Corpus file {path} has no 'cases' list")
    for case in cases:
        if not isinstance(case, dict) or not {"name", "kind", "expected"} <= set(case):
            raise CorpusError(f"Malformed case in {path}: {case!r}")
    return cases
