"""
JSON reading and writing of body files and generic config files.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from bodies.exceptions import ConfigError, ProfileError
from bodies.forms import StarBodyForm
from bodies.profiles import FourierProfile, StarBody, validate_positivity

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def parse_json(text: str, source: str = '<string>') -> Any:
    """Parse JSON text; syntax errors become ProfileError carrying line and column."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProfileError(f'malformed JSON: {exc.msg}', location=f'{source}:{exc.lineno}:{exc.colno}') from exc


def read_json(path: PathLike) -> Any:
    """Read and parse a JSON file. OSError propagates to the caller."""
    path = Path(path)
    return parse_json(path.read_text(encoding='utf-8'), source=str(path))


def profile_from_dict(data: Any, source: str = '<body>') -> FourierProfile:
    """
    Validate a parsed body object and build its profile.

    Raises:
        ProfileError: Schema violation, with the failing key as location
    """
    try:
        cleaned = StarBodyForm.validate(data, source=source)
    except ConfigError as exc:
        field = next(iter(sorted(exc.errors)), None)
        raise ProfileError(f'invalid body: {exc}', location=f'{source}: {field}' if field else source) from exc
    return FourierProfile(cleaned['a0'], tuple(cleaned['harmonics']))


def body_from_dict(data: Any, source: str = '<body>', grid_nodes: Optional[int] = None) -> StarBody:
    """Parse a body object and certify its positivity."""
    profile = profile_from_dict(data, source)
    name = data.get('name') or None
    return validate_positivity(profile, grid_nodes, name=name)


def load_body(path: PathLike, grid_nodes: Optional[int] = None) -> StarBody:
    """
    Load a body JSON file.

    Args:
        path: File with {"a0": ..., "harmonics": [[a1, b1], ...]}
        grid_nodes: Positivity grid size (default max(1024, 8*N))

    Returns:
        Certified StarBody

    Raises:
        OSError: File cannot be read
        ProfileError: Malformed JSON or schema violation
        PositivityError: The radial function is not positive
    """
    path = Path(path)
    return body_from_dict(read_json(path), source=str(path), grid_nodes=grid_nodes)


def resolve_body(reference: Union[str, Dict], base_dir: PathLike = '.', grid_nodes: Optional[int] = None) -> StarBody:
    """
    Load a body referenced from a config file.

    Args:
        reference: Path relative to base_dir, or an inline body object
        base_dir: Directory of the referencing config file
        grid_nodes: Positivity grid size
    """
    if isinstance(reference, dict):
        return body_from_dict(reference, source=f'{base_dir}: inline body', grid_nodes=grid_nodes)
    return load_body(Path(base_dir) / reference, grid_nodes)


def profile_to_dict(profile: FourierProfile, name: Optional[str] = None) -> Dict:
    data = {'a0': profile.a0, 'harmonics': [[a, b] for a, b in profile.harmonics]}
    if name:
        data['name'] = name
    return data


def body_to_dict(body: Union[StarBody, FourierProfile]) -> Dict:
    if isinstance(body, StarBody):
        return profile_to_dict(body.profile, body.name)
    return profile_to_dict(body)


def dumps(data: Any) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(data, indent=2, sort_keys=True) + '\n'


def write_json(data: Any, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(data), encoding='utf-8')
    logger.debug(f'Wrote {path}')
    return path


def dump_body(body: Union[StarBody, FourierProfile], path: PathLike) -> Path:
    return write_json(body_to_dict(body), path)
