"""Run-wide numerical defaults.

All tolerances and default grids live in one :class:`Settings` singleton so
that every report can embed exactly the configuration it was produced with.
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional

from harmonic_ctc.common.exceptions import BadInputException
from harmonic_ctc.common.patterns import Singleton
from harmonic_ctc.config.verbosity import Verbosity

logger = logging.getLogger(__name__)

CONFIG_FILENAME = "harmonic_ctc.json"

DEFAULTS: Dict[str, Any] = {
    "truncation_degree": 64,
    "grid_radii": (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99),
    "grid_angles": 2048,
    "margin_tol": 1e-9,
    "divide_tol": 1e-10,
    "denominator_floor": 1e-12,
    "unimodular_tol": 1e-12,
    "weight_tol": 1e-12,
    "coefficient_tol": 1e-12,
    "tail_tol": 1e-10,
    "epsilon_mesh": 256,
    "herglotz_terms": 32,
    "boundary_samples": 4096,
    "figure_radius": 0.999,
    "render_radii": (0.2, 0.4, 0.6, 0.8, 0.999),
    "render_rays": 24,
    "random_seed": 2024,
    "workers": 1,
}


class Settings(Singleton):
    """Numerical defaults, overridable once per process.

    Unknown keys are rejected so a typo in a config file cannot silently
    fall back to a default.
    """

    def __init__(self, **overrides: Any):
        already = getattr(self, '_configured', False)
        super().__init__(**overrides)
        if already:
            return
        unknown = sorted(set(overrides) - set(DEFAULTS))
        if unknown:
            Settings.reset()
            raise BadInputException(f"Unknown settings: {', '.join(unknown)}")
        values = dict(DEFAULTS)
        values.update(overrides)
        for key in ("grid_radii", "render_radii"):
            values[key] = tuple(float(r) for r in values[key])
        self._values = values

    def __getattr__(self, name: str) -> Any:
        values = self.__dict__.get('_values')
        if values is not None and name in values:
            return values[name]
        raise AttributeError(name)

    def as_dict(self) -> Dict[str, Any]:
        return {key: self._values[key] for key in DEFAULTS}

    @classmethod
    def from_file(cls, path: str, verbosity: Verbosity = Verbosity.ONCE) -> 'Settings':
        """Reset and configure the singleton from a JSON object file."""
        try:
            with open(path, encoding='utf-8') as handle:
                overrides = json.load(handle)
        except (OSError, json.JSONDecodeError) as e:
            raise BadInputException(f"Cannot read settings file {path}: {e}") from e
        if not isinstance(overrides, dict):
            raise BadInputException(f"Settings file {path} must hold a JSON object")
        cls.reset()
        if verbosity >= Verbosity.ONCE:
            logger.info(f"Loaded settings overrides from {path}: {sorted(overrides)}")
        return cls(**overrides)


def get_settings() -> Settings:
    return Settings.get_instance()


def _search_paths(filename: str, caller_module_path: Optional[str]) -> List[str]:
    module_path = caller_module_path or __file__
    locations = [
        '.',
        os.path.dirname(module_path),
        os.path.join(os.path.dirname(module_path), '..'),
        os.path.join(os.path.dirname(module_path), '../..'),
    ]
    return [os.path.join(directory, filename) for directory in locations]


def locate_config(
    filename: str = CONFIG_FILENAME,
    caller_module_path: Optional[str] = None,
    verbosity: Verbosity = Verbosity.ONCE,
) -> Optional[str]:
    """Find a settings file in the working directory or next to the package.

    Returns:
        The first existing path, or None when no file is found.
    """
    candidates = _search_paths(filename, caller_module_path)
    if verbosity >= Verbosity.DETAIL:
        logger.debug(f"Settings search paths for '{filename}': {candidates}")
    for candidate in candidates:
        if os.path.isfile(candidate):
            if verbosity >= Verbosity.ONCE:
                logger.info(f"Found settings file: {candidate}")
            return candidate
    return None
