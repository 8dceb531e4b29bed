"""Map-definition files.

A definition is one JSON object::

    {
      "label": "z + 1/10 conj(z)^2",
      "u": [[0, 0], [1, 0]],
      "v": [[0, 0], [0, 0], [0.1, 0]],
      "phi": [[0, 0], [1, 0]],
      "k": 2,
      "gamma": 0.8,
      "grid": {"r_max": 0.99, "angles": 2048, "margin_tol": 1e-9}
    }

Coefficients are [re, im] pairs. ``phi``, ``v``, ``label`` and ``grid`` are
optional; unknown fields anywhere are rejected.
"""

import json
import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from harmonic_ctc.classes.constructs import ClassParams, SamplingGrid
from harmonic_ctc.common.exceptions import BadInputException, ParseError, ValidationError
from harmonic_ctc.series.polynomial import ComplexPolynomial, HarmonicPolynomialMap

logger = logging.getLogger(__name__)

TOP_LEVEL_FIELDS = ("label", "u", "v", "phi", "k", "gamma", "grid")
REQUIRED_FIELDS = ("u", "k", "gamma")
GRID_FIELDS = ("r_max", "angles", "margin_tol")
NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class MapDefinition:
    label: str
    f: HarmonicPolynomialMap
    params: ClassParams
    grid: SamplingGrid
    grid_overrides: Dict[str, Any]

    def as_dict(self):
        return {
            "label": self.label,
            "k": self.params.k,
            "gamma": self.params.gamma,
            "u": [list(pair) for pair in self.f.u.as_pairs()],
            "v": [list(pair) for pair in self.f.v.as_pairs()],
            "phi": [list(pair) for pair in self.params.phi.as_pairs()],
        }


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _coefficients(name: str, raw: Any, minimum: int) -> List[complex]:
    if not isinstance(raw, list):
        raise ValidationError(name, "must be a list of [re, im] pairs")
    values = []
    for index, pair in enumerate(raw):
        if not (isinstance(pair, list) and len(pair) == 2 and all(_is_number(x) for x in pair)):
            raise ValidationError(f"{name}[{index}]", f"expected a pair of finite numbers, got {pair!r}")
        values.append(complex(pair[0], pair[1]))
    if len(values) < minimum:
        raise ValidationError(name, f"needs at least {minimum} coefficients, got {len(values)}")
    return values


def _expect(name: str, values: List[complex], index: int, target: complex) -> None:
    actual = values[index] if index < len(values) else 0j
    if abs(actual - target) > NORMALIZATION_TOL:
        raise ValidationError(f"{name}[{index}]", f"must equal {target.real:g}, got {actual}")


def _grid(raw: Any) -> Tuple[SamplingGrid, Dict[str, Any]]:
    if raw is None:
        return SamplingGrid.default(), {}
    if not isinstance(raw, dict):
        raise ValidationError("grid", "must be an object")
    for key in raw:
        if key not in GRID_FIELDS:
            raise ValidationError(f"grid.{key}", "unknown field")
    for key, value in raw.items():
        if not _is_number(value):
            raise ValidationError(f"grid.{key}", f"must be a finite number, got {value!r}")
    try:
        grid = SamplingGrid.with_overrides(raw.get("r_max"), raw.get("angles"), raw.get("margin_tol"))
    except BadInputException as e:
        raise ValidationError("grid", str(e)) from e
    return grid, dict(raw)


def parse_definition(document: Any) -> MapDefinition:
    """Validate an already-decoded JSON document."""
    if not isinstance(document, dict):
        raise ParseError("map definition must be a JSON object")
    for key in document:
        if key not in TOP_LEVEL_FIELDS:
            raise ValidationError(key, "unknown field")
    for key in REQUIRED_FIELDS:
        if key not in document:
            raise ValidationError(key, "missing required field")

    u = _coefficients("u", document["u"], 2)
    v = _coefficients("v", document.get("v", [[0, 0], [0, 0]]), 0)
    phi = _coefficients("phi", document.get("phi", [[0, 0], [1, 0]]), 2)
    for name, values in (("u", u), ("phi", phi)):
        _expect(name, values, 0, 0j)
        _expect(name, values, 1, 1 + 0j)
    _expect("v", v, 0, 0j)
    _expect("v", v, 1, 0j)

    k = document["k"]
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ValidationError("k", f"must be an integer >= 1, got {k!r}")
    gamma = document["gamma"]
    if not _is_number(gamma) or not 0.0 <= gamma < 1.0:
        raise ValidationError("gamma", f"must lie in [0, 1), got {gamma!r}")
    label = document.get("label", "")
    if not isinstance(label, str):
        raise ValidationError("label", "must be a string")

    v = (v + [0j, 0j])[:max(len(v), 2)]
    f = HarmonicPolynomialMap(ComplexPolynomial.from_coefficients(u), ComplexPolynomial.from_coefficients(v))
    params = ClassParams(k, float(gamma), ComplexPolynomial.from_coefficients(phi))
    grid, overrides = _grid(document.get("grid"))
    return MapDefinition(label, f, params, grid, overrides)


def load_definition(path: str) -> MapDefinition:
    """Read and validate a map-definition file.

    Raises:
        ParseError: the file is not valid JSON (OSError propagates for unreadable files).
        ValidationError: a field is missing, unknown or violates normalization.
    """
    with open(path, encoding='utf-8') as handle:
        text = handle.read()
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e}") from e
    definition = parse_definition(document)
    logger.info(f"Loaded map '{definition.label}' from {path} "
                f"(degree {definition.f.truncation_degree}, k={definition.params.k}, "
                f"gamma={definition.params.gamma})")
    return definition


def load_map(path: str) -> Tuple[HarmonicPolynomialMap, ClassParams]:
    definition = load_definition(path)
    return definition.f, definition.params
