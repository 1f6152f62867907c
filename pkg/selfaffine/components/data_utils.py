"""
Data Utilities for selfaffine

Named fixtures, TOML system configs, config hashing and CSV/JSON export.
"""

import hashlib
import json
import logging
import math
import os
import re
import sys
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field

import numpy as np

from . import ids, linalg
from .errors import ConfigParse, SelfAffineError
from .ifs import check_four_map_hypotheses, theorem2_fixture
from .words import MatrixTuple, SymbolPermutation, kronecker_tuple

logger = logging.getLogger(__name__)

# Example configs shipped with the repository
CONFIG_PATH = "configs"

# Default parameters of the parametrised fixtures
FIXTURE_DEFAULTS = {
    ids.FIXTURE_THM1: {"alpha1": 0.44, "alpha2": 0.2, "theta": 1.0},
    ids.FIXTURE_THM2: {"alpha1": 0.44, "alpha2": 0.2, "theta": 1.0},
    ids.FIXTURE_EQ1: {},
}

# The irreducible but not strongly irreducible 3 x 3 pair
EQ1_MATRICES = (
    [[0.0, 0.0, 0.5], [2.0 / 3.0, 0.0, 0.0], [0.0, 0.5, 0.0]],
    [[0.0, 2.0 / 3.0, 0.0], [0.0, 0.0, 0.5], [0.5, 0.0, 0.0]],
)


@dataclass(frozen=True, eq=False)
class System:
    """
    A resolved system: the linear parts A_i, and when the system comes from
    a Kronecker construction also the base tuple B and the permutation iota.
    """

    name: str
    linear: MatrixTuple
    base: MatrixTuple = None
    iota: SymbolPermutation = None
    translations: np.ndarray = None
    fixture: str = None
    parameters: dict = field(default_factory=dict)

    def canonical(self):
        """Plain-JSON description used for hashing."""
        return {
            "name": self.name,
            "fixture": self.fixture,
            "parameters": dict(sorted(self.parameters.items())),
            "matrices": self.linear.matrices.tolist(),
            "base_matrices": None if self.base is None else self.base.matrices.tolist(),
            "permutation": None if self.iota is None else list(self.iota.images),
            "translations": None if self.translations is None else np.asarray(self.translations).tolist(),
        }


def thm1_base(alpha1=0.44, alpha2=0.2, theta=1.0):
    """B_1 = diag(alpha1, alpha2), B_2 = R(theta)."""
    return MatrixTuple.from_list([np.diag([alpha1, alpha2]), linalg.rotation(theta)])


def _thm1(parameters):
    base = thm1_base(**parameters)
    iota = SymbolPermutation.swap()
    return System(ids.FIXTURE_THM1, kronecker_tuple(base, iota), base, iota, None, ids.FIXTURE_THM1, parameters)


def _thm2(parameters):
    check_four_map_hypotheses(**parameters)
    system = theorem2_fixture(**parameters)
    return System(
        ids.FIXTURE_THM2,
        system.ifs.linear,
        system.base,
        system.iota,
        np.array(system.ifs.translations),
        ids.FIXTURE_THM2,
        parameters,
    )


def _eq1(parameters):
    return System(ids.FIXTURE_EQ1, MatrixTuple.from_list(EQ1_MATRICES), fixture=ids.FIXTURE_EQ1)


FIXTURES = {
    ids.FIXTURE_THM1: _thm1,
    ids.FIXTURE_THM2: _thm2,
    ids.FIXTURE_EQ1: _eq1,
}


def load_fixture(name, **overrides):
    if name not in FIXTURES:
        raise ConfigParse(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}", field="fixture")
    parameters = dict(FIXTURE_DEFAULTS[name])
    unknown = set(overrides) - set(parameters)
    if unknown:
        raise ConfigParse(f"fixture {name!r} takes no parameter(s) {sorted(unknown)}", field="parameters")
    for key, value in overrides.items():
        if value is None:
            continue
        try:
            parameters[key] = float(value)
        except (TypeError, ValueError):
            raise ConfigParse(f"expected a number, got {value!r}", field=key) from None
    return FIXTURES[name](parameters)


def _line_of(text, key):
    """First line defining ``key`` in a TOML document, if any."""
    pattern = re.compile(rf"^\s*{re.escape(key)}\s*=", re.MULTILINE)
    match = pattern.search(text)
    if match is None:
        return None
    return text.count("\n", 0, match.start()) + 1


def _matrix_list(value, dimension, count, key, path, text):
    def fail(message):
        raise ConfigParse(message, path=path, field=key, line=_line_of(text, key))

    if not isinstance(value, list) or not value:
        fail("expected a non-empty list of row-major matrices")
    if count is not None and len(value) != count:
        fail(f"expected {count} matrices, got {len(value)}")
    matrices = []
    for k, entries in enumerate(value, start=1):
        try:
            flat = np.asarray(entries, dtype=float).ravel() if isinstance(entries, list) else None
        except (TypeError, ValueError):
            fail(f"matrix {k} must be a flat or nested list of numbers")
        if flat is None or flat.size != dimension * dimension:
            fail(f"matrix {k} must have {dimension * dimension} entries")
        matrices.append(flat.reshape(dimension, dimension))
    try:
        return MatrixTuple.from_list(matrices)
    except SelfAffineError as e:
        fail(str(e))


def _integer(document, key, path, text, required=False):
    value = document.get(key)
    if value is None:
        if required:
            raise ConfigParse("missing required field", path=path, field=key)
        return None
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ConfigParse("expected a positive integer", path=path, field=key, line=_line_of(text, key))
    return value


def load_config(path):
    """Parse a TOML system description into a resolved ``System``."""
    try:
        with open(path, "rb") as handle:
            raw = handle.read()
    except OSError as e:
        raise ConfigParse(f"cannot read config: {e.strerror}", path=path) from e
    text = raw.decode("utf-8", errors="replace")
    try:
        document = tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        match = re.search(r"line (\d+)", str(e))
        raise ConfigParse(f"invalid TOML: {e}", path=path, line=int(match.group(1)) if match else None) from e

    name = str(document.get("name", os.path.splitext(os.path.basename(str(path)))[0]))
    fixture = document.get("fixture")
    if fixture is not None:
        if "matrices" in document or "base_matrices" in document:
            raise ConfigParse("a fixture config cannot also list matrices", path=path, field="fixture")
        parameters = document.get("parameters", {})
        if not isinstance(parameters, dict):
            raise ConfigParse("expected a table", path=path, field="parameters", line=_line_of(text, "parameters"))
        try:
            system = load_fixture(fixture, **parameters)
        except ConfigParse as e:
            raise ConfigParse(e.detail, path=path, field=e.field, line=_line_of(text, e.field or "fixture")) from e
        return System(name, system.linear, system.base, system.iota, system.translations, fixture, system.parameters)

    alphabet = _integer(document, "alphabet", path, text)
    iota = None
    if "permutation" in document:
        try:
            iota = SymbolPermutation(tuple(document["permutation"]))
        except (SelfAffineError, TypeError, ValueError) as e:
            raise ConfigParse(str(e), path=path, field="permutation", line=_line_of(text, "permutation")) from e

    base = None
    if "base_matrices" in document:
        base_dimension = _integer(document, "base_dimension", path, text, required=True)
        base = _matrix_list(document["base_matrices"], base_dimension, alphabet, "base_matrices", path, text)
        if iota is None:
            iota = SymbolPermutation.identity(base.N)
        if iota.size != base.N:
            raise ConfigParse(
                f"permutation acts on {iota.size} symbols, config has {base.N}",
                path=path,
                field="permutation",
                line=_line_of(text, "permutation"),
            )
        linear = kronecker_tuple(base, iota)
        dimension = _integer(document, "dimension", path, text)
        if dimension is not None and dimension != base_dimension**2:
            raise ConfigParse(
                f"dimension must be base_dimension^2 = {base_dimension ** 2}",
                path=path,
                field="dimension",
                line=_line_of(text, "dimension"),
            )
    elif "matrices" in document:
        dimension = _integer(document, "dimension", path, text, required=True)
        linear = _matrix_list(document["matrices"], dimension, alphabet, "matrices", path, text)
    else:
        raise ConfigParse("config needs one of 'fixture', 'matrices' or 'base_matrices'", path=path)

    translations = None
    if "translations" in document:
        try:
            translations = np.asarray(document["translations"], dtype=float)
        except (TypeError, ValueError):
            translations = None
        if translations is None or translations.shape != (linear.N, linear.d):
            raise ConfigParse(
                f"expected {linear.N} numeric vectors of length {linear.d}",
                path=path,
                field="translations",
                line=_line_of(text, "translations"),
            )
    logger.info("loaded %s: %d maps on R^%d", name, linear.N, linear.d)
    return System(name, linear, base, iota, translations, None, {})


def stable_json_dumps(payload):
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def config_hash(system):
    """sha256 of the canonical JSON of a resolved system."""
    return hashlib.sha256(stable_json_dumps(system.canonical()).encode("utf-8")).hexdigest()


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"cannot serialise {type(value).__name__}")


def _finite(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _finite(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_finite(v) for v in value]
    return value


def write_report(report, output=None):
    """Write a JSON report to ``output`` or stdout."""
    text = json.dumps(_finite(report), indent=2, default=_json_default)
    if output is None:
        sys.stdout.write(text + "\n")
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        logger.info("report written to %s", output)


def write_frame(frame, fmt=ids.OUT_CSV, output=None):
    """Write a DataFrame as CSV or JSON records to ``output`` or stdout."""
    if fmt == ids.OUT_CSV:
        text = frame.to_csv(index=False)
    else:
        text = frame.to_json(orient="records", indent=2)
    if output is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
        logger.info("table written to %s", output)
