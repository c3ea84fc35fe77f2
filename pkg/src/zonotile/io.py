"""Instance files and report serialization.

Instance schema (JSON)::

    {
      "format": 1,
      "name": "hexagon",                      # optional
      "dimension": 2,
      "generators": [["1", "0"], ["0", "1"], ["1", "2"]],
      "parallelotope_spec": [                 # optional
        {"p": ["0", "1"], "t": ["2", "6"]}
      ]
    }

Entries are exact rationals written as strings (``"3/4"``, ``"-2"``); JSON
integers are accepted, floats are rejected. At least one of ``generators`` and
``parallelotope_spec`` must be present.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import InvalidInstanceError
from .linalg import Matrix
from .matroid import GeneratorSet
from .voronoi import ParallelotopeSpec

FORMAT_VERSION = 1
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


@dataclass
class Instance:
    dimension: int
    generators: GeneratorSet | None = None
    spec: ParallelotopeSpec | None = None
    name: str | None = None


def parse_rational(value: Any, field: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InvalidInstanceError(f"expected an exact rational string, got {value!r}", field)
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value.strip()):
        raise InvalidInstanceError(f"not an exact rational: {value!r}", field)
    try:
        return Fraction(value.strip())
    except ZeroDivisionError:
        raise InvalidInstanceError(f"zero denominator in {value!r}", field) from None


def _parse_vector(value: Any, n: int, field: str) -> tuple[Fraction, ...]:
    if not isinstance(value, list):
        raise InvalidInstanceError("expected a list of rationals", field)
    if len(value) != n:
        raise InvalidInstanceError(f"expected {n} entries, got {len(value)}", field)
    return tuple(parse_rational(x, f"{field}[{k}]") for k, x in enumerate(value))


def instance_from_dict(data: Any) -> Instance:
    if not isinstance(data, dict):
        raise InvalidInstanceError("instance must be a JSON object")
    fmt = data.get("format", FORMAT_VERSION)
    if fmt != FORMAT_VERSION:
        raise InvalidInstanceError(f"unsupported format {fmt!r}", "format")
    n = data.get("dimension")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InvalidInstanceError("must be a positive integer", "dimension")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise InvalidInstanceError("must be a string", "name")

    generators = None
    if "generators" in data:
        raw = data["generators"]
        if not isinstance(raw, list):
            raise InvalidInstanceError("expected a list of vectors", "generators")
        vectors = [_parse_vector(z, n, f"generators[{i}]") for i, z in enumerate(raw)]
        generators = GeneratorSet(vectors, dimension=n)

    spec = None
    if "parallelotope_spec" in data:
        raw = data["parallelotope_spec"]
        if not isinstance(raw, list):
            raise InvalidInstanceError("expected a list of {p, t} objects", "parallelotope_spec")
        pairs = []
        for j, item in enumerate(raw):
            field = f"parallelotope_spec[{j}]"
            if not isinstance(item, dict) or "p" not in item or "t" not in item:
                raise InvalidInstanceError("expected an object with 'p' and 't'", field)
            pairs.append((_parse_vector(item["p"], n, field + ".p"), _parse_vector(item["t"], n, field + ".t")))
        spec = ParallelotopeSpec(tuple(pairs))

    if generators is None and spec is None:
        raise InvalidInstanceError("either generators or parallelotope_spec is required", "generators")
    return Instance(n, generators, spec, name)


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise InvalidInstanceError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInstanceError(f"invalid JSON in {path}: {exc}") from exc
    inst = instance_from_dict(data)
    if inst.name is None:
        inst.name = path.stem
    return inst


def rat(x: Fraction) -> str:
    return str(x)


def rat_vector(v) -> list[str]:
    return [str(a) for a in v]


def rat_matrix(M: Matrix) -> list[list[str]]:
    return [rat_vector(row) for row in M.tolist()]


def instance_to_dict(inst: Instance) -> dict:
    out: dict[str, Any] = {"format": FORMAT_VERSION}
    if inst.name is not None:
        out["name"] = inst.name
    out["dimension"] = inst.dimension
    if inst.generators is not None:
        out["generators"] = [rat_vector(z) for z in inst.generators]
    if inst.spec is not None:
        out["parallelotope_spec"] = [{"p": rat_vector(p), "t": rat_vector(t)} for p, t in inst.spec.pairs]
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"
