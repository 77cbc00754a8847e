"""JSON project files.

Schema (version 1)::

    {
      "version": 1,
      "activities": ["a", "b", "c"],
      "sf_lags":    {"<finishing>": {"<starting>": lag, ...}, ...},
      "fs_lags":    {"<starting>": {"<finished>": lag, ...}, ...},
      "early_start": {"<activity>": time, ...},
      "due_date":    {"<activity>": time, ...}
    }

``sf_lags[i][j]`` is the least time from the start of ``j`` to the completion
of ``i``; ``fs_lags[i][j]`` the least time from the completion of ``j`` to the
start of ``i``.  Numbers are integers or ``"num/den"`` strings.  A missing lag
means "no constraint"; infinities are never written.  Only ``activities`` and
``sf_lags`` are required.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .errors import ParseError, ValidationError
from .linalg import Matrix
from .scheduling import ProjectSpec
from .semifield import MAXPLUS, ZERO

SCHEMA_VERSION = 1
_KEYS = {"version", "activities", "sf_lags", "fs_lags", "early_start", "due_date"}


def _number(raw, sf, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, str, Fraction, float)):
        raise ParseError(f"{where}: expected an integer or 'num/den' string, got {raw!r}")
    if isinstance(raw, str):
        try:
            raw = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: cannot read {raw!r} as a rational") from exc
    return sf.coerce(raw)


def _lag_matrix(raw, index: dict, sf, label: str) -> Matrix:
    if not isinstance(raw, dict):
        raise ParseError(f"{label} must be an object keyed by activity name")
    n = len(index)
    rows = [[ZERO] * n for _ in range(n)]
    for i_name, inner in raw.items():
        if i_name not in index:
            raise ValidationError(f"{label}: unknown activity {i_name!r}")
        if not isinstance(inner, dict):
            raise ParseError(f"{label}[{i_name!r}] must be an object")
        for j_name, lag in inner.items():
            if j_name not in index:
                raise ValidationError(f"{label}[{i_name!r}]: unknown activity {j_name!r}")
            rows[index[i_name]][index[j_name]] = _number(lag, sf, f"{label}[{i_name!r}][{j_name!r}]")
    return Matrix(rows, sf)


def _times(raw, index: dict, sf, label: str) -> Matrix:
    if not isinstance(raw, dict):
        raise ParseError(f"{label} must be an object keyed by activity name")
    out = [ZERO] * len(index)
    for name, t in raw.items():
        if name not in index:
            raise ValidationError(f"{label}: unknown activity {name!r}")
        out[index[name]] = _number(t, sf, f"{label}[{name!r}]")
    return Matrix.column(out, sf)


def project_from_dict(data: dict, sf=MAXPLUS) -> ProjectSpec:
    if not isinstance(data, dict):
        raise ParseError("project file must contain a JSON object")
    unknown = set(data) - _KEYS
    if unknown:
        raise ValidationError(f"unknown fields: {sorted(unknown)}")
    version = data.get("version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"unsupported schema version {version!r}")
    names = data.get("activities")
    if not isinstance(names, list) or not names or not all(isinstance(s, str) for s in names):
        raise ParseError("'activities' must be a non-empty list of names")
    if len(set(names)) != len(names):
        raise ValidationError("activity names must be unique")
    if "sf_lags" not in data:
        raise ValidationError("'sf_lags' is required")
    index = {name: k for k, name in enumerate(names)}
    C = _lag_matrix(data["sf_lags"], index, sf, "sf_lags")
    D = _lag_matrix(data["fs_lags"], index, sf, "fs_lags") if "fs_lags" in data else None
    g = _times(data["early_start"], index, sf, "early_start") if "early_start" in data else None
    f = _times(data["due_date"], index, sf, "due_date") if "due_date" in data else None
    return ProjectSpec(C, D, g, f, tuple(names))


def loads(text: str, sf=MAXPLUS) -> ProjectSpec:
    try:
        data = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return project_from_dict(data, sf)


def load(path, sf=MAXPLUS) -> ProjectSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text, sf)


def _encode(a):
    a = Fraction(a)
    return a.numerator if a.denominator == 1 else f"{a.numerator}/{a.denominator}"


def activity_names(project: ProjectSpec) -> tuple[str, ...]:
    return project.names or tuple(str(k + 1) for k in range(project.n))


def project_to_dict(project: ProjectSpec) -> dict:
    names = activity_names(project)

    def lags(M: Matrix) -> dict:
        out = {}
        for i, r in enumerate(M.rows):
            inner = {names[j]: _encode(a) for j, a in enumerate(r) if a is not ZERO}
            if inner:
                out[names[i]] = inner
        return out

    def times(v: Matrix) -> dict:
        return {names[k]: _encode(a) for k, a in enumerate(v.entries()) if a is not ZERO}

    data = {"version": SCHEMA_VERSION, "activities": list(names), "sf_lags": lags(project.C)}
    if project.D is not None:
        data["fs_lags"] = lags(project.D)
    if project.g is not None:
        data["early_start"] = times(project.g)
    if project.f is not None:
        data["due_date"] = times(project.f)
    return data


def dumps(project: ProjectSpec) -> str:
    """Canonical serialization (sorted keys, fixed indentation)."""
    return json.dumps(project_to_dict(project), indent=2, sort_keys=True) + "\n"
