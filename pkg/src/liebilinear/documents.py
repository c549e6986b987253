"""JSON system documents, schedule files and report documents.

A system document describes one induced bilinear system::

    {
      "schema_version": "1",
      "kind": "so",                  # "so" | "se" | "general"
      "n": 4,
      "drift": null,                 # optional generator block
      "controls": [{"edge": [2, 3]}, {"edge": [3, 4]}],
      "assertions": {"compact": null, "proper_action": null, "drift_periodic": null},
      "probe": [0, 1, 0, 0],         # optional
      "seed": 0,
      "tolerance": null
    }

A generator block is one of ``{"matrix": [[...], ...]}`` (row-major),
``{"edge": [i, j]}`` (so only, 1-based ``E_ij - E_ji``) or
``{"rotation": [[...]], "translation": [...]}`` (se only; either part may
be omitted).  Every block accepts an optional ``"scale"``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .affine import AffineGenerator
from .errors import InputError
from .graphcrit import EdgeSpec, omega
from .sim import ControlSchedule
from .system import GeneratorSet

__all__ = [
    "SCHEMA_VERSION",
    "SystemDocument",
    "digest",
    "dump_report",
    "load_json",
    "load_report",
    "parse_schedule",
    "parse_system",
]

SCHEMA_VERSION = "1"
_KIND_MAP = {"so": "skew", "se": "affine", "general": "general"}
_KNOWN_KEYS = {
    "schema_version", "kind", "n", "drift", "controls", "assertions",
    "probe", "seed", "tolerance", "space", "name", "description",
}


def load_json(text, source="<input>"):
    """Parse JSON text, turning syntax errors into line-addressed InputErrors."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{exc.msg} (line {exc.lineno}, column {exc.colno})", source) from None


def digest(doc):
    """SHA-256 of the canonical JSON encoding of ``doc``."""
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(canon.encode("utf-8")).hexdigest()


@dataclass
class SystemDocument:
    """A parsed system document."""

    gens: GeneratorSet
    raw: dict
    probe: list | None = None
    seed: int = 0
    tolerance: float | None = None
    edges: EdgeSpec | None = field(default=None, repr=False)


def _matrix(value, n, path):
    try:
        m = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise InputError("matrix must be a nested array of numbers", path) from None
    if m.shape != (n, n):
        raise InputError(f"matrix has shape {m.shape}, expected {(n, n)}", path)
    return m


def _vector(value, n, path):
    try:
        v = np.array(value, dtype=float)
    except (TypeError, ValueError):
        raise InputError("expected an array of numbers", path) from None
    if v.shape != (n,):
        raise InputError(f"vector has shape {v.shape}, expected ({n},)", path)
    return v


def _scale(block, path):
    s = block.get("scale", 1.0)
    if not isinstance(s, (int, float)) or isinstance(s, bool) or not np.isfinite(s) or s == 0:
        raise InputError("scale must be a finite nonzero number", f"{path}.scale")
    return float(s)


def _block(block, kind, n, path):
    """Returns (generator, edge or None)."""
    if not isinstance(block, dict):
        raise InputError("generator block must be an object", path)
    c = _scale(block, path)
    if "edge" in block:
        if kind != "skew":
            raise InputError("edge shorthand is only valid for kind 'so'", f"{path}.edge")
        e = block["edge"]
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(v, int) for v in e)):
            raise InputError("edge must be a pair of integers", f"{path}.edge")
        try:
            return c * omega(n, e[0], e[1]), (e[0], e[1])
        except InputError as exc:
            raise InputError(str(exc), f"{path}.edge") from None
    if "rotation" in block or "translation" in block:
        if kind != "affine":
            raise InputError("rotation/translation blocks need kind 'se'", path)
        rot = _matrix(block.get("rotation", np.zeros((n, n))), n, f"{path}.rotation")
        mu = _vector(block.get("translation", np.zeros(n)), n, f"{path}.translation")
        try:
            return AffineGenerator(c * rot, c * mu), None
        except InputError as exc:
            raise InputError(str(exc), path) from None
    if "matrix" in block:
        if kind == "affine":
            raise InputError("se generators take rotation/translation blocks", path)
        return c * _matrix(block["matrix"], n, f"{path}.matrix"), None
    raise InputError("block needs one of 'matrix', 'edge', 'rotation'/'translation'", path)


def parse_system(doc):
    """Validate a decoded system document.

    Raises
    ------
    InputError
        With the offending field path.
    """
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object", "$")
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise InputError(f"unknown field(s) {sorted(unknown)}", "$")
    version = str(doc.get("schema_version", SCHEMA_VERSION))
    if version != SCHEMA_VERSION:
        raise InputError(f"unsupported schema_version {version!r}", "schema_version")
    kind_name = doc.get("kind", "so")
    if kind_name not in _KIND_MAP:
        raise InputError(f"kind must be one of {sorted(_KIND_MAP)}", "kind")
    kind = _KIND_MAP[kind_name]
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError("n must be a positive integer", "n")

    controls = doc.get("controls", [])
    if not isinstance(controls, list):
        raise InputError("controls must be an array", "controls")
    gens, edges, all_edges = [], [], True
    for k, block in enumerate(controls):
        g, e = _block(block, kind, n, f"controls[{k}]")
        gens.append(g)
        edges.append(e)
        all_edges &= e is not None
    drift, drift_edge = None, None
    if doc.get("drift") is not None:
        drift, drift_edge = _block(doc["drift"], kind, n, "drift")
        all_edges &= drift_edge is not None

    assertions = doc.get("assertions") or {}
    if not isinstance(assertions, dict):
        raise InputError("assertions must be an object", "assertions")
    flags = {}
    for key in ("compact", "proper_action", "drift_periodic"):
        v = assertions.get(key)
        if v is not None and not isinstance(v, bool):
            raise InputError("must be true, false or null", f"assertions.{key}")
        flags[key] = v
    extra = set(assertions) - set(flags)
    if extra:
        raise InputError(f"unknown assertion(s) {sorted(extra)}", "assertions")

    try:
        gset = GeneratorSet(
            n=n, controls=gens, drift=drift, kind=kind, space=doc.get("space"), **flags
        )
    except InputError as exc:
        if exc.path:
            raise
        raise InputError(str(exc), "$") from None

    probe = doc.get("probe")
    if probe is not None:
        probe = list(_vector(probe, n, "probe"))
    seed = doc.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
        raise InputError("seed must be a non-negative integer", "seed")
    tol = doc.get("tolerance")
    if tol is not None and (not isinstance(tol, (int, float)) or isinstance(tol, bool) or tol <= 0):
        raise InputError("tolerance must be a positive number", "tolerance")

    spec = None
    if kind == "skew" and all_edges:
        spec = EdgeSpec(n=n, edges=edges, drift=drift_edge)
    return SystemDocument(
        gens=gset, raw=doc, probe=probe, seed=seed,
        tolerance=None if tol is None else float(tol), edges=spec,
    )


def parse_schedule(doc, m):
    """``{"mesh": [...], "values": [[...], ...], "x0": [...]}`` -> (schedule, x0)."""
    if not isinstance(doc, dict):
        raise InputError("schedule must be a JSON object", "$")
    if "mesh" not in doc or "values" not in doc:
        raise InputError("schedule needs 'mesh' and 'values'", "$")
    values = doc["values"]
    try:
        values = np.array(values, dtype=float)
    except (TypeError, ValueError):
        raise InputError("values must be a nested array of numbers", "values") from None
    if values.ndim == 1 and m == 1:
        values = values[:, None]
    if values.ndim != 2 or values.shape[1] != m:
        raise InputError(f"each control value needs {m} entries", "values")
    try:
        mesh = np.array(doc["mesh"], dtype=float)
    except (TypeError, ValueError):
        raise InputError("mesh must be an array of numbers", "mesh") from None
    schedule = ControlSchedule(mesh, values)
    x0 = doc.get("x0")
    return schedule, (None if x0 is None else list(np.array(x0, dtype=float)))


def dump_report(report):
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def load_report(text):
    return load_json(text, "<report>")
