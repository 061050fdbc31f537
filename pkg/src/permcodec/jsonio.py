"""JSON schemas for multisets, latents and tensors.

Writers emit numbers as decimal with 17 significant digits, which
round-trips every finite double exactly, and key order is fixed, so equal
values serialize to identical bytes. Readers validate the documents and
rebuild in-memory values bit-exactly; multiset elements may arrive in any
order and are canonicalized on read.

Schemas:
  multiset    {"dim": D, "capacity": N, "elements": [[f64 x D], ...]}
  poly latent {"N":..., "D":..., "shifted": bool, "sentinel": [...]?, "values": [f64...]}
  ident latent{"N":..., "D":..., "identifier": "prime_log", "values": [f64 x 2DN],
               "shifted"/"sentinel" added only for the variable-size variant}
  tensor      {"N":..., "K":..., "D":..., "data": nested arrays, entity-major}
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import SchemaError
from .ident_codec import IdentLatent
from .multiset import Multiset, canonicalize
from .poly_encoder import PolyLatent
from .tensor_codec import Tensor


def _fmt(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise SchemaError("cannot serialize a non-finite number")
    return format(x, ".17g")


def _emit(value, out: list) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value))
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(_fmt(value))
    elif isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(k)))
            out.append(": ")
            _emit(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple, np.ndarray)):
        out.append("[")
        seq = value.tolist() if isinstance(value, np.ndarray) else value
        for i, v in enumerate(seq):
            if i:
                out.append(", ")
            _emit(v, out)
        out.append("]")
    else:
        raise SchemaError(f"cannot serialize {type(value).__name__}")


def dumps(value) -> str:
    """Deterministic JSON text with lossless doubles."""
    out: list = []
    _emit(value, out)
    out.append("\n")
    return "".join(out)


def _load(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("expected a JSON object")
    return doc


def _require(doc: dict, key: str, kinds) -> object:
    if key not in doc:
        raise SchemaError(f"missing key {key!r}")
    if not isinstance(doc[key], kinds):
        raise SchemaError(f"key {key!r} has wrong type")
    return doc[key]


def _float_list(raw, what: str) -> list:
    if not isinstance(raw, list) or not all(isinstance(v, (int, float)) for v in raw):
        raise SchemaError(f"{what} must be a flat list of numbers")
    return [float(v) for v in raw]


# --- multiset ---------------------------------------------------------------


def multiset_to_json(x: Multiset) -> str:
    return dumps({"dim": x.dim, "capacity": x.capacity, "elements": [list(e) for e in x]})


def multiset_from_json(text: str) -> Multiset:
    doc = _load(text)
    dim = int(_require(doc, "dim", int))
    capacity = int(_require(doc, "capacity", int))
    elements = _require(doc, "elements", list)
    rows = []
    for e in elements:
        row = _float_list(e, "element")
        if len(row) != dim:
            raise SchemaError(f"element of length {len(row)} != dim {dim}")
        rows.append(row)
    try:
        return canonicalize(rows, capacity=capacity)
    except Exception as exc:
        raise SchemaError(str(exc)) from exc


# --- poly latent -------------------------------------------------------------


def poly_latent_to_json(latent: PolyLatent) -> str:
    doc = {"N": latent.n_max, "D": latent.dim, "shifted": latent.shifted}
    if latent.sentinel is not None:
        doc["sentinel"] = list(latent.sentinel)
    doc["values"] = latent.values
    return dumps(doc)


def poly_latent_from_json(text: str) -> PolyLatent:
    doc = _load(text)
    n = int(_require(doc, "N", int))
    d = int(_require(doc, "D", int))
    shifted = bool(_require(doc, "shifted", bool))
    values = np.array(_float_list(_require(doc, "values", list), "values"))
    sentinel = None
    if "sentinel" in doc:
        sentinel = tuple(_float_list(doc["sentinel"], "sentinel"))
        if len(sentinel) != d:
            raise SchemaError("sentinel dimension mismatch")
    if shifted and sentinel is None:
        raise SchemaError("shifted latent requires a sentinel")
    try:
        return PolyLatent(values=values, n_max=n, dim=d, shifted=shifted, sentinel=sentinel)
    except Exception as exc:
        raise SchemaError(str(exc)) from exc


# --- ident latent ------------------------------------------------------------


def ident_latent_to_json(latent: IdentLatent) -> str:
    doc = {"N": latent.n_max, "D": latent.dim, "identifier": latent.identifier_kind}
    if latent.shifted:
        doc["shifted"] = True
        doc["sentinel"] = list(latent.sentinel)
    doc["values"] = latent.interleaved()
    return dumps(doc)


def ident_latent_from_json(text: str) -> IdentLatent:
    doc = _load(text)
    n = int(_require(doc, "N", int))
    d = int(_require(doc, "D", int))
    kind = str(_require(doc, "identifier", str))
    values = _float_list(_require(doc, "values", list), "values")
    if len(values) != 2 * d * n:
        raise SchemaError(f"expected {2 * d * n} values, got {len(values)}")
    flat = np.array(values)
    matrix = (flat[0::2] + 1j * flat[1::2]).reshape(d, n)
    shifted = bool(doc.get("shifted", False))
    sentinel = None
    if "sentinel" in doc:
        sentinel = tuple(_float_list(doc["sentinel"], "sentinel"))
    if shifted and sentinel is None:
        raise SchemaError("shifted latent requires a sentinel")
    try:
        return IdentLatent(
            matrix=matrix, n_max=n, dim=d, identifier_kind=kind, shifted=shifted, sentinel=sentinel
        )
    except Exception as exc:
        raise SchemaError(str(exc)) from exc


# --- tensor ------------------------------------------------------------------


def tensor_to_json(t: Tensor) -> str:
    return dumps({"N": t.entities, "K": t.order, "D": t.dim, "data": t.data})


def tensor_from_json(text: str) -> Tensor:
    doc = _load(text)
    n = int(_require(doc, "N", int))
    k = int(_require(doc, "K", int))
    d = int(_require(doc, "D", int))
    raw = _require(doc, "data", list)
    try:
        data = np.array(raw, dtype=float)
    except ValueError as exc:
        raise SchemaError(f"ragged tensor data: {exc}") from exc
    if data.shape != (n,) * k + (d,):
        raise SchemaError(f"tensor data shape {data.shape} != {(n,) * k + (d,)}")
    try:
        return Tensor(data=data, order=k, entities=n, dim=d)
    except Exception as exc:
        raise SchemaError(str(exc)) from exc
