"""JSON frame documents.

A document fixes one algebra signature and one module rank and holds
named objects over that module.  Complex entries are written as explicit
``[re, im]`` pairs and matrices as lists of rows::

    {
      "signature": [1, 2],
      "rank": 2,
      "frames": {"F": [[block_0, block_1], ...]},
      "operators": {"Q": [block_0, block_1]},
      "elements": {"x": [block_0, block_1]},
      "projections": {"W": [[block_0, block_1], ...]},
      "weights": {"W": [[v_00, v_01], ...]},
      "homs": {"swap": {"target_signature": [...], "block_map": [...],
                        "conjugators": [matrix, ...]}},
      "thetas": {"t": {"hom": "swap", "module_conjugators": [matrix, ...]}},
      "seeds": {"default": 7}
    }

Only ``signature``, ``rank`` and ``frames`` are required.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraSignature, BlockHom
from .errors import DocumentError
from .frames import OperatorFrame, ThetaMap
from .module import ModuleElement, ModuleOperator, ModuleSpace

__all__ = [
    "FrameDocument",
    "parse_document",
    "loads_document",
    "emit_document",
    "dumps_document",
    "encode_matrix",
    "decode_matrix",
]

_KNOWN_KEYS = {
    "signature", "rank", "frames", "operators", "elements",
    "projections", "weights", "homs", "thetas", "seeds",
}


@dataclass
class FrameDocument:
    signature: AlgebraSignature
    rank: int
    frames: dict = field(default_factory=dict)
    operators: dict = field(default_factory=dict)
    elements: dict = field(default_factory=dict)
    projections: dict = field(default_factory=dict)
    weights: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    thetas: dict = field(default_factory=dict)
    theta_homs: dict = field(default_factory=dict)
    seeds: dict = field(default_factory=dict)

    @property
    def space(self):
        return ModuleSpace(self.signature, self.rank)

    def __eq__(self, other):
        if not isinstance(other, FrameDocument):
            return NotImplemented
        return dumps_document(self) == dumps_document(other)


def encode_matrix(m):
    m = np.asarray(m, dtype=np.complex128)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _is_number(v):
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def decode_matrix(obj, shape, where):
    rows, cols = shape
    if not isinstance(obj, list) or len(obj) != rows:
        got = len(obj) if isinstance(obj, list) else type(obj).__name__
        raise DocumentError(f"{where}: expected {rows}x{cols} matrix, got {got} rows")
    out = np.empty(shape, dtype=np.complex128)
    for r, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise DocumentError(f"{where}: row {r} should have {cols} entries, got {got}")
        for c, entry in enumerate(row):
            if not (isinstance(entry, list) and len(entry) == 2 and all(_is_number(v) for v in entry)):
                raise DocumentError(f"{where}: entry ({r}, {c}) must be a [re, im] pair")
            re, im = entry
            if not (math.isfinite(re) and math.isfinite(im)):
                raise DocumentError(f"{where}: entry ({r}, {c}) is not finite")
            out[r, c] = complex(re, im)
    return out


def _decode_blocks(obj, space, kind, where):
    if not isinstance(obj, list) or len(obj) != space.n_blocks:
        raise DocumentError(f"{where}: expected a list of {space.n_blocks} blocks")
    shape = space.operator_shape if kind == "operator" else space.element_shape
    return [decode_matrix(b, shape(k), f"{where} block {k}") for k, b in enumerate(obj)]


def _decode_operator(obj, space, where):
    return ModuleOperator(space, _decode_blocks(obj, space, "operator", where))


def _named(data, key):
    section = data.get(key, {})
    if not isinstance(section, dict):
        raise DocumentError(f"'{key}' must be an object mapping names to values")
    return section


def _reject_constant(name):
    raise DocumentError(f"non-finite number {name} is not allowed")


def loads_document(text, source="<string>"):
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise DocumentError(f"{source}: top level must be an object")
    unknown = sorted(set(data) - _KNOWN_KEYS)
    if unknown:
        raise DocumentError(f"{source}: unknown keys {unknown}")
    for key in ("signature", "rank", "frames"):
        if key not in data:
            raise DocumentError(f"{source}: missing required key '{key}'")

    sig = data["signature"]
    if not (isinstance(sig, list) and sig and all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in sig)):
        raise DocumentError("signature must be a nonempty list of positive integers")
    rank = data["rank"]
    if not (isinstance(rank, int) and not isinstance(rank, bool) and rank >= 1):
        raise DocumentError("rank must be a positive integer")
    doc = FrameDocument(AlgebraSignature(tuple(sig)), rank)
    space = doc.space

    for name, ops in _named(data, "frames").items():
        if not isinstance(ops, list) or not ops:
            raise DocumentError(f"frame '{name}' must be a nonempty list of operators")
        doc.frames[name] = OperatorFrame(
            [_decode_operator(op, space, f"frame '{name}' operator {i}") for i, op in enumerate(ops)], space
        )
    for name, op in _named(data, "operators").items():
        doc.operators[name] = _decode_operator(op, space, f"operator '{name}'")
    for name, el in _named(data, "elements").items():
        doc.elements[name] = ModuleElement(space, _decode_blocks(el, space, "element", f"element '{name}'"))
    for name, ops in _named(data, "projections").items():
        if not isinstance(ops, list) or not ops:
            raise DocumentError(f"projections '{name}' must be a nonempty list of operators")
        doc.projections[name] = [
            _decode_operator(op, space, f"projections '{name}' operator {i}") for i, op in enumerate(ops)
        ]
    for name, ws in _named(data, "weights").items():
        if name not in doc.projections:
            raise DocumentError(f"weights '{name}' have no matching projections")
        if not isinstance(ws, list) or len(ws) != len(doc.projections[name]):
            raise DocumentError(f"weights '{name}' need one entry per projection")
        rows = []
        for i, w in enumerate(ws):
            if not (isinstance(w, list) and len(w) == space.n_blocks and all(_is_number(v) and v > 0 and math.isfinite(v) for v in w)):
                raise DocumentError(f"weights '{name}' entry {i}: need {space.n_blocks} positive numbers")
            rows.append([float(v) for v in w])
        doc.weights[name] = rows
    for name, h in _named(data, "homs").items():
        where = f"hom '{name}'"
        if not isinstance(h, dict) or "target_signature" not in h or "block_map" not in h:
            raise DocumentError(f"{where}: needs target_signature and block_map")
        try:
            target = AlgebraSignature(tuple(h["target_signature"]))
            conj = h.get("conjugators")
            if conj is not None:
                if len(conj) != target.n_blocks:
                    raise DocumentError(f"{where}: one conjugator per target block is required")
                conj = [decode_matrix(u, (n, n), f"{where} conjugator {l}") for l, (u, n) in enumerate(zip(conj, target.block_dims))]
            doc.homs[name] = BlockHom(doc.signature, target, h["block_map"], conj)
        except DocumentError:
            raise
        except (ValueError, TypeError, IndexError) as exc:
            raise DocumentError(f"{where}: {exc}") from None
    for name, t in _named(data, "thetas").items():
        where = f"theta '{name}'"
        if not isinstance(t, dict) or t.get("hom") not in doc.homs:
            raise DocumentError(f"{where}: must reference a hom defined in 'homs'")
        hom = doc.homs[t["hom"]]
        target = ModuleSpace(hom.target, rank)
        gs = t.get("module_conjugators")
        if gs is not None:
            if not isinstance(gs, list) or len(gs) != target.n_blocks:
                raise DocumentError(f"{where}: one module conjugator per target block is required")
            gs = [decode_matrix(g, target.operator_shape(l), f"{where} module conjugator {l}") for l, g in enumerate(gs)]
        try:
            doc.thetas[name] = ThetaMap(space, target, hom, gs)
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from None
        doc.theta_homs[name] = t["hom"]
    for name, s in _named(data, "seeds").items():
        if not (isinstance(s, int) and not isinstance(s, bool) and s >= 0):
            raise DocumentError(f"seed '{name}' must be a nonnegative integer")
        doc.seeds[name] = s
    return doc


def parse_document(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return loads_document(text, source=str(path))


def emit_document(doc):
    """Plain-JSON form of ``doc``; parsing it back gives an equal document."""
    out = {"signature": list(doc.signature.block_dims), "rank": doc.rank}
    out["frames"] = {n: [[encode_matrix(m) for m in t.blocks] for t in F.ops] for n, F in doc.frames.items()}
    if doc.operators:
        out["operators"] = {n: [encode_matrix(m) for m in t.blocks] for n, t in doc.operators.items()}
    if doc.elements:
        out["elements"] = {n: [encode_matrix(m) for m in x.blocks] for n, x in doc.elements.items()}
    if doc.projections:
        out["projections"] = {n: [[encode_matrix(m) for m in p.blocks] for p in ps] for n, ps in doc.projections.items()}
    if doc.weights:
        out["weights"] = {n: [list(w) for w in ws] for n, ws in doc.weights.items()}
    if doc.homs:
        out["homs"] = {
            n: {
                "target_signature": list(h.target.block_dims),
                "block_map": list(h.block_map),
                "conjugators": [encode_matrix(u) for u in h.conjugators],
            }
            for n, h in doc.homs.items()
        }
    if doc.thetas:
        out["thetas"] = {
            n: {"hom": doc.theta_homs[n], "module_conjugators": [encode_matrix(g) for g in t.module_conjugators]}
            for n, t in doc.thetas.items()
        }
    if doc.seeds:
        out["seeds"] = dict(doc.seeds)
    return out


def dumps_document(doc):
    return json.dumps(emit_document(doc), separators=(",", ":"), sort_keys=False) + "\n"
