"""Ring-definition documents: JSON in, (ring, multiplicative set) out.

Document shape:

    {"ring": <expression>, "mult_set": {"generators": [...]}}

Expression nodes: {"type": "zmod", "n": 24}, {"type": "product",
"factors": [...]}, {"type": "quotient", "base": ..., "ideal": [...]},
{"type": "idealization", "base": ..., "module": {"cyclic": [[...], ...]}},
{"type": "triangular_e", "base": ...}.  Element literals are integers for
zmod carriers and nested arrays mirroring the structure otherwise.

Semantic errors carry the offending key path; a missing mult_set defaults
to the unit set {1}, which collapses every S-notion to its classical
counterpart.
"""

from __future__ import annotations

import json

from .errors import MalformedExpressionError
from .ideals import MultiplicativeSet, mult_closure
from .rings import (
    DEFAULT_SIZE_CAP,
    FiniteRing,
    Idealization,
    ModuleSpec,
    Product,
    Quotient,
    RingExpression,
    TriangularE,
    ZMod,
    build_ring,
    freeze_literal,
    thaw_literal,
)


def _err(path: str, msg: str):
    raise MalformedExpressionError(f"{path}: {msg}")


def _expect_keys(data: dict, allowed: set[str], required: set[str], path: str):
    for key in data:
        if key not in allowed:
            _err(f"{path}.{key}", f"unknown key (allowed: {sorted(allowed)})")
    for key in required:
        if key not in data:
            _err(path, f"missing required key {key!r}")


def expression_from_json(data, path: str = "ring") -> RingExpression:
    if not isinstance(data, dict):
        _err(path, f"expected an object, got {type(data).__name__}")
    kind = data.get("type")
    if kind == "zmod":
        _expect_keys(data, {"type", "n"}, {"n"}, path)
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            _err(f"{path}.n", f"expected integer >= 2, got {n!r}")
        return ZMod(n)
    if kind == "product":
        _expect_keys(data, {"type", "factors"}, {"factors"}, path)
        factors = data["factors"]
        if not isinstance(factors, list) or not factors:
            _err(f"{path}.factors", "expected a nonempty array")
        return Product(tuple(
            expression_from_json(f, f"{path}.factors[{i}]")
            for i, f in enumerate(factors)))
    if kind == "quotient":
        _expect_keys(data, {"type", "base", "ideal"}, {"base", "ideal"}, path)
        gens = data["ideal"]
        if not isinstance(gens, list):
            _err(f"{path}.ideal", "expected an array of element literals")
        return Quotient(expression_from_json(data["base"], f"{path}.base"),
                        tuple(freeze_literal(g) for g in gens))
    if kind == "idealization":
        _expect_keys(data, {"type", "base", "module"}, {"base", "module"}, path)
        module = data["module"]
        if not isinstance(module, dict):
            _err(f"{path}.module", "expected an object")
        _expect_keys(module, {"cyclic"}, {"cyclic"}, f"{path}.module")
        cyclic = module["cyclic"]
        if not isinstance(cyclic, list) or not cyclic:
            _err(f"{path}.module.cyclic", "expected a nonempty array of generator arrays")
        comps = []
        for i, comp in enumerate(cyclic):
            if not isinstance(comp, list):
                _err(f"{path}.module.cyclic[{i}]", "expected an array of element literals")
            comps.append(tuple(freeze_literal(g) for g in comp))
        return Idealization(expression_from_json(data["base"], f"{path}.base"),
                            ModuleSpec(tuple(comps)))
    if kind == "triangular_e":
        _expect_keys(data, {"type", "base"}, {"base"}, path)
        return TriangularE(expression_from_json(data["base"], f"{path}.base"))
    _err(f"{path}.type", f"unknown ring type {kind!r}")


def expression_to_json(expr: RingExpression) -> dict:
    if isinstance(expr, ZMod):
        return {"type": "zmod", "n": expr.n}
    if isinstance(expr, Product):
        return {"type": "product",
                "factors": [expression_to_json(f) for f in expr.factors]}
    if isinstance(expr, Quotient):
        return {"type": "quotient", "base": expression_to_json(expr.base),
                "ideal": [thaw_literal(g) for g in expr.ideal]}
    if isinstance(expr, Idealization):
        return {"type": "idealization", "base": expression_to_json(expr.base),
                "module": {"cyclic": [[thaw_literal(g) for g in comp]
                                      for comp in expr.module.cyclic]}}
    if isinstance(expr, TriangularE):
        return {"type": "triangular_e", "base": expression_to_json(expr.base)}
    raise MalformedExpressionError(f"unknown expression {expr!r}")


def parse_ring_data(doc, *, size_cap: int = DEFAULT_SIZE_CAP,
                    path: str = "") -> tuple[FiniteRing, MultiplicativeSet]:
    root = path or "document"
    if not isinstance(doc, dict):
        _err(root, f"expected a JSON object, got {type(doc).__name__}")
    _expect_keys(doc, {"ring", "mult_set"}, {"ring"}, root)
    expr = expression_from_json(doc["ring"], f"{root}.ring" if path else "ring")
    ring = build_ring(expr, size_cap=size_cap)
    if "mult_set" not in doc:
        return ring, mult_closure(ring, (ring.one,))
    ms = doc["mult_set"]
    ms_path = f"{root}.mult_set" if path else "mult_set"
    if not isinstance(ms, dict):
        _err(ms_path, "expected an object")
    _expect_keys(ms, {"generators"}, {"generators"}, ms_path)
    gens = ms["generators"]
    if not isinstance(gens, list) or not gens:
        _err(f"{ms_path}.generators", "expected a nonempty array of element literals")
    idx = []
    for i, lit in enumerate(gens):
        try:
            idx.append(ring.encode(freeze_literal(lit)))
        except MalformedExpressionError as exc:
            _err(f"{ms_path}.generators[{i}]", str(exc))
    return ring, mult_closure(ring, tuple(idx))


def parse_ring_file(file_path, *, size_cap: int = DEFAULT_SIZE_CAP
                    ) -> tuple[FiniteRing, MultiplicativeSet]:
    with open(file_path, "rb") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedExpressionError(
                f"{file_path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
                f"{exc.msg}") from exc
    return parse_ring_data(doc, size_cap=size_cap)


def instance_to_json(ring: FiniteRing, S: MultiplicativeSet) -> dict:
    """Serialize back to the ring-definition document shape."""
    return {
        "ring": expression_to_json(ring.expression),
        "mult_set": {"generators": [thaw_literal(ring.decode(g)) for g in S.gens]},
    }
