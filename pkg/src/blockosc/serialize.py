"""JSON codecs for every wire-facing type.

Rationals travel as exact "p/q" strings (plain integers allowed on input),
never as floats.  Parsers track a JSON-pointer-ish path so schema errors
point at the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Union

from .barriers import (
    Associated,
    BarrierDescriptor,
    Cube,
    Quotient,
    Restrict,
    Schreier,
    Sum,
)
from .blocks import Block, BlockFamily
from .errors import InvalidArgumentError, SchemaError
from .models import BarrierSequenceDescriptor
from .normspace import LpNorm, SupFamily, SupNorm, SupTerm, mn_norm_spec, \
    even_pair_fixture, section6_spec, NormSpec, Vector
from .ordinals import AT_LEAST_OMEGA_OMEGA, OrdinalCNF
from .oscillation import ToleranceSchedule
from .ramsey import Coloring, builtin_coloring
from .sets import Arithmetic, CofiniteAfter, FiniteSet, PrefixThen, SetGenerator

SCHEMA_VERSION = 1

_AT_LEAST_STR = "≥w^w"  # the codec marker for ranks at or above w^w


# ---------------------------------------------------------------------------
# Scalars and small containers


def rational_to_json(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(data: Any, path: str = "$") -> Fraction:
    if isinstance(data, bool):
        raise SchemaError(path, "expected a rational, got a boolean")
    if isinstance(data, int):
        return Fraction(data)
    if isinstance(data, str):
        try:
            return Fraction(data)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(path, f"not a p/q rational: {data!r}")
    raise SchemaError(path, f"expected a rational, got {type(data).__name__}")


def finite_set_to_json(s: FiniteSet) -> list[int]:
    return list(s.elements)


def parse_finite_set(data: Any, path: str = "$") -> FiniteSet:
    if not isinstance(data, list):
        raise SchemaError(path, "expected an array of integers")
    for i, x in enumerate(data):
        if isinstance(x, bool) or not isinstance(x, int):
            raise SchemaError(f"{path}[{i}]", "expected an integer")
    try:
        return FiniteSet(data)
    except InvalidArgumentError as exc:
        raise SchemaError(path, str(exc))


def block_to_json(b: Block) -> list[list[int]]:
    return [list(p.elements) for p in b.parts]


def parse_block(data: Any, path: str = "$") -> Block:
    if not isinstance(data, list) or not data:
        raise SchemaError(path, "expected a nonempty array of integer arrays")
    parts = tuple(
        parse_finite_set(p, f"{path}[{i}]") for i, p in enumerate(data)
    )
    try:
        return Block(parts)
    except InvalidArgumentError as exc:
        raise SchemaError(path, str(exc))


def ordinal_to_json(o: OrdinalCNF) -> Union[str, list[list[int]]]:
    if o.unbounded:
        return _AT_LEAST_STR
    return [[e, c] for e, c in o.terms]


def parse_ordinal(data: Any, path: str = "$") -> OrdinalCNF:
    if isinstance(data, str):
        if data in (_AT_LEAST_STR, ">=w^w"):
            return AT_LEAST_OMEGA_OMEGA
        raise SchemaError(path, f"unknown ordinal marker {data!r}")
    if not isinstance(data, list):
        raise SchemaError(path, "expected [exponent, coefficient] pairs")
    terms = []
    for i, pair in enumerate(data):
        if (not isinstance(pair, list) or len(pair) != 2
                or any(isinstance(x, bool) or not isinstance(x, int) for x in pair)):
            raise SchemaError(f"{path}[{i}]", "expected an [int, int] pair")
        terms.append((pair[0], pair[1]))
    try:
        return OrdinalCNF(tuple(terms))
    except InvalidArgumentError as exc:
        raise SchemaError(path, str(exc))


def ordinal_to_str(o: OrdinalCNF) -> str:
    return _AT_LEAST_STR if o.unbounded else str(o)


# ---------------------------------------------------------------------------
# Set generators


def generator_to_json(g: SetGenerator) -> dict:
    if isinstance(g, CofiniteAfter):
        return {"kind": "cofinite-after", "n": g.n}
    if isinstance(g, Arithmetic):
        return {"kind": "arithmetic", "start": g.start, "step": g.step}
    if isinstance(g, PrefixThen):
        return {
            "kind": "prefix-then",
            "prefix": finite_set_to_json(g.prefix),
            "tail": generator_to_json(g.tail),
        }
    raise InvalidArgumentError(f"no JSON form for generator {g!r}")


def _need_obj(data: Any, path: str, what: str) -> dict:
    if not isinstance(data, dict):
        raise SchemaError(path, f"expected a {what} object")
    return data


def _need_int(data: dict, key: str, path: str) -> int:
    if key not in data:
        raise SchemaError(f"{path}.{key}", "missing")
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{path}.{key}", "expected an integer")
    return v


def parse_generator(data: Any, path: str = "$") -> SetGenerator:
    obj = _need_obj(data, path, "generator")
    kind = obj.get("kind")
    try:
        if kind == "naturals":
            return CofiniteAfter(0)
        if kind == "cofinite-after":
            return CofiniteAfter(_need_int(obj, "n", path))
        if kind == "arithmetic":
            return Arithmetic(_need_int(obj, "start", path),
                              _need_int(obj, "step", path))
        if kind == "prefix-then":
            return PrefixThen(
                parse_finite_set(obj.get("prefix"), f"{path}.prefix"),
                parse_generator(obj.get("tail"), f"{path}.tail"),
            )
    except InvalidArgumentError as exc:
        raise SchemaError(path, str(exc))
    raise SchemaError(f"{path}.kind", f"unknown generator kind {kind!r}")


# ---------------------------------------------------------------------------
# Barrier descriptors, families, sequences


def barrier_to_json(b: BarrierDescriptor) -> dict:
    if isinstance(b, Cube):
        return {"type": "cube", "k": b.k}
    if isinstance(b, Schreier):
        return {"type": "schreier"}
    if isinstance(b, Restrict):
        return {"type": "restrict", "base": barrier_to_json(b.base),
                "to": generator_to_json(b.to)}
    if isinstance(b, Quotient):
        return {"type": "quotient", "base": barrier_to_json(b.base),
                "s": finite_set_to_json(b.s)}
    if isinstance(b, Sum):
        return {"type": "sum", "parts": [barrier_to_json(p) for p in b.parts]}
    if isinstance(b, Associated):
        return {"type": "associated", "base": barrier_to_json(b.base)}
    raise InvalidArgumentError(f"no JSON form for descriptor {b!r}")


def parse_barrier(data: Any, path: str = "$") -> BarrierDescriptor:
    obj = _need_obj(data, path, "barrier descriptor")
    t = obj.get("type")
    try:
        if t == "cube":
            return Cube(_need_int(obj, "k", path))
        if t == "schreier":
            return Schreier()
        if t == "restrict":
            return Restrict(parse_barrier(obj.get("base"), f"{path}.base"),
                            parse_generator(obj.get("to"), f"{path}.to"))
        if t == "quotient":
            return Quotient(parse_barrier(obj.get("base"), f"{path}.base"),
                            parse_finite_set(obj.get("s"), f"{path}.s"))
        if t == "sum":
            parts = obj.get("parts")
            if not isinstance(parts, list) or not parts:
                raise SchemaError(f"{path}.parts", "expected a nonempty array")
            return Sum(tuple(parse_barrier(p, f"{path}.parts[{i}]")
                             for i, p in enumerate(parts)))
        if t == "associated":
            return Associated(parse_barrier(obj.get("base"), f"{path}.base"))
    except InvalidArgumentError as exc:
        raise SchemaError(path, str(exc))
    raise SchemaError(f"{path}.type", f"unknown barrier type {t!r}")


def family_to_json(fam: BlockFamily) -> list[dict]:
    return [barrier_to_json(p) for p in fam.parts]


def parse_family(data: Any, path: str = "$") -> BlockFamily:
    if not isinstance(data, list) or not data:
        raise SchemaError(path, "expected a nonempty array of descriptors")
    parts = tuple(parse_barrier(p, f"{path}[{i}]") for i, p in enumerate(data))
    try:
        return BlockFamily(parts)
    except InvalidArgumentError as exc:
        raise SchemaError(path, str(exc))


def sequence_to_json(seq: BarrierSequenceDescriptor) -> dict:
    return {"prefix": [barrier_to_json(p) for p in seq.prefix],
            "tail": barrier_to_json(seq.tail)}


def parse_sequence(data: Any, path: str = "$") -> BarrierSequenceDescriptor:
    obj = _need_obj(data, path, "barrier sequence")
    prefix = obj.get("prefix", [])
    if not isinstance(prefix, list):
        raise SchemaError(f"{path}.prefix", "expected an array")
    parsed = tuple(parse_barrier(p, f"{path}.prefix[{i}]")
                   for i, p in enumerate(prefix))
    if "tail" not in obj:
        raise SchemaError(f"{path}.tail", "missing")
    tail = parse_barrier(obj["tail"], f"{path}.tail")
    try:
        return BarrierSequenceDescriptor(parsed, tail)
    except InvalidArgumentError as exc:
        raise SchemaError(path, str(exc))


# ---------------------------------------------------------------------------
# Norm specs and vectors


def spec_to_json(spec: NormSpec) -> dict:
    if isinstance(spec, SupNorm):
        return {"type": "sup"}
    if isinstance(spec, LpNorm):
        return {"type": "lp", "p": spec.p}
    if isinstance(spec, SupFamily):
        terms = []
        for t in spec.terms:
            entry: dict = {"w": rational_to_json(t.weight), "m": t.size}
            if t.filter is not None:
                entry["filter"] = t.filter
            terms.append(entry)
        return {"type": "supfamily", "terms": terms}
    raise InvalidArgumentError(f"no JSON form for spec {spec!r}")


def parse_spec(data: Any, path: str = "$") -> NormSpec:
    obj = _need_obj(data, path, "norm spec")
    t = obj.get("type")
    try:
        if t == "sup":
            return SupNorm()
        if t == "lp":
            return LpNorm(_need_int(obj, "p", path))
        if t == "mn":
            return mn_norm_spec(_need_int(obj, "m", path),
                                _need_int(obj, "n", path))
        if t == "section6":
            return section6_spec()
        if t == "even-pair":
            return even_pair_fixture()
        if t == "supfamily":
            raw = obj.get("terms")
            if not isinstance(raw, list) or not raw:
                raise SchemaError(f"{path}.terms", "expected a nonempty array")
            terms = []
            for i, entry in enumerate(raw):
                e = _need_obj(entry, f"{path}.terms[{i}]", "term")
                w = parse_rational(e.get("w"), f"{path}.terms[{i}].w")
                m = _need_int(e, "m", f"{path}.terms[{i}]")
                flt = e.get("filter")
                if flt is not None and not isinstance(flt, str):
                    raise SchemaError(f"{path}.terms[{i}].filter",
                                      "expected a string")
                terms.append(SupTerm(w, m, flt))
            return SupFamily(tuple(terms))
    except InvalidArgumentError as exc:
        raise SchemaError(path, str(exc))
    raise SchemaError(f"{path}.type", f"unknown spec type {t!r}")


def vector_to_json(v: Vector) -> list[list]:
    return [[i, rational_to_json(c)] for i, c in sorted(v.entries.items())]


def parse_vector(data: Any, path: str = "$") -> Vector:
    if isinstance(data, dict):
        entries = {}
        for key, val in data.items():
            try:
                idx = int(key)
            except ValueError:
                raise SchemaError(f"{path}.{key}", "keys must be integer indices")
            entries[idx] = parse_rational(val, f"{path}.{key}")
        try:
            return Vector(entries)
        except InvalidArgumentError as exc:
            raise SchemaError(path, str(exc))
    if isinstance(data, list):
        # Either [[index, value], ...] or a dense [value, ...] from slot 1.
        pairs = data and all(
            isinstance(e, list) and len(e) == 2 and isinstance(e[0], int)
            and not isinstance(e[0], bool) for e in data
        )
        entries = {}
        if pairs:
            for i, (idx, val) in enumerate(data):
                entries[idx] = parse_rational(val, f"{path}[{i}][1]")
        else:
            for i, val in enumerate(data):
                entries[i + 1] = parse_rational(val, f"{path}[{i}]")
        try:
            return Vector(entries)
        except InvalidArgumentError as exc:
            raise SchemaError(path, str(exc))
    raise SchemaError(path, "expected a vector object or array")


def parse_coeffs(data: Any, path: str = "$") -> tuple[Fraction, ...]:
    if not isinstance(data, list) or not data:
        raise SchemaError(path, "expected a nonempty array of rationals")
    return tuple(parse_rational(x, f"{path}[{i}]") for i, x in enumerate(data))


# ---------------------------------------------------------------------------
# Colorings, values tables, schedules


def parse_coloring(data: Any, path: str = "$") -> Coloring:
    if isinstance(data, str):
        try:
            return builtin_coloring(data)
        except InvalidArgumentError as exc:
            raise SchemaError(path, str(exc))
    if isinstance(data, list):
        table: dict = {}
        for i, entry in enumerate(data):
            e = _need_obj(entry, f"{path}[{i}]", "coloring entry")
            if "object" not in e or "color" not in e:
                raise SchemaError(f"{path}[{i}]", "needs object and color")
            raw = e["object"]
            if isinstance(raw, list) and raw and isinstance(raw[0], list):
                key: object = parse_block(raw, f"{path}[{i}].object")
            else:
                key = parse_finite_set(raw, f"{path}[{i}].object")
            table[key] = e["color"]
        return Coloring.from_table(table)
    obj = _need_obj(data, path, "coloring")
    kind = obj.get("kind")
    if kind == "rule":
        name = obj.get("name")
        if not isinstance(name, str):
            raise SchemaError(f"{path}.name", "expected a rule name")
        try:
            return builtin_coloring(name)
        except InvalidArgumentError as exc:
            raise SchemaError(f"{path}.name", str(exc))
    if kind == "table":
        return parse_coloring(obj.get("entries"), f"{path}.entries")
    raise SchemaError(f"{path}.kind", f"unknown coloring kind {kind!r}")


def parse_values_table(data: Any, path: str = "$") -> dict[Block, Fraction]:
    if not isinstance(data, list):
        raise SchemaError(path, "expected an array of {block, value} entries")
    out: dict[Block, Fraction] = {}
    for i, entry in enumerate(data):
        e = _need_obj(entry, f"{path}[{i}]", "values entry")
        if "block" not in e or "value" not in e:
            raise SchemaError(f"{path}[{i}]", "needs block and value")
        b = parse_block(e["block"], f"{path}[{i}].block")
        out[b] = parse_rational(e["value"], f"{path}[{i}].value")
    return out


def schedule_to_json(s: ToleranceSchedule) -> dict:
    return {"kind": "geometric", "ratio": rational_to_json(s.ratio),
            "scale": rational_to_json(s.scale)}


def parse_schedule(data: Any, path: str = "$") -> ToleranceSchedule:
    obj = _need_obj(data, path, "schedule")
    kind = obj.get("kind", "geometric")
    if kind != "geometric":
        raise SchemaError(f"{path}.kind", f"unknown schedule kind {kind!r}")
    try:
        return ToleranceSchedule(
            parse_rational(obj.get("ratio", "1/2"), f"{path}.ratio"),
            parse_rational(obj.get("scale", 1), f"{path}.scale"),
        )
    except InvalidArgumentError as exc:
        raise SchemaError(path, str(exc))


# ---------------------------------------------------------------------------
# Output helpers


def dumps(payload: dict) -> str:
    """Canonical bytes for reports: sorted keys, two-space indent."""
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
