"""Deterministic JSON serialization for problem files and report documents.

Reports are plain JSON objects, emitted with sorted keys, two-space indent and
every float rendered with 17 significant digits, so identical inputs produce
byte-identical documents and parse(serialize(x)) == x.
"""

from __future__ import annotations

import json
import math

from .bounds import Bits, BoundsReport, CccBound, ConcentrationBounds


def format_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("reports must not contain NaN or infinite values")
    text = format(float(x), ".17g")
    if not any(c in text for c in ".e"):
        text += ".0"
    return text


def dumps(obj) -> str:
    """Serialize to deterministic JSON text (trailing newline included)."""
    pieces: list[str] = []
    _emit(obj, pieces, 0)
    return "".join(pieces) + "\n"


def _emit(obj, out: list[str], depth: int) -> None:
    pad = "  " * depth
    inner = "  " * (depth + 1)
    if obj is None or obj is True or obj is False:
        out.append("null" if obj is None else ("true" if obj else "false"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj)
        for i, key in enumerate(keys):
            if not isinstance(key, str):
                raise TypeError(f"report keys must be strings, got {key!r}")
            out.append(inner + json.dumps(key) + ": ")
            _emit(obj[key], out, depth + 1)
            out.append(",\n" if i + 1 < len(keys) else "\n")
        out.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(obj):
            out.append(inner)
            _emit(item, out, depth + 1)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} into a report")


def loads(text: str):
    return json.loads(text)


def complex_pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def bits_doc(bits: Bits | None) -> dict | None:
    """{"bits": float, "exact": [coefNum, coefDen, argNum, argDen] | null}."""
    if bits is None:
        return None
    exact = None
    if bits.is_exact:
        exact = [
            bits.coefficient.numerator,
            bits.coefficient.denominator,
            bits.argument.numerator,
            bits.argument.denominator,
        ]
    return {"bits": bits.value, "exact": exact}


def ccc_doc(bound: CccBound | None) -> dict | None:
    if bound is None:
        return None
    doc = bits_doc(bound.bits)
    doc["assumption"] = bound.assumption
    return doc


def concentration_doc(conc: ConcentrationBounds | None) -> dict | None:
    if conc is None:
        return None
    return {
        "copies": conc.n_copies,
        "bells": conc.m_bells,
        "feasible": conc.feasible,
        "mMax": conc.m_max,
        "C1LowerBound": bits_doc(conc.c1_lower_bound),
        "C2": bits_doc(conc.c2),
    }


def bounds_doc(report: BoundsReport) -> dict:
    return {
        "d": report.d,
        "n": report.n,
        "Et": bits_doc(report.et),
        "ESch": bits_doc(report.e_sch),
        "teleportFeasible": report.teleport_feasible,
        "cccLowerBound": ccc_doc(report.ccc_lower_bound),
        "residualCap": bits_doc(report.residual_cap),
        "residualCapInteger": bits_doc(report.residual_cap_integer),
        "loccBound": bits_doc(report.locc_bound),
        "concentration": concentration_doc(report.concentration),
    }
