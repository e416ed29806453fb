"""Canonical report serialization: byte-identical JSON across runs.

Rationals serialize as "p/q" strings, cyclotomics as conductor + coefficient
vectors, sets as sorted lists; keys are sorted and floats never appear.
"""

import json
from dataclasses import is_dataclass
from fractions import Fraction

from .cyclotomic import Cyclotomic

SCHEMA = "epcheck-report/1"


def normalize(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, Cyclotomic):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted((normalize(x) for x in obj), key=repr)
    if isinstance(obj, (list, tuple)):
        return [normalize(x) for x in obj]
    if is_dataclass(obj) and hasattr(obj, "to_json"):
        return normalize(obj.to_json())
    if hasattr(obj, "to_json"):
        return normalize(obj.to_json())
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    raise TypeError(f"cannot serialize {type(obj)!r} canonically")


def canonical_json(report: dict) -> str:
    return json.dumps(normalize(report), sort_keys=True, indent=2) + "\n"


def table_csv(table) -> str:
    """Character table as CSV; cyclotomic entries as conductor:coeff lists."""
    g = table.group
    classes = g.conjugacy_classes()
    lines = ["class_size," + ",".join(str(len(c)) for c in classes)]
    lines.append("class_rep," + ",".join(str(c[0]) for c in classes))
    for i, row in enumerate(table.values):
        cells = []
        for v in row:
            if v.is_rational():
                r = v.rational_value()
                cells.append(f"{r.numerator}/{r.denominator}")
            else:
                coeffs = ";".join(f"{c.numerator}/{c.denominator}" for c in v.coeffs)
                cells.append(f"z{v.e}:{coeffs}")
        lines.append(f"chi{i}(deg {table.degrees[i]})," + ",".join(cells))
    return "\n".join(lines) + "\n"
