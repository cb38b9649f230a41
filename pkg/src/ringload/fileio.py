"""Instance file format (UTF-8 JSON) and routing reports.

Instance document:

    {"n": int, "demands": [{"i": int, "j": int, "d": int, "cw": number?}, ...]}

"d" is an integer demand value; "cw" is the clockwise split amount, an
integer or half-integer (e.g. 3 or 1.5).  Either every demand carries "cw"
or none does; in the latter case the document describes an instance
without a split routing.  Unknown keys are ignored.

Routing report (produced, never parsed):

    {"dirs": ["cw"|"ccw", ...], "max_increase": "p/q", "loads": ["p/q", ...]}

All numeric report values are exact rational strings; no floating point
appears in any output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import InstanceSyntaxError, SchemaError
from .model import Demand, RingInstance, SplitRouting, UnsplitRouting, validate_instance
from .scaled import SCALE, Scaled, from_int, rational_str, to_fraction


def _require_int(obj: dict, key: str, where: str) -> int:
    if key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: field {key!r} must be an integer")
    return value


def _scaled_half_integer(value: object, where: str) -> Scaled:
    # json parse hook turns every literal with a '.' or exponent into Fraction
    if isinstance(value, bool):
        raise SchemaError(f"{where}: field 'cw' must be a number")
    if isinstance(value, int):
        return from_int(value)
    if isinstance(value, Fraction):
        scaled = value * SCALE
        if scaled.denominator == 1 and value.denominator in (1, 2):
            return int(scaled)
        raise SchemaError(f"{where}: 'cw' must be an integer or half-integer")
    raise SchemaError(f"{where}: field 'cw' must be a number")


def parse_instance(data: bytes | str) -> tuple[RingInstance, SplitRouting | None]:
    """Parse and validate an instance document; the split section is optional."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data, parse_float=Fraction)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InstanceSyntaxError(str(exc)) from exc
    if not isinstance(doc, dict):
        raise SchemaError("top-level value must be an object")
    n = _require_int(doc, "n", "instance")
    raw_demands = doc.get("demands")
    if not isinstance(raw_demands, list):
        raise SchemaError("instance: field 'demands' must be a list")

    demands: list[Demand] = []
    cw_amounts: list[Scaled] = []
    with_cw = 0
    for pos, entry in enumerate(raw_demands):
        where = f"demand #{pos}"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}: must be an object")
        i = _require_int(entry, "i", where)
        j = _require_int(entry, "j", where)
        d = _require_int(entry, "d", where)
        demands.append(Demand(i, j, from_int(d)))
        if "cw" in entry:
            with_cw += 1
            cw_amounts.append(_scaled_half_integer(entry["cw"], where))
    if with_cw not in (0, len(demands)):
        raise SchemaError("either every demand carries 'cw' or none does")

    inst = RingInstance(n, tuple(demands))
    split = SplitRouting(tuple(cw_amounts)) if with_cw else None
    validate_instance(inst, split)
    return inst, split


def _cw_json_value(scaled: Scaled) -> int | float:
    frac = to_fraction(scaled)
    if frac.denominator == 1:
        return int(frac)
    return float(frac)  # exact: denominator is 2


def write_instance(inst: RingInstance, split: SplitRouting | None = None) -> bytes:
    """Serialize; write_instance / parse_instance round-trip exactly."""
    validate_instance(inst, split)
    demands = []
    for pos, dem in enumerate(inst.demands):
        entry: dict[str, object] = {"i": dem.i, "j": dem.j, "d": dem.d // SCALE}
        if split is not None:
            entry["cw"] = _cw_json_value(split.cw[pos])
        demands.append(entry)
    doc = {"n": inst.n, "demands": demands}
    return (json.dumps(doc, indent=1) + "\n").encode("utf-8")


def routing_report(
    dirs: UnsplitRouting, max_increase: Scaled, loads: tuple[Scaled, ...]
) -> dict:
    """Routing output document with exact rational strings."""
    return {
        "dirs": list(dirs.dirs),
        "max_increase": rational_str(max_increase),
        "loads": [rational_str(load) for load in loads],
    }
