"""JSON and CSV formats: channel files, profiles, reports and bound curves.

Every number written out is rounded to 12 significant digits, so reruns
with the same inputs produce the same bytes.
"""
import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import channels
from .errors import InvalidChannel, InvalidProfile
from .tradeoff import BoundCurve, ChannelProfile, Sample, exact

DIGITS = 12
CSV_HEADER = ("coord", "lower", "upper", "exact", "active_lower", "active_upper")


def fmt(v) -> str:
    """Text form used in CSV cells: 12 significant digits, ``inf``, or blank."""
    if v is None:
        return ""
    v = float(v)
    if v == math.inf:
        return "inf"
    if v == 0:
        return "0"
    return f"{v:.{DIGITS}g}"


def _round(v: float):
    if not math.isfinite(v):
        return "inf" if v > 0 else ("-inf" if v < 0 else "nan")
    if v == 0:
        return 0.0
    return float(f"{v:.{DIGITS}g}")


def jsonable(obj):
    """Recursively convert to JSON-ready values with rounded floats.

    Complex arrays become nested ``[re, im]`` pairs.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating, Fraction)):
        return _round(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        return [_round(obj.real), _round(obj.imag)]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"


def _read_json(src):
    if isinstance(src, dict):
        return src
    text = Path(src).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InvalidProfile(f"{src}: not valid JSON ({e})") from None


def _entry(v):
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise InvalidChannel(f"complex entry must be [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, str):
        return complex(v.replace(" ", ""))
    return complex(v)


def channel_from_dict(d: dict) -> channels.QuantumChannel:
    """``{"kraus": [...]}`` with [re, im] or real entries, or ``{"name", "d", "prob"}``."""
    if not isinstance(d, dict):
        raise InvalidChannel("channel description must be a JSON object")
    if "kraus" in d:
        try:
            ops = [np.array([[_entry(v) for v in row] for row in k], dtype=complex) for k in d["kraus"]]
        except (TypeError, ValueError) as e:
            raise InvalidChannel(f"malformed Kraus operator: {e}") from None
        if any(k.ndim != 2 for k in ops):
            raise InvalidChannel("each Kraus operator must be a matrix")
        return channels.from_kraus(ops, d.get("label", "custom"))
    if "name" in d:
        params = d.get("params", {})
        dim = int(d.get("d", params.get("d", 2)))
        prob = float(d.get("prob", params.get("prob", 0.0)))
        try:
            return channels.standard_channel(d["name"], dim, prob)
        except ValueError as e:
            raise InvalidChannel(str(e)) from None
    raise InvalidChannel("channel JSON needs either 'kraus' or 'name'")


def channel_to_dict(ch: channels.QuantumChannel) -> dict:
    return {"label": ch.label, "kraus": jsonable(ch.kraus)}


def load_channel(src) -> channels.QuantumChannel:
    try:
        return channel_from_dict(_read_json(src))
    except InvalidProfile as e:
        raise InvalidChannel(str(e)) from None


def load_profile(src) -> ChannelProfile:
    d = _read_json(src)
    if not isinstance(d, dict):
        raise InvalidProfile("profile must be a JSON object")
    return ChannelProfile.from_dict(d)


def profile_json(pr: ChannelProfile) -> str:
    return dumps(pr.to_dict())


def curve_csv(curve: BoundCurve) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for s in curve.samples:
        w.writerow([fmt(s.coord), fmt(s.lower), fmt(s.upper), fmt(s.exact), s.active_lower, s.active_upper])
    return buf.getvalue()


def read_curve_csv(text: str, axis: str = "p") -> BoundCurve:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != CSV_HEADER:
        raise InvalidProfile("curve CSV has an unexpected header")
    samples = []
    for r in rows[1:]:
        c, lo, up, ex, tl, tu = r
        samples.append(Sample(exact(c), exact(lo), exact(up), exact(ex) if ex else None, tl, tu))
    return BoundCurve(axis, tuple(samples))
