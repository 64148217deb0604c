"""Text formats for points, lines, surfaces, configurations and flat reports."""
from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from typing import Iterable, TextIO

from .exactalg import Field, HomogPoly, make_field

_VAR = re.compile(r"x([0-3])(?:\^(\d+))?")


def format_poly(f: HomogPoly) -> str:
    if f.is_zero():
        return "0"
    F = f.field
    parts = []
    for ex, c in f.sorted_terms():
        mono = " ".join(f"x{i}^{e}" for i, e in enumerate(ex))
        parts.append(f"{F.fmt(c)}*{mono}")
    return " + ".join(parts)


def _split_terms(s: str):
    """Split on top-level + and - (a leading - stays with its term)."""
    terms, cur, depth = [], "", 0
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-":
            stripped = cur.strip()
            if stripped and not stripped.endswith(("*", "^", "/")):
                terms.append(stripped)
                cur = "" if ch == "+" else "-"
                continue
            if ch == "+":
                continue
        cur += ch
    if cur.strip():
        terms.append(cur.strip())
    return terms


def parse_poly(text: str, field: Field, nvars: int = 4) -> HomogPoly:
    text = text.strip()
    terms = {}
    degree = None
    for raw in _split_terms(text):
        sign = 1
        t = raw.strip()
        while t.startswith("-"):
            sign, t = -sign, t[1:].strip()
        coeff = field.one
        m = re.match(r"^(\[[^\]]*\]|[0-9]+(?:/[0-9]+)?)\s*\*?\s*", t)
        if m and not t.startswith("x"):
            coeff = field.parse(m.group(1))
            t = t[m.end():]
        ex = [0] * nvars
        rest = t
        for vm in _VAR.finditer(t):
            i = int(vm.group(1))
            if i >= nvars:
                raise ValueError(f"variable x{i} out of range")
            ex[i] += int(vm.group(2) or 1)
        rest = _VAR.sub("", t).replace("*", "").strip()
        if rest:
            raise ValueError(f"cannot parse term {raw!r}")
        if sign < 0:
            coeff = field.neg(coeff)
        ex = tuple(ex)
        d = sum(ex)
        if degree is None:
            degree = d
        elif d != degree:
            raise ValueError("polynomial is not homogeneous")
        terms[ex] = field.add(terms[ex], coeff) if ex in terms else coeff
    if degree is None:
        raise ValueError("empty polynomial")
    return HomogPoly(field, nvars, degree, terms)


def format_point(p) -> str:
    return str(p)


def parse_point(text: str, field: Field):
    from .projgeom import ProjPoint

    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad point {text!r}")
    body = text[1:-1]
    parts = body.split(":")
    if len(parts) != 4:
        raise ValueError(f"point needs 4 coordinates: {text!r}")
    return ProjPoint(field, tuple(field.parse(x) for x in parts))


def _bracket_tokens(text: str):
    toks, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        if depth > 0:
            cur += ch
        if ch == "]":
            depth -= 1
            if depth == 0:
                toks.append(cur)
                cur = ""
    return toks


def write_config(config, out: TextIO | None = None) -> str:
    buf = io.StringIO()
    buf.write(f"field {config.field.spec}\n")
    for L in config.lines:
        buf.write(f"line {L}\n")
    for p in config.points:
        buf.write(f"point {p}\n")
    s = buf.getvalue()
    if out is not None:
        out.write(s)
    return s


def read_config(text: str):
    from .incidence import Configuration
    from .projgeom import line_through

    field = None
    lines, points = [], []
    for no, raw in enumerate(text.splitlines(), 1):
        row = raw.split("#", 1)[0].strip()
        if not row:
            continue
        key, _, rest = row.partition(" ")
        if key == "field":
            field = make_field(rest.strip())
            continue
        if field is None:
            raise ValueError(f"line {no}: 'field' header must come first")
        if key == "point":
            points.append(parse_point(rest, field))
        elif key == "line":
            toks = _bracket_tokens(rest)
            if len(toks) != 2:
                raise ValueError(f"line {no}: a line needs two points")
            lines.append(line_through(parse_point(toks[0], field), parse_point(toks[1], field)))
        else:
            raise ValueError(f"line {no}: unknown record {key!r}")
    if field is None:
        raise ValueError("missing 'field' header")
    return Configuration(field, lines, points)


def read_surface(text: str, field: Field | None = None):
    """Surface file: optional 'field <spec>' header, then the polynomial (may span lines)."""
    from .projgeom import Surface

    body = []
    spec_field = None
    for raw in text.splitlines():
        row = raw.split("#", 1)[0].strip()
        if not row:
            continue
        if row.startswith("field "):
            spec_field = make_field(row[6:].strip())
        else:
            body.append(row)
    F = field or spec_field or make_field("Q")
    return Surface(F, parse_poly(" ".join(body), F))


def _plain(v, text_bools=True):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, bool):
        if not text_bools:
            return v
        return "true" if v else "false"
    if isinstance(v, dict):
        return {str(k): _plain(x, text_bools) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x, text_bools) for x in v]
    if v is None or isinstance(v, (int, float, str)):
        return v
    return str(v)


def format_kv(record: dict) -> str:
    out = []
    for k, v in record.items():
        v = _plain(v)
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True, separators=(",", ":"))
        elif v is None:
            v = "none"
        out.append(f"{k}={v}")
    return "\n".join(out) + "\n"


def format_json(record: dict) -> str:
    return json.dumps({k: _plain(v, False) for k, v in record.items()}, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def format_csv(record: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    keys = list(record)
    w.writerow(keys)
    row = []
    for k in keys:
        v = _plain(record[k])
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True, separators=(",", ":"))
        row.append(v)
    w.writerow(row)
    return buf.getvalue()
