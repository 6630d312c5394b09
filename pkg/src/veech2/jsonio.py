"""Byte-stable JSON for surfaces, solution sets and verdicts.

An element a + b sqrt(d) is written as four decimal strings
``[num_a, den_a, num_b, den_b]``; the field parameter ``d`` is stored once
per document.  Output uses a fixed key order, two-space indentation and a
trailing newline, so equal objects print to identical bytes.
"""

from __future__ import annotations

import json
import re

from gmpy2 import mpq

from .classify import Status, Verdict, Witness
from .enumeration import SolutionH2, SolutionSet
from .qfield import QElem
from .surface import Surface, Vec2

__all__ = [
    "qelem_to_json",
    "qelem_from_json",
    "parse_cli_qelem",
    "surface_to_obj",
    "surface_from_obj",
    "solutions_to_obj",
    "solutions_from_obj",
    "verdict_to_obj",
    "verdict_from_obj",
    "dumps",
    "loads",
]


class FormatError(ValueError):
    pass


def qelem_to_json(x: QElem) -> list:
    return [str(x.a.numerator), str(x.a.denominator), str(x.b.numerator), str(x.b.denominator)]


def qelem_from_json(v, d: int | None) -> QElem:
    if not (isinstance(v, list) and len(v) == 4 and all(isinstance(s, str) for s in v)):
        raise FormatError(f"expected four decimal strings, got {v!r}")
    a = mpq(int(v[0]), int(v[1]))
    b = mpq(int(v[2]), int(v[3]))
    if b != 0 and d is None:
        raise FormatError("irrational coordinate in a document without d")
    return QElem(a, b, d if b != 0 else None)


def parse_cli_qelem(text: str, d: int | None) -> QElem:
    """``p,q,r`` means (p + q sqrt d)/r; ``p`` alone and ``p,q`` are accepted."""
    parts = [p.strip() for p in text.split(",")]
    if not 1 <= len(parts) <= 3:
        raise ValueError(f"bad number {text!r}: expected p,q,r")
    try:
        p = mpq(parts[0])
        q = mpq(parts[1]) if len(parts) > 1 else mpq(0)
        r = mpq(parts[2]) if len(parts) > 2 else mpq(1)
    except ValueError as exc:
        raise ValueError(f"bad number {text!r}: {exc}") from None
    if r == 0:
        raise ValueError(f"bad number {text!r}: zero denominator")
    if q != 0 and d is None:
        raise ValueError(f"bad number {text!r}: sqrt term needs --d")
    return QElem(p / r, q / r, d if q != 0 else None)


def _vec(v: Vec2) -> list:
    return [qelem_to_json(v.x), qelem_to_json(v.y)]


def _vec_from(v, d) -> Vec2:
    return Vec2(qelem_from_json(v[0], d), qelem_from_json(v[1], d))


def surface_to_obj(s: Surface) -> dict:
    return {
        "type": "surface",
        "d": s.d,
        "polygons": [[_vec(v) for v in p.vertices] for p in s.polygons],
        "gluings": [list(g) for g in s.gluings],
    }


def surface_from_obj(obj: dict) -> Surface:
    if obj.get("type") != "surface":
        raise FormatError("not a surface document")
    d = obj.get("d")
    polys = [[_vec_from(v, d) for v in p] for p in obj["polygons"]]
    return Surface(polys, [tuple(g) for g in obj["gluings"]], d)


def solutions_to_obj(ss: SolutionSet) -> dict:
    names = ("w1", "w2", "h1", "h2", "t1", "t2")
    return {
        "type": "solution-set",
        "d": ss.d,
        "c1": str(ss.c1),
        "c2": str(ss.c2),
        "box": ss.box,
        "bounds_used": ss.bounds_used,
        "count": ss.count,
        "solutions": [
            {n: qelem_to_json(x) for n, x in zip(names, sol.values())} for sol in ss.solutions
        ],
    }


def solutions_from_obj(obj: dict) -> SolutionSet:
    if obj.get("type") != "solution-set":
        raise FormatError("not a solution-set document")
    d = obj["d"]
    sols = [
        SolutionH2(*(qelem_from_json(s[n], d) for n in ("w1", "w2", "h1", "h2", "t1", "t2")))
        for s in obj["solutions"]
    ]
    ss = SolutionSet(d, mpq(obj["c1"]), mpq(obj["c2"]), obj["box"], sols)
    if ss.count != obj["count"]:
        raise FormatError("count does not match the number of solutions")
    return ss


def verdict_to_obj(v: Verdict, d: int | None = None) -> dict:
    w = None
    if v.witness is not None:
        x = v.witness
        w = {
            "direction": _vec(x.direction) if x.direction is not None else None,
            "equation": x.equation,
            "residual": qelem_to_json(x.residual) if x.residual is not None else None,
            "jvv": str(x.jvv) if x.jvv is not None else None,
            "second_direction": _vec(x.second_direction) if x.second_direction is not None else None,
        }
    return {
        "type": "verdict",
        "claim": v.claim,
        "status": v.status.value,
        "bound": v.bound,
        "d": d,
        "note": v.note,
        "witness": w,
    }


def verdict_from_obj(obj: dict) -> Verdict:
    if obj.get("type") != "verdict":
        raise FormatError("not a verdict document")
    d = obj.get("d")
    w = obj.get("witness")
    wit = None
    if w is not None:
        wit = Witness(
            _vec_from(w["direction"], d) if w["direction"] is not None else None,
            w["equation"],
            qelem_from_json(w["residual"], d) if w["residual"] is not None else None,
            mpq(w["jvv"]) if w["jvv"] is not None else None,
            _vec_from(w["second_direction"], d) if w["second_direction"] is not None else None,
        )
    return Verdict(Status(obj["status"]), obj["claim"], wit, obj["bound"], obj["note"])


_NUMBER = re.compile(r'\[\s*("-?\d+"),\s*("\d+"),\s*("-?\d+"),\s*("\d+")\s*\]')


def dumps(obj: dict) -> str:
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    # keep each four-string number on one line
    return _NUMBER.sub(r"[\1, \2, \3, \4]", text) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)
