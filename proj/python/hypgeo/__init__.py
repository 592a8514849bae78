"""Coefficient criteria, proof audits and certified evaluation for z 3F2(a,b,c;d,e;z).

Rational inputs may be Fraction, int, or exact text ("7/5", "1.45"). Rationals
come back as Fraction; reals reported by the evaluator come back as float
(full 17-digit strings are kept under the "*_text" keys).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Sequence

from . import _hypgeo
from ._hypgeo import DegenerateGridError, TailBoundError

__all__ = [
    "DegenerateGridError",
    "TailBoundError",
    "audit",
    "check",
    "coefficients",
    "evaluate",
    "evidence",
    "lemmas",
    "parse_rational",
    "run_cli",
    "scan",
]

_THEOREMS = (1, 2, 3, 4)


def _text(x) -> str:
    if isinstance(x, float):
        # shortest round-tripping decimal, read exactly
        return str(Fraction(repr(x)))
    if isinstance(x, str) and "e" in x.lower():
        return str(Fraction(x))
    return str(x)


def _params(params: Sequence) -> list[str]:
    if len(params) != 5:
        raise ValueError("expected five parameters a, b, c, d, e")
    return [_text(p) for p in params]


def _theorems(theorem) -> list[int]:
    if theorem is None or theorem == "all":
        return list(_THEOREMS)
    if isinstance(theorem, int):
        return [theorem]
    return [int(t) for t in theorem]


def _fraction(text: str) -> Fraction:
    return Fraction(text)


def _rationals(node, keys=("a", "b", "c", "d", "e", "lhs", "rhs", "value", "r_max", "start", "stop")):
    """Converts "p/q" strings under known rational keys to Fraction, in place."""
    if isinstance(node, dict):
        for k, v in node.items():
            if k in keys and isinstance(v, str):
                node[k] = _fraction(v)
            else:
                _rationals(v, keys)
    elif isinstance(node, list):
        for v in node:
            _rationals(v, keys)
    return node


def parse_rational(text: str) -> Fraction:
    return _fraction(_hypgeo.parse_rational(text))


def coefficients(params: Sequence, n: int, kind: str = "normalized") -> list[Fraction]:
    return [_fraction(q) for q in _hypgeo.coefficients(_params(params), n, kind)]


def check(params: Sequence, theorem=None) -> list[dict]:
    return _rationals(json.loads(_hypgeo.check(_params(params), _theorems(theorem))))


def audit(params: Sequence, theorem=None, n: int = 100) -> list[dict]:
    return _rationals(json.loads(_hypgeo.audit(_params(params), _theorems(theorem), n)))


def lemmas(params: Sequence, n: int = 200) -> dict:
    return json.loads(_hypgeo.lemmas(_params(params), n))


def evaluate(params: Sequence, z, kind: str = "normalized", tol="1e-12", derivative: bool = False) -> dict:
    z = complex(z) if not isinstance(z, (tuple, list)) else z
    if isinstance(z, complex):
        re, im = _text(z.real), _text(z.imag)
    else:
        re, im = _text(z[0]), _text(z[1])
    out = json.loads(_hypgeo.evaluate(_params(params), re, im, kind, _decimal(tol), derivative))
    out["value_text"] = out["value"]
    out["value"] = complex(float(out["value"]["re"]), float(out["value"]["im"]))
    out["truncation_bound"] = float(out["truncation_bound"])
    return out


def evidence(
    params: Sequence,
    kind: str = "normalized",
    functional: str | None = None,
    grid: tuple = (64, 256, Fraction(19, 20)),
    tol="1e-12",
    workers: int = 0,
) -> list[dict]:
    n_r, n_theta, r_max = grid
    raw = _hypgeo.evidence(_params(params), kind, functional, n_r, n_theta, _text(r_max), _decimal(tol), workers)
    out = json.loads(raw)
    for ev in out:
        ev["min_value"] = float(ev["min_value"])
        ev["error_budget"] = float(ev["error_budget"])
    return out


def scan(
    fixed: dict,
    axes: Iterable[tuple],
    lemmas: bool = False,
    lemma_n: int = 200,
    disk: bool = False,
    grid: tuple = (64, 256, Fraction(19, 20)),
    tol="1e-12",
    workers: int = 0,
    format: str = "json",
):
    """Scans a 2-D slice; axes are (name, start, stop, steps). Returns the
    JSON report as a dict, or the CSV text when format == "csv"."""
    if format not in ("json", "csv"):
        raise ValueError("format must be 'json' or 'csv'")
    n_r, n_theta, r_max = grid
    axes = [(name, _text(start), _text(stop), int(steps)) for name, start, stop, steps in axes]
    raw = _hypgeo.scan(
        {k: _text(v) for k, v in fixed.items()},
        axes,
        lemmas,
        lemma_n,
        disk,
        n_r,
        n_theta,
        _text(r_max),
        _decimal(tol),
        workers,
        format,
    )
    return raw if format == "csv" else json.loads(raw)


def run_cli(args: Sequence[str]) -> tuple[int, str, str]:
    return _hypgeo.run_cli([str(a) for a in args])


def _decimal(x) -> str:
    return _text(x)
