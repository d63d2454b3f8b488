"""JSON schema for games and measurements.

All rationals travel as exact "p/q" strings; decimals are rejected so a
round trip never loses information.  A game document looks like::

    {
      "state": [{"index": "i1", "weight": "1/2", "phase": "0"}, ...],
      "observable": {"i1": "0", "i2": "1"},
      "payoff": {"0": {"label": "nothing", "value": "0"}, ...}
    }

A measurement document is the same without the payoff.  Schema errors name
the offending field.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import SchemaError
from .exact import Amplitude, format_rational, parse_rational
from .games import Consequence, Game, Observable
from .probability import Measurement


def _rational_field(obj: Any, where: str) -> Fraction:
    if not isinstance(obj, str):
        raise SchemaError(f"field {where!r} must be a rational string \"p/q\"")
    try:
        return parse_rational(obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"field {where!r} is not a valid rational: {exc}") from None


def _state_from_jsonable(obj: Any) -> dict:
    if not isinstance(obj, list):
        raise SchemaError("field 'state' must be a list of branch objects")
    state = {}
    for k, entry in enumerate(obj):
        where = f"state[{k}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"field {where!r} must be an object")
        if "index" not in entry or not isinstance(entry["index"], str):
            raise SchemaError(f"field {where!r}.index must be a string")
        index = entry["index"]
        if index in state:
            raise SchemaError(f"field {where!r}.index repeats {index!r}")
        if "weight" not in entry:
            raise SchemaError(f"field {where!r}.weight is required")
        weight = _rational_field(entry["weight"], f"{where}.weight")
        phase = _rational_field(entry.get("phase", "0"), f"{where}.phase")
        try:
            state[index] = Amplitude(weight, phase)
        except ValueError as exc:
            raise SchemaError(f"field {where!r}: {exc}") from None
    if not state:
        raise SchemaError("field 'state' must not be empty")
    return state


def _observable_from_jsonable(obj: Any) -> Observable:
    if not isinstance(obj, dict):
        raise SchemaError("field 'observable' must map indices to eigenvalue strings")
    eigen = {}
    for index, value in obj.items():
        eigen[index] = _rational_field(value, f"observable.{index}")
    return Observable(eigen)


def _payoff_from_jsonable(obj: Any) -> dict:
    if not isinstance(obj, dict):
        raise SchemaError("field 'payoff' must map eigenvalue strings to consequences")
    payoff = {}
    for key, entry in obj.items():
        x = _rational_field(key, f"payoff key {key!r}")
        where = f"payoff[{key}]"
        if not isinstance(entry, dict) or "label" not in entry:
            raise SchemaError(f"field {where!r} must be an object with a 'label'")
        if not isinstance(entry["label"], str):
            raise SchemaError(f"field {where!r}.label must be a string")
        value = entry.get("value")
        parsed = None if value is None else _rational_field(value, f"{where}.value")
        payoff[x] = Consequence(entry["label"], parsed)
    return payoff


def game_from_jsonable(obj: Any) -> Game:
    if not isinstance(obj, dict):
        raise SchemaError("top-level game document must be an object")
    for required in ("state", "observable", "payoff"):
        if required not in obj:
            raise SchemaError(f"field {required!r} is required")
    return Game(
        _state_from_jsonable(obj["state"]),
        _observable_from_jsonable(obj["observable"]),
        _payoff_from_jsonable(obj["payoff"]),
    )


def measurement_from_jsonable(obj: Any) -> Measurement:
    if not isinstance(obj, dict):
        raise SchemaError("top-level measurement document must be an object")
    for required in ("state", "observable"):
        if required not in obj:
            raise SchemaError(f"field {required!r} is required")
    return Measurement(
        _state_from_jsonable(obj["state"]),
        _observable_from_jsonable(obj["observable"]),
    )


def game_to_jsonable(g: Game) -> dict:
    state = [
        {
            "index": i,
            "weight": format_rational(a.weight),
            "phase": format_rational(a.phase),
        }
        for i, a in sorted(g.state.items())
    ]
    observable = {i: format_rational(x) for i, x in sorted(g.observable.eigen.items())}
    payoff = {format_rational(x): c.to_jsonable() for x, c in sorted(g.payoff.items())}
    return {"state": state, "observable": observable, "payoff": payoff}


def load_game(path: str) -> Game:
    with open(path, encoding="utf-8") as fh:
        return game_from_jsonable(json.load(fh))


def load_measurement(path: str) -> Measurement:
    with open(path, encoding="utf-8") as fh:
        return measurement_from_jsonable(json.load(fh))
