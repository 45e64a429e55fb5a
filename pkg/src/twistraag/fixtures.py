"""JSON fixture bundles: named splittings, collections and sphere families over one rank.

Layout (schema ``twistraag/1``)::

    {
      "schema": "twistraag/1",
      "tool_version": "0.1.0",
      "rank": 2,
      "splittings": {
        "T1": {"kind": "HNN", "vertex_generators": ["x", "yxY"],
               "stable_letter": "y", "edge_a": "x", "edge_b": "yxY", "orientation": 1}
      },
      "collections": {"pair": ["T1", "T2"]},
      "sphere_families": {"basis": "basis", "custom": ["S1", "S2"]}
    }

Words use the letters x, y, z, a, b, ... with capitals for inverses.  A sphere
family is either the string ``"basis"`` or a list of free splitting names.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Union

from .certify import Collection
from .curvespace import SphereFamily, basis_spheres
from .freegroup import WordError, format_letters, free_reduce, parse_letters
from .splitting import AMALGAM, FREE_AMALGAM, FREE_HNN, HNN, KINDS, SplittingDatum, SplittingError

SCHEMA = "twistraag/1"


class FixtureError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class FixtureBundle:
    rank: int
    splittings: dict
    collections: dict = field(default_factory=dict)
    sphere_families: dict = field(default_factory=dict)
    tool_version: str = ""
    source: str = ""

    def splitting(self, name: str) -> SplittingDatum:
        if name not in self.splittings:
            raise FixtureError(self.source or "bundle", f"unknown splitting {name!r}; known: {sorted(self.splittings)}")
        return self.splittings[name]

    def collection(self, name: str) -> Collection:
        if name not in self.collections:
            raise FixtureError(self.source or "bundle", f"unknown collection {name!r}; known: {sorted(self.collections)}")
        names = self.collections[name]
        return Collection(tuple(self.splittings[n] for n in names), tuple(names))

    def family(self, name: str) -> SphereFamily:
        if name not in self.sphere_families:
            raise FixtureError(self.source or "bundle",
                               f"unknown sphere family {name!r}; known: {sorted(self.sphere_families)}")
        members = self.sphere_families[name]
        if members == "basis":
            return basis_spheres(self.rank)
        return SphereFamily(tuple(self.splittings[n] for n in members), tuple(members))

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "tool_version": self.tool_version, "rank": self.rank,
                "splittings": {n: splitting_to_json(d) for n, d in self.splittings.items()},
                "collections": {n: list(c) for n, c in self.collections.items()},
                "sphere_families": dict(self.sphere_families)}


def splitting_to_json(d: SplittingDatum) -> dict:
    f = format_letters
    if d.kind == HNN:
        return {"kind": HNN, "vertex_generators": [f(g) for g in d.vertex_generators],
                "stable_letter": f(d.stable), "edge_a": f(d.edge_a), "edge_b": f(d.edge_b),
                "orientation": d.orientation}
    if d.kind == AMALGAM:
        return {"kind": AMALGAM, "a_generators": [f(g) for g in d.a_generators],
                "b_generators": [f(g) for g in d.b_generators], "edge_a": f(d.edge_a),
                "orientation": d.orientation}
    if d.kind == FREE_HNN:
        return {"kind": FREE_HNN, "vertex_generators": [f(g) for g in d.vertex_generators],
                "stable_letter": f(d.stable)}
    return {"kind": FREE_AMALGAM, "a_generators": [f(g) for g in d.a_generators],
            "b_generators": [f(g) for g in d.b_generators]}


def _word(obj: dict, key: str, rank: int, where: str) -> tuple:
    if key not in obj:
        raise FixtureError(where, f"missing field {key!r}")
    s = obj[key]
    if not isinstance(s, str):
        raise FixtureError(f"{where}.{key}", f"expected a word string, got {type(s).__name__}")
    try:
        return free_reduce(parse_letters(s, rank))
    except WordError as e:
        raise FixtureError(f"{where}.{key}", str(e)) from None


def _words(obj: dict, key: str, rank: int, where: str) -> list:
    if key not in obj:
        raise FixtureError(where, f"missing field {key!r}")
    if not isinstance(obj[key], list):
        raise FixtureError(f"{where}.{key}", "expected a list of word strings")
    return [_word({"w": s}, "w", rank, f"{where}.{key}[{i}]") for i, s in enumerate(obj[key])]


def _splitting(name: str, obj, rank: int, where: str) -> SplittingDatum:
    if not isinstance(obj, dict):
        raise FixtureError(where, "expected an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise FixtureError(f"{where}.kind", f"expected one of {list(KINDS)}, got {kind!r}")
    orientation = obj.get("orientation", 1)
    if orientation not in (1, -1):
        raise FixtureError(f"{where}.orientation", f"expected 1 or -1, got {orientation!r}")
    if kind == HNN:
        return SplittingDatum.hnn(rank, _words(obj, "vertex_generators", rank, where),
                                  _word(obj, "stable_letter", rank, where),
                                  _word(obj, "edge_a", rank, where), _word(obj, "edge_b", rank, where),
                                  orientation, name)
    if kind == AMALGAM:
        return SplittingDatum.amalgam(rank, _words(obj, "a_generators", rank, where),
                                      _words(obj, "b_generators", rank, where),
                                      _word(obj, "edge_a", rank, where), orientation, name)
    if kind == FREE_HNN:
        return SplittingDatum.free_hnn(rank, _words(obj, "vertex_generators", rank, where),
                                       _word(obj, "stable_letter", rank, where), name)
    return SplittingDatum.free_amalgam(rank, _words(obj, "a_generators", rank, where),
                                       _words(obj, "b_generators", rank, where), name)


def loads(text: str, source: str = "<string>") -> FixtureBundle:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FixtureError(f"{source}:{e.lineno}:{e.colno}", e.msg) from None
    if not isinstance(data, dict):
        raise FixtureError(source, "top level must be an object")
    if data.get("schema") != SCHEMA:
        raise FixtureError(f"{source}: schema", f"expected {SCHEMA!r}, got {data.get('schema')!r}")
    rank = data.get("rank")
    if not isinstance(rank, int) or rank < 1:
        raise FixtureError(f"{source}: rank", f"expected a positive integer, got {rank!r}")
    raw = data.get("splittings", {})
    if not isinstance(raw, dict):
        raise FixtureError(f"{source}: splittings", "expected an object")
    try:
        splittings = {n: _splitting(n, o, rank, f"{source}: splittings.{n}") for n, o in raw.items()}
    except SplittingError as e:
        raise FixtureError(f"{source}: splittings", str(e)) from None
    collections = {}
    for n, names in data.get("collections", {}).items():
        where = f"{source}: collections.{n}"
        if not isinstance(names, list) or not names:
            raise FixtureError(where, "expected a nonempty list of splitting names")
        for m in names:
            if m not in splittings:
                raise FixtureError(where, f"unknown splitting {m!r}")
            if splittings[m].is_free:
                raise FixtureError(where, f"{m!r} is a free splitting")
        collections[n] = tuple(names)
    families = {}
    for n, members in data.get("sphere_families", {}).items():
        where = f"{source}: sphere_families.{n}"
        if members != "basis":
            if not isinstance(members, list) or not members:
                raise FixtureError(where, 'expected "basis" or a nonempty list of free splitting names')
            for m in members:
                if m not in splittings or not splittings[m].is_free:
                    raise FixtureError(where, f"{m!r} is not a free splitting of this bundle")
            members = tuple(members)
        families[n] = members
    return FixtureBundle(rank, splittings, collections, families, str(data.get("tool_version", "")), source)


def load(path: Union[str, Path]) -> FixtureBundle:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise FixtureError(str(p), e.strerror or str(e)) from None
    return loads(text, str(p))


def shipped_names() -> list:
    return sorted(r.name[:-5] for r in resources.files("twistraag.data").iterdir() if r.name.endswith(".json"))


def shipped(name: str) -> FixtureBundle:
    """One of the bundles shipped with the package, e.g. ``shipped("f2_pair")``."""
    res = resources.files("twistraag.data") / f"{name}.json"
    if not res.is_file():
        raise FixtureError(name, f"no shipped bundle; available: {shipped_names()}")
    return loads(res.read_text(encoding="utf-8"), f"{name}.json")


def resolve(path_or_name: str) -> FixtureBundle:
    """A file path, or the name of a shipped bundle."""
    if Path(path_or_name).exists():
        return load(path_or_name)
    return shipped(path_or_name)
