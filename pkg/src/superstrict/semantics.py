"""Kripke frames with non-normal points and the primitive truth clauses.

Worlds are integers 0..n-1.  Successor sets, the set of normal points, and
variable extensions are all bitmasks (bit w = world w).  A frame whose
points are all normal behaves exactly like a plain Kripke frame.

Truth at w:

    a |> b   iff  w is normal, some successor satisfies a, and every
                  successor satisfying a satisfies b
    a ||> b  iff  a |> b and some successor falsifies b
    a => b   iff  w is normal and every successor satisfying a satisfies b
    box a    iff  w is normal and every successor satisfies a
    dia a    iff  w is not normal, or some successor satisfies a

Truth in a model quantifies over the normal points only, so it is vacuous
when the frame has no normal point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .syntax import (
    And,
    Bot,
    Box,
    Dia,
    Formula,
    Imp,
    Or,
    Ssi,
    Sssi,
    Strict,
    Var,
    variables,
)


@dataclass(frozen=True)
class FrameClass:
    """A conjunction of frame conditions; the empty conjunction is S2_0."""

    reflexive: bool = False
    transitive: bool = False
    serial: bool = False
    symmetric: bool = False
    euclidean: bool = False
    all_normal: bool = False


S2_0 = FrameClass()
S2 = FrameClass(reflexive=True)
S3 = FrameClass(reflexive=True, transitive=True)

NAMED_CLASSES: dict[str, FrameClass] = {
    "s2_0": S2_0,
    "s2": S2,
    "s3": S3,
    "k": FrameClass(all_normal=True),
    "kd": FrameClass(serial=True, all_normal=True),
    "kt": FrameClass(reflexive=True, all_normal=True),
    "kb": FrameClass(symmetric=True, all_normal=True),
    "k4": FrameClass(transitive=True, all_normal=True),
    "k5": FrameClass(euclidean=True, all_normal=True),
    "k45": FrameClass(transitive=True, euclidean=True, all_normal=True),
    "kd45": FrameClass(serial=True, transitive=True, euclidean=True, all_normal=True),
    "ktb": FrameClass(reflexive=True, symmetric=True, all_normal=True),
    "s4": FrameClass(reflexive=True, transitive=True, all_normal=True),
    "s5": FrameClass(reflexive=True, euclidean=True, all_normal=True),
}


@dataclass(frozen=True)
class Frame:
    """`rel[w]` is the successor bitmask of w; `normals` the normal points."""

    n: int
    rel: tuple[int, ...]
    normals: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("a frame needs at least one world")
        full = (1 << self.n) - 1
        if len(self.rel) != self.n:
            raise ValueError("rel must have one successor mask per world")
        if any(not 0 <= row <= full for row in self.rel):
            raise ValueError("successor mask out of range")
        if not 0 <= self.normals <= full:
            raise ValueError("normals mask out of range")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], normals: Iterable[int]) -> "Frame":
        rows = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range")
            rows[i] |= 1 << j
        nm = 0
        for w in normals:
            if not 0 <= w < n:
                raise ValueError(f"normal world {w} out of range")
            nm |= 1 << w
        return cls(n, tuple(rows), nm)


@dataclass(frozen=True)
class Model:
    frame: Frame
    valuation: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        full = (1 << self.frame.n) - 1
        for name, mask in self.valuation.items():
            if not 0 <= mask <= full:
                raise ValueError(f"extension of {name!r} out of range")

    @classmethod
    def from_sets(cls, frame: Frame, val: Mapping[str, Iterable[int]]) -> "Model":
        out: dict[str, int] = {}
        for name, worlds in val.items():
            mask = 0
            for w in worlds:
                if not 0 <= w < frame.n:
                    raise ValueError(f"world {w} in extension of {name!r} out of range")
                mask |= 1 << w
            out[name] = mask
        return cls(frame, out)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def relation_satisfies(rel: tuple[int, ...], n: int, fc: FrameClass) -> bool:
    """Check the relational conditions of `fc` (everything but all_normal)."""
    full = (1 << n) - 1
    if fc.reflexive and any(not rel[w] >> w & 1 for w in range(n)):
        return False
    if fc.serial and any(rel[w] == 0 for w in range(n)):
        return False
    if fc.symmetric:
        for w in range(n):
            for v in _bits(rel[w]):
                if not rel[v] >> w & 1:
                    return False
    if fc.transitive:
        for w in range(n):
            for v in _bits(rel[w]):
                if rel[v] & ~rel[w] & full:
                    return False
    if fc.euclidean:
        for w in range(n):
            s = rel[w]
            for v in _bits(s):
                if s & ~rel[v] & full:
                    return False
    return True


def satisfies_class(frame: Frame, fc: FrameClass) -> bool:
    full = (1 << frame.n) - 1
    if fc.all_normal and frame.normals != full:
        return False
    return relation_satisfies(frame.rel, frame.n, fc)


def extension(model: Model, f: Formula) -> int:
    """Bitmask of the worlds where `f` is true."""
    frame = model.frame
    n, rel, normals = frame.n, frame.rel, frame.normals
    full = (1 << n) - 1

    def ext(g: Formula) -> int:
        match g:
            case Var(name):
                return model.valuation.get(name, 0)
            case Bot():
                return 0
            case And(a, b):
                return ext(a) & ext(b)
            case Or(a, b):
                return ext(a) | ext(b)
            case Imp(a, b):
                return (full ^ ext(a)) | ext(b)
            case Ssi(a, b):
                ea, eb = ext(a), ext(b)
                out = 0
                for w in range(n):
                    s = rel[w]
                    if normals >> w & 1 and s & ea and not s & ea & (full ^ eb):
                        out |= 1 << w
                return out
            case Sssi(a, b):
                ea, eb = ext(a), ext(b)
                out = 0
                for w in range(n):
                    s = rel[w]
                    if (
                        normals >> w & 1
                        and s & ea
                        and not s & ea & (full ^ eb)
                        and s & (full ^ eb)
                    ):
                        out |= 1 << w
                return out
            case Strict(a, b):
                ea, eb = ext(a), ext(b)
                out = 0
                for w in range(n):
                    if normals >> w & 1 and not rel[w] & ea & (full ^ eb):
                        out |= 1 << w
                return out
            case Box(a):
                ea = ext(a)
                out = 0
                for w in range(n):
                    if normals >> w & 1 and not rel[w] & (full ^ ea):
                        out |= 1 << w
                return out
            case Dia(a):
                ea = ext(a)
                out = 0
                for w in range(n):
                    if not normals >> w & 1 or rel[w] & ea:
                        out |= 1 << w
                return out
        raise TypeError(f"not a formula: {g!r}")

    return ext(f)


def holds(model: Model, world: int, f: Formula) -> bool:
    """Truth of `f` at a world of the model."""
    if not 0 <= world < model.frame.n:
        raise ValueError(f"world index {world} out of range")
    return bool(extension(model, f) >> world & 1)


def true_in_model(model: Model, f: Formula) -> bool:
    """Truth at every normal point; vacuously true without normal points."""
    full = (1 << model.frame.n) - 1
    return not model.frame.normals & (full ^ extension(model, f))


def valid_on_frame(frame: Frame, f: Formula) -> bool:
    """Truth in every model on the frame.

    Only the variables occurring in `f` are varied; the truth clauses never
    consult any other variable.
    """
    names = sorted(variables(f))
    n = frame.n
    return all(
        true_in_model(Model(frame, dict(zip(names, masks))), f)
        for masks in _mask_tuples(n, len(names))
    )


def _mask_tuples(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 0:
        yield ()
        return
    for rest in _mask_tuples(n, k - 1):
        for mask in range(1 << n):
            yield rest + (mask,)


# ---------------------------------------------------------------------------
# JSON forms


def frame_to_json(frame: Frame) -> dict:
    return {
        "worlds": frame.n,
        "rel": [sorted(_bits(row)) for row in frame.rel],
        "normals": sorted(_bits(frame.normals)),
    }


def frame_from_json(data: object) -> Frame:
    if not isinstance(data, dict):
        raise ValueError("frame JSON must be an object")
    n = data.get("worlds")
    if not isinstance(n, int) or n < 1:
        raise ValueError("'worlds' must be a positive integer")
    rel = data.get("rel")
    if not isinstance(rel, list) or len(rel) != n:
        raise ValueError("'rel' must list the successors of each world")
    edges = []
    for i, row in enumerate(rel):
        if not isinstance(row, list):
            raise ValueError("'rel' rows must be lists of worlds")
        for j in row:
            if not isinstance(j, int) or not 0 <= j < n:
                raise ValueError(f"successor {j!r} of world {i} out of range")
            edges.append((i, j))
    normals = data.get("normals")
    if not isinstance(normals, list) or any(
        not isinstance(w, int) or not 0 <= w < n for w in normals
    ):
        raise ValueError("'normals' must be a list of worlds")
    return Frame.from_edges(n, edges, normals)


def model_to_json(model: Model) -> dict:
    return {
        **frame_to_json(model.frame),
        "val": {name: sorted(_bits(mask)) for name, mask in sorted(model.valuation.items())},
    }


def model_from_json(data: object) -> Model:
    frame = frame_from_json(data)
    val = data.get("val", {})
    if not isinstance(val, dict):
        raise ValueError("'val' must map variables to lists of worlds")
    sets: dict[str, list[int]] = {}
    for name, worlds in val.items():
        if not isinstance(name, str) or not isinstance(worlds, list):
            raise ValueError("'val' must map variables to lists of worlds")
        for w in worlds:
            if not isinstance(w, int) or not 0 <= w < frame.n:
                raise ValueError(f"world {w!r} in extension of {name!r} out of range")
        sets[name] = worlds
    return Model.from_sets(frame, sets)
